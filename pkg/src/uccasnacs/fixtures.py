"""Access to the bundled hand-built fixture corpora."""
from __future__ import annotations

from importlib import resources

from .conllulex import AlignedSentence, align, read_conllulex
from .ucca_io import read_passages

# "rules": one sentence per placement rule, all integrating cleanly.
# "limitations": sentences on which the heuristic is known to fail.
CORPORA = ("rules", "limitations")


def fixture_paths(name: str = "rules") -> tuple[str, str]:
    """(conllulex file, passage directory) for a bundled corpus."""
    if name not in CORPORA:
        raise KeyError(f"unknown fixture corpus {name!r}")
    base = resources.files("uccasnacs.data") / "fixtures"
    return str(base / f"{name}.conllulex"), str(base / name)


def load_fixture(name: str = "rules") -> list[AlignedSentence]:
    lex, ucca = fixture_paths(name)
    return align(read_conllulex(lex), read_passages([ucca]))


def worked_example() -> AlignedSentence:
    return next(a for a in load_fixture("rules") if a.id == "ohm")
