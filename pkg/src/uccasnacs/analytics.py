"""Corpus-level statistics over integration runs, laid out per split with a total column."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

from .conllulex import AlignedSentence
from .graph import Passage
from .integrate import ConstructionType as CT, IntegrationResult


@dataclass
class SplitStats:
    sentences: int = 0
    tokens: int = 0
    targets: int = 0
    successes: int = 0
    governor_matches: int = 0
    primary_edges: int = 0
    remote_edges: int = 0
    refined_edges: int = 0

    @property
    def coverage(self) -> float:
        return self.successes / self.targets if self.targets else 0.0

    @property
    def governor_match_rate(self) -> float:
        return self.governor_matches / self.successes if self.successes else 0.0

    def __add__(self, other: "SplitStats") -> "SplitStats":
        return SplitStats(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))


def split_stats(aligned: Sequence[AlignedSentence], passages: Sequence[Passage],
                results: Iterable[IntegrationResult]) -> SplitStats:
    """Counts for one split. ``passages`` are the integrated graphs."""
    results = list(results)
    s = SplitStats(sentences=len(aligned), tokens=sum(len(a.sentence) for a in aligned))
    s.targets = len(results)
    s.successes = sum(r.refined for r in results)
    s.governor_matches = sum(bool(r.governor_match) for r in results if r.refined)
    for p in passages:
        for e in p.edges:
            if e.is_terminal_link:
                continue
            if e.remote:
                s.remote_edges += 1
            else:
                s.primary_edges += 1
            s.refined_edges += e.refinement is not None
    return s


_STAT_ROWS = [
    ("sentences", "sentences"), ("tokens", "tokens"), ("SNACS-annotated", "targets"),
    ("successful integ.", "successes"), ("matches synt. obj", "governor_matches"),
    ("total primary edges", "primary_edges"), ("total remote edges", "remote_edges"),
    ("refined edges", "refined_edges"),
]


def corpus_stats(splits: Mapping[str, SplitStats]) -> list[tuple[str, list]]:
    """Rows of (label, [value per split..., total]); ratios appended as floats."""
    names = list(splits)
    total = sum((splits[n] for n in names), SplitStats())
    cols = [splits[n] for n in names] + [total]
    rows = [(label, [getattr(c, attr) for c in cols]) for label, attr in _STAT_ROWS]
    rows.append(("coverage", [c.coverage for c in cols]))
    rows.append(("governor-match rate", [c.governor_match_rate for c in cols]))
    return rows


# Construction breakdown -------------------------------------------------------

_SPLIT_KINDS = {CT.INTRANSITIVE: "intransitive", CT.POSSESSIVE_PRONOUN: "possessive",
                CT.INFINITIVAL_PURPOSE: "infinitival"}


def construction_breakdown(results: Iterable[IntegrationResult]) -> Counter:
    """Counts of refined targets by construction type.

    Quantity and partitive placements are folded into canonical, which is split
    by whether the refined unit's parent is a scene. The raw kind counts are
    kept under their own enum names.
    """
    c: Counter = Counter()
    passages_with_remote = set()
    for r in results:
        if not r.refined:
            continue
        c["refined"] += 1
        c[r.kind.value] += 1
        side = "scene" if r.scene else "nonscene"
        if r.kind in (CT.SCENE_MODIFIER, CT.NONSCENE_MODIFIER, CT.QUANTITY, CT.PARTITIVE):
            c["canonical"] += 1
            c[f"canonical_{side}"] += 1
        else:
            c["noncanonical"] += 1
            if r.kind in _SPLIT_KINDS:
                c[f"{_SPLIT_KINDS[r.kind]}_{side}"] += 1
        if r.remote_edges:
            passages_with_remote.add(r.sentence_id)
            c["remote_edges"] += r.remote_edges
    c["passages_with_remote"] = len(passages_with_remote)
    return c


_BREAKDOWN_ROWS = [
    ("refined", "refined"),
    ("passages with refined unit having remote parents", "passages_with_remote"),
    ("remote edges into refined units", "remote_edges"),
    ("canonical", "canonical"),
    ("  scene mod", "canonical_scene"),
    ("  non-scene mod", "canonical_nonscene"),
    ("    (quantity)", CT.QUANTITY.value),
    ("    (partitive)", CT.PARTITIVE.value),
    ("non-canonical", "noncanonical"),
    ("  predication", CT.PREDICATION.value),
    ("  linkage", CT.LINKAGE.value),
    ("  intransitive adp.", CT.INTRANSITIVE.value),
    ("    scn-mod", "intransitive_scene"),
    ("    nscn-mod", "intransitive_nonscene"),
    ("  approximator", CT.APPROXIMATOR.value),
    ("  possessive pron.", CT.POSSESSIVE_PRONOUN.value),
    ("    scn-mod", "possessive_scene"),
    ("    nscn-mod", "possessive_nonscene"),
    ("  infinitival", CT.INFINITIVAL_PURPOSE.value),
    ("    scn-mod", "infinitival_scene"),
    ("    nscn-mod", "infinitival_nonscene"),
    ("  PP idiom", CT.PP_IDIOM.value),
]


def breakdown_rows(splits: Mapping[str, Counter]) -> list[tuple[str, list]]:
    names = list(splits)
    total = sum((splits[n] for n in names), Counter())
    cols = [splits[n] for n in names] + [total]
    return [(label, [c.get(key, 0) for c in cols]) for label, key in _BREAKDOWN_ROWS]


# Emitters ---------------------------------------------------------------------

def _fmt(value) -> str:
    return f"{value:.3f}" if isinstance(value, float) else f"{value:,}"


def to_markdown(rows: list[tuple[str, list]], split_names: Sequence[str]) -> str:
    header = ["", *split_names, "total"]
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join(["---"] + ["---:"] * (len(header) - 1)) + "|"]
    for label, values in rows:
        lines.append("| " + " | ".join([label.replace("  ", "&nbsp;&nbsp;")] + [_fmt(v) for v in values]) + " |")
    return "\n".join(lines) + "\n"


def to_tsv(rows: list[tuple[str, list]], split_names: Sequence[str]) -> str:
    lines = ["\t".join(["row", *split_names, "total"])]
    for label, values in rows:
        lines.append("\t".join([label.strip()] + [f"{v:.4f}" if isinstance(v, float) else str(v) for v in values]))
    return "\n".join(lines) + "\n"
