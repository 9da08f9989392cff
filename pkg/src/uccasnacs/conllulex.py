"""Reader and writer for STREUSLE-style ``.conllulex`` files (19 columns)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO, Union

from .errors import AlignmentError, ConllulexParseError
from .graph import Passage
from .inventory import Inventory, default_inventory

COLUMNS = ("ID", "FORM", "LEMMA", "UPOS", "XPOS", "FEATS", "HEAD", "DEPREL", "DEPS", "MISC",
           "SMWE", "LEXCAT", "LEXLEMMA", "SS", "SS2", "WMWE", "WCAT", "WLEMMA", "LEXTAG")

# Lexical categories whose SS column holds an adpositional/possessive scene role.
ADPOSITIONAL_LEXCATS = frozenset({"P", "PP", "INF.P", "POSS", "PRON.POSS"})


@dataclass(frozen=True)
class Token:
    position: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    lexcat: Optional[str] = None
    scene_role: Optional[str] = None
    function: Optional[str] = None
    smwe_group: Optional[tuple[int, int]] = None
    columns: tuple = ()

    @property
    def base_deprel(self) -> str:
        return self.deprel.split(":")[0]


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: tuple
    comments: tuple = ()
    # multiword-token ranges and empty nodes: (index into tokens they precede, columns)
    extra_rows: tuple = ()

    def __len__(self):
        return len(self.tokens)

    def token(self, position: int) -> Token:
        return self.tokens[position - 1]

    def dependents(self, position: int) -> list[Token]:
        return [t for t in self.tokens if t.head == position]

    def smwe_members(self, position: int) -> list[int]:
        """Positions of the strong MWE containing ``position`` (just itself if none)."""
        group = self.token(position).smwe_group
        if group is None:
            return [position]
        return [t.position for t in self.tokens if t.smwe_group and t.smwe_group[0] == group[0]]


@dataclass(frozen=True)
class AlignedSentence:
    sentence: Sentence
    passage: Passage

    @property
    def id(self) -> str:
        return self.passage.id


def _cell(value: str) -> Optional[str]:
    return None if value in ("", "_") else value


def _make_token(cols: list[str], line: int, inventory: Inventory, admissible: frozenset) -> Token:
    try:
        position = int(cols[0])
        head = int(cols[6])
    except ValueError:
        raise ConllulexParseError(f"non-integer ID or HEAD: {cols[0]!r} / {cols[6]!r}", line) from None
    lexcat = _cell(cols[11])
    smwe = None
    if _cell(cols[10]):
        group, _, index = cols[10].partition(":")
        try:
            smwe = (int(group), int(index))
        except ValueError:
            raise ConllulexParseError(f"bad SMWE cell {cols[10]!r}", line) from None
    role = function = None
    if lexcat in admissible:
        role = inventory.normalize_supersense(_cell(cols[13]))
        function = inventory.normalize_supersense(_cell(cols[14]))
    return Token(position, cols[1], cols[2], cols[3], head, cols[7], lexcat, role, function, smwe, tuple(cols))


def _check_tree(tokens: Sequence[Token], line: int):
    n = len(tokens)
    for t in tokens:
        if not 0 <= t.head <= n:
            raise ConllulexParseError(f"token {t.position}: head {t.head} out of range", line)
        if (t.head == 0) != (t.deprel == "root"):
            raise ConllulexParseError(f"token {t.position}: head {t.head} inconsistent with deprel {t.deprel!r}",
                                      line)
    for t in tokens:
        seen = set()
        cur = t.position
        while cur != 0:
            if cur in seen:
                raise ConllulexParseError(f"cyclic dependency through token {cur}", line)
            seen.add(cur)
            cur = tokens[cur - 1].head


def parse_conllulex(stream: Union[TextIO, Iterable[str]], inventory: Optional[Inventory] = None,
                    admissible: frozenset = ADPOSITIONAL_LEXCATS) -> list[Sentence]:
    inventory = inventory or default_inventory()
    sentences = []
    comments: list[str] = []
    tokens: list[Token] = []
    extra: list[tuple[int, tuple]] = []
    start = 0

    def flush(lineno: int):
        nonlocal comments, tokens, extra
        if tokens:
            for i, t in enumerate(tokens, 1):
                if t.position != i:
                    raise ConllulexParseError(f"token IDs not consecutive at {t.position}", start)
            _check_tree(tokens, start)
            sid = None
            for c in comments:
                m = re.match(r"#\s*sent_id\s*=\s*(\S+)", c)
                if m:
                    sid = m.group(1)
                    break
            sentences.append(Sentence(sid or str(len(sentences) + 1), tuple(tokens), tuple(comments), tuple(extra)))
        elif comments or extra:
            raise ConllulexParseError("sentence block without tokens", lineno)
        comments, tokens, extra = [], [], []

    lineno = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            flush(lineno)
            continue
        if not tokens and not extra and not comments:
            start = lineno
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != len(COLUMNS):
            raise ConllulexParseError(f"expected {len(COLUMNS)} columns, found {len(cols)}", lineno)
        if "-" in cols[0] or "." in cols[0]:
            extra.append((len(tokens), tuple(cols)))
            continue
        tokens.append(_make_token(cols, lineno, inventory, admissible))
    flush(lineno + 1)
    return sentences


def read_conllulex(path: str, inventory: Optional[Inventory] = None) -> list[Sentence]:
    with open(path, encoding="utf-8") as f:
        return parse_conllulex(f, inventory)


def format_conllulex(sentences: Iterable[Sentence]) -> str:
    out = []
    for s in sentences:
        out.extend(s.comments)
        extra = list(s.extra_rows)
        for i, t in enumerate(s.tokens):
            while extra and extra[0][0] == i:
                out.append("\t".join(extra.pop(0)[1]))
            out.append("\t".join(t.columns))
        out.extend("\t".join(cols) for _, cols in extra)
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


def snacs_targets(sentence: Sentence) -> list[int]:
    """Positions carrying a scene role, one per strong MWE (its first annotated token)."""
    targets = []
    groups_done = set()
    for t in sentence.tokens:
        if t.scene_role is None:
            continue
        if t.smwe_group is not None:
            if t.smwe_group[0] in groups_done:
                continue
            groups_done.add(t.smwe_group[0])
        targets.append(t.position)
    return targets


def _norm(text: str) -> str:
    return " ".join(text.split())


def _digits(text: str) -> str:
    return re.sub(r"\D", "", text)


def align(sentences: Sequence[Sentence], passages: Sequence[Passage]) -> list[AlignedSentence]:
    """Pair sentences with passages by id (exact, then digits-only), else by order."""
    by_id = {p.id: p for p in passages}
    by_digits = {}
    for p in passages:
        by_digits.setdefault(_digits(p.id), []).append(p)
    pairs = []
    if all(s.id in by_id for s in sentences):
        pairs = [(s, by_id[s.id]) for s in sentences]
    elif all(len(by_digits.get(_digits(s.id), [])) == 1 for s in sentences):
        pairs = [(s, by_digits[_digits(s.id)][0]) for s in sentences]
    elif len(sentences) == len(passages):
        pairs = list(zip(sentences, passages))
    else:
        missing = next(s.id for s in sentences if s.id not in by_id)
        raise AlignmentError(f"no passage for sentence {missing}", missing)
    out = []
    for s, p in pairs:
        if len(s.tokens) != len(p.terminals):
            n = min(len(s.tokens), len(p.terminals))
            first = next((i + 1 for i in range(n)
                          if _norm(s.tokens[i].form) != _norm(p.terminals[i].text)), n + 1)
            raise AlignmentError(f"sentence {s.id}: {len(s.tokens)} tokens vs {len(p.terminals)} terminals "
                                 f"(first divergence at position {first})", s.id, first)
        for t, term in zip(s.tokens, p.terminals):
            if _norm(t.form) != _norm(term.text):
                raise AlignmentError(f"sentence {s.id}: position {t.position} token {t.form!r} "
                                     f"vs terminal {term.text!r}", s.id, t.position)
        out.append(AlignedSentence(s, p))
    return out
