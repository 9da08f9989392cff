"""Syntactic governor and object of adposition/possessive targets, from the UD tree."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .conllulex import Sentence
from .graph import Edge, Passage, preterminal_edge

DEFAULT = "default"
PREDICATIVE = "predicative"
POSSESSIVE = "possessive"
SUBORDINATING = "subordinating"
STRANDED = "stranded"


@dataclass(frozen=True)
class GovObj:
    target: int
    governor: Optional[int]
    object: Optional[int]
    config: str


def _syntactic_anchor(sentence: Sentence, target: int) -> int:
    """The token whose attachment determines the target's relations.

    For a strong MWE whose first token attaches inside the expression, this is
    the member attached outside of it.
    """
    members = sentence.smwe_members(target)
    if len(members) == 1 or sentence.token(target).head not in members:
        return target
    outside = [p for p in members if sentence.token(p).head not in members]
    return outside[0] if outside else target


def _first_conjunct(sentence: Sentence, position: int) -> int:
    seen = set()
    while sentence.token(position).base_deprel == "conj" and position not in seen:
        seen.add(position)
        position = sentence.token(position).head
    return position


def _child_with(sentence: Sentence, position: int, *deprels: str) -> Optional[int]:
    for t in sentence.dependents(position):
        if t.base_deprel in deprels:
            return t.position
    return None


def _has_copula(sentence: Sentence, position: int) -> bool:
    return _child_with(sentence, position, "cop") is not None


def resolve(sentence: Sentence, target: int) -> GovObj:
    tok = sentence.token(target)
    anchor = sentence.token(_syntactic_anchor(sentence, target))
    members = set(sentence.smwe_members(target))

    def head_of(position: Optional[int]) -> Optional[int]:
        if position is None:
            return None
        h = sentence.token(_first_conjunct(sentence, position)).head
        return h or None

    governor = obj = None
    if tok.lexcat == "PRON.POSS" or (anchor.deprel == "nmod:poss" and anchor.position == target):
        governor, config = head_of(anchor.position), POSSESSIVE
    elif tok.lexcat == "POSS":
        obj = anchor.head or None
        governor, config = head_of(obj), POSSESSIVE
    elif anchor.base_deprel == "case":
        obj = anchor.head or None
        governor, config = head_of(obj), DEFAULT
        if obj is not None and _has_copula(sentence, obj):
            config = PREDICATIVE
            governor = _child_with(sentence, obj, "nsubj", "csubj") or governor
    elif anchor.base_deprel == "mark":
        obj = anchor.head or None
        governor, config = head_of(obj), SUBORDINATING
    else:
        governor, config = anchor.head or None, DEFAULT
        if _has_copula(sentence, anchor.position):
            config = PREDICATIVE
            governor = _child_with(sentence, anchor.position, "nsubj", "csubj") or governor
    if obj in members:
        obj = None
    if governor in members or governor == target:
        governor = None
    if governor is None and obj is None and config == DEFAULT:
        config = STRANDED
    return GovObj(target, governor, obj, config)


def governor_match(gov_obj: GovObj, refined_edge: Edge, passage: Passage) -> bool:
    """Whether the refined unit contains the syntactic complement.

    Without an object, only a refinement on the target's own preterminal edge counts.
    """
    if gov_obj.object is not None:
        return gov_obj.object in passage.yield_of(refined_edge.child)
    return refined_edge.key == preterminal_edge(passage, gov_obj.target).key


def dump_tsv(rows: Iterable[tuple[str, GovObj]]) -> str:
    lines = ["sent_id\ttarget\tgovernor\tobject\tconfig"]
    for sid, g in rows:
        lines.append(f"{sid}\t{g.target}\t{g.governor or '_'}\t{g.object or '_'}\t{g.config}")
    return "\n".join(lines) + "\n"
