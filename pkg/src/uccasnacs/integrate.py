"""Project token-level scene-role supersenses onto UCCA edges.

Each target starts at its preterminal and walks up the primary tree until an
edge meets the criterion of the target's construction type; that edge receives
the supersense as its refinement.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from . import govobj as go
from .conllulex import AlignedSentence, Sentence, snacs_targets
from .graph import (Edge, Passage, ancestors_path, is_scene, preterminal_edge, strip_refinements,
                    with_edges)


class ConstructionType(str, enum.Enum):
    SCENE_MODIFIER = "scene_modifier"
    NONSCENE_MODIFIER = "nonscene_modifier"
    PARTITIVE = "partitive"
    QUANTITY = "quantity"
    PREDICATION = "predication"
    LINKAGE = "linkage"
    INFINITIVAL_PURPOSE = "infinitival_purpose"
    INTRANSITIVE = "intransitive"
    APPROXIMATOR = "approximator"
    POSSESSIVE_PRONOUN = "possessive_pronoun"
    PP_IDIOM = "pp_idiom"


CANONICAL = frozenset({ConstructionType.SCENE_MODIFIER, ConstructionType.NONSCENE_MODIFIER,
                       ConstructionType.PARTITIVE, ConstructionType.QUANTITY})

# These kinds refine the target's own preterminal edge.
_PRETERMINAL_KINDS = frozenset({ConstructionType.INTRANSITIVE, ConstructionType.APPROXIMATOR,
                                ConstructionType.POSSESSIVE_PRONOUN, ConstructionType.PP_IDIOM})


@dataclass(frozen=True)
class IntegrationOptions:
    # Drop punctuation terminals before the first/last-terminal test.
    ignore_punct: bool = False
    # Also copy the refinement onto remote edges entering the refined unit.
    refine_remotes: bool = False


@dataclass(frozen=True)
class IntegrationResult:
    sentence_id: str
    target: int
    supersense: str
    kind: Optional[ConstructionType]
    edge: Optional[tuple] = None
    reason: Optional[str] = None
    scene: Optional[bool] = None
    governor_match: Optional[bool] = None
    remote_edges: int = 0

    @property
    def refined(self) -> bool:
        return self.edge is not None


class _Failure(Exception):
    pass


def _unit_of(passage: Passage, position: int) -> str:
    return preterminal_edge(passage, position).child


def _anchor_positions(sentence: Sentence, target: int) -> set[int]:
    return set(sentence.smwe_members(target))


def _has(edge: Optional[Edge], category: str) -> bool:
    return edge is not None and category in edge.categories


def _object_unit_edge(passage: Passage, target: int, obj: int) -> Optional[Edge]:
    """Lowest edge above the target's preterminal whose unit also covers the object."""
    for e in ancestors_path(passage, _unit_of(passage, target))[1:]:
        if obj in passage.yield_of(e.child):
            return e
    return None


def classify(aligned: AlignedSentence, target: int, gov_obj: go.GovObj,
             passage: Optional[Passage] = None, options: IntegrationOptions = IntegrationOptions()
             ) -> ConstructionType:
    passage = passage or aligned.passage
    tok = aligned.sentence.token(target)
    pre = preterminal_edge(passage, target)
    if tok.lexcat == "PP":
        return ConstructionType.PP_IDIOM
    if tok.lexcat == "PRON.POSS":
        return ConstructionType.POSSESSIVE_PRONOUN
    pre_parent = passage.parent_edge(pre.parent)
    linker = _has(pre, "L") or _has(pre_parent, "L")
    if tok.lexcat == "INF.P" and not linker:
        return ConstructionType.INFINITIVAL_PURPOSE
    if tok.scene_role == "Approximator":
        return ConstructionType.APPROXIMATOR
    if linker:
        return ConstructionType.LINKAGE
    if gov_obj.config == go.PREDICATIVE:
        return ConstructionType.PREDICATION
    if gov_obj.object is None:
        return ConstructionType.INTRANSITIVE
    if tok.scene_role == "Quantity":
        return ConstructionType.QUANTITY
    if gov_obj.governor is not None:
        gov_edge = preterminal_edge(passage, gov_obj.governor)
        if _has(gov_edge, "C") and _has(_object_unit_edge(passage, target, gov_obj.object), "C"):
            return ConstructionType.PARTITIVE
    try:
        edge = _modifier_edge(passage, aligned.sentence, target, options)
    except _Failure:
        return ConstructionType.SCENE_MODIFIER
    return (ConstructionType.SCENE_MODIFIER if is_scene(passage, edge.parent, exclude=edge.child)
            else ConstructionType.NONSCENE_MODIFIER)


def _first_last(passage: Passage, unit: str, options: IntegrationOptions) -> tuple[int, int]:
    y = passage.yield_of(unit)
    if options.ignore_punct:
        y = tuple(p for p in y if preterminal_edge(passage, p).categories != {"U"}) or y
    return y[0], y[-1]


def _modifier_edge(passage: Passage, sentence: Sentence, target: int, options: IntegrationOptions) -> Edge:
    anchors = _anchor_positions(sentence, target)
    for e in ancestors_path(passage, _unit_of(passage, target))[1:]:
        if "C" in e.categories:
            continue
        first, last = _first_last(passage, e.child, options)
        if first in anchors or last in anchors:
            return e
    raise _Failure("no non-Center ancestor with the adposition at its edge")


def _first_non_center(passage: Passage, path: Sequence[Edge], exclude: Iterable[int] = ()) -> Edge:
    exclude = set(exclude)
    for e in path:
        if "C" in e.categories:
            continue
        if exclude & set(passage.yield_of(e.child)):
            break
        return e
    raise _Failure("no non-Center unit above the token")


def _linkage_edge(passage: Passage, target: int, gov_obj: go.GovObj) -> Edge:
    pre = preterminal_edge(passage, target)
    linker = pre.child if "L" in pre.categories else pre.parent
    container = passage.parent_edge(linker).parent if passage.parent_edge(linker) else None
    if container is None:
        raise _Failure("linker has no parent unit")
    scenes = [e for e in passage.children(container) if "H" in e.categories and e.child != linker]
    if gov_obj.object is not None:
        for e in scenes:
            if gov_obj.object in passage.yield_of(e.child):
                return e
    linker_end = passage.yield_of(linker)[-1]
    following = [e for e in scenes if passage.yield_of(e.child)[0] > linker_end]
    if following:
        return following[0]
    if scenes:
        return scenes[-1]
    raise _Failure("no parallel scene next to the linker")


def _target_edge(passage: Passage, sentence: Sentence, target: int, ctype: ConstructionType,
                 gov_obj: go.GovObj, options: IntegrationOptions) -> Edge:
    pre = preterminal_edge(passage, target)
    if ctype in _PRETERMINAL_KINDS:
        return pre
    if ctype in (ConstructionType.SCENE_MODIFIER, ConstructionType.NONSCENE_MODIFIER):
        return _modifier_edge(passage, sentence, target, options)
    if ctype == ConstructionType.QUANTITY:
        if gov_obj.governor is None:
            raise _Failure("quantity without a governor")
        path = ancestors_path(passage, _unit_of(passage, gov_obj.governor))
        return _first_non_center(passage, path, exclude=_anchor_positions(sentence, target))
    if ctype == ConstructionType.PARTITIVE:
        edge = _object_unit_edge(passage, target, gov_obj.object)
        if edge is None:
            raise _Failure("no unit covers the object")
        return edge
    if ctype == ConstructionType.PREDICATION:
        if gov_obj.object is None:
            return pre
        return _first_non_center(passage, ancestors_path(passage, _unit_of(passage, gov_obj.object)))
    if ctype == ConstructionType.LINKAGE:
        return _linkage_edge(passage, target, gov_obj)
    if ctype == ConstructionType.INFINITIVAL_PURPOSE:
        return _first_non_center(passage, ancestors_path(passage, pre.child)[1:])
    raise ValueError(ctype)


def place(aligned: AlignedSentence, target: int, ctype: ConstructionType, gov_obj: go.GovObj,
          passage: Optional[Passage] = None, options: IntegrationOptions = IntegrationOptions()
          ) -> IntegrationResult:
    """Find the edge to refine; ``passage`` carries refinements placed so far."""
    passage = passage or aligned.passage
    supersense = aligned.sentence.token(target).scene_role
    base = IntegrationResult(aligned.id, target, supersense, ctype)
    try:
        edge = _target_edge(passage, aligned.sentence, target, ctype, gov_obj, options)
    except _Failure as f:
        return replace(base, reason=str(f))
    if edge.refinement is not None and edge.refinement != supersense:
        return replace(base, reason=f"conflict: edge already refined as {edge.refinement}")
    if ctype in (ConstructionType.LINKAGE, ConstructionType.PREDICATION):
        scene = True
    else:
        scene = is_scene(passage, edge.parent, exclude=edge.child)
    return replace(base, edge=edge.key, scene=scene,
                   governor_match=go.governor_match(gov_obj, edge, passage),
                   remote_edges=len(passage.incoming(edge.child, remote=True)))


def apply_result(passage: Passage, result: IntegrationResult, options: IntegrationOptions = IntegrationOptions()
                 ) -> Passage:
    if not result.refined:
        return passage
    edge = passage.edge(result.edge)
    if edge.refinement == result.supersense:
        return passage
    updates = {edge.key: replace(edge, refinement=result.supersense, anchor=result.target)}
    if options.refine_remotes:
        for r in passage.incoming(edge.child, remote=True):
            if r.refinement is None:
                updates[r.key] = replace(r, refinement=result.supersense, anchor=result.target)
    return with_edges(passage, updates)


def integrate_sentence(aligned: AlignedSentence, options: IntegrationOptions = IntegrationOptions()
                       ) -> tuple[Passage, list[IntegrationResult]]:
    passage = aligned.passage
    results = []
    for target in snacs_targets(aligned.sentence):
        gov_obj = go.resolve(aligned.sentence, target)
        ctype = classify(aligned, target, gov_obj, passage, options)
        result = place(aligned, target, ctype, gov_obj, passage, options)
        passage = apply_result(passage, result, options)
        results.append(result)
    return passage, results


def integrate_corpus(corpus: Iterable[AlignedSentence], options: IntegrationOptions = IntegrationOptions()
                     ) -> tuple[list[Passage], list[IntegrationResult]]:
    passages, results = [], []
    for aligned in corpus:
        p, r = integrate_sentence(aligned, options)
        passages.append(p)
        results.extend(r)
    return passages, results


def failures_tsv(results: Iterable[IntegrationResult]) -> str:
    lines = ["sent_id\ttarget\tsupersense\tkind\treason"]
    for r in results:
        if not r.refined:
            kind = r.kind.value if r.kind else "_"
            lines.append(f"{r.sentence_id}\t{r.target}\t{r.supersense}\t{kind}\t{r.reason}")
    return "\n".join(lines) + "\n"


# Terminal-level encoding ----------------------------------------------------

def to_terminal_level(passage: Passage) -> Passage:
    """Move every anchored refinement onto its anchor token's preterminal edge."""
    moves = sorted((e for e in passage.primary_edges() if e.refinement and e.anchor), key=lambda e: e.anchor)
    updates = {e.key: replace(e, refinement=None, anchor=None) for e in moves}
    for e in moves:
        pre = preterminal_edge(passage, e.anchor)
        current = updates.get(pre.key, pre)
        if current.refinement is None:
            updates[pre.key] = replace(current, refinement=e.refinement, anchor=e.anchor)
    return with_edges(passage, updates)


def lift_terminal_level(aligned: AlignedSentence, options: IntegrationOptions = IntegrationOptions()
                        ) -> tuple[Passage, list[IntegrationResult]]:
    """Re-run integration using supersenses read off the preterminal edges."""
    passage = aligned.passage
    by_position = {}
    for e in passage.primary_edges():
        if e.refinement is not None:
            position = e.anchor if e.anchor is not None else passage.yield_of(e.child)[0]
            by_position.setdefault(position, e.refinement)
    tokens = tuple(replace(t, scene_role=by_position.get(t.position)) for t in aligned.sentence.tokens)
    sentence = replace(aligned.sentence, tokens=tokens)
    return integrate_sentence(AlignedSentence(sentence, strip_refinements(passage)), options)
