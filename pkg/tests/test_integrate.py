import pytest

from placements import EXPECTED, EXPECTED_FAILURES
from uccasnacs.conllulex import AlignedSentence, Sentence
from uccasnacs.graph import edge_signature, parse_bracketed, strip_refinements
from uccasnacs.integrate import (ConstructionType, IntegrationOptions, failures_tsv, integrate_corpus,
                                 integrate_sentence, to_terminal_level)
from uccasnacs.ucca_io import dumps_json


def _result(integrated, sid, target):
    return next(r for r in integrated[sid][2] if r.target == target)


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_rule_catalogue_placement(integrated, key):
    kind, cats, yld, ss, scene = EXPECTED[key]
    _, p, _ = integrated[key[0]]
    r = _result(integrated, *key)
    assert r.refined, r.reason
    e = p.edge(r.edge)
    assert (r.kind.value, set(e.categories), p.yield_of(e.child), e.refinement, r.scene) == \
        (kind, cats, yld, ss, scene)
    assert e.anchor == key[1] and not e.remote


@pytest.mark.parametrize("key", sorted(EXPECTED_FAILURES))
def test_documented_failures(integrated, key):
    r = _result(integrated, *key)
    assert not r.refined
    assert r.reason.startswith(EXPECTED_FAILURES[key])


def test_every_construction_kind_is_covered():
    assert {v[0] for v in EXPECTED.values()} == {k.value for k in ConstructionType}


def test_every_rule_target_is_listed(rules, integrated):
    listed = {k for k in EXPECTED}
    seen = {(a.id, r.target) for a in rules for r in integrated[a.id][2]}
    assert seen == listed


def test_locality_and_inputs_untouched(integrated):
    for aligned, p, results in integrated.values():
        before = edge_signature(aligned.passage)
        assert edge_signature(strip_refinements(p)) == before
        assert not any(e.refinement for e in aligned.passage.edges)
        assert sum(e.refinement is not None for e in p.edges) == sum(r.refined for r in results)


def test_determinism(rules):
    a = [dumps_json(p) for p in integrate_corpus(rules)[0]]
    b = [dumps_json(p) for p in integrate_corpus(list(reversed(rules)))[0]][::-1]
    assert a == b


def test_zero_targets_leave_passage_unchanged(rules):
    aligned = rules[0]
    tokens = tuple(t.__class__(**{**t.__dict__, "scene_role": None}) for t in aligned.sentence.tokens)
    bare = AlignedSentence(Sentence(aligned.sentence.id, tokens), aligned.passage)
    passages, results = integrate_corpus([bare])
    assert results == [] and passages[0] is aligned.passage


def test_failures_report(integrated):
    rows = failures_tsv(r for _, _, res in integrated.values() for r in res).splitlines()
    assert rows[0].split("\t") == ["sent_id", "target", "supersense", "kind", "reason"]
    assert {tuple(r.split("\t")[:2]) for r in rows[1:]} == {("asas", "5"), ("coordination", "6")}


def test_ignore_punct_option(rules):
    # "!" closes the modifier unit; with punctuation ignored the adposition is still first.
    aligned = next(a for a in rules if a.id == "service")
    p, res = integrate_sentence(aligned, IntegrationOptions(ignore_punct=True))
    assert res[0].refined and p.yield_of(p.edge(res[0].edge).child) == (3, 4, 5)


def test_remote_refinement_is_optional(rules):
    aligned = next(a for a in rules if a.id == "ohm")
    passage = parse_bracketed("[H [A I] [P went] [A [R to] [C ohm]]] [L after] "
                              "[H [P reading] [A [Q some] [R of] [F the] [C reviews]] [A* @1]] "
                              "[H* =goal]".replace("[A [R to] [C ohm]]", "[A=goal [R to] [C ohm]]"), "ohm")
    a = AlignedSentence(aligned.sentence, passage)
    p0, r0 = integrate_sentence(a)
    assert r0[0].remote_edges == 1 and not any(e.refinement for e in p0.remote_edges())
    p1, _ = integrate_sentence(a, IntegrationOptions(refine_remotes=True))
    assert [e.refinement for e in p1.remote_edges() if e.categories == {"H"}] == ["Goal"]


def test_terminal_level_moves_refinements_to_preterminals(integrated):
    _, p, _ = integrated["ohm"]
    t = to_terminal_level(p)
    refined = sorted((e.label, t.yield_of(e.child)) for e in t.edges if e.refinement)
    assert refined == [("L|Explanation", (5,)), ("R|Goal", (3,)), ("R|Quantity", (8,))]
