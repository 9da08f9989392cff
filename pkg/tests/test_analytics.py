from collections import Counter

from uccasnacs.analytics import (SplitStats, breakdown_rows, construction_breakdown, corpus_stats, split_stats,
                                 to_markdown, to_tsv)
from uccasnacs.integrate import ConstructionType as CT, integrate_corpus


def test_worked_example_breakdown(integrated):
    _, _, results = integrated["ohm"]
    c = construction_breakdown(results)
    assert c[CT.SCENE_MODIFIER.value] == 1 and c[CT.QUANTITY.value] == 1 and c[CT.LINKAGE.value] == 1
    assert c["canonical_scene"] == 1 and c["canonical_nonscene"] == 1 and c["canonical"] == 2
    assert c["noncanonical"] == 1 and c["refined"] == 3


def test_empty_corpus_is_all_zeros():
    s = split_stats([], [], [])
    assert s == SplitStats() and s.coverage == 0.0
    rows = corpus_stats({"train": s})
    assert all(v == 0 for _, values in rows for v in values)
    assert all(v == 0 for _, values in breakdown_rows({"train": construction_breakdown([])}) for v in values)


def test_kind_counts_sum_to_successes(rules, limitations):
    for corpus in (rules, limitations):
        passages, results = integrate_corpus(corpus)
        c = construction_breakdown(results)
        stats = split_stats(corpus, passages, results)
        assert sum(c[k.value] for k in CT) == stats.successes == c["refined"]
        assert c["canonical"] == c["canonical_scene"] + c["canonical_nonscene"]
        assert c["canonical"] + c["noncanonical"] == c["refined"]
        for kind in ("intransitive", "possessive", "infinitival"):
            enum = {"intransitive": CT.INTRANSITIVE, "possessive": CT.POSSESSIVE_PRONOUN,
                    "infinitival": CT.INFINITIVAL_PURPOSE}[kind]
            assert c[f"{kind}_scene"] + c[f"{kind}_nonscene"] == c[enum.value]


def test_rules_corpus_table(rules):
    passages, results = integrate_corpus(rules)
    s = split_stats(rules, passages, results)
    assert (s.sentences, s.targets, s.successes, s.refined_edges, s.remote_edges) == (21, 25, 25, 25, 2)
    assert s.coverage == 1.0


def test_emitters_have_a_total_column():
    a, b = SplitStats(sentences=2, targets=4, successes=3), SplitStats(sentences=1, targets=1, successes=1)
    rows = corpus_stats({"dev": a, "test": b})
    assert dict(rows)["sentences"] == [2, 1, 3]
    assert dict(rows)["coverage"] == [0.75, 1.0, 0.8]
    md = to_markdown(rows, ["dev", "test"])
    assert md.splitlines()[0] == "|  | dev | test | total |"
    tsv = to_tsv(breakdown_rows({"dev": Counter(refined=2), "test": Counter(refined=1)}), ["dev", "test"])
    assert tsv.splitlines()[1] == "refined\t2\t1\t3"
