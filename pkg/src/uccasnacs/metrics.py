"""Edge-level precision/recall/F1 between gold and predicted integrated graphs.

Edges are compared through their child yields. Within one graph, edges sharing
a yield collapse into a single key whose category and refinement sets are the
unions, so every metric reduces to counting yields on which a predicate holds.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import EvaluationError
from .graph import Passage

METRICS = ("ucca_labeled", "ucca_unlabeled", "full",
           "refined_exact", "refined_snacs", "refined_ucca", "refined_unlabeled")


@dataclass(frozen=True)
class EdgeKey:
    child_yield: tuple
    categories: frozenset
    refinements: frozenset = frozenset()
    remote: bool = False

    @property
    def refinement(self) -> Optional[str]:
        return "+".join(sorted(self.refinements)) or None

    @property
    def refined(self) -> bool:
        return bool(self.refinements)


def edge_keys(passage: Passage, remote: bool = False) -> dict[tuple, EdgeKey]:
    """Keys by yield for primary (or, with ``remote=True``, remote) category edges."""
    cats: dict[tuple, set] = {}
    refs: dict[tuple, set] = {}
    for e in passage.edges:
        if e.remote != remote or e.is_terminal_link:
            continue
        y = passage.yield_of(e.child)
        cats.setdefault(y, set()).update(e.categories)
        refs.setdefault(y, set())
        if e.refinement:
            refs[y].add(e.refinement)
    return {y: EdgeKey(y, frozenset(cats[y]), frozenset(refs[y]), remote) for y in cats}


@dataclass
class Score:
    matched: int = 0
    gold_count: int = 0
    pred_count: int = 0

    @property
    def precision(self) -> float:
        return self.matched / self.pred_count if self.pred_count else 0.0

    @property
    def recall(self) -> float:
        return self.matched / self.gold_count if self.gold_count else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def __iadd__(self, other: "Score") -> "Score":
        self.matched += other.matched
        self.gold_count += other.gold_count
        self.pred_count += other.pred_count
        return self

    def as_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1,
                "matched": self.matched, "gold_count": self.gold_count, "pred_count": self.pred_count}


@dataclass
class ScoreReport:
    scores: dict = field(default_factory=lambda: {m: Score() for m in METRICS})

    def __getitem__(self, metric: str) -> Score:
        return self.scores[metric]

    def __iadd__(self, other: "ScoreReport") -> "ScoreReport":
        for m in METRICS:
            self.scores[m] += other.scores[m]
        return self

    def as_dict(self) -> dict:
        return {m: self.scores[m].as_dict() for m in METRICS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_tsv(self) -> str:
        lines = ["metric\tprecision\trecall\tf1\tmatched\tgold\tpred"]
        for m in METRICS:
            s = self.scores[m]
            lines.append(f"{m}\t{s.precision:.4f}\t{s.recall:.4f}\t{s.f1:.4f}\t{s.matched}\t{s.gold_count}\t"
                         f"{s.pred_count}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        width = max(map(len, METRICS))
        head = f"{'metric':<{width}}  {'P':>6}  {'R':>6}  {'F':>6}  {'match':>6}  {'gold':>6}  {'pred':>6}"
        lines = [head, "-" * len(head)]
        for m in METRICS:
            s = self.scores[m]
            lines.append(f"{m:<{width}}  {s.precision:6.3f}  {s.recall:6.3f}  {s.f1:6.3f}  "
                         f"{s.matched:6d}  {s.gold_count:6d}  {s.pred_count:6d}")
        return "\n".join(lines) + "\n"


def _labeled(g: EdgeKey, p: EdgeKey) -> bool:
    return bool(g.categories & p.categories)


def _snacs(g: EdgeKey, p: EdgeKey) -> bool:
    return bool(g.refinements & p.refinements)


# metric -> (restrict to refined keys?, match predicate on same-yield keys)
_PREDICATES: dict[str, tuple[bool, Callable[[EdgeKey, EdgeKey], bool]]] = {
    "ucca_labeled": (False, _labeled),
    "ucca_unlabeled": (False, lambda g, p: True),
    "full": (False, lambda g, p: _labeled(g, p) and g.refinements == p.refinements),
    "refined_exact": (True, lambda g, p: _labeled(g, p) and _snacs(g, p)),
    "refined_snacs": (True, _snacs),
    "refined_ucca": (True, _labeled),
    "refined_unlabeled": (True, lambda g, p: True),
}


def score_keys(gold: dict[tuple, EdgeKey], pred: dict[tuple, EdgeKey]) -> ScoreReport:
    report = ScoreReport()
    for metric, (refined_only, match) in _PREDICATES.items():
        g = {y: k for y, k in gold.items() if k.refined or not refined_only}
        p = {y: k for y, k in pred.items() if k.refined or not refined_only}
        matched = sum(1 for y in g.keys() & p.keys() if match(g[y], p[y]))
        report.scores[metric] = Score(matched, len(g), len(p))
    return report


def score(gold: Passage, pred: Passage) -> ScoreReport:
    if [t.text for t in gold.terminals] != [t.text for t in pred.terminals]:
        raise EvaluationError(f"passage {gold.id}: terminal sequences differ between gold and prediction")
    return score_keys(edge_keys(gold), edge_keys(pred))


def score_corpus(pairs: Iterable[tuple[Passage, Passage]]) -> ScoreReport:
    """Micro-averaged report: counts are summed over pairs before computing P/R/F."""
    total = ScoreReport()
    for gold, pred in pairs:
        total += score(gold, pred)
    return total


def pair_by_id(gold: Iterable[Passage], pred: Iterable[Passage]) -> list[tuple[Passage, Passage]]:
    gold, pred = list(gold), list(pred)
    by_id = {p.id: p for p in pred}
    if len(gold) != len(pred):
        raise EvaluationError(f"corpus sizes differ: {len(gold)} gold vs {len(pred)} predicted")
    pairs = []
    for g in sorted(gold, key=lambda p: p.id):
        if g.id not in by_id:
            raise EvaluationError(f"no prediction for passage {g.id}")
        pairs.append((g, by_id[g.id]))
    return pairs
