"""Stack/buffer transition system over integrated graphs, with a static oracle.

Edge labels are compound: a category set plus an optional supersense, written
``A|Goal`` at the text interface. The oracle builds a gold graph bottom-up:
units in post-order, each unit's children by leftmost terminal, remote edges
after all primary ones.
"""
from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import TransitionError
from .graph import Edge, Passage, Terminal, format_label, parse_label

SHIFT, REDUCE, SWAP, FINISH = "Shift", "Reduce", "Swap", "Finish"
NODE, REMOTE_NODE = "Node", "RemoteNode"
LEFT_EDGE, RIGHT_EDGE, LEFT_REMOTE, RIGHT_REMOTE = "LeftEdge", "RightEdge", "LeftRemote", "RightRemote"
STRUCTURAL = (SHIFT, REDUCE, SWAP, FINISH)
LABELED = (NODE, REMOTE_NODE, LEFT_EDGE, RIGHT_EDGE, LEFT_REMOTE, RIGHT_REMOTE)

TERMINAL_LEVEL = "terminal_level"
RELATION_LEVEL = "relation_level"
ROOT = "1.1"


@dataclass(frozen=True)
class Transition:
    kind: str
    categories: frozenset = frozenset()
    refinement: Optional[str] = None

    def __post_init__(self):
        if self.kind in STRUCTURAL:
            if self.categories or self.refinement:
                raise ValueError(f"{self.kind} takes no label")
        elif self.kind in LABELED:
            if not self.categories:
                raise ValueError(f"{self.kind} requires a label")
        else:
            raise ValueError(f"unknown transition kind {self.kind!r}")

    @classmethod
    def labeled(cls, kind: str, label: str) -> "Transition":
        cats, ss = parse_label(label)
        return cls(kind, cats, ss)

    @property
    def label(self) -> Optional[str]:
        return format_label(self.categories, self.refinement) if self.categories else None

    def __str__(self) -> str:
        return f"{self.kind}({self.label})" if self.categories else self.kind


def parse_transition(text: str) -> Transition:
    text = text.strip()
    if text.endswith(")") and "(" in text:
        kind, _, label = text[:-1].partition("(")
        return Transition.labeled(kind, label)
    return Transition(text)


def dumps_sequence(seq: Iterable[Transition]) -> str:
    return "".join(f"{t}\n" for t in seq)


def loads_sequence(text: str) -> list[Transition]:
    return [parse_transition(line) for line in text.splitlines() if line.strip()]


@dataclass
class ParserState:
    terminals: tuple
    stack: list = field(default_factory=lambda: [ROOT])
    buffer: deque = field(default_factory=deque)
    edges: list = field(default_factory=list)
    nonterminals: list = field(default_factory=lambda: [ROOT])
    history: list = field(default_factory=list)
    finished: bool = False
    _parent: dict = field(default_factory=dict)  # primary parent by child
    _pairs: set = field(default_factory=set)  # (parent, child) with any edge
    _next: int = 2

    @classmethod
    def initial(cls, terminals: Sequence[Terminal]) -> "ParserState":
        terminals = tuple(terminals)
        return cls(terminals, buffer=deque(t.id for t in terminals))

    @property
    def partial(self) -> Passage:
        return Passage("", self.terminals, self.nonterminals, self.edges, ROOT)

    def _is_terminal(self, unit: str) -> bool:
        return unit.startswith("0.")

    def _is_ancestor(self, unit: str, of: str) -> bool:
        cur: Optional[str] = of
        while cur is not None:
            if cur == unit:
                return True
            cur = self._parent.get(cur)
        return False

    def _new_unit(self) -> str:
        uid = f"1.{self._next}"
        self._next += 1
        self.nonterminals.append(uid)
        return uid

    def _add_edge(self, parent: str, child: str, t: Transition, remote: bool):
        self.edges.append(Edge(parent, child, t.categories, remote, t.refinement))
        self._pairs.add((parent, child))
        if not remote:
            self._parent[child] = parent

    def check(self, t: Transition) -> Optional[str]:
        """The violated precondition for ``t``, or None if legal."""
        if self.finished:
            return "state is already finished"
        k, stack = t.kind, self.stack
        if k == SHIFT:
            return None if self.buffer else "Shift requires a non-empty buffer"
        if k == FINISH:
            return None if not self.buffer else "Finish requires an empty buffer"
        if not stack:
            return f"{k} requires a non-empty stack"
        s0 = stack[-1]
        if k == REDUCE:
            if s0 == ROOT:
                return "Reduce cannot pop the root"
            return None if s0 in self._parent else "Reduce requires the top unit to have a primary parent"
        if k in (NODE, REMOTE_NODE):
            if s0 == ROOT:
                return f"{k} cannot attach the root as a child"
            if k == NODE and s0 in self._parent:
                return "Node requires the top unit to lack a primary parent"
            return None
        if len(stack) < 2:
            return f"{k} requires at least two stack units"
        s1 = stack[-2]
        if k == SWAP:
            return "Swap cannot move the root" if s1 == ROOT else None
        parent, child = (s0, s1) if k in (LEFT_EDGE, LEFT_REMOTE) else (s1, s0)
        if self._is_terminal(parent):
            return f"{k} parent {parent} is a terminal"
        if child == ROOT:
            return f"{k} cannot attach the root as a child"
        if (parent, child) in self._pairs:
            return f"{k} duplicates an existing edge {parent} -> {child}"
        if k in (LEFT_EDGE, RIGHT_EDGE):
            if child in self._parent:
                return f"{k} child {child} already has a primary parent"
            if self._is_ancestor(child, parent):
                return f"{k} would create a cycle through {child}"
        return None

    def step(self, t: Transition) -> "ParserState":
        """Apply ``t`` in place."""
        problem = self.check(t)
        if problem:
            raise TransitionError(f"illegal {t}: {problem}", len(self.history))
        k = t.kind
        if k == SHIFT:
            self.stack.append(self.buffer.popleft())
        elif k == REDUCE:
            self.stack.pop()
        elif k == SWAP:
            self.buffer.appendleft(self.stack.pop(-2))
        elif k == FINISH:
            self.finished = True
        elif k in (NODE, REMOTE_NODE):
            uid = self._new_unit()
            self._add_edge(uid, self.stack[-1], t, k == REMOTE_NODE)
            self.buffer.appendleft(uid)
        else:
            s0, s1 = self.stack[-1], self.stack[-2]
            parent, child = (s0, s1) if k in (LEFT_EDGE, LEFT_REMOTE) else (s1, s0)
            self._add_edge(parent, child, t, k in (LEFT_REMOTE, RIGHT_REMOTE))
        self.history.append(t)
        return self


def apply(state: ParserState, t: Transition) -> ParserState:
    """A new state with ``t`` applied; ``state`` is left untouched."""
    return copy.deepcopy(state).step(t)


def replay(terminals: Sequence[Terminal], seq: Iterable[Transition], passage_id: str = "") -> Passage:
    state = ParserState.initial(terminals)
    for i, t in enumerate(seq):
        try:
            state.step(t)
        except TransitionError as e:
            raise TransitionError(str(e), i) from None
    if not state.finished:
        raise TransitionError("sequence does not end with Finish", len(state.history))
    p = state.partial
    return Passage(passage_id, p.terminals, p.nonterminals, p.edges, p.root)


# Oracle -----------------------------------------------------------------------

class _Oracle:
    def __init__(self, gold: Passage):
        self.gold = gold
        self.state = ParserState.initial(gold.terminals)
        self.to_state = {gold.root: ROOT, **{t.id: t.id for t in gold.terminals}}
        self.pending = {u: 0 for u in self.to_state}
        for e in gold.edges:
            self.pending[e.parent] = self.pending.get(e.parent, 0) + 1
            self.pending[e.child] = self.pending.get(e.child, 0) + 1
        self.to_gold = {}

    def emit(self, kind: str, edge: Optional[Edge] = None):
        t = Transition(kind, edge.categories, edge.refinement) if edge is not None else Transition(kind)
        self.state.step(t)

    def _depth(self, unit: str) -> Optional[int]:
        stack = self.state.stack
        for d in range(len(stack)):
            if stack[-1 - d] == unit:
                return d
        return None

    def _shift_until(self, *units: str):
        while any(self._depth(u) is None for u in units):
            if not self.state.buffer:
                raise TransitionError(f"unit {units} unreachable", len(self.state.history))
            self.emit(SHIFT)

    def _to_top(self, unit: str):
        self._shift_until(unit)
        while self._depth(unit) > 1:
            self.emit(SWAP)
        if self._depth(unit) == 1:
            self.emit(SWAP)
            self.emit(SHIFT)

    def _bring_pair(self, a: str, b: str):
        self._shift_until(a, b)
        upper, lower = (a, b) if self._depth(a) < self._depth(b) else (b, a)
        self._to_top(upper)
        while self._depth(lower) > 1:
            self.emit(SWAP)

    def _done(self, gold_edge: Edge):
        for u in (gold_edge.parent, gold_edge.child):
            self.pending[u] -= 1
        self._reduce_complete()

    def _reduce_complete(self):
        st = self.state
        while st.stack and st.stack[-1] != ROOT and self.pending[self.to_gold[st.stack[-1]]] == 0:
            self.emit(REDUCE)

    def _attach(self, e: Edge):
        parent, child = self.to_state[e.parent], self.to_state[e.child]
        self._bring_pair(parent, child)
        left = self.state.stack[-1] == parent
        if e.remote:
            self.emit(LEFT_REMOTE if left else RIGHT_REMOTE, e)
        else:
            self.emit(LEFT_EDGE if left else RIGHT_EDGE, e)
        self._done(e)

    def run(self) -> list[Transition]:
        g = self.gold
        for u, s in self.to_state.items():
            self.to_gold[s] = u
        for unit in self._post_order(g.root):
            children = g.children(unit)
            if not children:
                raise TransitionError(f"unit {unit} has no children", len(self.state.history))
            rest = children
            if unit != g.root:
                first = children[0]
                self._to_top(self.to_state[first.child])
                self.emit(NODE, first)
                uid = self.state.buffer[0]
                self.to_state[unit], self.to_gold[uid] = uid, unit
                self.emit(SHIFT)
                self._done(first)
                rest = children[1:]
            for e in rest:
                self._attach(e)
        for e in sorted(g.remote_edges(), key=Edge.sort_key):
            self._attach(e)
        while self.state.buffer:
            self.emit(SHIFT)
            self._reduce_complete()
        self.emit(FINISH)
        return list(self.state.history)

    def _post_order(self, root: str) -> list[str]:
        out, stack = [], [(root, False)]
        while stack:
            unit, expanded = stack.pop()
            if expanded:
                out.append(unit)
                continue
            stack.append((unit, True))
            for e in reversed(self.gold.children(unit)):
                if not self.gold.is_terminal(e.child):
                    stack.append((e.child, False))
        return out


def oracle(gold: Passage, encoding: str = RELATION_LEVEL) -> list[Transition]:
    """A legal transition sequence whose replay rebuilds ``gold``.

    With ``terminal_level``, refinements are first moved onto the preterminal
    edges of their anchoring tokens.
    """
    if encoding == TERMINAL_LEVEL:
        from .integrate import to_terminal_level
        gold = to_terminal_level(gold)
    elif encoding != RELATION_LEVEL:
        raise ValueError(f"unknown encoding {encoding!r}")
    return _Oracle(gold).run()


def encode(gold: Passage, encoding: str) -> Passage:
    """The graph an encoding's oracle targets."""
    if encoding == TERMINAL_LEVEL:
        from .integrate import to_terminal_level
        return to_terminal_level(gold)
    return gold


__all__ = ["Transition", "ParserState", "apply", "replay", "oracle", "encode", "parse_transition",
           "dumps_sequence", "loads_sequence", "TERMINAL_LEVEL", "RELATION_LEVEL"]
