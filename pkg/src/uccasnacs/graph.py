"""UCCA passage graphs: units, labeled primary/remote edges and terminals.

A passage is immutable once built. Terminals are units with id ``0.<position>``;
every other unit is a nonterminal. Single-terminal units are collapsed, so the
category edge of a preterminal points at the terminal itself. Unanalyzable
multi-terminal units keep a nonterminal whose edges to the terminals carry the
structural :data:`~uccasnacs.inventory.TERMINAL` label.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import PassageFormatError
from .inventory import TERMINAL, Inventory, default_inventory

CATEGORY_DELIMITER = "+"
REFINEMENT_DELIMITER = "|"


def terminal_id(position: int) -> str:
    return f"0.{position}"


@dataclass(frozen=True)
class Terminal:
    position: int
    text: str

    @property
    def id(self) -> str:
        return terminal_id(self.position)


@dataclass(frozen=True)
class Unit:
    id: str
    kind: str  # "terminal" or "nonterminal"


@dataclass(frozen=True)
class Edge:
    parent: str
    child: str
    categories: frozenset
    remote: bool = False
    refinement: Optional[str] = None
    # Token position whose supersense produced the refinement, if known.
    anchor: Optional[int] = None

    @property
    def key(self) -> tuple[str, str, bool]:
        return self.parent, self.child, self.remote

    @property
    def is_terminal_link(self) -> bool:
        return self.categories == {TERMINAL}

    @property
    def label(self) -> str:
        return format_label(self.categories, self.refinement)

    def sort_key(self):
        return (_id_sort_key(self.parent), _id_sort_key(self.child), self.remote)


def format_label(categories: Iterable[str], refinement: Optional[str] = None) -> str:
    text = CATEGORY_DELIMITER.join(sorted(categories))
    if refinement:
        text += REFINEMENT_DELIMITER + refinement
    return text


def parse_label(text: str) -> tuple[frozenset, Optional[str]]:
    cats, _, ss = text.partition(REFINEMENT_DELIMITER)
    categories = frozenset(c for c in cats.split(CATEGORY_DELIMITER) if c)
    if not categories:
        raise PassageFormatError(f"label without category: {text!r}")
    return categories, (ss or None)


def _id_sort_key(unit_id: str):
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"[.]", unit_id))


class Passage:
    """One sentence's UCCA graph. Treat as read-only; see :class:`PassageBuilder`."""

    __slots__ = ("id", "terminals", "nonterminals", "edges", "root",
                 "_incoming", "_outgoing", "_yields", "_terminal_by_id", "_nonterminal_set")

    def __init__(self, id: str, terminals: Sequence[Terminal], nonterminals: Iterable[str],
                 edges: Iterable[Edge], root: str):
        self.id = id
        self.terminals = tuple(sorted(terminals, key=lambda t: t.position))
        self.nonterminals = tuple(sorted(set(nonterminals), key=_id_sort_key))
        self.edges = tuple(sorted(edges, key=Edge.sort_key))
        self.root = root
        self._terminal_by_id = {t.id: t for t in self.terminals}
        self._nonterminal_set = frozenset(self.nonterminals)
        self._incoming: dict[str, list[Edge]] = {}
        self._outgoing: dict[str, list[Edge]] = {}
        for e in self.edges:
            self._incoming.setdefault(e.child, []).append(e)
            self._outgoing.setdefault(e.parent, []).append(e)
        self._yields: dict[str, tuple[int, ...]] = {}

    def __repr__(self):
        return f"Passage({self.id!r}, {len(self.terminals)} terminals, {len(self.edges)} edges)"

    @property
    def units(self) -> tuple[Unit, ...]:
        return tuple(Unit(t.id, "terminal") for t in self.terminals) + tuple(
            Unit(u, "nonterminal") for u in self.nonterminals)

    def has_unit(self, unit_id: str) -> bool:
        return unit_id in self._terminal_by_id or unit_id in self._nonterminal_set

    def is_terminal(self, unit_id: str) -> bool:
        return unit_id in self._terminal_by_id

    def terminal(self, position: int) -> Terminal:
        return self.terminals[position - 1]

    def incoming(self, unit_id: str, remote: Optional[bool] = None) -> list[Edge]:
        edges = self._incoming.get(unit_id, [])
        return edges if remote is None else [e for e in edges if e.remote == remote]

    def outgoing(self, unit_id: str, remote: Optional[bool] = None) -> list[Edge]:
        edges = self._outgoing.get(unit_id, [])
        return edges if remote is None else [e for e in edges if e.remote == remote]

    def parent_edge(self, unit_id: str) -> Optional[Edge]:
        primary = self.incoming(unit_id, remote=False)
        return primary[0] if primary else None

    def children(self, unit_id: str) -> list[Edge]:
        """Primary child edges ordered by the first terminal of each child's yield."""
        return sorted(self.outgoing(unit_id, remote=False),
                      key=lambda e: (self.yield_of(e.child) or (0,))[0])

    def primary_edges(self) -> list[Edge]:
        return [e for e in self.edges if not e.remote]

    def remote_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.remote]

    def edge(self, key: tuple[str, str, bool]) -> Edge:
        for e in self._outgoing.get(key[0], []):
            if e.key == key:
                return e
        raise KeyError(key)

    def yield_of(self, unit_id: str) -> tuple[int, ...]:
        cached = self._yields.get(unit_id)
        if cached is not None:
            return cached
        if unit_id in self._terminal_by_id:
            result = (self._terminal_by_id[unit_id].position,)
        elif unit_id not in self._nonterminal_set:
            raise KeyError(f"unknown unit {unit_id!r}")
        else:
            positions: set[int] = set()
            stack, seen = [unit_id], {unit_id}
            while stack:
                u = stack.pop()
                if u in self._terminal_by_id:
                    positions.add(self._terminal_by_id[u].position)
                for e in self._outgoing.get(u, []):
                    if not e.remote and e.child not in seen:
                        seen.add(e.child)
                        stack.append(e.child)
            result = tuple(sorted(positions))
        self._yields[unit_id] = result
        return result

    def text(self) -> str:
        return " ".join(t.text for t in self.terminals)


# Module-level operations mirror the Passage methods for functional use.

def yield_of(passage: Passage, unit_id: str) -> tuple[int, ...]:
    return passage.yield_of(unit_id)


def preterminal_edge(passage: Passage, position: int) -> Edge:
    """The primary category edge over the terminal at ``position``.

    Inside an unanalyzable multi-terminal unit this is the unit's own incoming
    edge, which all of its terminals share.
    """
    edge = passage.parent_edge(terminal_id(position))
    if edge is None:
        raise KeyError(f"terminal {position} has no primary parent")
    if edge.is_terminal_link:
        outer = passage.parent_edge(edge.parent)
        if outer is not None:
            return outer
    return edge


def ancestors_path(passage: Passage, unit_id: str) -> list[Edge]:
    if not passage.has_unit(unit_id):
        raise KeyError(f"unknown unit {unit_id!r}")
    path = []
    seen = {unit_id}
    edge = passage.parent_edge(unit_id)
    while edge is not None and edge.parent not in seen:
        path.append(edge)
        seen.add(edge.parent)
        edge = passage.parent_edge(edge.parent)
    return path


def is_scene(passage: Passage, unit_id: str, exclude: Optional[str] = None) -> bool:
    """Whether the unit has a primary P or S child (other than ``exclude``)."""
    return any(("P" in e.categories or "S" in e.categories) and e.child != exclude
               for e in passage.outgoing(unit_id, remote=False))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    unit: Optional[str] = None
    edge: Optional[tuple] = None
    severity: str = "error"


def validate(passage: Passage, inventory: Optional[Inventory] = None, strict: bool = False) -> list[Violation]:
    """Check the formal constraints on a passage; an empty list means well-formed.

    With ``strict`` the result also includes warnings (remote edges into terminals).
    """
    inventory = inventory or default_inventory()
    out: list[Violation] = []
    positions = [t.position for t in passage.terminals]
    if positions != list(range(1, len(positions) + 1)):
        out.append(Violation("NonContiguousTerminals", f"terminal positions {positions} are not 1..n"))
    nonterminals = set(passage.nonterminals)
    known = nonterminals | {t.id for t in passage.terminals}
    if passage.root not in nonterminals:
        out.append(Violation("MissingRoot", f"root {passage.root!r} is not a nonterminal", passage.root))
    for e in passage.edges:
        for end in (e.parent, e.child):
            if end not in known:
                out.append(Violation("UnknownUnit", f"edge {e.key} references unknown unit {end!r}", end, e.key))
        if passage.is_terminal(e.parent):
            out.append(Violation("TerminalWithChildren", f"terminal {e.parent} has an outgoing edge", e.parent, e.key))
        if not e.categories:
            out.append(Violation("EmptyCategories", f"edge {e.key} has no category", edge=e.key))
        for c in e.categories:
            if c != TERMINAL and c not in inventory.categories:
                out.append(Violation("UnknownCategory", f"edge {e.key} has unknown category {c!r}", edge=e.key))
        if e.refinement is not None and e.refinement not in inventory.supersenses:
            out.append(Violation("UnknownSupersense", f"edge {e.key} refinement {e.refinement!r}", edge=e.key))
        if e.child == passage.root and not e.remote:
            out.append(Violation("RootHasParent", f"root has incoming primary edge {e.key}", e.child, e.key))
        if strict and e.remote and passage.is_terminal(e.child):
            out.append(Violation("RemoteToTerminal", f"remote edge {e.key} points to a terminal",
                                 e.child, e.key, severity="warning"))
    for u in sorted(known - {passage.root}, key=_id_sort_key):
        primary = passage.incoming(u, remote=False)
        if len(primary) > 1:
            out.append(Violation("DuplicatePrimaryParent", f"unit {u} has {len(primary)} primary parents", u))
        elif not primary:
            out.append(Violation("MissingPrimaryParent", f"unit {u} has no primary parent", u))
    # reachability over primary edges
    reached, stack = {passage.root}, [passage.root]
    while stack:
        for e in passage.outgoing(stack.pop(), remote=False):
            if e.child not in reached:
                reached.add(e.child)
                stack.append(e.child)
    for u in sorted(known - reached, key=_id_sort_key):
        out.append(Violation("Unreachable", f"unit {u} is not reachable from the root via primary edges", u))
    cycle = _find_cycle(passage)
    if cycle:
        out.append(Violation("Cycle", f"cycle through {cycle}", cycle))
    for u in passage.nonterminals:
        if u in reached and not passage.yield_of(u):
            out.append(Violation("EmptyYield", f"nonterminal {u} covers no terminals", u))
    return out


def _find_cycle(passage: Passage) -> Optional[str]:
    state: dict[str, int] = {}
    for start in [passage.root, *passage.nonterminals]:
        if start in state:
            continue
        stack = [(start, iter(passage.outgoing(start)))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                continue
            child = nxt.child
            if state.get(child) == 1:
                return child
            if child not in state:
                state[child] = 1
                stack.append((child, iter(passage.outgoing(child))))
    return None


class PassageBuilder:
    """Single-owner mutable construction of a :class:`Passage`."""

    def __init__(self, passage_id: str, terminals: Iterable = (), root: str = "1.1"):
        self.id = passage_id
        self.terminals: list[Terminal] = []
        self.root = root
        self.nonterminals: list[str] = [root]
        self.edges: dict[tuple, Edge] = {}
        self._next = 2
        for t in terminals:
            self.add_terminal(t.text if isinstance(t, Terminal) else t)

    def add_terminal(self, text: str) -> str:
        t = Terminal(len(self.terminals) + 1, text)
        self.terminals.append(t)
        return t.id

    def new_unit(self, unit_id: Optional[str] = None) -> str:
        if unit_id is None:
            unit_id = f"1.{self._next}"
            self._next += 1
        self.nonterminals.append(unit_id)
        return unit_id

    def add_edge(self, parent: str, child: str, categories: Iterable[str], remote: bool = False,
                 refinement: Optional[str] = None, anchor: Optional[int] = None) -> Edge:
        e = Edge(parent, child, frozenset(categories), remote, refinement, anchor)
        if e.key in self.edges:
            raise PassageFormatError(f"duplicate edge {e.key}")
        self.edges[e.key] = e
        return e

    def build(self) -> Passage:
        return Passage(self.id, self.terminals, self.nonterminals, self.edges.values(), self.root)


def with_edges(passage: Passage, updates: Mapping[tuple, Edge]) -> Passage:
    """A copy of ``passage`` with the edges named by ``updates`` replaced."""
    edges = [updates.get(e.key, e) for e in passage.edges]
    return Passage(passage.id, passage.terminals, passage.nonterminals, edges, passage.root)


def strip_refinements(passage: Passage) -> Passage:
    return Passage(passage.id, passage.terminals, passage.nonterminals,
                   [replace(e, refinement=None, anchor=None) for e in passage.edges], passage.root)


def refined_edges(passage: Passage) -> list[Edge]:
    return [e for e in passage.edges if e.refinement is not None]


def edge_signature(passage: Passage) -> list[tuple]:
    """Id-independent description of every edge, for isomorphism checks."""
    sig = []
    for e in passage.edges:
        parent_yield = passage.yield_of(e.parent)
        sig.append((parent_yield, passage.yield_of(e.child), tuple(sorted(e.categories)),
                    e.refinement or "", e.remote))
    return sorted(sig)


# Bracket notation -----------------------------------------------------------
#
#   [H [A I] [P went] [A|Goal [R to] [C ohm]]] [L after] [H ... [A* @1]]
#
# A unit is "[LABEL child ...]" with LABEL = CATS("|"SUPERSENSE)?("*")?("="NAME)?,
# CATS joined by "+". A starred unit is a remote edge to "@<position>" or
# "=<name>". Bare words are terminals numbered in reading order unless written
# "word@<position>". A unit over a single word collapses onto the terminal;
# one over several words is an unanalyzable unit.

_LABEL_RE = re.compile(r"^(?P<cats>[^|*=]+)(?:\|(?P<ss>[^*=]+))?(?P<remote>\*)?(?:=(?P<name>.+))?$")


@dataclass
class _Node:
    label: str
    children: list = field(default_factory=list)


def _tokenize(text: str) -> Iterator[str]:
    for tok in re.findall(r"\[|\]|[^\s\[\]]+", text):
        yield tok


def _parse_items(tokens: list[str], i: int, closing: bool):
    items = []
    while i < len(tokens):
        tok = tokens[i]
        if tok == "[":
            if i + 1 >= len(tokens) or tokens[i + 1] in "[]":
                raise PassageFormatError("unit without label")
            node = _Node(tokens[i + 1])
            node.children, i = _parse_items(tokens, i + 2, True)
            items.append(node)
        elif tok == "]":
            if not closing:
                raise PassageFormatError("unbalanced ']'")
            return items, i + 1
        else:
            items.append(tok)
            i += 1
    if closing:
        raise PassageFormatError("unbalanced '['")
    return items, i


def parse_bracketed(text: str, passage_id: str = "") -> Passage:
    tokens = list(_tokenize(text))
    items, _ = _parse_items(tokens, 0, False)
    words: dict[int, str] = {}
    counter = [0]
    names: dict[str, str] = {}
    pending_remotes: list[tuple[str, str, frozenset, Optional[str]]] = []
    nonterminals = ["1.1"]
    edges: list[Edge] = []

    def word(tok: str) -> str:
        text_, at, pos = tok.rpartition("@")
        if at and pos.isdigit() and text_:
            position = int(pos)
        else:
            text_, position = tok, counter[0] + 1
        counter[0] += 1
        if position in words:
            raise PassageFormatError(f"terminal position {position} used twice")
        words[position] = text_
        return terminal_id(position)

    def attach(parent: str, node: _Node):
        m = _LABEL_RE.match(node.label)
        if not m:
            raise PassageFormatError(f"bad label {node.label!r}")
        cats, ss = parse_label(m["cats"] + (f"|{m['ss']}" if m["ss"] else ""))
        if m["remote"]:
            if len(node.children) != 1 or not isinstance(node.children[0], str):
                raise PassageFormatError(f"remote {node.label!r} needs exactly one reference")
            pending_remotes.append((parent, node.children[0], cats, ss))
            return
        words_ = [c for c in node.children if isinstance(c, str)]
        units_ = [c for c in node.children if isinstance(c, _Node)]
        primary_units = [c for c in units_ if not _LABEL_RE.match(c.label)["remote"]]
        if words_ and primary_units:
            raise PassageFormatError(f"unit {node.label!r} mixes words and subunits")
        if len(words_) == 1 and not units_:
            child = word(words_[0])
        else:
            child = f"1.{len(nonterminals) + 1}"
            nonterminals.append(child)
            for w in words_:
                edges.append(Edge(child, word(w), frozenset({TERMINAL})))
            for c in units_:
                attach(child, c)
        if m["name"]:
            names[m["name"]] = child
        edges.append(Edge(parent, child, cats, False, ss))

    for item in items:
        if not isinstance(item, _Node):
            raise PassageFormatError(f"bare word {item!r} at root level")
        attach("1.1", item)
    for parent, ref, cats, ss in pending_remotes:
        if ref.startswith("@"):
            child = terminal_id(int(ref[1:]))
        elif ref.startswith("="):
            child = names[ref[1:]]
        else:
            raise PassageFormatError(f"bad remote reference {ref!r}")
        edges.append(Edge(parent, child, cats, True, ss))
    n = len(words)
    if sorted(words) != list(range(1, n + 1)):
        raise PassageFormatError(f"terminal positions {sorted(words)} are not 1..{n}")
    terminals = [Terminal(p, words[p]) for p in range(1, n + 1)]
    return Passage(passage_id, terminals, nonterminals, edges, "1.1")


def format_bracketed(passage: Passage) -> str:
    """Inverse of :func:`parse_bracketed` (up to unit ids)."""
    names = {}
    for e in passage.remote_edges():
        if not passage.is_terminal(e.child):
            names.setdefault(e.child, f"u{len(names) + 1}")
    seen = [0]

    def word(position: int) -> str:
        text = passage.terminal(position).text
        seen[0] += 1
        return text if position == seen[0] else f"{text}@{position}"

    def render(e: Edge) -> str:
        label = e.label
        if e.remote:
            ref = f"@{passage.yield_of(e.child)[0]}" if passage.is_terminal(e.child) else f"={names[e.child]}"
            return f"[{label}* {ref}]"
        if e.child in names:
            label += f"={names[e.child]}"
        if passage.is_terminal(e.child):
            return f"[{label} {word(int(e.child[2:]))}]"
        parts = [label]
        for c in passage.children(e.child):
            parts.append(word(int(c.child[2:])) if c.is_terminal_link else render(c))
        parts += [render(r) for r in passage.outgoing(e.child, remote=True)]
        return "[" + " ".join(parts) + "]"

    out = [render(e) for e in passage.children(passage.root)]
    out += [render(r) for r in passage.outgoing(passage.root, remote=True)]
    return " ".join(out)
