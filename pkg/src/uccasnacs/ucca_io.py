"""Reading and writing passages: native JSON, UCCA XML, and Graphviz DOT."""
from __future__ import annotations

import json
import os
import xml.etree.ElementTree as ET
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

import jsonschema

from .errors import PassageFormatError
from .graph import Edge, Passage, Terminal, _id_sort_key, preterminal_edge, terminal_id
from .inventory import TERMINAL

# UCCA XML edge types that are not foundational-layer categories.
_LINKAGE_TYPES = {"LA", "LR", "LNK"}


@lru_cache(maxsize=1)
def passage_schema() -> dict:
    text = resources.files("uccasnacs.data").joinpath("passage.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# JSON -----------------------------------------------------------------------

def passage_to_dict(passage: Passage) -> dict:
    edges = []
    for e in passage.edges:
        d = {"parent": e.parent, "child": e.child, "categories": sorted(e.categories), "remote": e.remote}
        if e.refinement is not None:
            d["refinement"] = e.refinement
        if e.anchor is not None:
            d["anchor"] = e.anchor
        edges.append(d)
    return {
        "id": passage.id,
        "root": passage.root,
        "terminals": [{"position": t.position, "text": t.text} for t in passage.terminals],
        "units": list(passage.nonterminals),
        "edges": edges,
    }


def passage_from_dict(data: dict) -> Passage:
    try:
        jsonschema.validate(data, passage_schema())
    except jsonschema.ValidationError as e:
        raise PassageFormatError(f"schema violation: {e.message}") from e
    terminals = [Terminal(t["position"], t["text"]) for t in data["terminals"]]
    edges = [Edge(e["parent"], e["child"], frozenset(e["categories"]), e.get("remote", False),
                  e.get("refinement"), e.get("anchor")) for e in data["edges"]]
    return Passage(data["id"], terminals, data["units"], edges, data["root"])


def dumps_json(passage: Passage) -> str:
    return json.dumps(passage_to_dict(passage), indent=1, ensure_ascii=False, sort_keys=False) + "\n"


def loads_json(text: str) -> Passage:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PassageFormatError(f"invalid JSON: {e}") from e
    return passage_from_dict(data)


# UCCA XML -------------------------------------------------------------------

def _is_true(value: Optional[str]) -> bool:
    return (value or "").lower() in ("true", "1", "yes")


def passage_from_xml(root: ET.Element) -> Passage:
    """Import a standard UCCA XML passage (layer 0 terminals, layer 1 foundational units)."""
    passage_id = root.get("passageID") or root.get("ID") or ""
    layers = {layer.get("layerID"): layer for layer in root.findall("layer")}
    if "0" not in layers or "1" not in layers:
        raise PassageFormatError(f"passage {passage_id}: missing layer 0 or 1")
    words = sorted(layers["0"].findall("node"), key=lambda n: _id_sort_key(n.get("ID")))
    position = {}
    terminals = []
    for i, node in enumerate(words, 1):
        attrs = node.find("attributes")
        text = attrs.get("text") if attrs is not None else None
        if text is None:
            raise PassageFormatError(f"passage {passage_id}: terminal {node.get('ID')} has no text")
        position[node.get("ID")] = i
        terminals.append(Terminal(i, text))

    raw: dict[str, list[tuple[str, frozenset, bool, Optional[str], Optional[int]]]] = {}
    implicit = set()
    for node in layers["1"].findall("node"):
        nid = node.get("ID")
        attrs = node.find("attributes")
        if attrs is not None and _is_true(attrs.get("implicit")):
            implicit.add(nid)
        if node.get("type") == "LKG":
            continue
        out = raw.setdefault(nid, [])
        for edge in node.findall("edge"):
            etype = edge.get("type")
            if etype in _LINKAGE_TYPES:
                continue
            eattrs = edge.find("attributes")
            remote = eattrs is not None and _is_true(eattrs.get("remote"))
            anchor = eattrs.get("anchor") if eattrs is not None else None
            cats, refinement = set(), None
            for cat in edge.findall("category"):
                if cat.get("parent"):
                    refinement = cat.get("tag")
                else:
                    cats.add(cat.get("tag"))
            if not cats:
                cats.add(etype)
            out.append((edge.get("toID"), frozenset(cats), remote, refinement,
                        int(anchor) if anchor else None))

    # Collapse single-terminal preterminal units onto their terminal.
    collapse = {}
    for nid, out in raw.items():
        if len(out) == 1 and out[0][1] == {TERMINAL} and not out[0][2]:
            collapse[nid] = terminal_id(position[out[0][0]])
    root_id = "1.1"

    def resolve(uid: str) -> str:
        if uid in position:
            return terminal_id(position[uid])
        return collapse.get(uid, uid)

    edges = []
    nonterminals = set()
    for nid, out in raw.items():
        if nid in collapse or nid in implicit:
            continue
        nonterminals.add(nid)
        for to, cats, remote, refinement, anchor in out:
            if to in implicit:
                continue
            edges.append(Edge(nid, resolve(to), cats, remote, refinement, anchor))
    if root_id not in nonterminals:
        raise PassageFormatError(f"passage {passage_id}: no layer-1 root {root_id}")
    return Passage(passage_id, terminals, nonterminals, edges, root_id)


def passage_to_xml(passage: Passage) -> ET.Element:
    root = ET.Element("root", passageID=passage.id, annotationID="0")
    ET.SubElement(root, "attributes")
    l0 = ET.SubElement(root, "layer", layerID="0")
    ET.SubElement(l0, "attributes")
    for t in passage.terminals:
        edge = passage.parent_edge(t.id)
        punct = edge is not None and preterminal_edge(passage, t.position).categories == {"U"}
        node = ET.SubElement(l0, "node", ID=t.id, type="Punctuation" if punct else "Word")
        ET.SubElement(node, "attributes", paragraph="1", paragraph_position=str(t.position), text=t.text)
    l1 = ET.SubElement(root, "layer", layerID="1")
    ET.SubElement(l1, "attributes")
    # terminals attached by category edges get their own preterminal node
    next_id = max([int(u.split(".")[1]) for u in passage.nonterminals if u.startswith("1.")
                   and u.split(".")[1].isdigit()] + [1]) + 1
    preterminals = {}
    for t in passage.terminals:
        edge = passage.parent_edge(t.id)
        if edge is not None and not edge.is_terminal_link:
            preterminals[t.id] = f"1.{next_id}"
            next_id += 1

    def add_edge(node: ET.Element, e: Edge, to: str):
        categories = sorted(e.categories)
        x = ET.SubElement(node, "edge", toID=to, type=categories[0])
        attrs = {"remote": "True"} if e.remote else {}
        if e.anchor is not None:
            attrs["anchor"] = str(e.anchor)
        ET.SubElement(x, "attributes", attrs)
        if len(categories) > 1 or e.refinement:
            for c in categories:
                ET.SubElement(x, "category", tag=c)
            if e.refinement:
                ET.SubElement(x, "category", tag=e.refinement, parent=categories[0], layer="SNACS")

    for u in passage.nonterminals:
        node = ET.SubElement(l1, "node", ID=u, type="FN")
        ET.SubElement(node, "attributes")
        for e in passage.outgoing(u):
            add_edge(node, e, preterminals.get(e.child, e.child))
    for tid, pid in preterminals.items():
        edge = passage.parent_edge(tid)
        node = ET.SubElement(l1, "node", ID=pid, type="PNCT" if edge.categories == {"U"} else "FN")
        ET.SubElement(node, "attributes")
        x = ET.SubElement(node, "edge", toID=tid, type=TERMINAL)
        ET.SubElement(x, "attributes")
    ET.indent(root, space="  ")
    return root


def loads_xml(text: str) -> Passage:
    try:
        return passage_from_xml(ET.fromstring(text))
    except ET.ParseError as e:
        raise PassageFormatError(f"invalid XML: {e}") from e


def dumps_xml(passage: Passage) -> str:
    return ET.tostring(passage_to_xml(passage), encoding="unicode") + "\n"


# Files ----------------------------------------------------------------------

PASSAGE_SUFFIXES = (".json", ".xml")


def read_passage(path: str) -> Passage:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    if path.endswith(".xml"):
        return loads_xml(text)
    if path.endswith(".json"):
        return loads_json(text)
    raise PassageFormatError(f"unrecognized passage file extension: {path}")


def iter_passage_files(path: str) -> list[str]:
    if os.path.isdir(path):
        return sorted(os.path.join(path, f) for f in os.listdir(path) if f.endswith(PASSAGE_SUFFIXES))
    return [path]


def read_passages(paths: Iterable[str]) -> list[Passage]:
    return [read_passage(f) for p in paths for f in iter_passage_files(p)]


def write_passage(passage: Passage, directory: str, fmt: str = "json") -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{passage.id}.{fmt}")
    text = dumps_json(passage) if fmt == "json" else dumps_xml(passage)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


# DOT ------------------------------------------------------------------------

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(passage: Passage) -> str:
    """Graphviz source; remote edges dashed, refinements rendered ``CAT|SS``."""
    lines = [f"digraph {_dot_quote(passage.id or 'passage')} {{", "  node [shape=circle, label=\"\"];"]
    lines.append("  { rank=same;")
    for t in passage.terminals:
        lines.append(f"    {_dot_quote(t.id)} [shape=box, label={_dot_quote(t.text)}];")
    lines.append("  }")
    for i in range(len(passage.terminals) - 1):
        a, b = passage.terminals[i].id, passage.terminals[i + 1].id
        lines.append(f"  {_dot_quote(a)} -> {_dot_quote(b)} [style=invis];")
    for u in passage.nonterminals:
        lines.append(f"  {_dot_quote(u)};")
    for e in passage.edges:
        attrs = [f"label={_dot_quote(e.label)}"]
        if e.remote:
            attrs.append("style=dashed")
        if e.refinement:
            attrs.append("fontcolor=darkgreen")
        lines.append(f"  {_dot_quote(e.parent)} -> {_dot_quote(e.child)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

