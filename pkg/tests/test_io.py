import json

import pytest

from uccasnacs.errors import PassageFormatError
from uccasnacs.graph import edge_signature, parse_bracketed
from uccasnacs.ucca_io import (dumps_json, dumps_xml, loads_json, loads_xml, passage_to_dict, read_passage,
                               to_dot, write_passage)

EXAMPLE = ("[H [A I] [P went] [A|Goal [R to] [C ohm]]] [L after] "
        "[H|Explanation [P reading] [A [Q|Quantity some] [R of] [F the] [C reviews]] [A* @1]]")
MWE = "[H [A We] [P stayed] [A|Locus in town] [U .]]"


@pytest.mark.parametrize("text", [EXAMPLE, MWE])
def test_json_and_xml_round_trip(text):
    p = parse_bracketed(text, "p1")
    assert edge_signature(loads_json(dumps_json(p))) == edge_signature(p)
    assert edge_signature(loads_xml(dumps_xml(p))) == edge_signature(p)
    assert loads_xml(dumps_xml(p)).text() == p.text()


def test_all_integrated_fixtures_round_trip(integrated):
    for _, p, _ in integrated.values():
        assert edge_signature(loads_json(dumps_json(p))) == edge_signature(p)
        assert edge_signature(loads_xml(dumps_xml(p))) == edge_signature(p)


def test_json_serialization_is_stable():
    p = parse_bracketed(EXAMPLE, "p1")
    assert dumps_json(p) == dumps_json(loads_json(dumps_json(p)))


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("root"),
    lambda d: d["edges"][0].update(categories=[]),
    lambda d: d["edges"][0].update(extra=1),
    lambda d: d["terminals"][0].update(position="1"),
])
def test_schema_violations(mutate):
    d = passage_to_dict(parse_bracketed(EXAMPLE, "p1"))
    mutate(d)
    with pytest.raises(PassageFormatError):
        loads_json(json.dumps(d))


def test_invalid_documents():
    with pytest.raises(PassageFormatError):
        loads_json("{")
    with pytest.raises(PassageFormatError):
        loads_xml("<root")


def test_files(tmp_path):
    p = parse_bracketed(EXAMPLE, "p1")
    for fmt in ("json", "xml"):
        path = write_passage(p, str(tmp_path), fmt)
        assert edge_signature(read_passage(path)) == edge_signature(p)
    bad = tmp_path / "x.txt"
    bad.write_text("")
    with pytest.raises(PassageFormatError):
        read_passage(str(bad))


def test_dot_rendering():
    dot = to_dot(parse_bracketed(EXAMPLE, "ohm"))
    assert '"A|Goal"' in dot and '"Q|Quantity"' in dot
    remote_lines = [line for line in dot.splitlines() if "style=dashed" in line]
    assert len(remote_lines) == 1 and '"0.1"' in remote_lines[0]
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
