import json

import pytest
from hypothesis import given, strategies as st

from lrtwist.algebra import Algebra
from lrtwist.catalog import build_entry, check_payload, entry_ids, truncated_poly
from lrtwist.exactfield import GF, QQ
from lrtwist.serialize import SerializationError, algebra_json, dumps, from_data, load, loads


def canonical(text: str):
    """The document with every block label replaced by the block's position."""
    data = json.loads(text)
    index = {blk["label"]: n for n, blk in enumerate(data["blocks"])}

    def sub(v):
        return f"#{index[v]}" if isinstance(v, str) and v in index else v

    return [{k: sub(v) for k, v in blk.items()} for blk in data["blocks"]], sub(data["root"])


@pytest.mark.parametrize("entry_id", entry_ids())
def test_catalog_round_trip(entry_id):
    entry = build_entry(entry_id)
    text = dumps(entry.payload, entry_id)
    doc = loads(text)
    assert doc.root == entry_id
    again = dumps(doc.get(), entry_id)
    assert canonical(again) == canonical(text)
    assert dumps(loads(again).get(), entry_id) == again
    assert check_payload(entry.kind, doc.get()).ok


def test_bare_algebra_format():
    alg = truncated_poly(3, GF(5), "T")
    doc = from_data(json.loads(json.dumps(algebra_json(alg))))
    got = doc.get()
    assert doc.kinds["T"] == "algebra"
    assert got == alg


@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_rational_scalars_survive(vals):
    c = [[[vals[0] if (i, j) == (0, 0) else 0, 0] for j in range(2)] for i in range(2)]
    c[0][0] = [1, 0]
    c[0][1] = [0, 1]
    c[1][0] = [0, 1]
    c[1][1] = [vals[1], vals[2]]
    alg = Algebra.from_tensor(QQ, c, [1, 0], "X")
    assert loads(dumps(alg, "X")).get() == alg


def test_json_syntax_error_has_position():
    with pytest.raises(SerializationError, match=r"line 2, column \d+"):
        loads('{"field": "Q",\n "blocks": [,]}')


def test_file_errors_name_the_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n\n  oops", encoding="utf-8")
    with pytest.raises(SerializationError, match=r"bad\.json: line 3"):
        load(path)


def _doc(entry_id="diag-2-2"):
    entry = build_entry(entry_id)
    return json.loads(dumps(entry.payload, entry_id))


def test_unknown_reference_names_the_block():
    data = _doc()
    pair = data["blocks"][-1]
    key = next(k for k, v in pair.items() if isinstance(v, str) and k not in ("kind", "label"))
    pair[key] = "nowhere"
    with pytest.raises(SerializationError, match=rf"block {len(data['blocks']) - 1} \('diag-2-2'\).*'nowhere'"):
        from_data(data)


def test_ragged_matrix_is_reported():
    data = _doc()
    n, blk = next((n, b) for n, b in enumerate(data["blocks"]) if b["kind"] == "map")
    blk["matrix"][0] = blk["matrix"][0][:-1]
    with pytest.raises(SerializationError, match=rf"block {n} .*ragged"):
        from_data(data)


def test_bad_scalar_and_field():
    data = _doc()
    blk = next(b for b in data["blocks"] if b["kind"] == "map")
    blk["matrix"][0][0] = "1/0"
    with pytest.raises(SerializationError, match="bad scalar"):
        from_data(data)
    with pytest.raises(SerializationError):
        from_data({"field": "GF(4)", "blocks": []})


def test_structural_errors():
    with pytest.raises(SerializationError, match="JSON object"):
        from_data([])
    with pytest.raises(SerializationError, match="blocks"):
        from_data({"field": "Q"})
    with pytest.raises(SerializationError, match="unknown kind"):
        from_data({"field": "Q", "blocks": [{"kind": "bogus", "label": "x"}]})
    data = _doc()
    data["blocks"].append(dict(data["blocks"][0]))
    with pytest.raises(SerializationError, match="duplicate label"):
        from_data(data)


def test_multi_object_document():
    a, b = truncated_poly(2, QQ, "A"), truncated_poly(3, QQ, "B")
    doc = loads(dumps([a, b]))
    assert doc.get("A") == a and doc.get("B") == b and doc.root == "A"
    with pytest.raises(ValueError, match="share a field"):
        dumps([a, truncated_poly(2, GF(3), "C")])
