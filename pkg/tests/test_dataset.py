import json

import pytest

from unlinking.dataset import (DatasetError, load_records, load_table, record_from_dict,
                               record_to_dict, save_records)

FEATURED = ["L9a2", "L9a15", "L9a17", "L9a30", "L9a10"]


def test_shipped_table():
    t = load_table()
    assert len(t) == 130
    for name in FEATURED:
        assert t[name].known_upper_bound == 3
    assert t["L9a10"].determinant == 48
    assert t["L9a30"].homology.is_cyclic and t["L9a30"].determinant == 30
    # the shipped diagrams are the mirrors, so both signatures are +3
    assert all(t[n].signatures == (3, 3) for n in ("L9a2", "L9a15", "L9a17"))


def test_round_trip(tmp_path):
    records = list(load_table().values())
    for r in records:
        assert record_from_dict(record_to_dict(r)) == r
    path = tmp_path / "links.json"
    save_records(records[:5], path)
    assert load_records(str(path)) == records[:5]


def test_single_record_and_list(tmp_path):
    r = load_table()["L4a1"]
    one = tmp_path / "one.json"
    one.write_text(json.dumps(record_to_dict(r)))
    assert load_records(str(one)) == [r]
    many = tmp_path / "many.json"
    many.write_text(json.dumps([record_to_dict(r)] * 2))
    assert len(load_records(str(many))) == 2


def test_free_homology_is_the_nullity():
    zero = [r for r in load_table().values() if r.determinant == 0]
    assert zero
    for r in zero:
        assert r.nullity > 0 and r.homology.order >= 1
        assert record_to_dict(r)["homology"].count(0) == r.nullity


@pytest.mark.parametrize("text", [
    "not json", "42", '{"version": 99, "links": []}', '{"name": "X"}',
    '{"name": "X", "k": 2, "signatures": [1], "determinant": 2, "homology": [2]}',
])
def test_malformed(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises((DatasetError, ValueError)):
        load_records(str(path))
