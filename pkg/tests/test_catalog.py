import json

import pytest

from finhaar.catalog import (
    build_bundled_dict,
    bundled_catalog,
    bundled_catalog_text,
    parse_catalog,
    parse_catalog_dict,
)
from finhaar.errors import NotMultiplicative, ParseError
from finhaar.groups import semidirect_c3

REQUIRED_LABELS = {
    "Z2", "Z3", "Z4", "Z6", "Z7", "Z9", "Z27",
    "S3", "S4", "D8", "Q8", "Heis27", "F21",
}


@pytest.fixture(scope="module")
def catalog():
    return bundled_catalog()


def test_bundled_has_required_groups(catalog):
    assert REQUIRED_LABELS <= set(catalog.labels())
    assert len(catalog.entries) >= 12


def test_bundled_file_matches_builder():
    assert json.loads(bundled_catalog_text()) == build_bundled_dict()


def test_entries_sorted_by_label(catalog):
    labels = catalog.labels()
    assert labels == sorted(labels)


def test_required_automorphisms(catalog):
    for entry in catalog.entries:
        assert "id" in entry.automorphisms
        if entry.group.is_abelian():
            assert "inv" in entry.automorphisms
    assert catalog.get("Z7").automorphisms["double"].order == 3
    s3 = catalog.get("S3")
    assert s3.automorphisms["conj-t"].order == 2
    assert s3.automorphisms["conj-r"].order == 3


def test_frobenius_cross_check(catalog):
    z7 = catalog.get("Z7")
    f21 = catalog.get("F21")
    rebuilt = semidirect_c3(z7.group, z7.automorphisms["double"])
    assert rebuilt.table() == f21.group.table()


def test_bundled_towers(catalog):
    assert set(catalog.towers) == {"pow3", "pow2", "d8-flip", "s3-sign", "heis-abel"}
    pow3 = catalog.towers["pow3"]
    assert [G.label for G in pow3.levels] == ["Z3", "Z9", "Z27"]


def test_empty_catalog():
    cat = parse_catalog_dict({"groups": []}, source="empty")
    assert cat.entries == ()
    assert cat.towers == {}


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_catalog_dict({"groups": [{"label": "X", "kind": "table",
                                        "table": [[0, 1], [1]]}]})
    with pytest.raises(ParseError):
        parse_catalog_dict({"groups": [{"label": "X", "kind": "weird"}]})
    with pytest.raises(ParseError):
        parse_catalog_dict({"groups": [
            {"label": "X", "kind": "table", "table": [[0]]},
            {"label": "X", "kind": "table", "table": [[0]]},
        ]})
    with pytest.raises(ParseError):
        parse_catalog_dict({})


def test_declared_automorphism_order_checked():
    doc = {"groups": [{
        "label": "Z3", "kind": "table",
        "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        "automorphisms": [{"name": "inv", "map": [0, 2, 1], "order": 3}],
    }]}
    with pytest.raises(ParseError):
        parse_catalog_dict(doc)


def test_tower_label_resolution():
    doc = {
        "groups": [{"label": "Z2", "kind": "table", "table": [[0, 1], [1, 0]]}],
        "towers": [{"name": "t", "levels": ["Z2", "nope"], "maps": [[0, 1]]}],
    }
    with pytest.raises(ParseError):
        parse_catalog_dict(doc)


def test_tower_bad_map_is_validation_error():
    doc = {
        "groups": [
            {"label": "Z2", "kind": "table", "table": [[0, 1], [1, 0]]},
            {"label": "Z4", "kind": "table",
             "table": [[(i + j) % 4 for j in range(4)] for i in range(4)]},
        ],
        "towers": [{"name": "t", "levels": ["Z2", "Z4"], "maps": [[1, 0, 1, 0]]}],
    }
    with pytest.raises(NotMultiplicative):
        parse_catalog_dict(doc)


def test_parse_catalog_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"groups": [
        {"label": "triv", "kind": "table", "table": [[0]]},
    ]}))
    cat = parse_catalog(path)
    assert cat.labels() == ["triv"]
    with pytest.raises(ParseError):
        parse_catalog(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(ParseError):
        parse_catalog(bad)


def test_perm_entries_reproduce_indexing(catalog):
    s3 = catalog.get("S3").group
    assert s3.perm_of(1) == (1, 0, 2)
    assert s3.perm_of(2) == (1, 2, 0)
