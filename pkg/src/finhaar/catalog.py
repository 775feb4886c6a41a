"""Catalog files: named groups, automorphisms and towers in one JSON document.

Schema (top level object):

    {
      "groups": [
        {"label": "Z6", "kind": "table", "table": [[...], ...],
         "automorphisms": [{"name": "inv", "map": [...], "order": 2}]},
        {"label": "S3", "kind": "perm", "degree": 3,
         "generators": [[1,0,2], [1,2,0]], "automorphisms": [...]}
      ],
      "towers": [
        {"name": "pow3", "levels": ["Z3", "Z9", "Z27"], "maps": [[...], [...]]}
      ]
    }

Permutations use one-line image notation.  Everything is validated
eagerly: a catalog that parses is a catalog whose groups, automorphisms
and towers all passed their structural checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import FinhaarError, ParseError
from .groups import (
    automorphism_from_map,
    build_perm_group,
    build_table_group,
    cyclic_group,
    dihedral_group,
    heisenberg_group_3,
    identity_automorphism,
    inner_automorphism,
    inversion_automorphism,
    quaternion_group,
    semidirect_c3,
    symmetric_group,
)
from .towers import build_tower


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    group: object
    automorphisms: dict  # name -> Automorphism


@dataclass(frozen=True)
class Catalog:
    source: str
    entries: tuple  # CatalogEntry, sorted by label
    towers: dict  # name -> Tower

    def labels(self):
        return [e.label for e in self.entries]

    def get(self, label):
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(f"no group labelled {label!r} in catalog {self.source}")


def _require(condition, message):
    if not condition:
        raise ParseError(message)


def parse_catalog_dict(doc, source="<dict>"):
    _require(isinstance(doc, dict), f"{source}: top level must be an object")
    _require("groups" in doc, f"{source}: missing 'groups'")
    _require(isinstance(doc["groups"], list), f"{source}: 'groups' must be a list")
    entries = []
    seen = set()
    for pos, spec in enumerate(doc["groups"]):
        where = f"{source}: groups[{pos}]"
        _require(isinstance(spec, dict), f"{where}: entry must be an object")
        label = spec.get("label")
        _require(isinstance(label, str) and label, f"{where}: missing label")
        _require(label not in seen, f"{where}: duplicate label {label!r}")
        seen.add(label)
        kind = spec.get("kind")
        if kind == "table":
            table = spec.get("table")
            _require(isinstance(table, list) and table, f"{where}: missing table")
            n = len(table)
            for row in table:
                _require(
                    isinstance(row, list) and len(row) == n,
                    f"{where}: table is not square",
                )
            group = build_table_group(table, label=label)
        elif kind == "perm":
            degree = spec.get("degree")
            gens = spec.get("generators")
            _require(isinstance(degree, int) and degree >= 1, f"{where}: bad degree")
            _require(isinstance(gens, list), f"{where}: missing generators")
            group = build_perm_group(
                degree, gens, cap=spec.get("cap", 10_000), label=label
            )
        else:
            raise ParseError(f"{where}: kind must be 'table' or 'perm'")
        auts = {}
        for apos, aspec in enumerate(spec.get("automorphisms", [])):
            awhere = f"{where}: automorphisms[{apos}]"
            _require(isinstance(aspec, dict), f"{awhere}: must be an object")
            name = aspec.get("name")
            _require(isinstance(name, str) and name, f"{awhere}: missing name")
            _require(name not in auts, f"{awhere}: duplicate name {name!r}")
            _require(isinstance(aspec.get("map"), list), f"{awhere}: missing map")
            aut = automorphism_from_map(group, aspec["map"], name=name)
            declared = aspec.get("order")
            if declared is not None and declared != aut.order:
                raise ParseError(
                    f"{awhere}: declared order {declared} but computed {aut.order}"
                )
            auts[name] = aut
        entries.append(CatalogEntry(label=label, group=group, automorphisms=auts))
    entries.sort(key=lambda e: e.label)
    by_label = {e.label: e for e in entries}
    towers = {}
    for pos, tspec in enumerate(doc.get("towers", [])):
        where = f"{source}: towers[{pos}]"
        _require(isinstance(tspec, dict), f"{where}: must be an object")
        name = tspec.get("name")
        _require(isinstance(name, str) and name, f"{where}: missing name")
        _require(name not in towers, f"{where}: duplicate name {name!r}")
        levels = tspec.get("levels")
        _require(
            isinstance(levels, list) and len(levels) >= 1, f"{where}: missing levels"
        )
        for lab in levels:
            _require(lab in by_label, f"{where}: unknown level label {lab!r}")
        maps = tspec.get("maps", [])
        _require(isinstance(maps, list), f"{where}: maps must be a list")
        try:
            towers[name] = build_tower(
                [by_label[lab].group for lab in levels], maps, name=name
            )
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from exc
    return Catalog(source=source, entries=tuple(entries), towers=towers)


def parse_catalog(path):
    """Load and eagerly validate a catalog file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return parse_catalog_dict(doc, source=str(path))


# -- the bundled catalog --------------------------------------------------------


def _aut_spec(aut):
    return {"name": aut.name, "map": list(aut.map), "order": aut.order}


def build_bundled_dict():
    """Construct the bundled catalog content from scratch.

    The packaged data/catalog.json is this dictionary frozen to disk; a
    unit test keeps the two in sync.
    """
    groups = []

    def add_table(G, auts):
        groups.append(
            {
                "label": G.label,
                "kind": "table",
                "table": G.table(),
                "automorphisms": [_aut_spec(a) for a in auts],
            }
        )

    def add_perm(G, degree, gens, auts):
        groups.append(
            {
                "label": G.label,
                "kind": "perm",
                "degree": degree,
                "generators": [list(g) for g in gens],
                "automorphisms": [_aut_spec(a) for a in auts],
            }
        )

    for n in (2, 3, 4, 6, 9, 27):
        Z = cyclic_group(n)
        auts = [identity_automorphism(Z), inversion_automorphism(Z)]
        if n == 9:
            auts.append(
                automorphism_from_map(Z, [(4 * x) % 9 for x in range(9)], name="quad")
            )
        if n == 27:
            auts.append(
                automorphism_from_map(
                    Z, [(10 * x) % 27 for x in range(27)], name="ten"
                )
            )
        add_table(Z, auts)

    z7 = cyclic_group(7)
    double = automorphism_from_map(z7, [(2 * x) % 7 for x in range(7)], name="double")
    add_table(
        z7, [identity_automorphism(z7), inversion_automorphism(z7), double]
    )

    s3 = symmetric_group(3)
    s3_gens = [(1, 0, 2), (1, 2, 0)]
    add_perm(
        s3,
        3,
        s3_gens,
        [
            identity_automorphism(s3),
            inner_automorphism(s3, 1, name="conj-t"),
            inner_automorphism(s3, 2, name="conj-r"),
        ],
    )

    s4 = symmetric_group(4)
    s4_gens = [(1, 0, 2, 3), (1, 2, 3, 0)]
    three_cycle = s4.index_of_perm((1, 2, 0, 3))
    add_perm(
        s4,
        4,
        s4_gens,
        [identity_automorphism(s4), inner_automorphism(s4, three_cycle, name="conj-r")],
    )

    d8 = dihedral_group(4, label="D8")
    add_table(d8, [identity_automorphism(d8), inner_automorphism(d8, 1, name="conj-r")])

    q8 = quaternion_group()
    add_table(q8, [identity_automorphism(q8)])

    heis = heisenberg_group_3()
    add_table(
        heis,
        [identity_automorphism(heis), inner_automorphism(heis, 9, name="conj-x")],
    )

    f21 = semidirect_c3(z7, double, label="F21")
    add_table(
        f21,
        [identity_automorphism(f21), inner_automorphism(f21, 7, name="conj-a")],
    )

    towers = [
        {
            "name": "pow3",
            "levels": ["Z3", "Z9", "Z27"],
            "maps": [[x % 3 for x in range(9)], [x % 9 for x in range(27)]],
        },
        {
            "name": "pow2",
            "levels": ["Z2", "Z4"],
            "maps": [[x % 2 for x in range(4)]],
        },
        {
            "name": "d8-flip",
            "levels": ["Z2", "D8"],
            "maps": [[0, 0, 0, 0, 1, 1, 1, 1]],
        },
        {
            "name": "s3-sign",
            "levels": ["Z2", "S3"],
            "maps": [[0, 1, 0, 1, 1, 0]],
        },
        {
            "name": "heis-abel",
            "levels": ["Z3", "Heis27"],
            "maps": [[idx // 9 for idx in range(27)]],
        },
    ]
    return {"groups": groups, "towers": towers}


def bundled_catalog_text():
    return (
        resources.files("finhaar").joinpath("data/catalog.json").read_text("utf-8")
    )


def bundled_catalog():
    try:
        doc = json.loads(bundled_catalog_text())
    except FileNotFoundError as exc:  # packaging bug, not a user error
        raise FinhaarError("bundled catalog data is missing") from exc
    return parse_catalog_dict(doc, source="bundled")


def write_bundled_catalog(path):
    """Regenerate the packaged catalog file (maintenance helper)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(build_bundled_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
