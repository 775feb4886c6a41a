"""Deterministic report rendering for the command-line driver.

The payload (tool, catalog, command, parameters, results) is fully
reproducible: rationals are "p/q" strings, subgroups are sorted index
lists, keys are emitted sorted.  Timing never enters the payload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .engel import CentralSeries, CommutatorReport
from .groups import Subgroup
from .measure import LargenessCertificate, Subset, format_rational
from .towers import Tower
from .wordsets import (
    CosetWitness,
    ExtractionReport,
    ModeResult,
    PairCertificate,
    WordSet,
)

TOOL_NAME = "finhaar"
TOOL_VERSION = "0.1.0"


def jsonable(obj):
    """Convert domain objects into JSON-ready structures."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, Subset):
        return {
            "size": obj.size,
            "measure": format_rational(obj.measure),
            "members": obj.indices(),
        }
    if isinstance(obj, Subgroup):
        return {
            "size": obj.size,
            "members": list(obj.members),
            "index": obj.index(),
        }
    if isinstance(obj, WordSet):
        return {
            "set": obj.spec_string(),
            "size": obj.subset.size,
            "measure": format_rational(obj.measure),
            "members": obj.subset.indices(),
        }
    if isinstance(obj, CosetWitness):
        return {
            "subgroup": jsonable(obj.subgroup),
            "t": obj.t,
            "coset": sorted(
                obj.group.mul(obj.t, h) for h in obj.subgroup.members
            ),
            "valid": obj.validate(),
        }
    if isinstance(obj, LargenessCertificate):
        return {
            "k": obj.k,
            "base_size": obj.base.size,
            "base_measure": format_rational(obj.base.measure),
            "u_size": obj.u_set.size,
            "u_members": obj.u_set.indices(),
            "valid": obj.validate(),
        }
    if isinstance(obj, PairCertificate):
        return {"a": obj.a, "b": obj.b, "witness": obj.witness}
    if isinstance(obj, ModeResult):
        return {
            "mode": obj.mode,
            "subgroup": jsonable(obj.subgroup),
            "seed_set": list(obj.seed_set),
            "certificates": [jsonable(c) for c in obj.certificates],
        }
    if isinstance(obj, ExtractionReport):
        return {
            "kind": obj.kind,
            "word_set": jsonable(obj.word_set),
            "requested_mode": obj.requested_mode,
            "result": jsonable(obj.result),
            "result_mode": obj.result_mode,
            "verified_normal": obj.verified_normal,
            "verified_law": obj.verified_law,
            "proof_following": jsonable(obj.proof_following),
            "direct_search": jsonable(obj.direct_search),
            "proof_reached_maximum": obj.proof_reached_maximum,
            "coset_witness": jsonable(obj.coset_witness),
            "slice_subgroup": jsonable(obj.slice_subgroup),
            "findings": list(obj.findings),
        }
    if isinstance(obj, CommutatorReport):
        return {
            "law": obj.law,
            "holds": obj.holds,
            "applicable": obj.applicable,
            "counterexample": list(obj.counterexample)
            if obj.counterexample
            else None,
            "triples_checked": obj.triples_checked,
            "qualifying_triples": obj.qualifying_triples,
            "nilpotency_class": obj.nilpotency_class,
        }
    if isinstance(obj, CentralSeries):
        return {
            "terms": [list(t.members) for t in obj.terms],
            "sizes": [t.size for t in obj.terms],
            "stabilized": obj.stabilized,
            "nilpotency_class": obj.nilpotency_class,
        }
    if isinstance(obj, Tower):
        return {
            "name": obj.name,
            "depth": obj.depth,
            "levels": [G.label for G in obj.levels],
        }
    raise TypeError(f"cannot serialize {type(obj)!r}")


@dataclass
class Report:
    command: str
    catalog: str
    parameters: dict
    results: list
    timing_ms: float = 0.0

    def payload(self):
        return {
            "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
            "catalog": self.catalog,
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "results": jsonable(self.results),
        }

    def to_json(self):
        return json.dumps(self.payload(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        rows = [r if isinstance(r, dict) else {"value": r} for r in self.results]
        keys = sorted({k for row in rows for k in row})
        out = [",".join(keys)]
        for row in rows:
            cells = []
            for k in keys:
                v = jsonable(row.get(k))
                if isinstance(v, (dict, list)):
                    v = json.dumps(v, sort_keys=True, separators=(",", ":"))
                cell = "" if v is None else str(v)
                if any(c in cell for c in ",\"\n"):
                    cell = '"' + cell.replace('"', '""') + '"'
                cells.append(cell)
            out.append(",".join(cells))
        return "\n".join(out) + "\n"
