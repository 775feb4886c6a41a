"""Command-line driver: catalog in, deterministic reports out.

Exit codes: 0 success, 1 operation error, 2 parse/validation error
(argparse errors included), 3 when a verification command found a
counterexample to a published law.
"""

from __future__ import annotations

import argparse
import sys
import time
import zlib

import numpy as np

from .catalog import bundled_catalog, parse_catalog
from .engel import (
    is_2engel,
    left_normed_idx,
    lower_central_series,
    verify_cube_law,
    verify_engel_consequences,
)
from .errors import OperationError, ParseError, ValidationError
from .lattice import SUBGROUP_SCAN_LIMIT
from .measure import (
    GroupFunction,
    average_translate_intersection,
    k_large_certificate,
    translate_intersection_measure,
    translate_product_mean,
)
from .reports import Report, jsonable
from .towers import torsion_images_contained, torsion_measure_sequence
from .wordsets import (
    commuting_certificate,
    coset_witness,
    engel_pair_certificate,
    extract_abelian_subgroup,
    extract_engel_subgroup,
    inverted_set,
    splitting_set,
    torsion_set,
)

COMMANDS = (
    "validate",
    "measure",
    "lambda",
    "average",
    "psi",
    "klarge",
    "torsion",
    "inverted",
    "splitting",
    "witness",
    "commute-cert",
    "engel-cert",
    "extract-abelian",
    "extract-engel",
    "engel",
    "class",
    "verify",
    "tower",
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finhaar",
        description="exact measure, largeness and Engel computations on finite group catalogs",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog file (default: bundled)")
    common.add_argument("--group", help="restrict to one catalog label")
    common.add_argument(
        "--set",
        action="append",
        dest="sets",
        metavar="SPEC",
        help="word set: torsion:N | inverted:AUT | splitting:AUT (repeatable)",
    )
    common.add_argument("--mode", choices=["proof", "direct", "both"], default="both")
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--strategy", choices=["greedy", "exhaustive"], default="greedy")
    common.add_argument("--max-order", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--at", help="comma separated element indices")
    common.add_argument("--n", type=int, default=2, help="function count for psi")
    common.add_argument("--length", type=int, default=2, help="product length in proof mode")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="write the report to a file instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument(
                "law", choices=["lemma-2engel", "engel-consequences"]
            )
    return parser


def _load_catalog(args):
    if args.catalog:
        return parse_catalog(args.catalog)
    return bundled_catalog()


def _entries(catalog, args):
    if args.group:
        try:
            return [catalog.get(args.group)], True
        except KeyError as exc:
            raise OperationError(str(exc)) from None
    return list(catalog.entries), False


def _parse_at(args, expected=None):
    if args.at is None:
        return None
    try:
        values = [int(v) for v in args.at.split(",") if v != ""]
    except ValueError as exc:
        raise OperationError(f"--at must be comma separated integers: {exc}") from None
    if expected is not None and len(values) != expected:
        raise OperationError(f"--at needs {expected} indices, got {len(values)}")
    return values


def _single_set(args):
    if not args.sets or len(args.sets) != 1:
        raise OperationError("this command needs exactly one --set")
    return args.sets[0]


def _resolve_set(entry, spec):
    """WordSet for this entry, or a skip reason string."""
    kind, _, param = spec.partition(":")
    G = entry.group
    if kind == "torsion":
        try:
            n = int(param)
        except ValueError:
            raise ParseError(f"bad torsion spec {spec!r}") from None
        return torsion_set(G, n), None
    if kind in ("inverted", "splitting"):
        aut = entry.automorphisms.get(param)
        if aut is None:
            return None, f"no automorphism named {param!r}"
        if kind == "inverted":
            return inverted_set(G, aut), None
        if 3 % aut.order != 0:
            return None, f"automorphism {param!r} has order {aut.order}, not dividing 3"
        return splitting_set(G, aut), None
    raise ParseError(f"bad set spec {spec!r}; use torsion:N | inverted:AUT | splitting:AUT")


def _check_elements(G, values):
    for v in values:
        if not 0 <= v < G.order:
            raise OperationError(f"{G.label}: element index {v} out of range")


def _map_entries(entries, fn, workers):
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(fn, e) for e in entries]
            return [f.result() for f in futures]
    return [fn(e) for e in entries]


def _per_group(entries, explicit, args, spec, fn):
    """Run fn(entry, word_set) per entry, skipping inapplicable ones."""

    def task(entry):
        word, reason = _resolve_set(entry, spec)
        if word is None:
            if explicit:
                raise OperationError(f"{entry.label}: {reason}")
            return {"label": entry.label, "skipped": reason}
        out = {"label": entry.label}
        out.update(fn(entry, word))
        return out

    return _map_entries(entries, task, args.workers)


# -- command handlers -----------------------------------------------------------


def _cmd_validate(catalog, entries, explicit, args):
    def task(entry):
        return {
            "label": entry.label,
            "order": entry.group.order,
            "backend": entry.group.backend,
            "abelian": entry.group.is_abelian(),
            "automorphisms": [
                {"name": name, "order": entry.automorphisms[name].order}
                for name in sorted(entry.automorphisms)
            ],
        }

    results = _map_entries(entries, task, args.workers)
    if not args.group:
        for name in sorted(catalog.towers):
            tower = catalog.towers[name]
            results.append(
                {
                    "tower": name,
                    "depth": tower.depth,
                    "levels": [G.label for G in tower.levels],
                }
            )
    return results, False


def _cmd_measure(catalog, entries, explicit, args):
    spec = _single_set(args)

    def fn(entry, word):
        return {
            "set": word.spec_string(),
            "size": word.subset.size,
            "measure": word.measure,
        }

    return _per_group(entries, explicit, args, spec, fn), False


def _cmd_word_set(catalog, entries, explicit, args):
    spec = _single_set(args)
    kind = spec.partition(":")[0]
    if kind != args.command:
        raise OperationError(
            f"command {args.command!r} needs a {args.command}:* set, got {spec!r}"
        )

    def fn(entry, word):
        return jsonable(word)

    return _per_group(entries, explicit, args, spec, fn), False


def _cmd_lambda(catalog, entries, explicit, args):
    if not args.sets:
        raise OperationError("need at least one --set")
    xs = _parse_at(args, expected=len(args.sets))
    if xs is None:
        raise OperationError("--at is required for this command")

    def task(entry):
        words = []
        for spec in args.sets:
            word, reason = _resolve_set(entry, spec)
            if word is None:
                if explicit:
                    raise OperationError(f"{entry.label}: {reason}")
                return {"label": entry.label, "skipped": reason}
            words.append(word)
        _check_elements(entry.group, xs)
        value = translate_intersection_measure([w.subset for w in words], xs)
        return {
            "label": entry.label,
            "sets": [w.spec_string() for w in words],
            "at": xs,
            "measure": value,
        }

    return _map_entries(entries, task, args.workers), False


def _cmd_average(catalog, entries, explicit, args):
    if not args.sets:
        raise OperationError("need at least one --set")
    budget = args.budget if args.budget is not None else 10**8

    def task(entry):
        words = []
        for spec in args.sets:
            word, reason = _resolve_set(entry, spec)
            if word is None:
                if explicit:
                    raise OperationError(f"{entry.label}: {reason}")
                return {"label": entry.label, "skipped": reason}
            words.append(word)
        out = average_translate_intersection(
            [w.subset for w in words], budget=budget
        )
        return {
            "label": entry.label,
            "sets": [w.spec_string() for w in words],
            "average": out.average,
            "product_of_measures": out.product_of_measures,
            "identity_holds": out.identity_holds,
        }

    return _map_entries(entries, task, args.workers), False


def _cmd_psi(catalog, entries, explicit, args):
    if args.n < 1:
        raise OperationError("--n must be >= 1")
    xs_fixed = _parse_at(args, expected=args.n)

    def task(entry):
        G = entry.group
        rng = np.random.default_rng([args.seed, zlib.crc32(entry.label.encode())])
        funcs = [GroupFunction.random_unit(G, rng) for _ in range(args.n)]
        xs = xs_fixed if xs_fixed is not None else [
            int(rng.integers(G.order)) for _ in range(args.n)
        ]
        _check_elements(G, xs)
        value = translate_product_mean(funcs, xs)
        return {"label": entry.label, "n": args.n, "at": xs, "value": value}

    return _map_entries(entries, task, args.workers), False


def _cmd_klarge(catalog, entries, explicit, args):
    spec = _single_set(args)
    budget = args.budget if args.budget is not None else 10**7

    def fn(entry, word):
        cert = k_large_certificate(
            word.subset, args.k, strategy=args.strategy, budget=budget
        )
        out = {"set": word.spec_string(), "strategy": args.strategy}
        out.update(jsonable(cert))
        return out

    return _per_group(entries, explicit, args, spec, fn), False


def _cmd_witness(catalog, entries, explicit, args):
    spec = _single_set(args)
    limit = args.max_order if args.max_order is not None else SUBGROUP_SCAN_LIMIT

    def fn(entry, word):
        W = coset_witness(word, limit=limit)
        out = {"set": word.spec_string()}
        out.update(jsonable(W))
        return out

    return _per_group(entries, explicit, args, spec, fn), False


def _cmd_pair_cert(catalog, entries, explicit, args):
    spec = _single_set(args)
    needed = "inverted" if args.command == "commute-cert" else "splitting"
    if spec.partition(":")[0] != needed:
        raise OperationError(f"{args.command} needs a {needed}:* set, got {spec!r}")
    ab = _parse_at(args, expected=2)
    if ab is None:
        raise OperationError("--at a,b is required for this command")
    a, b = ab

    def fn(entry, word):
        G = entry.group
        _check_elements(G, (a, b))
        if args.command == "commute-cert":
            witness = commuting_certificate(word, a, b)
            law_holds = G.mul(a, b) == G.mul(b, a)
            law_key = "commutator_trivial"
        else:
            witness = engel_pair_certificate(word, a, b)
            law_holds = left_normed_idx(G, a, b, b) == G.identity
            law_key = "engel_identity_holds"
        return {
            "set": word.spec_string(),
            "a": a,
            "b": b,
            "witness": witness,
            law_key: law_holds,
        }

    return _per_group(entries, explicit, args, spec, fn), False


def _cmd_extract(catalog, entries, explicit, args):
    spec = _single_set(args)
    needed = "inverted" if args.command == "extract-abelian" else "splitting"
    if spec.partition(":")[0] != needed:
        raise OperationError(f"{args.command} needs a {needed}:* set, got {spec!r}")
    aut_name = spec.partition(":")[2]
    limit = args.max_order if args.max_order is not None else SUBGROUP_SCAN_LIMIT

    def task(entry):
        aut = entry.automorphisms.get(aut_name)
        reason = None
        if aut is None:
            reason = f"no automorphism named {aut_name!r}"
        elif needed == "splitting" and 3 % aut.order != 0:
            reason = f"automorphism {aut_name!r} has order {aut.order}, not dividing 3"
        if reason:
            if explicit:
                raise OperationError(f"{entry.label}: {reason}")
            return {"label": entry.label, "skipped": reason}
        extract = (
            extract_abelian_subgroup
            if args.command == "extract-abelian"
            else extract_engel_subgroup
        )
        report = extract(
            entry.group, aut, mode=args.mode, length=args.length, limit=limit
        )
        out = {"label": entry.label}
        out.update(jsonable(report))
        return out

    return _map_entries(entries, task, args.workers), False


def _cmd_engel(catalog, entries, explicit, args):
    def task(entry):
        out = {"label": entry.label}
        out.update(jsonable(is_2engel(entry.group)))
        return out

    return _map_entries(entries, task, args.workers), False


def _cmd_class(catalog, entries, explicit, args):
    def task(entry):
        out = {"label": entry.label}
        out.update(jsonable(lower_central_series(entry.group)))
        return out

    return _map_entries(entries, task, args.workers), False


def _cmd_verify(catalog, entries, explicit, args):
    max_order = args.max_order if args.max_order is not None else 64
    check = (
        verify_cube_law if args.law == "lemma-2engel" else verify_engel_consequences
    )

    def task(entry):
        if entry.group.order > max_order:
            return {
                "label": entry.label,
                "skipped": f"order {entry.group.order} above --max-order {max_order}",
            }
        out = {"label": entry.label}
        out.update(jsonable(check(entry.group, max_order=max_order)))
        return out

    results = _map_entries(entries, task, args.workers)
    finding = any(
        r.get("applicable", False) and not r.get("holds", True)
        for r in results
        if "skipped" not in r
    )
    return results, finding


def _cmd_tower(catalog, entries, explicit, args):
    spec = _single_set(args)
    kind, _, param = spec.partition(":")
    if kind != "torsion":
        raise OperationError(f"tower sequences need a torsion:N set, got {spec!r}")
    try:
        n = int(param)
    except ValueError:
        raise ParseError(f"bad torsion spec {spec!r}") from None
    results = []
    for name in sorted(catalog.towers):
        tower = catalog.towers[name]
        seq = torsion_measure_sequence(tower, n)
        results.append(
            {
                "tower": name,
                "levels": [G.label for G in tower.levels],
                "exponent": n,
                "measures": seq,
                "non_increasing": all(b <= a for a, b in zip(seq, seq[1:])),
                "images_contained": torsion_images_contained(tower, n),
                "upper_bound": {"depth": tower.depth, "value": seq[-1]},
            }
        )
    return results, False


_HANDLERS = {
    "validate": _cmd_validate,
    "measure": _cmd_measure,
    "lambda": _cmd_lambda,
    "average": _cmd_average,
    "psi": _cmd_psi,
    "klarge": _cmd_klarge,
    "torsion": _cmd_word_set,
    "inverted": _cmd_word_set,
    "splitting": _cmd_word_set,
    "witness": _cmd_witness,
    "commute-cert": _cmd_pair_cert,
    "engel-cert": _cmd_pair_cert,
    "extract-abelian": _cmd_extract,
    "extract-engel": _cmd_extract,
    "engel": _cmd_engel,
    "class": _cmd_class,
    "verify": _cmd_verify,
    "tower": _cmd_tower,
}


def run_command(args):
    """Dispatch parsed arguments; returns (Report, finding_flag)."""
    started = time.perf_counter()
    catalog = _load_catalog(args)
    entries, explicit = _entries(catalog, args)
    results, finding = _HANDLERS[args.command](catalog, entries, explicit, args)
    parameters = {
        "group": args.group,
        "sets": args.sets,
        "mode": args.mode,
        "k": args.k,
        "strategy": args.strategy,
        "max_order": args.max_order,
        "budget": args.budget,
        "seed": args.seed,
        "at": args.at,
        "n": args.n,
        "length": args.length,
    }
    if args.command == "verify":
        parameters["law"] = args.law
    report = Report(
        command=args.command
        if args.command != "verify"
        else f"verify {args.law}",
        catalog=catalog.source,
        parameters=parameters,
        results=results,
        timing_ms=(time.perf_counter() - started) * 1000.0,
    )
    return report, finding


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, finding = run_command(args)
    except (ParseError, ValidationError) as exc:
        print(f"finhaar: {exc}", file=sys.stderr)
        return 2
    except (OperationError, ValueError) as exc:
        print(f"finhaar: {exc}", file=sys.stderr)
        return 1
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"finhaar: {report.command} in {report.timing_ms:.1f} ms", file=sys.stderr)
    return 3 if finding else 0


if __name__ == "__main__":
    sys.exit(main())
