"""Command line front end: ``refcrys <command> <group> [options]``.

Exit status is 0 on success, 1 when a recomputed value disagrees with the
bundled table fixtures, and 2 on usage errors (bad group name, unknown label,
operations unavailable for data-only groups).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import jsonschema

from . import __version__
from .catalog import ENV_DATA_DIR, CatalogError, table1_fixture_check
from .groups import DEFAULT_ORDER_BOUND, OrderBoundExceeded, identify_group
from .refgroup import GroupSpec, MonomialElement, ReflectionGroup, StubGroupError, build_group

log = logging.getLogger("refcrys")

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


# -- JSON schema -------------------------------------------------------------------

_INT = {"type": "integer"}
_INTS = {"type": "array", "items": _INT}
_STR = {"type": "string"}
_BOOL = {"type": "boolean"}
_CELL_VALUE = {"type": ["integer", "string", "array", "null"]}


def _obj(props: dict, required=None) -> dict:
    return {"type": "object", "properties": props,
            "required": list(required if required is not None else props), "additionalProperties": False}


_KAHLER_RESULT = _obj({
    "dimension": _INT, "group_order": _INT, "kahler": _BOOL, "orbits": _INT,
    "constituents": {"type": "array", "items": _obj({"degree": _INT, "fs": {"enum": [-1, 0, 1]},
                                                    "multiplicity": _INT})},
})

_PAYLOADS = {
    "info": _obj({"group": _STR, "stub": _BOOL, "rank": _INT, "order": _INT, "center_order": _INT,
                  "hyperplanes": _INT, "quotient_order": _INT, "holonomy_equals_W": _BOOL,
                  "hyperplane_list": {"type": "array", "items": _STR}},
                 ["group", "stub", "rank", "order", "center_order", "hyperplanes", "quotient_order",
                  "holonomy_equals_W"]),
    "regular": _obj({"group": _STR, "regular": _INTS, "freely": {"type": "array", "items": _BOOL},
                     "table": _STR, "method": _STR, "classification_dependent": _BOOL}),
    "kappa": _obj({"group": _STR, "kappa": _INT, "method": {"enum": ["direct", "catalog"]},
                   "closed_form": {"type": ["integer", "null"]},
                   "orbits": {"type": "array", "items": _obj({"hyperplane": _STR, "orbit_size": _INT,
                                                             "e_H": _INT, "f_H": _INT})}}),
    "crystal": _obj({
        "group": _STR, "subgroup": _STR, "subgroup_order": _INT, "dimension": _INT,
        "holonomy_order": _INT, "holonomy_label": _STR, "torsion_free": {"type": ["boolean", "null"]},
        "justification": {"enum": ["two-group", "regular-prime-criterion", "freely-regular-element", "unknown"]},
        "representation": {"type": "array", "items": {"type": "array", "items": _INTS}},
        "basis": {"type": "array", "items": _STR},
        "criterion": _obj({"satisfied": _BOOL, "condition1": _BOOL, "condition2": _BOOL,
                           "log": {"type": "array", "items": _STR}}),
        "kahler": _BOOL,
    }, ["group", "subgroup", "subgroup_order", "dimension", "holonomy_order", "holonomy_label",
        "torsion_free", "justification", "representation", "basis"]),
    "torsion": _obj({
        "group": _STR, "order": _INT, "exists": _BOOL, "reason": {"type": ["string", "null"]},
        "certificate": {"oneOf": [{"type": "null"}, _obj({
            "group": _STR, "order": _INT, "valid": _BOOL, "orbit_sizes": _INTS, "u": _INTS,
            "power_coeffs": _INTS, "nonzero_u": {"type": "array", "items": _STR},
            "element": {"type": "array", "items": {"type": "array", "items": _obj(
                {"conductor": _INT, "coeffs": {"type": "array", "items": _STR}})}},
        })]},
    }),
    "kahler": _obj({"group": _STR, "subgroup": _STR, "kahler": {"type": ["boolean", "null"]},
                    "results": {"type": "array", "items": _obj({"label": _STR, "class_size": _INT,
                                                               "result": _KAHLER_RESULT})}}),
    "table1": _obj({"ok": _BOOL, "rows": {"type": "array", "items": _obj({
        "label": _STR, "realized": _BOOL, "ok": _BOOL,
        "cells": {"type": "array", "items": _obj({"column": _STR, "expected": _CELL_VALUE,
                                                 "computed": _CELL_VALUE,
                                                 "status": {"enum": ["match", "mismatch", "stub", "n/a"]}})},
    })}}),
}


def json_schema() -> dict:
    """Schema for every JSON report; integers are exact JSON integers, never floats."""
    variants = []
    for cmd, payload in _PAYLOADS.items():
        variants.append(_obj({"schema_version": {"const": SCHEMA_VERSION}, "command": {"const": cmd},
                              "result": payload}))
    return {"$schema": "https://json-schema.org/draft/2020-12/schema",
            "$id": f"refcrys-report-v{SCHEMA_VERSION}", "oneOf": variants}


def envelope(command: str, result: dict) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
    jsonschema.validate(doc, json_schema())
    return doc


# -- subgroup parsing ----------------------------------------------------------------


def parse_generators(W: ReflectionGroup, text: str) -> list:
    """Generators separated by ';' or whitespace.

    ``sK`` is the distinguished reflection of hyperplane K (0-based, canonical
    order as listed by ``info --hyperplanes``); ``m:p1,...,pn:a1,...,an`` is the
    monomial element e_i -> zeta^{a_i} e_{p_i} of a G(de,e,n) group.
    """
    gens = []
    for tok in text.replace(";", " ").split():
        if tok[0] in "sS" and tok[1:].isdigit():
            k = int(tok[1:])
            if k >= len(W.hyperplanes):
                raise UsageError(f"hyperplane index {k} out of range (|A| = {len(W.hyperplanes)})")
            gens.append(W.distinguished_reflections[k])
        elif tok.startswith("m:"):
            if not W.is_monomial:
                raise UsageError("monomial generators need a G(de,e,n) group")
            try:
                _, perm, exps = tok.split(":")
                perm = tuple(int(x) - 1 for x in perm.split(","))
                exps = tuple(int(x) for x in exps.split(","))
            except ValueError:
                raise UsageError(f"cannot parse monomial generator {tok!r}") from None
            d, e, n = W.family
            if sorted(perm) != list(range(n)) or len(exps) != n:
                raise UsageError(f"monomial generator {tok!r} must have {n} entries")
            if sum(exps) % e:
                raise UsageError(f"monomial generator {tok!r} is not in {W.label}")
            gens.append(W.from_monomial(MonomialElement(perm, tuple(a % (d * e) for a in exps), d * e)))
        else:
            raise UsageError(f"cannot parse generator {tok!r}")
    if not gens:
        raise UsageError("empty generator list")
    return gens


def subgroup_of_W(W: ReflectionGroup, choice: str):
    if choice == "full":
        return W.group, "W"
    if choice == "sylow2":
        return W.group.sylow_two(), "Sylow2(W)"
    return W.group.subgroup(parse_generators(W, choice)), f"<{choice}>"


# -- commands -----------------------------------------------------------------------


def cmd_info(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .crystal import holonomy_equals_W
    if W.is_stub:
        e = W.catalog_entry
        res = {"group": W.label, "stub": True, "rank": e.rank, "order": e.order, "center_order": e.center_order,
               "hyperplanes": e.hyperplanes, "quotient_order": e.quotient_order,
               "holonomy_equals_W": holonomy_equals_W(W)}
    else:
        res = {"group": W.label, "stub": False, "rank": W.dim, "order": W.order(),
               "center_order": W.center_order(), "hyperplanes": len(W.hyperplanes),
               "quotient_order": W.quotient.order(), "holonomy_equals_W": holonomy_equals_W(W)}
        if args.hyperplanes:
            res["hyperplane_list"] = [str(h) for h in W.hyperplanes]
    lines = [f"group: {res['group']}" + ("  (data only: no matrix realization)" if res["stub"] else ""),
             f"rank: {res['rank']}", f"|W| = {res['order']}", f"|Z| = {res['center_order']}",
             f"|A| = {res['hyperplanes']}", f"|W/Z| = {res['quotient_order']}",
             f"holonomy equals W: {'yes' if res['holonomy_equals_W'] else 'no'}"]
    for i, h in enumerate(res.get("hyperplane_list", [])):
        lines.append(f"  H{i}: {h}")
    return res, "\n".join(lines), 0


def cmd_regular(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .regular import format_regular_list, freely_regular_report
    rep = freely_regular_report(W)
    regs = sorted(rep.regular)
    table = format_regular_list(rep.regular, rep.freely)
    res = {"group": W.label, "regular": regs, "freely": [d in rep.freely for d in regs], "table": table,
           "method": rep.method, "classification_dependent": rep.classification_dependent}
    text = table
    if rep.classification_dependent:
        text += "\n(freely regular numbers taken as the regular numbers coprime to kappa)"
    return res, text, 0


def cmd_kappa(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .kappa import kappa, kappa_closed_form, kappa_details
    closed = None
    if W.is_monomial:
        d, e, n = W.family
        closed = kappa_closed_form(d, e, n)
    if W.is_stub:
        res = {"group": W.label, "kappa": kappa(W), "method": "catalog", "closed_form": closed, "orbits": []}
        return res, f"kappa = {res['kappa']} (catalog value, no realization)", 0
    orbits = [{"hyperplane": str(loc.hyperplane), "orbit_size": loc.orbit_size, "e_H": loc.e_H, "f_H": loc.f_H}
              for loc in kappa_details(W)]
    res = {"group": W.label, "kappa": kappa(W), "method": "direct", "closed_form": closed, "orbits": orbits}
    lines = [f"kappa = {res['kappa']}"]
    if closed is not None:
        lines[0] += f"  (closed form {closed})"
    for o in orbits:
        lines.append(f"  orbit of {o['hyperplane']} ({o['orbit_size']} hyperplanes): e_H = {o['e_H']}, f_H = {o['f_H']}")
    return res, "\n".join(lines), 0


def cmd_crystal(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .crystal import crystal_data, preimage_report
    G, name = subgroup_of_W(W, args.subgroup)
    rep = preimage_report(W, G, name)
    res = rep.as_dict()
    res["basis"] = list(crystal_data(W).basis)
    verdict = {True: "Bieberbach (torsion free)", False: "not torsion free", None: "undecided"}[rep.torsion_free]
    lines = [f"preimage of {name} in B/(P,P) for {W.label}",
             f"dimension: {rep.dimension}",
             f"holonomy: {rep.holonomy_label} (order {rep.holonomy_order})",
             f"verdict: {verdict} [{rep.justification}]"]
    if rep.criterion is not None:
        lines += ["  " + line for line in rep.criterion.log_lines]
    return res, "\n".join(lines), 0


def cmd_torsion(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .torsion import NotFreelyRegular, construct_torsion_element
    d = args.order
    if d < 1:
        raise UsageError("--order must be positive")
    try:
        cert = construct_torsion_element(W, d)
    except NotFreelyRegular as ex:
        res = {"group": W.label, "order": d, "exists": False, "reason": str(ex), "certificate": None}
        return res, f"no certificate: {ex}", 0
    res = {"group": W.label, "order": d, "exists": True, "reason": None, "certificate": cert.as_dict(W)}
    lines = [f"element of order {d} in B/(P,P) over a regular element of {W.label}",
             f"<w>-orbits on A: {len(cert.orbits)} of size {d}",
             "u = -1 at: " + ", ".join(res["certificate"]["nonzero_u"]),
             f"coefficients of q^{d}: all zero"]
    return res, "\n".join(lines), 0


def cmd_kahler(W: ReflectionGroup, args) -> tuple[dict, str, int]:
    from .kahler import involution_scan, kahler_predicate
    Wbar = W.quotient.group
    choice = args.subgroup
    results = []
    if choice == "all-involutions":
        for size, r in involution_scan(Wbar):
            results.append(("involution", size, r))
    else:
        if choice == "sylow2":
            Q = Wbar.sylow_two()
        elif choice == "full":
            Q = Wbar
        else:
            Q = W.quotient.image_of(W.group.subgroup(parse_generators(W, choice)))
        results.append((identify_group(Q), 1, kahler_predicate(Q)))
    overall = None if choice == "all-involutions" else results[0][2].kahler
    res = {"group": W.label, "subgroup": choice, "kahler": overall,
           "results": [{"label": lab, "class_size": size, "result": r.as_dict()} for lab, size, r in results]}
    lines = []
    for lab, size, r in results:
        head = f"{lab} of order {r.group_order}" + (f" (class of {size})" if choice == "all-involutions" else "")
        lines.append(f"{head}: dimension {r.dimension}, Kaehler: {'yes' if r.kahler else 'no'}")
        for deg, fs, mult in r.constituents:
            lines.append(f"  degree {deg}  indicator {fs:+d}  multiplicity {mult}")
    return res, "\n".join(lines), 0


def _jsonable(x):
    if x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (list, tuple, set)):
        return [_jsonable(y) for y in (sorted(x) if isinstance(x, set) else x)]
    return str(x)


def cmd_table1(args) -> tuple[dict, str, int]:
    only = [s.strip().upper() for s in args.only.split(",")] if args.only else None
    rows = table1_fixture_check(only, order_bound=args.max_order, data_dir=args.data_dir)
    ok = all(r.ok for r in rows)
    res = {"ok": ok, "rows": [{"label": r.label, "realized": r.realized, "ok": r.ok,
                               "cells": [{"column": c.column, "expected": _jsonable(c.expected),
                                          "computed": _jsonable(c.computed), "status": c.status}
                                         for c in r.cells]} for r in rows]}
    lines = []
    for r in rows:
        status = "ok" if r.ok else "MISMATCH"
        note = "" if r.realized else " (data only: realization columns skipped)"
        lines.append(f"{r.label}: {status}{note}")
        for c in r.mismatches():
            lines.append(f"  {c.column}: table {c.expected}, computed {c.computed}")
    lines.append("all cells match" if ok else "mismatches found")
    return res, "\n".join(lines), 0 if ok else 1


# -- driver --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS,
                        help=f"enumeration bound (default {DEFAULT_ORDER_BOUND})")
    common.add_argument("--data-dir", default=argparse.SUPPRESS,
                        help=f"directory holding exceptional.txt (or set {ENV_DATA_DIR})")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="refcrys", parents=[common],
                                description="Crystallographic data of complex reflection groups.")
    p.add_argument("--version", action="version", version=f"refcrys {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def group_cmd(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("group", help='"G(de,e,n)" or an exceptional label G4..G37')
        return sp

    sp = group_cmd("info", "orders of W, Z(W), W/Z and the number of hyperplanes")
    sp.add_argument("--hyperplanes", action="store_true", help="also list the hyperplanes in canonical order")
    group_cmd("regular", "regular and freely regular numbers")
    group_cmd("kappa", "kappa(W) with the per-orbit e_H, f_H")
    sp = group_cmd("crystal", "Bieberbach report for the preimage of a subgroup of W")
    sp.add_argument("--subgroup", default="full", help="full, sylow2 or a generator list")
    sp = group_cmd("torsion", "element of given order in B/(P,P), or why none is constructed")
    sp.add_argument("--order", type=int, required=True)
    sp = group_cmd("kahler", "Kaehler criterion for a subgroup of W/Z")
    sp.add_argument("--subgroup", default="sylow2", help="sylow2, all-involutions, full or a generator list")
    sp = sub.add_parser("table1", parents=[common], help="recompute the exceptional-group table")
    sp.add_argument("--only", help="comma separated labels, e.g. G4,G6")
    return p


_COMMANDS = {"info": cmd_info, "regular": cmd_regular, "kappa": cmd_kappa, "crystal": cmd_crystal,
             "torsion": cmd_torsion, "kahler": cmd_kahler}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    fmt = getattr(args, "format", "text")
    args.max_order = getattr(args, "max_order", None) or DEFAULT_ORDER_BOUND
    args.data_dir = getattr(args, "data_dir", None) or os.environ.get(ENV_DATA_DIR)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        stream=err, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "table1":
            res, text, code = cmd_table1(args)
        else:
            spec = GroupSpec.parse(args.group)
            W = build_group(spec, order_bound=args.max_order, data_dir=args.data_dir)
            if args.command not in ("info", "regular", "kappa"):
                W.require_realization()
            res, text, code = _COMMANDS[args.command](W, args)
    except (UsageError, ValueError, CatalogError, StubGroupError, OrderBoundExceeded) as ex:
        print(f"refcrys: error: {ex}", file=err)
        return 2
    if fmt == "json":
        json.dump(envelope(args.command, res), out, indent=2)
        out.write("\n")
    else:
        out.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())

