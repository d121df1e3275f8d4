"""Bundled exceptional-group data: generator matrices, degrees and table fixtures.

The data file is plain text, one block per group::

    [G4]
    rank: 2
    order: 24
    ...
    conductor: 12
    matrix:
      <entry> <entry>
      <entry> <entry>
    end

Each matrix entry is a comma-separated list of rationals, the coordinates of
the entry in the power basis of Q(zeta_conductor).  Blocks without matrices
describe groups that are only checked from their degree tables.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cyclotomic import CycMatrix, CycNum, euler_phi

log = logging.getLogger(__name__)

DATA_FILENAME = "exceptional.txt"
ENV_DATA_DIR = "REFCRYS_DATA_DIR"

_SCALAR_FIELDS = ("rank", "order", "center", "hyperplanes", "quotient", "quotient_order",
                  "degrees", "codegrees", "regular", "kappa", "sylow2", "source", "conductor")


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    label: str
    rank: int
    order: int
    center_order: int
    hyperplanes: int
    quotient_label: str
    quotient_order: int
    degrees: tuple
    codegrees: tuple
    regular: tuple            # (d, freely) pairs from the table, 1 omitted
    kappa: int
    sylow2: str | None
    source: str
    conductor: int | None = None
    matrix_text: list = field(default_factory=list)

    @property
    def regular_numbers(self) -> set:
        return {1} | {d for d, _ in self.regular}

    @property
    def freely_regular_numbers(self) -> set:
        return {1} | {d for d, f in self.regular if f}

    @property
    def generators(self) -> list:
        if not self.matrix_text:
            return []
        return [parse_matrix(block, self.conductor) for block in self.matrix_text]

    def check(self):
        if len(self.degrees) != self.rank or len(self.codegrees) != self.rank:
            raise CatalogError(f"{self.label}: degree lists must have length rank = {self.rank}")
        prod = 1
        for d in self.degrees:
            prod *= d
        if prod != self.order:
            raise CatalogError(f"{self.label}: product of degrees {prod} != order {self.order}")
        if sum(c + 1 for c in self.codegrees) != self.hyperplanes:
            raise CatalogError(f"{self.label}: codegrees inconsistent with hyperplane count")
        if self.quotient_order * self.center_order != self.order:
            raise CatalogError(f"{self.label}: |W/Z| * |Z| != |W|")
        if self.matrix_text and not self.conductor:
            raise CatalogError(f"{self.label}: matrices need a conductor")


def format_regular(pairs) -> str:
    return ", ".join(f"({d})" if f else str(d) for d, f in pairs)


def parse_regular(text: str) -> tuple:
    out = []
    for tok in text.replace(",", " ").split():
        free = tok.startswith("(") and tok.endswith(")")
        out.append((int(tok.strip("()")), free))
    return tuple(out)


def _parse_entry_coeffs(tok: str, conductor: int) -> CycNum:
    coeffs = [Fraction(c) for c in tok.split(",")]
    if len(coeffs) != euler_phi(conductor):
        raise CatalogError(f"entry {tok!r} does not have phi({conductor}) coordinates")
    return CycNum.from_rationals(conductor, coeffs)


def parse_matrix(rows: list, conductor: int) -> CycMatrix:
    return CycMatrix([[_parse_entry_coeffs(tok, conductor) for tok in row.split()] for row in rows])


def format_matrix(mat: CycMatrix, conductor: int) -> list:
    rows = []
    for r in mat.rows:
        toks = []
        for x in r:
            c = x.canonical()
            if conductor % c.raw[0]:
                raise CatalogError(f"entry {c!r} lies outside Q(zeta_{conductor})")
            _, num, den = c.embed(conductor).raw
            toks.append(",".join(str(Fraction(a, den)) for a in num))
        rows.append(" ".join(toks))
    return rows


def parse_catalog(text: str) -> dict:
    entries = {}
    cur = None
    mat = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if mat is not None:
            if line == "end":
                cur["matrices"].append(mat)
                mat = None
            elif line:
                mat.append(line)
            continue
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            if cur is not None:
                entries[cur["label"]] = _entry_from_fields(cur)
            cur = {"label": line[1:-1], "matrices": []}
            continue
        if cur is None:
            raise CatalogError(f"line {lineno}: data outside a block")
        if line == "matrix:":
            mat = []
            continue
        key, sep, val = line.partition(":")
        if not sep or key.strip() not in _SCALAR_FIELDS:
            raise CatalogError(f"line {lineno}: unrecognized line {raw!r}")
        cur[key.strip()] = val.strip()
    if mat is not None:
        raise CatalogError("unterminated matrix block")
    if cur is not None:
        entries[cur["label"]] = _entry_from_fields(cur)
    return entries


def _entry_from_fields(f: dict) -> CatalogEntry:
    try:
        entry = CatalogEntry(
            label=f["label"],
            rank=int(f["rank"]),
            order=int(f["order"]),
            center_order=int(f["center"]),
            hyperplanes=int(f["hyperplanes"]),
            quotient_label=f["quotient"],
            quotient_order=int(f["quotient_order"]),
            degrees=tuple(int(x) for x in f["degrees"].split()),
            codegrees=tuple(int(x) for x in f["codegrees"].split()),
            regular=parse_regular(f["regular"]),
            kappa=int(f["kappa"]),
            sylow2=None if f["sylow2"] == "-" else f["sylow2"],
            source=f.get("source", ""),
            conductor=int(f["conductor"]) if f.get("conductor") else None,
            matrix_text=f["matrices"],
        )
    except KeyError as ex:
        raise CatalogError(f"{f.get('label')}: missing field {ex.args[0]}") from None
    entry.check()
    return entry


def format_entry(e: CatalogEntry) -> str:
    lines = [f"[{e.label}]",
             f"rank: {e.rank}",
             f"order: {e.order}",
             f"center: {e.center_order}",
             f"hyperplanes: {e.hyperplanes}",
             f"quotient: {e.quotient_label}",
             f"quotient_order: {e.quotient_order}",
             f"degrees: {' '.join(map(str, e.degrees))}",
             f"codegrees: {' '.join(map(str, e.codegrees))}",
             f"regular: {format_regular(e.regular)}",
             f"kappa: {e.kappa}",
             f"sylow2: {e.sylow2 or '-'}",
             f"source: {e.source}"]
    if e.matrix_text:
        lines.append(f"conductor: {e.conductor}")
        for block in e.matrix_text:
            lines.append("matrix:")
            lines += ["  " + r for r in block]
            lines.append("end")
    return "\n".join(lines) + "\n"


def format_catalog(entries, header: str = "") -> str:
    body = "\n".join(format_entry(e) for e in entries)
    return (header + "\n" if header else "") + body


def data_path(data_dir=None) -> Path:
    d = data_dir or os.environ.get(ENV_DATA_DIR)
    if d:
        return Path(d) / DATA_FILENAME
    return Path(str(resources.files("refcrys") / "data" / DATA_FILENAME))


_CACHE: dict = {}


def load_catalog(data_dir=None) -> dict:
    path = data_path(data_dir)
    key = str(path)
    if key not in _CACHE:
        try:
            text = path.read_text()
        except OSError as ex:
            raise CatalogError(f"cannot read catalog file {path}: {ex}") from None
        _CACHE[key] = parse_catalog(text)
    return _CACHE[key]


def load_entry(label: str, data_dir=None) -> CatalogEntry:
    cat = load_catalog(data_dir)
    lab = label.strip().upper().replace(" ", "")
    if lab not in cat:
        raise CatalogError(f"unknown exceptional group {label!r}")
    return cat[lab]


def labels(data_dir=None) -> list:
    return sorted(load_catalog(data_dir), key=lambda s: int(s[1:]))


def regular_from_degree_tables(entry: CatalogEntry) -> set:
    from .regular import regular_from_degrees
    return regular_from_degrees(entry.degrees, entry.codegrees)


# -- table fixture check ------------------------------------------------------------


@dataclass
class CellCheck:
    column: str
    expected: object
    computed: object
    status: str          # "match" | "mismatch" | "stub" | "n/a"


@dataclass
class RowCheck:
    label: str
    realized: bool
    cells: list

    @property
    def ok(self) -> bool:
        return all(c.status != "mismatch" for c in self.cells)

    def mismatches(self) -> list:
        return [c for c in self.cells if c.status == "mismatch"]


def _cell(column, expected, computed) -> CellCheck:
    return CellCheck(column, expected, computed, "match" if expected == computed else "mismatch")


def check_row(label: str, *, order_bound: int | None = None, data_dir=None) -> RowCheck:
    """Recompute one row of the exceptional-group table and compare with the fixtures."""
    import math as _math
    from .groups import DEFAULT_ORDER_BOUND, small_group_iso_type
    from .kappa import kappa
    from .refgroup import build_exceptional
    from .regular import regular_class_data, freely_regular_report

    entry = load_entry(label, data_dir)
    bound = order_bound or DEFAULT_ORDER_BOUND
    W = build_exceptional(entry.label, order_bound=bound, data_dir=data_dir)
    cells = []
    table_reg = regular_from_degree_tables(entry)
    cells.append(_cell("regular (degrees)", sorted(entry.regular_numbers), sorted(table_reg)))
    coprime = {d for d in entry.regular_numbers if _math.gcd(d, entry.kappa) == 1}
    cells.append(_cell("freely regular = coprime to kappa", sorted(entry.freely_regular_numbers), sorted(coprime)))
    if W.is_stub:
        for col in ("|A|", "|Z|", "|W/Z|", "kappa", "regular", "freely regular", "S"):
            cells.append(CellCheck(col, None, None, "stub"))
        return RowCheck(entry.label, False, cells)
    cells.append(_cell("|A|", entry.hyperplanes, len(W.hyperplanes)))
    cells.append(_cell("|Z|", entry.center_order, W.center_order()))
    cells.append(_cell("|W/Z|", entry.quotient_order, W.quotient.order()))
    cells.append(_cell("kappa", entry.kappa, kappa(W)))
    regular_class_data(W)
    rep = freely_regular_report(W)
    cells.append(_cell("regular", sorted(entry.regular_numbers), sorted(rep.regular)))
    cells.append(_cell("freely regular", sorted(entry.freely_regular_numbers), sorted(rep.freely)))
    if entry.sylow2 is None:
        cells.append(CellCheck("S", None, None, "n/a"))
    else:
        S = W.quotient.group.sylow_two()
        cells.append(_cell("S", entry.sylow2, small_group_iso_type(S)))
    return RowCheck(entry.label, True, cells)


def table1_fixture_check(only=None, *, order_bound: int | None = None, data_dir=None) -> list[RowCheck]:
    rows = []
    for label in (only or labels(data_dir)):
        row = check_row(label, order_bound=order_bound, data_dir=data_dir)
        log.info("%s: %s", row.label, "ok" if row.ok else f"{len(row.mismatches())} mismatches")
        rows.append(row)
    return rows
