from __future__ import annotations

import math
import shutil

import pytest

from refcrys.catalog import (CatalogError, check_row, data_path, format_catalog, labels, load_catalog,
                             load_entry, parse_catalog, parse_regular, regular_from_degree_tables,
                             table1_fixture_check)
from refcrys.refgroup import build_group


def test_all_exceptional_labels_present():
    assert labels() == [f"G{k}" for k in range(4, 38)]


def test_round_trip_is_bit_identical():
    text = data_path().read_text()
    header = "\n".join(line for line in text.splitlines() if line.startswith("#"))
    assert format_catalog(parse_catalog(text).values(), header) == text


def test_fixture_consistency():
    for e in load_catalog().values():
        assert len(e.degrees) == e.rank == len(e.codegrees)
        assert e.freely_regular_numbers == {d for d in e.regular_numbers if math.gcd(d, e.kappa) == 1}
        assert regular_from_degree_tables(e) == e.regular_numbers


def test_generators_reproduce_orders():
    for lab in ["G4", "G7", "G12", "G16", "G23", "G24", "G25", "G28"]:
        W = build_group(lab)
        e = load_entry(lab)
        assert W.order() == e.center_order * e.quotient_order
        assert len(W.hyperplanes) == e.hyperplanes


def test_stubs_without_matrices():
    for lab in ("G32", "G33", "G34", "G36", "G37"):
        assert build_group(lab).is_stub


def test_regular_notation():
    assert parse_regular("2, (3), 6") == ((2, False), (3, True), (6, False))


def test_malformed_catalog():
    with pytest.raises(CatalogError):
        parse_catalog("rank: 2\n")
    with pytest.raises(CatalogError):
        parse_catalog("[G4]\nrank: 2\n")
    with pytest.raises(CatalogError):
        load_entry("G99")


def test_data_dir_override(tmp_path, monkeypatch):
    shutil.copy(data_path(), tmp_path / "exceptional.txt")
    assert load_entry("G4", data_dir=tmp_path).order == 24
    monkeypatch.setenv("REFCRYS_DATA_DIR", str(tmp_path))
    assert data_path() == tmp_path / "exceptional.txt"


def test_row_checks():
    row = check_row("G4")
    assert row.realized and row.ok
    assert {c.column for c in row.cells} >= {"|A|", "kappa", "regular", "S"}
    stub = check_row("G34")
    assert not stub.realized and stub.ok
    assert all(r.ok for r in table1_fixture_check(["G5", "G8"]))
