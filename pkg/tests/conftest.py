from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from refcrys.cyclotomic import CycNum

CONDUCTORS = (1, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 24)


def random_cyc(rng: random.Random, conductors=CONDUCTORS) -> CycNum:
    n = rng.choice(conductors)
    coeffs = [Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3))) for _ in range(rng.randint(1, n))]
    return CycNum.from_rationals(n, coeffs)


def family_triples(bound: int = 5000) -> list[tuple[int, int, int]]:
    """All (de, e, n) with n >= 2 and |G(de,e,n)| = (de)^n n!/e <= bound."""
    out = []
    for n in range(2, 8):
        for de in range(1, bound + 1):
            if de**n * math.factorial(n) // de > bound:
                break
            for e in range(1, de + 1):
                if de % e == 0 and de**n * math.factorial(n) // e <= bound:
                    out.append((de, e, n))
    return out


@pytest.fixture
def rng():
    return random.Random(20240601)


# one line per acceptance criterion, printed at the end of the run
CRITERIA: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> bool:
    CRITERIA[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
