"""The local data e_H, f_H of reflecting hyperplanes and kappa(W) = lcm f_H.

For a hyperplane H with distinguished reflection s, the line Im(s - 1) is the
orthogonal of H for every W-invariant hermitian form, so C(H) (the elements
acting trivially on that line) can be computed without choosing a form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .cyclotomic import CycMatrix
from .refgroup import ReflectionGroup

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HyperplaneLocalData:
    index: int
    hyperplane: object
    e_H: int
    f_H: int
    normalizer_order: int
    centralizer_order: int      # |C(H)|
    orbit_size: int = 1

    def as_dict(self) -> dict:
        return {"hyperplane": str(self.hyperplane), "orbit_size": self.orbit_size,
                "e_H": self.e_H, "f_H": self.f_H}


def _kernel_form_basis(W: ReflectionGroup, hi: int) -> list:
    form = W.linear_form(hi)
    return CycMatrix([list(form)]).kernel_basis()


def hyperplane_local_data(W: ReflectionGroup, hi: int, orbit_size: int = 1) -> HyperplaneLocalData:
    W.require_realization()
    h = W.hyperplanes[hi]
    normalizer = [w for w in W.elements if W.hperm(w)[hi] == hi]
    scalars = {}
    for w in normalizer:
        scalars[w] = W.root_scalar(w, hi)
    c_h = [w for w in normalizer if scalars[w] == 1]
    f_h = len(set(scalars.values()))
    # W_H: elements fixing H pointwise
    basis = _kernel_form_basis(W, hi)
    w_h = [w for w in normalizer if all(tuple(W.apply(w, v)) == tuple(v) for v in basis)]
    e_h = len(w_h)
    s = W.distinguished_reflections[hi]
    if W.element_order(s) != e_h:
        raise RuntimeError(f"{W.label}: fixer of {h} is not generated by its distinguished reflection")
    cset = set(c_h)
    if any(w in cset for w in w_h if w != W.identity):
        raise RuntimeError(f"{W.label}: W_H and C(H) meet nontrivially at {h}")
    if f_h % e_h:
        raise RuntimeError(f"{W.label}: e_H does not divide f_H at {h}")
    if len(normalizer) != f_h * len(c_h):
        raise RuntimeError(f"{W.label}: |N(H)| != f_H |C(H)| at {h}")
    return HyperplaneLocalData(hi, h, e_h, f_h, len(normalizer), len(c_h), orbit_size)


def kappa_details(W: ReflectionGroup) -> list[HyperplaneLocalData]:
    """Local data for one representative (the smallest index) per W-orbit."""
    cache = getattr(W, "_kappa_details", None)
    if cache is None:
        cache = [hyperplane_local_data(W, orb[0], len(orb)) for orb in W.hyperplane_orbits()]
        W._kappa_details = cache
    return cache


def kappa(W: ReflectionGroup) -> int:
    if W.is_stub:
        return W.catalog_entry.kappa
    k = 1
    for loc in kappa_details(W):
        k = math.lcm(k, loc.f_H)
    return k


def kappa_closed_form(d: int, e: int, n: int) -> int:
    """kappa(G(de,e,n)) for n >= 2, from the five-case formula."""
    if n < 2:
        raise ValueError("need n >= 2")
    de = d * e
    if n >= 3:
        return de if de % 2 == 0 else 2 * de
    if d == 1:
        return 2
    return de if de % 2 == 0 else 2 * de
