"""Crystallographic quotients B/(P,P) of complex braid groups.

Exact cyclotomic arithmetic, complex reflection groups as permutation groups,
regular numbers, the invariant kappa, the crystallographic lattice
representation, torsion certificates and a Kaehler criterion.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .refgroup import GroupSpec, ReflectionGroup, build_family, build_group  # noqa: E402

__all__ = ["GroupSpec", "ReflectionGroup", "build_family", "build_group", "__version__"]
