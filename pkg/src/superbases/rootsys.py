"""Root membership and windowed enumeration for the four twisted families."""
from __future__ import annotations

import enum
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from .core import Family, SystemDescriptor, Vector, form_kappa


class RootClass(enum.Enum):
    """Shape of a root.

    ``EXTRA_LONG`` is the +-2z + kD shape for every family (the odd-odd family
    calls these simply "long"); ``LONG`` is +-z +- w with z, w of the same kind.
    """

    IMAGINARY = "imaginary"
    SHORT = "short"
    LONG = "long"
    EXTRA_LONG = "extra_long"
    NONSINGULAR = "nonsingular"

    @property
    def tag(self) -> str:
        if self is RootClass.IMAGINARY:
            return "imaginary"
        if self is RootClass.NONSINGULAR:
            return "nonsingular"
        return "real"


def _check(sys: SystemDescriptor, v: Vector) -> None:
    if v.m != sys.m or v.n != sys.n:
        raise ValueError(f"vector has shape (m={v.m}, n={v.n}) but system is {sys}")


def _level_ok(family: Family, shape: str, k: int) -> bool:
    """Whether shape + k*D is a root; shape is one of short/pair/2e/2d."""
    if family is Family.A_EVEN_ODD2:
        return {"short": True, "pair": True, "2e": k % 2 == 1, "2d": k % 2 == 0}[shape]
    if family is Family.A_ODD_ODD2:
        return {"short": False, "pair": True, "2e": k % 2 == 1, "2d": k % 2 == 0}[shape]
    if family is Family.A_EVEN_EVEN4:
        return {"short": True, "pair": k % 2 == 0, "2e": k % 4 == 2, "2d": k % 4 == 0}[shape]
    return {"short": True, "pair": k % 2 == 0, "2e": False, "2d": k % 2 == 0}[shape]


def contains(sys: SystemDescriptor, v: Vector) -> Optional[RootClass]:
    """Classify ``v`` as a root of ``sys``, or return None (also for 0)."""
    _check(sys, v)
    nz = [c for c in v.eps + v.dels if c]
    if not nz:
        return RootClass.IMAGINARY if v.delta else None
    k = v.delta
    if len(nz) == 1:
        c = abs(nz[0])
        if c == 1:
            return RootClass.SHORT if _level_ok(sys.family, "short", k) else None
        if c == 2:
            shape = "2e" if any(v.eps) else "2d"
            return RootClass.EXTRA_LONG if _level_ok(sys.family, shape, k) else None
        return None
    if len(nz) == 2 and all(abs(c) == 1 for c in nz):
        if not _level_ok(sys.family, "pair", k):
            return None
        ne = sum(1 for c in v.eps if c)
        return RootClass.NONSINGULAR if ne == 1 else RootClass.LONG
    return None


def is_root(sys: SystemDescriptor, v: Vector) -> bool:
    return contains(sys, v) is not None


def is_long_like(sys: SystemDescriptor, v: Vector) -> bool:
    """True iff the root ``v`` has the +-2z + kD shape."""
    cls = contains(sys, v)
    if cls is None:
        raise ValueError(f"{v} is not a root of {sys}")
    return cls is RootClass.EXTRA_LONG


def in_twice_roots(sys: SystemDescriptor, v: Vector) -> bool:
    """Whether v lies in 2R, i.e. v = 2a for a nonzero root a."""
    if any(c % 2 for c in v.coords()):
        return False
    half = Vector(tuple(c // 2 for c in v.eps), tuple(c // 2 for c in v.dels), v.delta // 2)
    return not half.is_zero() and contains(sys, half) is not None


def finite_shapes(sys: SystemDescriptor) -> list[tuple[Vector, str]]:
    """All finite parts (D-coefficient 0) tagged short/pair/2e/2d, without 0."""
    m, n = sys.m, sys.n
    syms = sys.symbols()
    out: list[tuple[Vector, str]] = []
    for s in syms:
        u = Vector.unit(m, n, s)
        out.append((u, "short"))
        out.append((-u, "short"))
        out.append((2 * u, "2e" if s.kind == "e" else "2d"))
        out.append((-2 * u, "2e" if s.kind == "e" else "2d"))
    for a, b in combinations(syms, 2):
        ua, ub = Vector.unit(m, n, a), Vector.unit(m, n, b)
        for sa, sb in product((1, -1), repeat=2):
            out.append((sa * ua + sb * ub, "pair"))
    return out


@lru_cache(maxsize=256)
def _enumerate_cached(sys: SystemDescriptor, kmax: int) -> frozenset[Vector]:
    m, n = sys.m, sys.n
    shapes = finite_shapes(sys)
    out = set()
    for k in range(-kmax, kmax + 1):
        out.add(Vector.null(m, n, k))
        for v, shape in shapes:
            if _level_ok(sys.family, shape, k):
                out.add(v.shift(k))
    return frozenset(out)


def enumerate_roots(sys: SystemDescriptor, kmax: int) -> frozenset[Vector]:
    """Roots with |D-coefficient| <= kmax, including 0 and the multiples of D."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    return _enumerate_cached(sys, kmax)


def real_and_nonsingular(sys: SystemDescriptor, kmax: int) -> list[Vector]:
    """Nonzero non-imaginary roots of the window in canonical sort order."""
    return sorted((v for v in enumerate_roots(sys, kmax) if not v.is_null()), key=Vector.sort_key)


def is_nonsingular(v: Vector) -> bool:
    return form_kappa(v, v) == 0 and not v.is_null()


def long_roots_of_kind(sys: SystemDescriptor, kind: str, kmax: int) -> list[Vector]:
    out = []
    for v in real_and_nonsingular(sys, kmax):
        if contains(sys, v) is RootClass.EXTRA_LONG:
            (sym,) = [s for s in sys.symbols() if v.coeff(s)]
            if sym.kind == kind:
                out.append(v)
    return out

