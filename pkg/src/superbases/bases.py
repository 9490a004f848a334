"""Exact decomposition over candidate bases and base verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .core import SystemDescriptor, Vector
from .rootsys import RootClass, contains, enumerate_roots, in_twice_roots

if TYPE_CHECKING:
    from .canon import CanonicalParams


class DependentError(ValueError):
    pass


@dataclass(frozen=True)
class Base:
    sys: SystemDescriptor
    elements: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) != self.sys.rank + 1:
            raise ValueError(
                f"a base of {self.sys} has {self.sys.rank + 1} elements, got {len(self.elements)}"
            )
        for v in self.elements:
            if v.m != self.sys.m or v.n != self.sys.n:
                raise ValueError(f"{v} does not live in the ambient space of {self.sys}")

    def as_set(self) -> frozenset[Vector]:
        return frozenset(self.elements)

    def __neg__(self) -> "Base":
        return Base(self.sys, tuple(-v for v in self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def same_set(self, other: "Base") -> bool:
        return self.sys == other.sys and self.as_set() == other.as_set()

    def to_json(self) -> list:
        return [v.to_json() for v in self.elements]


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[Fraction, ...]
    integral: bool
    sign: str  # "+", "-", "zero" or "mixed"

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coefficients],
            "integral": self.integral,
            "sign": self.sign,
        }


def _inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals; raises DependentError if singular."""
    size = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(rows)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col] != 0), None)
        if piv is None:
            raise DependentError("vectors are linearly dependent")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[size:] for row in a]


@lru_cache(maxsize=4096)
def _solver(elements: tuple[Vector, ...]) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Integer matrix A and denominator d with coefficients = A @ coords / d."""
    dim = len(elements[0].coords())
    if len(elements) != dim:
        raise DependentError("need exactly dim V vectors")
    cols = [v.coords() for v in elements]
    mat = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    inv = _inverse(mat)
    d = lcm(*(x.denominator for row in inv for x in row))
    return tuple(tuple(int(x * d) for x in row) for row in inv), d


def is_independent(elements: Sequence[Vector]) -> bool:
    try:
        _solver(tuple(elements))
    except DependentError:
        return False
    return True


def _sign_of(coeffs: Sequence) -> str:
    pos = any(c > 0 for c in coeffs)
    neg = any(c < 0 for c in coeffs)
    if pos and neg:
        return "mixed"
    return "+" if pos else "-" if neg else "zero"


def decompose(base: Base | Sequence[Vector], v: Vector) -> Decomposition:
    """Unique rational solution of sum c_i * base_i = v."""
    elements = base.elements if isinstance(base, Base) else tuple(base)
    mat, d = _solver(elements)
    x = v.coords()
    raw = [sum(a * b for a, b in zip(row, x)) for row in mat]
    coeffs = tuple(Fraction(r, d) for r in raw)
    return Decomposition(coeffs, all(c.denominator == 1 for c in coeffs), _sign_of(raw))


def _good_quick(mat, d, x) -> bool:
    pos = neg = False
    for row in mat:
        r = sum(a * b for a, b in zip(row, x))
        if r % d:
            return False
        if r > 0:
            pos = True
        elif r < 0:
            neg = True
    return not (pos and neg)


def default_cutoff(base: Base) -> int:
    top = max(abs(v.delta) for v in base.elements)
    return max(4, 2 * (top + base.sys.family.period))


@dataclass(frozen=True)
class Verdict:
    status: str  # "certified", "verified-at-cutoff" or "rejected"
    kmax: int
    reason: str = ""
    witness: Optional[Vector] = None
    decomposition: Optional[Decomposition] = None
    params: Optional["CanonicalParams"] = field(default=None)

    @property
    def ok(self) -> bool:
        return self.status != "rejected"

    @property
    def exit_code(self) -> int:
        return {"certified": 0, "verified-at-cutoff": 1, "rejected": 2}[self.status]

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "kmax": self.kmax}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        if self.params is not None:
            out["params"] = self.params.to_json()
        return out


def _reject(kmax, reason, witness=None, base=None) -> Verdict:
    dec = decompose(base, witness) if base is not None and witness is not None else None
    return Verdict("rejected", kmax, reason, witness, dec)


def window_witness(base: Base, kmax: int) -> Optional[Vector]:
    """Smallest root of the window (canonical order) that fails the sign test."""
    mat, d = _solver(base.elements)
    roots = sorted((v for v in enumerate_roots(base.sys, kmax) if not v.is_zero()), key=Vector.sort_key)
    for v in roots:
        if not _good_quick(mat, d, v.coords()):
            return v
    return None


def verify_at_cutoff(base: Base, kmax: Optional[int] = None) -> Verdict:
    """The finite part of is_base, without canonical-form recognition."""
    sys = base.sys
    k = default_cutoff(base) if kmax is None else kmax
    for v in base.elements:
        cls = contains(sys, v)
        if cls is None:
            return _reject(k, f"{v} is not a root", v)
    if not is_independent(base.elements):
        return _reject(k, "elements are linearly dependent")
    for v in base.elements:
        if contains(sys, v) is RootClass.IMAGINARY:
            other = next(a for a in base.elements if not a.is_null())
            return _reject(k, f"{v} is a multiple of D", other.shift(-4 * v.delta), base)
        if in_twice_roots(sys, v):
            half = Vector(tuple(c // 2 for c in v.eps), tuple(c // 2 for c in v.dels), v.delta // 2)
            return _reject(k, f"{v} lies in 2R", half, base)
    w = window_witness(base, k)
    if w is not None:
        return _reject(k, "root with non-integral or mixed-sign coefficients", w, base)
    return Verdict("verified-at-cutoff", k)


def is_base(base: Base, kmax: Optional[int] = None) -> Verdict:
    """Three-valued verification: rejected, verified at the cutoff, or certified.

    Certification needs the finite check to pass and the base to be recognised
    as one of the canonical forms, which the classification shows are bases.
    """
    from .canon import match_canonical

    verdict = verify_at_cutoff(base, kmax)
    if not verdict.ok:
        return verdict
    params = match_canonical(base)
    if params is None:
        return verdict
    return Verdict("certified", verdict.kmax, params=params)


def positive_roots(base: Base, kmax: int) -> frozenset[Vector]:
    verdict = verify_at_cutoff(base, max(kmax, default_cutoff(base)))
    if not verdict.ok:
        raise ValueError(f"not a base: {verdict.reason}")
    mat, d = _solver(base.elements)
    out = set()
    for v in enumerate_roots(base.sys, kmax):
        if v.is_zero():
            continue
        if _sign_of([sum(a * b for a, b in zip(row, v.coords())) for row in mat]) == "+":
            out.add(v)
    return frozenset(out)


def verify_against(roots: Iterable[Vector], base: Base) -> Optional[Vector]:
    """First vector of ``roots`` that is not a uniform-sign integral combination."""
    mat, d = _solver(base.elements)
    for v in roots:
        if not v.is_zero() and not _good_quick(mat, d, v.coords()):
            return v
    return None
