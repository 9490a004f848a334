"""Ambient lattice for twisted affine root supersystems.

Vectors live in span{e_1..e_m, d_1..d_n, D} where ``D`` is the null root.
Coordinates are always Python ints, ordered (e_1..e_m, d_1..d_n, D).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class Family(enum.Enum):
    A_EVEN_ODD2 = "a-2m-2n1-2"    # A(2m, 2n-1)^(2)
    A_ODD_ODD2 = "a-2m1-2n1-2"    # A(2m-1, 2n-1)^(2)
    A_EVEN_EVEN4 = "a-2m-2n-4"    # A(2m, 2n)^(4)
    D2 = "d-2"                    # D(m+1, n)^(2)

    @property
    def period(self) -> int:
        return 4 if self is Family.A_EVEN_EVEN4 else 2

    @property
    def label(self) -> str:
        return {
            Family.A_EVEN_ODD2: "A(2m,2n-1)^(2)",
            Family.A_ODD_ODD2: "A(2m-1,2n-1)^(2)",
            Family.A_EVEN_EVEN4: "A(2m,2n)^(4)",
            Family.D2: "D(m+1,n)^(2)",
        }[self]


@dataclass(frozen=True)
class SystemDescriptor:
    family: Family
    m: int
    n: int

    def __post_init__(self):
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family(self.family))
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be nonnegative")
        f, m, n = self.family, self.m, self.n
        if f in (Family.A_EVEN_ODD2, Family.D2) and n < 1:
            raise ValueError(f"{f.label} requires n >= 1")
        if f is Family.A_ODD_ODD2 and (m < 1 or n < 1 or (m, n) == (1, 1)):
            raise ValueError(f"{f.label} requires m, n >= 1 and (m, n) != (1, 1)")
        if f is Family.A_EVEN_EVEN4 and (m, n) == (0, 0):
            raise ValueError(f"{f.label} requires (m, n) != (0, 0)")

    @property
    def rank(self) -> int:
        """Number of finite symbols, called ell in the classification."""
        return self.m + self.n

    def symbols(self) -> list["Symbol"]:
        return [Symbol("e", i) for i in range(1, self.m + 1)] + [
            Symbol("d", p) for p in range(1, self.n + 1)
        ]

    def __str__(self):
        return f"{self.family.value}(m={self.m},n={self.n})"


class Symbol(NamedTuple):
    """A basis symbol e_i (kind ``"e"``) or d_p (kind ``"d"``); never D."""

    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True, order=True)
class SignedSymbol:
    sign: int
    kind: str
    index: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind not in ("e", "d"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("symbol index is 1-based")

    @property
    def symbol(self) -> Symbol:
        return Symbol(self.kind, self.index)

    def __neg__(self) -> "SignedSymbol":
        return SignedSymbol(-self.sign, self.kind, self.index)

    def vector(self, m: int, n: int) -> "Vector":
        return self.sign * Vector.unit(m, n, self.symbol)

    def check(self, m: int, n: int) -> None:
        bound = m if self.kind == "e" else n
        if self.index > bound:
            raise ValueError(f"symbol {self.symbol} out of range for m={m}, n={n}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "idx": self.index, "sign": self.sign}

    @classmethod
    def from_json(cls, obj: dict) -> "SignedSymbol":
        return cls(int(obj["sign"]), obj["kind"], int(obj["idx"]))

    def __str__(self):
        return ("+" if self.sign > 0 else "-") + f"{self.kind}{self.index}"


@dataclass(frozen=True, slots=True)
class Vector:
    eps: tuple[int, ...]
    dels: tuple[int, ...]
    delta: int = 0

    @property
    def m(self) -> int:
        return len(self.eps)

    @property
    def n(self) -> int:
        return len(self.dels)

    @classmethod
    def zero(cls, m: int, n: int) -> "Vector":
        return cls((0,) * m, (0,) * n, 0)

    @classmethod
    def null(cls, m: int, n: int, k: int = 1) -> "Vector":
        """The vector k*D."""
        return cls((0,) * m, (0,) * n, k)

    @classmethod
    def unit(cls, m: int, n: int, sym: Symbol) -> "Vector":
        eps, dels = [0] * m, [0] * n
        if sym.kind == "e":
            eps[sym.index - 1] = 1
        else:
            dels[sym.index - 1] = 1
        return cls(tuple(eps), tuple(dels), 0)

    @classmethod
    def from_coords(cls, m: int, n: int, coords: Iterable[int]) -> "Vector":
        c = tuple(int(x) for x in coords)
        if len(c) != m + n + 1:
            raise ValueError(f"expected {m + n + 1} coordinates, got {len(c)}")
        return cls(c[:m], c[m:m + n], c[m + n])

    def coords(self) -> tuple[int, ...]:
        return self.eps + self.dels + (self.delta,)

    def sort_key(self):
        return (self.delta,) + self.eps + self.dels

    def is_zero(self) -> bool:
        return self.delta == 0 and not any(self.eps) and not any(self.dels)

    def is_null(self) -> bool:
        """True for multiples of D, including 0."""
        return not any(self.eps) and not any(self.dels)

    def coeff(self, sym: Symbol) -> int:
        return self.eps[sym.index - 1] if sym.kind == "e" else self.dels[sym.index - 1]

    def _check(self, other: "Vector") -> None:
        if len(self.eps) != len(other.eps) or len(self.dels) != len(other.dels):
            raise ValueError("dimension mismatch between vectors")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.dels, other.dels)),
            self.delta + other.delta,
        )

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(
            tuple(a - b for a, b in zip(self.eps, other.eps)),
            tuple(a - b for a, b in zip(self.dels, other.dels)),
            self.delta - other.delta,
        )

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.eps), tuple(-a for a in self.dels), -self.delta)

    def __mul__(self, k: int) -> "Vector":
        if not isinstance(k, int):
            return NotImplemented
        return Vector(tuple(k * a for a in self.eps), tuple(k * a for a in self.dels), k * self.delta)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Vector":
        """Return self + k*D."""
        return Vector(self.eps, self.dels, self.delta + k)

    def __str__(self):
        return format_vector(self)

    def to_json(self) -> dict:
        return {"eps": list(self.eps), "del": list(self.dels), "delta": self.delta}

    @classmethod
    def from_json(cls, obj) -> "Vector":
        return cls(tuple(int(x) for x in obj["eps"]), tuple(int(x) for x in obj["del"]), int(obj["delta"]))


def _check_dims(u: Vector, v: Vector) -> None:
    if len(u.eps) != len(v.eps) or len(u.dels) != len(v.dels):
        raise ValueError("dimension mismatch between vectors")


def form_kappa(u: Vector, v: Vector) -> int:
    """The invariant form: (e_i, e_j) = [i=j], (d_p, d_q) = -[p=q], D in the radical."""
    _check_dims(u, v)
    return sum(a * b for a, b in zip(u.eps, v.eps)) - sum(a * b for a, b in zip(u.dels, v.dels))


def form_star(u: Vector, v: Vector) -> int:
    """The positive semidefinite form with d_p made positive; radical is span{D}."""
    _check_dims(u, v)
    return sum(a * b for a, b in zip(u.eps, v.eps)) + sum(a * b for a, b in zip(u.dels, v.dels))


def support(v: Vector) -> frozenset[Symbol]:
    out = [Symbol("e", i + 1) for i, a in enumerate(v.eps) if a]
    out += [Symbol("d", p + 1) for p, a in enumerate(v.dels) if a]
    return frozenset(out)


def sgn(sym: Symbol, v: Vector) -> int:
    c = v.coeff(sym)
    if c == 0:
        raise ValueError(f"{sym} is not in the support of {v}")
    return 1 if c > 0 else -1


# -- text format ---------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(\d+)?\s*\*?\s*(e\d+|d\d+|D)\s*")


def format_vector(v: Vector) -> str:
    terms = []
    for sym_kind, coords in (("e", v.eps), ("d", v.dels)):
        for i, c in enumerate(coords):
            if c:
                terms.append((c, f"{sym_kind}{i + 1}"))
    if v.delta:
        terms.append((v.delta, "D"))
    if not terms:
        return "0"
    out = []
    for j, (c, name) in enumerate(terms):
        mag = abs(c)
        body = name if mag == 1 else f"{mag}*{name}"
        if j == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def parse_vector(text: str, m: int, n: int) -> Vector:
    """Parse ``2*e1 - d2 + 3*D`` style text; ``0`` is the zero vector."""
    s = text.strip()
    if s == "0":
        return Vector.zero(m, n)
    eps, dels, delta = [0] * m, [0] * n, 0
    pos = 0
    first = True
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos or (not first and not mt.group(1)):
            raise ValueError(f"cannot parse vector {text!r} at offset {pos}")
        sign = -1 if mt.group(1) == "-" else 1
        c = sign * int(mt.group(2) or 1)
        name = mt.group(3)
        if name == "D":
            delta += c
        else:
            idx = int(name[1:])
            bound, store = (m, eps) if name[0] == "e" else (n, dels)
            if not 1 <= idx <= bound:
                raise ValueError(f"symbol {name} out of range for m={m}, n={n}")
            store[idx - 1] += c
        pos = mt.end()
        first = False
    if first:
        raise ValueError(f"empty vector text {text!r}")
    return Vector(tuple(eps), tuple(dels), delta)


def vector_from_any(obj, m: int, n: int) -> Vector:
    """Accept either the JSON object form or the text form."""
    if isinstance(obj, str):
        return parse_vector(obj, m, n)
    v = Vector.from_json(obj)
    if v.m != m or v.n != n:
        raise ValueError(f"vector {obj} does not match m={m}, n={n}")
    return v
