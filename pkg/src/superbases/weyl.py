"""Reflections, reflection words and the R-preserving quasi-Weyl operators."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Family, SignedSymbol, SystemDescriptor, Vector, form_kappa, form_star, parse_vector
from .rootsys import contains, enumerate_roots

QUASI = "*"
EVEN = "k"

_FORMS = {QUASI: form_star, EVEN: form_kappa}


def reflect(alpha: Vector, form: str, v: Vector) -> Vector:
    """Reflect ``v`` in ``alpha`` using the form tagged ``form`` ("*" or "k")."""
    try:
        f = _FORMS[form]
    except KeyError:
        raise ValueError(f"unknown form tag {form!r}") from None
    norm = f(alpha, alpha)
    if norm == 0:
        raise ValueError(f"{alpha} is isotropic for form {form!r}")
    c = Fraction(2 * f(v, alpha), norm)
    if c.denominator != 1:
        raise ValueError(f"reflection of {v} in {alpha} leaves the integer lattice")
    return v - int(c) * alpha


@dataclass(frozen=True)
class Letter:
    root: Vector
    form: str = QUASI

    def __post_init__(self):
        f = _FORMS.get(self.form)
        if f is None:
            raise ValueError(f"unknown form tag {self.form!r}")
        if f(self.root, self.root) == 0:
            raise ValueError(f"{self.root} is isotropic for form {self.form!r}")

    def __call__(self, v: Vector) -> Vector:
        return reflect(self.root, self.form, v)

    def __str__(self):
        return f"r{self.form}[{self.root}]"

    def to_json(self) -> dict:
        return {"root": self.root.to_json(), "form": self.form}


@dataclass(frozen=True)
class ReflectionWord:
    """Product of reflections; the rightmost letter acts first."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self):
        return len(self.letters)

    def __call__(self, v: Vector) -> Vector:
        return apply_word(self, v)

    def __matmul__(self, other: "ReflectionWord") -> "ReflectionWord":
        """Composition: (self @ other)(v) == self(other(v))."""
        return ReflectionWord(self.letters + other.letters)

    def inverse(self) -> "ReflectionWord":
        return ReflectionWord(tuple(reversed(self.letters)))

    def __str__(self):
        return " . ".join(str(x) for x in self.letters) if self.letters else "id"

    def to_json(self) -> list:
        return [x.to_json() for x in self.letters]

    @classmethod
    def from_json(cls, obj: Sequence[dict]) -> "ReflectionWord":
        return cls(tuple(Letter(Vector.from_json(x["root"]), x.get("form", QUASI)) for x in obj))

    @classmethod
    def of(cls, *roots: Vector, form: str = QUASI) -> "ReflectionWord":
        return cls(tuple(Letter(r, form) for r in roots))


IDENTITY = ReflectionWord()

_LETTER = re.compile(r"r([*k])\[([^\]]*)\]")


def parse_word(text: str, m: int, n: int) -> ReflectionWord:
    s = text.strip()
    if s in ("", "id"):
        return IDENTITY
    letters = []
    for chunk in s.split(" . "):
        mt = _LETTER.fullmatch(chunk.strip())
        if not mt:
            raise ValueError(f"cannot parse reflection letter {chunk!r}")
        letters.append(Letter(parse_vector(mt.group(2), m, n), mt.group(1)))
    return ReflectionWord(tuple(letters))


def apply_word(w: ReflectionWord, v: Vector) -> Vector:
    for letter in reversed(w.letters):
        v = letter(v)
    return v


def apply_to_set(w: ReflectionWord, vs: Iterable[Vector]) -> frozenset[Vector]:
    return frozenset(apply_word(w, v) for v in vs)


def belongto_operator(
    sys: SystemDescriptor,
    kind: str,
    zeta: SignedSymbol,
    eta: SignedSymbol | None = None,
    p: int = 0,
    q: int = 0,
) -> ReflectionWord:
    """The R-preserving words I, J, S, T of the odd-odd family.

    I(zeta, p) = r[2 zeta + pD]                  p even for d-kind, odd for e-kind
    J(zeta, eta, p) = r[zeta - eta + pD]         zeta, eta of the same kind
    S(zeta, eta, p, q) = r[zeta-eta+pD] r[zeta-eta+qD]
    T(zeta, eta, p, q) = r[zeta+eta+pD] r[zeta-eta+qD]
    """
    if sys.family is not Family.A_ODD_ODD2:
        raise ValueError("belong-to operators are defined for the A(2m-1,2n-1)^(2) family only")
    m, n = sys.m, sys.n
    zeta.check(m, n)
    z = zeta.vector(m, n)
    if kind == "I":
        if zeta.kind == "d" and p % 2:
            raise ValueError("I with a d-kind symbol needs an even shift")
        if zeta.kind == "e" and p % 2 == 0:
            raise ValueError("I with an e-kind symbol needs an odd shift")
        return ReflectionWord.of((2 * z).shift(p))
    if eta is None:
        raise ValueError(f"operator {kind} needs a second symbol")
    eta.check(m, n)
    if zeta.symbol == eta.symbol:
        raise ValueError("zeta and eta must not be proportional")
    e = eta.vector(m, n)
    if kind == "J":
        if zeta.kind != eta.kind:
            raise ValueError("J needs zeta and eta of the same kind")
        return ReflectionWord.of((z - e).shift(p))
    if kind == "S":
        return ReflectionWord.of((z - e).shift(p), (z - e).shift(q))
    if kind == "T":
        return ReflectionWord.of((z + e).shift(p), (z - e).shift(q))
    raise ValueError(f"unknown operator kind {kind!r}")


def _maps_into(w: ReflectionWord, sys: SystemDescriptor, roots: Iterable[Vector]) -> bool:
    for v in roots:
        img = apply_word(w, v)
        if not img.is_zero() and contains(sys, img) is None:
            return False
    return True


def check_preserves_R(w: ReflectionWord, sys: SystemDescriptor, kmax: int) -> bool:
    """Bounded certificate: w and its inverse send every root of the window into R."""
    roots = enumerate_roots(sys, kmax)
    return _maps_into(w, sys, roots) and _maps_into(w.inverse(), sys, roots)
