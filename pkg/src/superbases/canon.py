"""Canonical bases: construction, recognition, normalization and conjugacy.

A canonical base is named by a form tag, a sequence of signed symbols
zeta_1..zeta_l, integer shifts k_1..k_l and a global sign.  With
theta_i = zeta_i + k_i*D the forms are

    T2-A4, T2-D2   {D - theta_1, theta_i - theta_{i+1}, theta_l}
    T2-A2-long     {D - 2 theta_1, theta_i - theta_{i+1}, theta_l}
    T2-A2-nolong   {D - (theta_1 + theta_2), theta_i - theta_{i+1}, theta_l}
    B1             {D - (theta_1 + theta_2), theta_i - theta_{i+1}, theta_{l-1} + theta_l}
    B2             {-2 theta_1, theta_i - theta_{i+1}, theta_{l-1} + theta_l + D}
    B3             {D - 2 theta_1, theta_i - theta_{i+1}, theta_{l-1} + theta_l}
    B4             {-2 theta_1, theta_i - theta_{i+1}, 2 theta_l + D}

Elements are always listed head first, then the chain, then the tail.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .bases import Base, decompose, positive_roots
from .core import Family, SignedSymbol, SystemDescriptor, Vector
from .rootsys import RootClass, contains
from .weyl import IDENTITY, Letter, ReflectionWord, apply_word

FORMS = ("T2-A4", "T2-D2", "T2-A2-long", "T2-A2-nolong", "B1", "B2", "B3", "B4")

FORM_FAMILY = {
    "T2-A4": Family.A_EVEN_EVEN4,
    "T2-D2": Family.D2,
    "T2-A2-long": Family.A_EVEN_ODD2,
    "T2-A2-nolong": Family.A_EVEN_ODD2,
    "B1": Family.A_ODD_ODD2,
    "B2": Family.A_ODD_ODD2,
    "B3": Family.A_ODD_ODD2,
    "B4": Family.A_ODD_ODD2,
}

# required kind of (theta_1, theta_l); None means unconstrained
_END_KINDS = {
    "T2-A4": (None, None),
    "T2-D2": (None, None),
    "T2-A2-long": ("e", None),
    "T2-A2-nolong": ("d", None),
    "B1": ("d", "e"),
    "B2": ("d", "d"),
    "B3": ("e", "e"),
    "B4": ("d", "e"),
}

# number of +-2z + kD elements in a base of each form
LONG_CENSUS = {"T2-A4": 0, "T2-D2": 0, "T2-A2-long": 1, "T2-A2-nolong": 0, "B1": 0, "B2": 1, "B3": 1, "B4": 2}

ODD_FORMS = ("B1", "B2", "B3", "B4")


def forms_for(family: Family) -> list[str]:
    return [f for f in FORMS if FORM_FAMILY[f] is family]


@dataclass(frozen=True)
class CanonicalParams:
    form: str
    zetas: tuple[SignedSymbol, ...]
    ks: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "zetas", tuple(self.zetas))
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))

    @property
    def rank(self) -> int:
        return len(self.zetas)

    def system(self) -> SystemDescriptor:
        m = sum(1 for z in self.zetas if z.kind == "e")
        n = len(self.zetas) - m
        return SystemDescriptor(FORM_FAMILY[self.form], m, n)

    def thetas(self) -> list[Vector]:
        sys = self.system()
        return [z.vector(sys.m, sys.n).shift(k) for z, k in zip(self.zetas, self.ks)]

    def with_(self, **kw) -> "CanonicalParams":
        d = dict(form=self.form, zetas=self.zetas, ks=self.ks, sign=self.sign)
        d.update(kw)
        return CanonicalParams(**d)

    def to_json(self) -> dict:
        return {
            "form": self.form,
            "zetas": [z.to_json() for z in self.zetas],
            "ks": list(self.ks),
            "sign": self.sign,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CanonicalParams":
        return cls(
            obj["form"],
            tuple(SignedSymbol.from_json(z) for z in obj["zetas"]),
            tuple(int(k) for k in obj["ks"]),
            int(obj.get("sign", 1)),
        )

    def __str__(self):
        zs = ",".join(str(z) for z in self.zetas)
        ks = ",".join(str(k) for k in self.ks)
        return f"{'+' if self.sign > 0 else '-'}{self.form}(zeta=[{zs}], k=[{ks}])"


def validate(params: CanonicalParams) -> SystemDescriptor:
    """Check the invariants of ``params``; raise ValueError naming the broken clause."""
    p = params
    if p.form not in FORMS:
        raise ValueError(f"unknown form {p.form!r}")
    if p.sign not in (1, -1):
        raise ValueError("global sign must be +1 or -1")
    if len(p.ks) != len(p.zetas):
        raise ValueError("zetas and ks must have the same length")
    if not p.zetas:
        raise ValueError("at least one zeta is needed")
    syms = [z.symbol for z in p.zetas]
    if len(set(syms)) != len(syms):
        raise ValueError("zetas must be pairwise non-proportional")
    try:
        sys = p.system()
    except ValueError as exc:
        raise ValueError(f"family compatibility: {exc}") from None
    for z in p.zetas:
        z.check(sys.m, sys.n)
    ell = sys.rank
    if p.form in ("T2-A4", "T2-D2") and len({k % 2 for k in p.ks}) > 1:
        raise ValueError("parity: all k_i must be congruent mod 2")
    first, last = _END_KINDS[p.form]
    if first and p.zetas[0].kind != first:
        raise ValueError(f"support: {p.form} needs supp(theta_1) in the {first}-symbols")
    if last and p.zetas[-1].kind != last:
        raise ValueError(f"support: {p.form} needs supp(theta_l) in the {last}-symbols")
    if p.form in ODD_FORMS and ell < 3:
        raise ValueError(f"{p.form} needs at least three symbols")
    return sys


def _elements(form: str, th: Sequence[Vector], D: Vector) -> list[Vector]:
    ell = len(th)
    chain = [th[i] - th[i + 1] for i in range(ell - 1)]
    if form in ("T2-A4", "T2-D2"):
        return [D - th[0]] + chain + [th[-1]]
    if form == "T2-A2-long":
        return [D - 2 * th[0]] + chain + [th[-1]]
    if form == "T2-A2-nolong":
        if ell == 1:
            return [D - th[0], th[0]]
        return [D - (th[0] + th[1])] + chain + [th[-1]]
    if form == "B1":
        return [D - (th[0] + th[1])] + chain + [th[-2] + th[-1]]
    if form == "B2":
        return [-2 * th[0]] + chain + [th[-2] + th[-1] + D]
    if form == "B3":
        return [D - 2 * th[0]] + chain + [th[-2] + th[-1]]
    return [-2 * th[0]] + chain + [2 * th[-1] + D]


def build_base(params: CanonicalParams) -> Base:
    sys = validate(params)
    D = Vector.null(sys.m, sys.n, 1)
    els = _elements(params.form, params.thetas(), D)
    return Base(sys, tuple(params.sign * v for v in els))


# -- predicted positive roots ---------------------------------------------

def predicted_positive_roots(params: CanonicalParams, kmax: int) -> frozenset[Vector]:
    """Closed-form positive roots in the window |D-coefficient| <= kmax.

    The T2-A4 and T2-D2 rows have no printed closed form; their positives
    come from the decomposition engine instead.
    """
    sys = validate(params)
    if params.form in ("T2-A4", "T2-D2"):
        return positive_roots(build_base(params), kmax)
    m, n = sys.m, sys.n
    th = params.thetas()
    ell = len(th)
    kinds = [z.kind for z in params.zetas]
    reach = kmax + 2 * max(abs(k) for k in params.ks) + 4
    D = Vector.null(m, n, 1)
    out: set[Vector] = set()

    def add(v: Vector) -> None:
        out.add(v)

    def shifted(base_vs, start: int, step: int = 1) -> None:
        for v in base_vs:
            j = start
            while j <= reach:
                add(v.shift(j))
                j += step

    longs_e = [s * 2 * th[i] for i in range(ell) if kinds[i] == "e" for s in (1, -1)]
    longs_d = [s * 2 * th[i] for i in range(ell) if kinds[i] == "d" for s in (1, -1)]
    shifted(longs_e, 1, 2)          # +2Z>=0 D + D
    shifted(longs_d, 2, 2)          # +2Z>0 D
    pairs_all = [s * th[i] + t * th[j] for i in range(ell) for j in range(ell) if i != j for s in (1, -1) for t in (1, -1)]
    zero = [Vector.zero(m, n)]
    if params.form.startswith("T2"):
        singles = [s * th[i] for i in range(ell) for s in (1, -1)]
        shifted(zero + singles + pairs_all, 1)
        for i in range(ell):
            add(th[i])
            for j in range(i + 1, ell):
                add(th[i] + th[j])
                add(th[i] - th[j])
            if kinds[i] == "d":
                add(2 * th[i])
    else:
        shifted(zero + pairs_all, 1)
        for i in range(ell):
            for j in range(i + 1, ell):
                add(th[i] - th[j])
                if params.form in ("B1", "B3"):
                    add(th[i] + th[j])
                else:
                    add(-th[i] - th[j])
            if kinds[i] == "d":
                add(2 * th[i] if params.form in ("B1", "B3") else -2 * th[i])
    res = frozenset(params.sign * v for v in out if abs(v.delta) <= kmax and not v.is_zero())
    return res


# -- recognition ----------------------------------------------------------

def _as_theta(v: Vector) -> Optional[tuple[SignedSymbol, int]]:
    nz = [(i, c) for i, c in enumerate(v.eps) if c] + [(v.m + p, c) for p, c in enumerate(v.dels) if c]
    if len(nz) != 1 or abs(nz[0][1]) != 1:
        return None
    pos, c = nz[0]
    if pos < v.m:
        return SignedSymbol(c, "e", pos + 1), v.delta
    return SignedSymbol(c, "d", pos - v.m + 1), v.delta


def _half(v: Vector) -> Optional[Vector]:
    if any(c % 2 for c in v.coords()):
        return None
    return Vector(tuple(c // 2 for c in v.eps), tuple(c // 2 for c in v.dels), v.delta // 2)


def _head_theta(form: str, head: Vector, D: Vector) -> Optional[Vector]:
    if form in ("T2-A4", "T2-D2"):
        return D - head
    if form in ("T2-A2-long", "B3"):
        return _half(D - head)
    if form in ("B2", "B4"):
        return _half(-head)
    return None


def _chains(form: str, elems: list[Vector], D: Vector, ell: int) -> Iterator[list[Vector]]:
    """All theta sequences compatible with the head/chain shape of ``form``."""
    idx = range(len(elems))

    def grow(th: list[Vector], used: frozenset[int], syms: frozenset) -> Iterator[list[Vector]]:
        if len(th) == ell:
            yield th
            return
        for j in idx:
            if j in used:
                continue
            nxt = th[-1] - elems[j]
            t = _as_theta(nxt)
            if t is None or t[0].symbol in syms:
                continue
            yield from grow(th + [nxt], used | {j}, syms | {t[0].symbol})

    for h in idx:
        if form in ("B1", "T2-A2-nolong"):
            if ell == 1:
                t1 = D - elems[h]
                if _as_theta(t1):
                    yield [t1]
                continue
            for c in idx:
                if c == h:
                    continue
                t1 = _half(D - elems[h] + elems[c])
                if t1 is None:
                    continue
                a, b = _as_theta(t1), _as_theta(t1 - elems[c])
                if a and b and a[0].symbol != b[0].symbol:
                    yield from grow([t1, t1 - elems[c]], frozenset({h, c}), frozenset({a[0].symbol, b[0].symbol}))
        else:
            t1 = _head_theta(form, elems[h], D)
            a = _as_theta(t1) if t1 is not None else None
            if a:
                yield from grow([t1], frozenset({h}), frozenset({a[0].symbol}))


def _key(p: CanonicalParams):
    return (
        -p.sign,
        tuple(-z.sign for z in p.zetas),
        tuple((z.kind, z.index) for z in p.zetas),
        tuple(abs(k) for k in p.ks),
        p.ks,
    )


def all_matches(base: Base) -> list[CanonicalParams]:
    """Every parameterization whose build reproduces ``base`` as a set."""
    sys = base.sys
    ell = sys.rank
    D = Vector.null(sys.m, sys.n, 1)
    target = base.as_set()
    if len(target) != ell + 1:
        return []
    census = 0
    for v in base.elements:
        cls = contains(sys, v)
        if cls is None:
            return []
        census += cls is RootClass.EXTRA_LONG
    found = set()
    for form in forms_for(sys.family):
        if LONG_CENSUS[form] != census:
            continue
        for sign in (1, -1):
            elems = [sign * v for v in base.elements]
            for th in _chains(form, elems, D, ell):
                parts = [_as_theta(t) for t in th]
                p = CanonicalParams(form, tuple(z for z, _ in parts), tuple(k for _, k in parts), sign)
                try:
                    if build_base(p).as_set() == target:
                        found.add(p)
                except ValueError:
                    continue
    return sorted(found, key=_key)


def match_canonical(base: Base) -> Optional[CanonicalParams]:
    """Recognize ``base`` as +-(a row of the classification table), or None.

    Several parameterizations describe the same set (for instance B3 is
    unchanged under theta_l -> -theta_l).  The representative returned is
    the first in the order: positive global sign, positive zetas from the
    left, symbol order, smallest |k|.
    """
    found = all_matches(base)
    return found[0] if found else None


def normalize(params: CanonicalParams) -> CanonicalParams:
    """The representative that match_canonical returns for build_base(params)."""
    out = match_canonical(build_base(params))
    assert out is not None
    return out


# -- fine and admissible normalization ------------------------------------

def _require_odd(base: Base) -> CanonicalParams:
    p = match_canonical(base)
    if p is None or p.form not in ODD_FORMS:
        raise ValueError("expected a canonical base of form B1-B4")
    return p


def _unit(z: SignedSymbol, sys: SystemDescriptor) -> Vector:
    return Vector.unit(sys.m, sys.n, z.symbol)


def _apply_and_check(word: ReflectionWord, base: Base, expect: CanonicalParams) -> Base:
    out = Base(base.sys, tuple(apply_word(word, v) for v in base.elements))
    if out.as_set() != build_base(expect).as_set():
        raise AssertionError(f"normalization word did not produce {expect}")
    return out


def make_fine(base: Base) -> tuple[ReflectionWord, Base]:
    """Flip every theta_t with negative sign on its symbol."""
    p = _require_odd(base)
    sys = base.sys
    D = Vector.null(sys.m, sys.n, 1)
    letters = []
    zetas, ks = list(p.zetas), list(p.ks)
    for t, z in enumerate(p.zetas):
        if z.sign > 0:
            continue
        u = _unit(z, sys)
        if z.kind == "d":
            letters.append(Letter(2 * u))
        else:
            letters.append(Letter(2 * u + D))
            ks[t] += 1
        zetas[t] = -z
    word = ReflectionWord(tuple(letters))
    return word, _apply_and_check(word, base, p.with_(zetas=tuple(zetas), ks=tuple(ks)))


def is_fine(params: CanonicalParams) -> bool:
    return params.form in ODD_FORMS and all(z.sign > 0 for z in params.zetas)


def admissibility(params: CanonicalParams) -> int:
    """Largest t with k_1 = ... = k_t = 0."""
    t = 0
    for k in params.ks:
        if k:
            break
        t += 1
    return t


def _fine_params(base: Base) -> CanonicalParams:
    """A fine parameterization of ``base`` (several may describe the set)."""
    for p in all_matches(base):
        if p.form in ODD_FORMS and is_fine(p):
            return p
    raise ValueError("expected a fine canonical base of form B1-B4")


def make_admissible(base: Base) -> tuple[ReflectionWord, Base]:
    """Move all shifts to theta_l, then (forms B2-B4) absorb them.

    For B1 the result is (l-1)-admissible; for B2, B3, B4 it is the fine
    base with every k_i = 0.
    """
    p = _fine_params(base)
    sys = base.sys
    D = Vector.null(sys.m, sys.n, 1)
    u = [_unit(z, sys) for z in p.zetas]
    ks = list(p.ks)
    ell = len(u)
    letters: list[Letter] = []

    def push(*roots: Vector) -> None:
        # roots are given in the order they act
        for r in roots:
            letters.insert(0, Letter(r))

    for t in range(ell - 1):
        k = ks[t]
        if k:
            a = u[t] - u[t + 1]
            push(a.shift(k), a)
            ks[t + 1] += k
            ks[t] = 0
    kl = ks[-1]
    if p.form != "B1" and kl:
        v = u[-1]
        if p.form == "B2":
            push(*((2 * v).shift(kl + 1),) if kl % 2 else ((2 * v).shift(kl), 2 * v))
        elif p.form == "B3":
            push(*((2 * v).shift(kl),) if kl % 2 else ((2 * v).shift(kl + 1), (2 * v).shift(1)))
        elif kl % 2:
            w, v1 = u[-1], u[0]
            push((2 * w).shift(kl), v1 + w, v1 - w, 2 * v1)
        else:
            push((2 * v).shift(kl + 1), (2 * v).shift(1))
        ks[-1] = 0
    word = ReflectionWord(tuple(letters))
    return word, _apply_and_check(word, base, p.with_(ks=tuple(ks)))


def normalize_base(base: Base) -> tuple[ReflectionWord, Base]:
    """make_fine followed by make_admissible, with the composed word."""
    w1, b1 = make_fine(base)
    w2, b2 = make_admissible(b1)
    return w2 @ w1, b2


# -- conjugacy ------------------------------------------------------------

def are_conjugate(b: Base, b2: Base, respect_sign: bool = False) -> bool:
    """Same row of the classification table.

    By default the global sign is ignored.  With ``respect_sign`` the signs
    must agree too: every quasi-reflection fixes D, and D is positive for
    a base of sign +1 and negative for sign -1, so Pi and -Pi are never
    related by the quasi-Weyl group.
    """
    p, q = match_canonical(b), match_canonical(b2)
    if p is None or q is None:
        raise ValueError("both bases must be canonical")
    if b.sys != b2.sys:
        return False
    return p.form == q.form and (not respect_sign or p.sign == q.sign)


def _permutation_word(src: Sequence[Vector], dst: Sequence[Vector]) -> ReflectionWord:
    """Word of transpositions r[x - y] sending src[i] to dst[i] for all i."""
    letters: list[Letter] = []
    cur = list(src)
    for t in range(len(src)):
        a = cur[t]
        if a == dst[t]:
            continue
        r = Letter(dst[t] - a)
        letters.insert(0, r)
        cur = [r(x) for x in cur]
    return ReflectionWord(tuple(letters))


def _aux_member(form: str, v: Vector) -> bool:
    """Membership in the affine root system that the chamber walk runs in."""
    nz = [c for c in v.eps + v.dels if c]
    if not nz:
        return False
    if len(nz) == 2 and all(abs(c) == 1 for c in nz):
        return form not in ("T2-A4", "T2-D2") or v.delta % 2 == 0
    if len(nz) == 1 and abs(nz[0]) == 1:
        return form != "B1"
    if len(nz) == 1 and abs(nz[0]) == 2:
        return form == "T2-A2-long" and v.delta % 2 == 1
    return False


def _chamber_walk(b: Base, b2: Base, form: str, max_steps: int = 20000) -> ReflectionWord:
    """Reflect in simple roots of b2 that are negative for b until b2 == b."""
    letters: list[Letter] = []
    cur = list(b2.elements)
    target = b.as_set()
    for _ in range(max_steps):
        if set(cur) == target:
            return ReflectionWord(tuple(letters))
        neg = next((x for x in cur if decompose(b, x).sign == "-"), None)
        if neg is None or not _aux_member(form, neg):
            break
        r = Letter(neg)
        letters.insert(0, r)
        cur = [r(x) for x in cur]
    raise ValueError("chamber walk did not reach the target base")


def conjugacy_word(b: Base, b2: Base) -> ReflectionWord:
    """A quasi-Weyl word w with w(b2) == b as sets.

    Forms B2-B4: both bases are normalized (fine, then admissible), the
    normal forms are matched by transpositions of the symbols, and the
    normalizing word of ``b`` is undone.  Other forms use a chamber walk in
    the affine root system that contains both bases.
    """
    if b.sys != b2.sys:
        raise ValueError("bases live in different systems")
    p, q = match_canonical(b), match_canonical(b2)
    if p is None or q is None:
        raise ValueError("both bases must be canonical")
    if p.form != q.form:
        raise ValueError(f"not conjugate: forms {p.form} and {q.form} differ")
    if p.sign != q.sign:
        raise ValueError("not conjugate: global signs differ and every quasi-reflection fixes D")
    if b.as_set() == b2.as_set():
        return IDENTITY
    if p.form in ("B2", "B3", "B4"):
        wb, nb = normalize_base(b)
        wb2, nb2 = normalize_base(b2)
        pb, pb2 = _fine_params(nb), _fine_params(nb2)
        # the normal forms may still differ in symbol order only
        sys = b.sys
        src = [_unit(z, sys) for z in pb2.zetas]
        dst = [_unit(z, sys) for z in pb.zetas]
        c = _permutation_word(src, dst)
        word = wb.inverse() @ c @ wb2
    else:
        word = _chamber_walk(b, b2, p.form)
    if frozenset(apply_word(word, v) for v in b2.elements) != b.as_set():
        raise AssertionError("conjugacy word does not map b2 onto b")
    return word
