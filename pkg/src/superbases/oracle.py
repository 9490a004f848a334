"""Brute-force cross-checks: exhaustive base search and the property suite."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

from .bases import Base, default_cutoff, is_independent, verify_at_cutoff, window_witness
from .canon import _END_KINDS, FORM_FAMILY, CanonicalParams, build_base, forms_for, match_canonical
from .core import Family, SignedSymbol, SystemDescriptor, Vector, form_star, sgn, support
from .rootsys import RootClass, contains, enumerate_roots, in_twice_roots
from .weyl import apply_word, belongto_operator, check_preserves_R

Form = Callable[[Vector, Vector], int]


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Found:
    base: Base
    params: Optional[CanonicalParams]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "params": self.params.to_json() if self.params else None,
        }


def _long_kind(sys: SystemDescriptor, v: Vector) -> Optional[str]:
    if contains(sys, v) is not RootClass.EXTRA_LONG:
        return None
    return "e" if any(v.eps) else "d"


def search_candidates(sys: SystemDescriptor, kmax_entry: int) -> list[Vector]:
    """Roots allowed in a base by the reduction lemma, in canonical order."""
    return [
        v
        for v in sorted(enumerate_roots(sys, kmax_entry), key=Vector.sort_key)
        if not v.is_null() and not in_twice_roots(sys, v)
    ]


def search_bases(
    sys: SystemDescriptor,
    kmax_root: int,
    kmax_entry: int,
    max_subsets: int = 5_000_000,
) -> list[Found]:
    """Every base whose entries have |D-coefficient| <= kmax_entry.

    Subsets are pruned by: pairwise differences are never roots (nor 0),
    at most one extra-long root of each kind, and every symbol must occur
    in some support.  Survivors must be independent and pass the
    decomposition check on the window kmax_root.
    """
    cands = search_candidates(sys, kmax_entry)
    size = sys.rank + 1
    if comb(len(cands), size) > max_subsets:
        raise BudgetExceeded(
            f"{comb(len(cands), size)} candidate subsets exceed the budget of {max_subsets}"
        )
    bad_pair = [[False] * len(cands) for _ in cands]
    for i, a in enumerate(cands):
        for j in range(i + 1, len(cands)):
            d = a - cands[j]
            if d.is_zero() or contains(sys, d) is not None:
                bad_pair[i][j] = bad_pair[j][i] = True
    kinds = [_long_kind(sys, v) for v in cands]
    supports = [support(v) for v in cands]
    all_syms = frozenset(sys.symbols())
    out: list[Found] = []

    def rec(start: int, chosen: list[int], longs: frozenset) -> None:
        if len(chosen) == size:
            if frozenset().union(*(supports[i] for i in chosen)) != all_syms:
                return
            els = tuple(cands[i] for i in chosen)
            if not is_independent(els):
                return
            base = Base(sys, els)
            if verify_at_cutoff(base, kmax_root).ok:
                out.append(Found(base, match_canonical(base)))
            return
        for j in range(start, len(cands)):
            if any(bad_pair[i][j] for i in chosen):
                continue
            k = kinds[j]
            if k is not None and k in longs:
                continue
            rec(j + 1, chosen + [j], longs | {k} if k else longs)

    rec(0, [], frozenset())
    return out


# -- property suite -------------------------------------------------------

def _entry(sid: str, status: str, samples: int, witness=None, note: str = "") -> dict:
    out = {"id": sid, "status": status, "samples": samples, "witness": witness}
    if note:
        out["note"] = note
    return out


def _fmt(vs: Iterable[Vector]) -> list[str]:
    return [str(v) for v in vs]


def fact1(roots: list[Vector], form: Form) -> dict:
    n = 0
    for a, b in combinations(roots, 2):
        sa, sb = support(a), support(b)
        if form(a, b) != 0 or not (sa & sb):
            continue
        n += 1
        ok = sa == sb and len(sa) == 2
        if ok:
            z1, z2 = sorted(sa)
            ok = sgn(z1, a) * sgn(z2, a) == -sgn(z1, b) * sgn(z2, b)
        if not ok:
            return _entry("fact-1", "fail", n, _fmt((a, b)))
    return _entry("fact-1", "pass", n)


def fact2(sys: SystemDescriptor, roots: list[Vector]) -> dict:
    n = 0
    for a in roots:
        sa = support(a)
        for b in roots:
            sb = support(b)
            common = sa & sb
            if sa == sb or len(common) != 1:
                continue
            n += 1
            (e,) = common
            d = a - b
            in_r = not d.is_zero() and contains(sys, d) is not None
            if in_r != (sgn(e, a) == sgn(e, b)):
                return _entry("fact-2", "fail", n, _fmt((a, b)))
    return _entry("fact-2", "pass", n)


def _finite_parts(roots: Iterable[Vector]) -> list[Vector]:
    return sorted({v.shift(-v.delta) for v in roots}, key=Vector.sort_key)


def lemma_1_3(roots: list[Vector], form: Form) -> dict:
    """Exhaustive over finite parts; the statement ignores D."""
    parts = _finite_parts(roots)
    n = 0
    for a in parts:
        nbrs = [b for b in parts if form(a, b) != 0]
        for b1, b2, b3 in combinations(nbrs, 3):
            if form(b1, b2) or form(b1, b3) or form(b2, b3):
                continue
            n += 1
            bs = (b1, b2, b3)
            if not any(
                support(x) == support(y) and len(support(x)) == 2 for x, y in combinations(bs, 2)
            ):
                return _entry("lemma-1-3", "fail", n, _fmt((a,) + bs))
    return _entry("lemma-1-3", "pass", n)


E6_EDGES = {(0, 1), (0, 2), (0, 4), (2, 3), (4, 5)}  # alpha, beta1, beta2, gamma2, beta3, gamma3


def not_e(roots: list[Vector], form: Form) -> dict:
    """Search finite parts for six roots with the E6 Gram pattern."""
    parts = [v for v in _finite_parts(roots) if form(v, v) == 2]
    edge = {(i, j) for i, j in E6_EDGES} | {(j, i) for i, j in E6_EDGES}
    n = 0

    def rec(chosen: list[Vector]) -> Optional[list[Vector]]:
        nonlocal n
        k = len(chosen)
        if k == 6:
            return chosen
        for v in parts:
            if v in chosen:
                continue
            if all(form(v, chosen[i]) == (-1 if (i, k) in edge else 0) for i in range(k)):
                n += 1
                got = rec(chosen + [v])
                if got:
                    return got
        return None

    got = rec([])
    if got:
        return _entry("not-e", "fail", n, _fmt(got))
    return _entry("not-e", "pass", n)


def random_params(sys: SystemDescriptor, rng: random.Random, form: str | None = None, kspan: int = 2) -> CanonicalParams:
    """A uniformly drawn valid parameter set for ``sys``."""
    forms = [f for f in forms_for(sys.family) if _form_feasible(f, sys)]
    if form is None:
        form = rng.choice(forms)
    elif form not in forms:
        raise ValueError(f"form {form} is not available for {sys}")
    first, last = _END_KINDS[form]
    syms = sys.symbols()
    while True:
        order = syms[:]
        rng.shuffle(order)
        if first and order[0].kind != first:
            continue
        if last and order[-1].kind != last:
            continue
        break
    zetas = tuple(SignedSymbol(rng.choice((1, -1)), s.kind, s.index) for s in order)
    ks = [rng.randint(-kspan, kspan) for _ in order]
    if form in ("T2-A4", "T2-D2"):
        par = rng.randint(0, 1)
        ks = [k if (k - par) % 2 == 0 else k + (1 if k < kspan else -1) for k in ks]
    return CanonicalParams(form, zetas, tuple(ks), rng.choice((1, -1)))


def _form_feasible(form: str, sys: SystemDescriptor) -> bool:
    if FORM_FAMILY[form] is not sys.family:
        return False
    first, last = _END_KINDS[form]
    need_e = (first == "e") + (last == "e")
    need_d = (first == "d") + (last == "d")
    return sys.m >= need_e and sys.n >= need_d


def feasible_forms(sys: SystemDescriptor) -> list[str]:
    return [f for f in forms_for(sys.family) if _form_feasible(f, sys)]


def _random_base(sys, rng) -> Base:
    return build_base(random_params(sys, rng))


def lemma_unique(sys: SystemDescriptor, kmax: int, rng: random.Random, samples: int) -> dict:
    """Independent sets with two extra-long roots of one kind are never bases."""
    window = [v for v in enumerate_roots(sys, kmax) if not v.is_null()]
    window.sort(key=Vector.sort_key)
    groups = {k: [v for v in window if _long_kind(sys, v) == k] for k in ("e", "d")}
    groups = {k: g for k, g in groups.items() if len(g) >= 2}
    if not groups:
        return _entry("lemma-unique", "n/a", 0, note="fewer than two extra-long roots of a kind")
    n = 0
    for _ in range(samples):
        kind = rng.choice(sorted(groups))
        a, b = rng.sample(groups[kind], 2)
        rest = rng.sample(window, sys.rank - 1)
        els = (a, b, *rest)
        if len(set(els)) != len(els) or not is_independent(els):
            continue
        n += 1
        base = Base(sys, els)
        if window_witness(base, default_cutoff(base)) is None:
            return _entry("lemma-unique", "fail", n, _fmt(els))
    return _entry("lemma-unique", "pass", n)


def lemma_reduce(sys: SystemDescriptor, kmax: int, rng: random.Random, samples: int) -> dict:
    """Independent sets meeting Z*D or 2R fail the decomposition test."""
    window = sorted((v for v in enumerate_roots(sys, kmax) if not v.is_null()), key=Vector.sort_key)
    bad = [Vector.null(sys.m, sys.n, k) for k in range(-kmax, kmax + 1) if k]
    bad += [2 * v for v in window if contains(sys, 2 * v) is not None]
    n = 0
    for _ in range(samples):
        x = rng.choice(bad)
        rest = rng.sample(window, sys.rank)
        els = (x, *rest)
        if len(set(els)) != len(els) or not is_independent(els):
            continue
        n += 1
        base = Base(sys, els)
        cutoff = default_cutoff(base) + 4 * max(abs(v.delta) for v in els)
        if window_witness(base, cutoff) is None:
            return _entry("lemma-reduce", "fail", n, _fmt(els))
    return _entry("lemma-reduce", "pass", n)


def belongto(sys: SystemDescriptor, kmax: int, rng: random.Random, samples: int) -> dict:
    """Operators I, J, S, T preserve R and send bases to bases."""
    if sys.family is not Family.A_ODD_ODD2:
        return _entry("belong-to", "n/a", 0, note="operators are defined for the A(2m-1,2n-1)^(2) family")
    syms = sys.symbols()
    n = 0
    for _ in range(samples):
        kind = rng.choice("IJST")
        a = rng.choice(syms)
        z = SignedSymbol(rng.choice((1, -1)), a.kind, a.index)
        p, q = rng.randint(-kmax, kmax), rng.randint(-kmax, kmax)
        eta = None
        if kind == "I":
            if (p % 2 == 1) != (z.kind == "e"):
                p += 1
        else:
            pool = [s for s in syms if s != a and (kind != "J" or s.kind == a.kind)]
            if not pool:
                continue
            b = rng.choice(pool)
            eta = SignedSymbol(rng.choice((1, -1)), b.kind, b.index)
        w = belongto_operator(sys, kind, z, eta, p, q)
        base = _random_base(sys, rng)
        n += 1
        img = Base(sys, tuple(apply_word(w, v) for v in base.elements))
        if not check_preserves_R(w, sys, kmax) or not verify_at_cutoff(img).ok or match_canonical(img) is None:
            return _entry("belong-to", "fail", n, {"word": str(w), "base": _fmt(base.elements)})
    return _entry("belong-to", "pass", n)


def run_property_suite(
    sys: SystemDescriptor,
    kmax: int,
    seed: int = 0,
    form: Form = form_star,
    samples: int = 60,
) -> dict:
    """Seeded checks of the structural lemmas on the window |D| <= kmax.

    Statements over at most three roots run exhaustively; the others are
    sampled with ``random.Random(seed)``.  ``form`` is injectable so that a
    deliberately broken form can exercise the harness.
    """
    rng = random.Random(seed)
    roots = sorted((v for v in enumerate_roots(sys, kmax) if not v.is_null()), key=Vector.sort_key)
    statements = [
        fact1(roots, form),
        fact2(sys, roots),
        lemma_1_3(roots, form),
        lemma_unique(sys, kmax, rng, samples),
        lemma_reduce(sys, kmax, rng, samples),
        belongto(sys, kmax, rng, samples),
        not_e(roots, form),
    ]
    return {
        "system": str(sys),
        "kmax": kmax,
        "seed": seed,
        "statements": statements,
        "counterexamples": sum(s["status"] == "fail" for s in statements),
    }


# -- auxiliary systems for the extra-long dichotomy -----------------------

def aux_S(sys: SystemDescriptor, kmax: int) -> frozenset[Vector]:
    """Short and pair shapes at every level (no +-2z); window only."""
    if sys.family is not Family.A_EVEN_ODD2:
        raise ValueError("the auxiliary S and T systems belong to the A(2m,2n-1)^(2) family")
    return frozenset(
        v for v in enumerate_roots(sys, kmax)
        if not v.is_null() and contains(sys, v) is not RootClass.EXTRA_LONG
    )


def aux_T(sys: SystemDescriptor, kmax: int) -> frozenset[Vector]:
    """aux_S plus +-2z at odd levels for every symbol z."""
    out = set(aux_S(sys, kmax))
    for s in sys.symbols():
        u = Vector.unit(sys.m, sys.n, s)
        for k in range(-kmax, kmax + 1):
            if k % 2:
                out.add((2 * u).shift(k))
                out.add((-2 * u).shift(k))
    return frozenset(out)
