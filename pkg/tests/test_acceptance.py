"""Acceptance criteria, one test each.

Every test records a single ``criterion N: PASS|FAIL  detail`` line; the
lines are printed in the pytest terminal summary (see conftest.py) and by
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import time
from itertools import product

from superbases.bases import is_base, positive_roots, verify_against
from superbases.canon import (
    _END_KINDS,
    CanonicalParams,
    all_matches,
    are_conjugate,
    build_base,
    conjugacy_word,
    is_fine,
    make_admissible,
    make_fine,
    match_canonical,
    predicted_positive_roots,
)
from superbases.core import Family, SignedSymbol, SystemDescriptor, Vector, parse_vector
from superbases.oracle import aux_S, aux_T, feasible_forms, random_params, run_property_suite, search_bases
from superbases.rootsys import RootClass, contains
from superbases.weyl import QUASI, apply_word, check_preserves_R, reflect

RESULTS: dict[int, str] = {}


def record(num: int, ok: bool, detail: str) -> None:
    RESULTS[num] = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[num])


def systems_up_to(total: int, families=tuple(Family)) -> list[SystemDescriptor]:
    out = []
    for fam in families:
        for m in range(total + 1):
            for n in range(total + 1 - m):
                try:
                    out.append(SystemDescriptor(fam, m, n))
                except ValueError:
                    pass
    return out


def canonical_zetas(sys: SystemDescriptor, form: str) -> tuple:
    """Positive symbols in table order, with suitable symbols moved to the ends."""
    first, last = _END_KINDS[form]
    rest = sys.symbols()
    head = next(s for s in rest if not first or s.kind == first)
    rest.remove(head)
    seq = [head] + rest
    if last:
        tail = [s for s in rest if s.kind == last][-1]
        rest.remove(tail)
        seq = [head] + rest + [tail]
    return tuple(SignedSymbol(1, x.kind, x.index) for x in seq)


def k_grid(form: str, ell: int, rng: random.Random, samples: int) -> list[tuple]:
    """All-zero k plus k-vectors with entries in -2..2 meeting the parity rule."""
    def ok(ks):
        return form not in ("T2-A4", "T2-D2") or len({k % 2 for k in ks}) == 1

    full = [ks for ks in product(range(-2, 3), repeat=ell) if ok(ks)]
    zero = tuple([0] * ell)
    rest = [ks for ks in full if ks != zero]
    pick = rest if len(rest) <= samples else rng.sample(rest, samples)
    return [zero] + pick


# 1 ----------------------------------------------------------------------

def test_criterion_1_canonical_bases_certify():
    rng = random.Random(101)
    t0 = time.perf_counter()
    n = 0
    failures = []
    for sys in systems_up_to(4):
        for form in feasible_forms(sys):
            for zetas in (canonical_zetas(sys, form), random_params(sys, rng, form).zetas):
                for ks in k_grid(form, sys.rank, rng, 8):
                    for sign in (1, -1):
                        p = CanonicalParams(form, zetas, ks, sign)
                        v = is_base(build_base(p))
                        n += 1
                        if v.status != "certified" or v.params.form != form or v.params.sign != sign:
                            failures.append((str(p), v.status, v.reason))
    dt = time.perf_counter() - t0
    record(1, not failures, f"{n} canonical bases over every family with m+n<=4 certified in {dt:.1f}s; failures={failures[:3]}")
    assert not failures


# 2 ----------------------------------------------------------------------

def test_criterion_2_positive_root_formulas():
    rng = random.Random(202)
    forms = ("B1", "B2", "B3", "B4", "T2-A2-long", "T2-A2-nolong")
    n = 0
    failures = []
    for sys in systems_up_to(4, (Family.A_EVEN_ODD2, Family.A_ODD_ODD2)):
        for form in feasible_forms(sys):
            assert form in forms
            params = [CanonicalParams(form, canonical_zetas(sys, form), tuple([0] * sys.rank), 1)]
            params += [random_params(sys, rng, form) for _ in range(12)]
            for p in params:
                n += 1
                got = positive_roots(build_base(p), 4)
                want = predicted_positive_roots(p, 4)
                if got != want:
                    failures.append((str(p), sorted(map(str, got ^ want))[:4]))
    record(2, not failures, f"{n} parameter sets, exact set equality at kmax=4; failures={failures[:2]}")
    assert not failures


# 3 ----------------------------------------------------------------------

SEARCH_SYSTEMS = [
    SystemDescriptor(Family.A_EVEN_ODD2, 1, 1),
    SystemDescriptor(Family.A_EVEN_EVEN4, 1, 1),
    SystemDescriptor(Family.A_EVEN_EVEN4, 0, 1),
    SystemDescriptor(Family.D2, 1, 1),
    SystemDescriptor(Family.A_ODD_ODD2, 2, 1),
]


def test_criterion_3_search_completeness():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for sys in SEARCH_SYSTEMS:
        found = search_bases(sys, kmax_root=6, kmax_entry=1)
        sets = {f.base.as_set() for f in found}
        unrecognized = [f for f in found if f.params is None]
        missing = []
        for form in feasible_forms(sys):
            for sign in (1, -1):
                rep = build_base(CanonicalParams(form, canonical_zetas(sys, form), tuple([0] * sys.rank), sign))
                if rep.as_set() not in sets:
                    missing.append((form, sign))
        rows = sorted({f.params.form for f in found if f.params})
        ok &= not unrecognized and not missing and rows == feasible_forms(sys)
        notes.append(f"{sys}: {len(found)} bases, rows {rows}, unrecognized {len(unrecognized)}, missing {missing}")
    dt = time.perf_counter() - t0
    record(3, ok, f"{'; '.join(notes)} ({dt:.1f}s)")
    assert ok


# 4 ----------------------------------------------------------------------

ODD_SYSTEMS = [s for s in systems_up_to(4, (Family.A_ODD_ODD2,))]


def test_criterion_4_normalization_pipeline():
    rng = random.Random(404)
    counts = {}
    failures = []
    for form in ("B2", "B3", "B4"):
        pool = [s for s in ODD_SYSTEMS if form in feasible_forms(s)]
        counts[form] = 0
        for i in range(100):
            sys = pool[i % len(pool)]
            p = random_params(sys, rng, form)
            b = build_base(p)
            w1, b1 = make_fine(b)
            w2, b2 = make_admissible(b1)
            word = w2 @ w1
            fine = [q for q in all_matches(b2) if is_fine(q) and q.form == form]
            good = (
                match_canonical(b2).form == form
                and bool(fine)
                and all(k == 0 for k in fine[0].ks)
                and [apply_word(word, v) for v in b.elements] == list(b2.elements)
                and check_preserves_R(word, sys, 5)
            )
            counts[form] += 1
            if not good:
                failures.append(str(p))
    record(4, not failures, f"params per form {counts}; fine + l-admissible, R-preserving at kmax=5, exact image; failures={failures[:3]}")
    assert not failures and min(counts.values()) >= 100


# 5 ----------------------------------------------------------------------

def test_criterion_5_conjugacy_words():
    rng = random.Random(505)
    n = 0
    failures = []
    for form in ("B2", "B3", "B4"):
        pool = [s for s in ODD_SYSTEMS if form in feasible_forms(s)]
        for i in range(50):
            sys = pool[i % len(pool)]
            p = random_params(sys, rng, form)
            q = random_params(sys, rng, form).with_(sign=p.sign)
            b, b2 = build_base(p), build_base(q)
            w = conjugacy_word(b, b2)
            n += 1
            if frozenset(apply_word(w, v) for v in b2.elements) != b.as_set():
                failures.append((str(p), str(q)))
    cross = 0
    cross_bad = []
    for sys in ODD_SYSTEMS:
        forms = feasible_forms(sys)
        for f1 in forms:
            for f2 in forms:
                if f1 == f2:
                    continue
                for _ in range(3):
                    b = build_base(random_params(sys, rng, f1))
                    b2 = build_base(random_params(sys, rng, f2))
                    cross += 1
                    if are_conjugate(b, b2):
                        cross_bad.append((f1, f2))
    ok = not failures and not cross_bad and n >= 150
    record(5, ok, f"{n} same-form pairs reproduced exactly; {cross} cross-form pairs all non-conjugate; failures={failures[:2]} {cross_bad[:2]}")
    assert ok


# 6 ----------------------------------------------------------------------

def test_criterion_6_quasi_weyl_leaves_R():
    cases = [
        SystemDescriptor(Family.D2, 1, 1),
        SystemDescriptor(Family.A_EVEN_ODD2, 1, 1),
        SystemDescriptor(Family.A_EVEN_EVEN4, 1, 1),
        SystemDescriptor(Family.A_ODD_ODD2, 2, 1),
    ]
    notes = []
    ok = True
    for sys in cases:
        m, n = sys.m, sys.n
        img = reflect(parse_vector("e1 - d1", m, n), QUASI, parse_vector("2*d1", m, n))
        target = parse_vector("2*e1", m, n)
        good = img == target and contains(sys, target) is None and contains(sys, parse_vector("2*d1", m, n)) is not None
        ok &= good
        notes.append(f"{sys}: r(2*d1) = {img}, 2*e1 in R: {contains(sys, target) is not None}")
    record(6, ok, "; ".join(notes))
    assert ok


# 7 ----------------------------------------------------------------------

def test_criterion_7_lemma_suites():
    t0 = time.perf_counter()
    bad = []
    runs = 0
    for sys in systems_up_to(3):
        for kmax in (1, 2, 3):
            rep = run_property_suite(sys, kmax, seed=707)
            runs += 1
            if rep["counterexamples"]:
                bad.append((str(sys), kmax, [s for s in rep["statements"] if s["status"] == "fail"]))
    dt = time.perf_counter() - t0
    record(7, not bad, f"{runs} suite runs (every family, m+n<=3, kmax 1..3), counterexamples: {len(bad)} ({dt:.1f}s)")
    assert not bad


# 8 ----------------------------------------------------------------------

def _verifies_in(base, roots) -> bool:
    return all(v in roots for v in base.elements) and verify_against(roots, base) is None


def test_criterion_8_extra_long_dichotomy():
    rng = random.Random(808)
    notes = []
    ok = True
    for m, n in ((1, 1), (2, 1)):
        sys = SystemDescriptor(Family.A_EVEN_ODD2, m, n)
        S, T = aux_S(sys, 6), aux_T(sys, 6)
        cands = [f.base for f in search_bases(sys, 6, 1)]
        cands += [build_base(random_params(sys, rng, kspan=1)) for _ in range(40)]
        with_long = without = 0
        for b in cands:
            assert is_base(b, 6).status == "certified"
            has = any(contains(sys, v) is RootClass.EXTRA_LONG for v in b.elements)
            if has:
                with_long += 1
                ok &= _verifies_in(b, T)
            else:
                without += 1
                ok &= _verifies_in(b, S)
        notes.append(f"{sys}: {with_long} with an extra-long root are bases of T, {without} without are bases of S")
    record(8, ok, "; ".join(notes))
    assert ok


if __name__ == "__main__":
    import sys as _sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print()
    for k in sorted(RESULTS):
        print(RESULTS[k])
    _sys.exit(0 if all("PASS" in r for r in RESULTS.values()) else 1)
