import pytest
from hypothesis import given, strategies as st

from superbases.core import (
    Family,
    SignedSymbol,
    Symbol,
    SystemDescriptor,
    Vector,
    form_kappa,
    form_star,
    format_vector,
    parse_vector,
    sgn,
    support,
    vector_from_any,
)

from strategies import systems, vectors


def test_family_slugs():
    assert [f.value for f in Family] == ["a-2m-2n1-2", "a-2m1-2n1-2", "a-2m-2n-4", "d-2"]
    assert Family.A_EVEN_EVEN4.period == 4
    assert Family.D2.period == 2


@pytest.mark.parametrize(
    "fam,m,n",
    [
        (Family.A_EVEN_ODD2, 1, 0),
        (Family.A_ODD_ODD2, 1, 1),
        (Family.A_ODD_ODD2, 0, 2),
        (Family.A_EVEN_EVEN4, 0, 0),
        (Family.D2, 2, 0),
        (Family.D2, -1, 1),
    ],
)
def test_invalid_systems(fam, m, n):
    with pytest.raises(ValueError):
        SystemDescriptor(fam, m, n)


def test_system_from_slug():
    sys = SystemDescriptor("d-2", 1, 2)
    assert sys.family is Family.D2
    assert sys.rank == 3
    assert sys.symbols() == [Symbol("e", 1), Symbol("d", 1), Symbol("d", 2)]


def test_vector_arithmetic():
    a = Vector((1, 0), (2,), 3)
    b = Vector((0, -1), (1,), -1)
    assert a + b == Vector((1, -1), (3,), 2)
    assert a - b == Vector((1, 1), (1,), 4)
    assert -a == Vector((-1, 0), (-2,), -3)
    assert 2 * a == a * 2 == Vector((2, 0), (4,), 6)
    assert a.shift(-3) == Vector((1, 0), (2,), 0)
    assert Vector.null(2, 1, 5).is_null() and not Vector.null(2, 1, 5).is_zero()


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        Vector((1,), (), 0) + Vector((1, 0), (), 0)
    with pytest.raises(ValueError):
        form_star(Vector((1,), (), 0), Vector((), (1,), 0))


def test_forms():
    e1 = Vector((1,), (0,), 0)
    d1 = Vector((0,), (1,), 0)
    D = Vector((0,), (0,), 1)
    assert form_kappa(e1, e1) == 1
    assert form_kappa(d1, d1) == -1
    assert form_star(d1, d1) == 1
    assert form_kappa(e1 + d1, e1 + d1) == 0
    assert form_star(D, e1) == form_star(D, D) == form_kappa(D, d1) == 0


@given(systems.flatmap(lambda s: st.tuples(vectors(s.m, s.n), vectors(s.m, s.n), vectors(s.m, s.n))))
def test_forms_bilinear_symmetric(vs):
    u, v, w = vs
    for f in (form_kappa, form_star):
        assert f(u, v) == f(v, u)
        assert f(u + v, w) == f(u, w) + f(v, w)
        assert f(u.shift(7), v) == f(u, v)
    assert form_star(u, u) >= 0


def test_support_and_sgn():
    v = Vector((0, -2), (1,), 4)
    assert support(v) == {Symbol("e", 2), Symbol("d", 1)}
    assert sgn(Symbol("e", 2), v) == -1
    assert sgn(Symbol("d", 1), v) == 1
    with pytest.raises(ValueError):
        sgn(Symbol("e", 1), v)


def test_signed_symbol():
    z = SignedSymbol(-1, "d", 2)
    assert z.vector(1, 2) == Vector((0,), (0, -1), 0)
    assert -z == SignedSymbol(1, "d", 2)
    assert SignedSymbol.from_json(z.to_json()) == z
    with pytest.raises(ValueError):
        z.check(1, 1)
    with pytest.raises(ValueError):
        SignedSymbol(2, "e", 1)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("2*e1 - d2 + 3*D", Vector((2,), (0, -1), 3)),
        ("-e1+D", Vector((-1,), (0, 0), 1)),
        ("0", Vector((0,), (0, 0), 0)),
        ("d1 - d1", Vector((0,), (0, 0), 0)),
        ("-2D", Vector((0,), (0, 0), -2)),
    ],
)
def test_parse_vector(text, expected):
    assert parse_vector(text, 1, 2) == expected


@pytest.mark.parametrize("text", ["", "e3", "2*x1", "e1 d1", "e1 + + d1"])
def test_parse_vector_errors(text):
    with pytest.raises(ValueError):
        parse_vector(text, 2, 2)


def test_format_vector():
    assert format_vector(Vector((2, 0), (-1,), 3)) == "2*e1 - d1 + 3*D"
    assert format_vector(Vector((0, 0), (0,), 0)) == "0"
    assert format_vector(Vector((-1, 1), (0,), -1)) == "-e1 + e2 - D"


@given(systems.flatmap(lambda s: st.tuples(st.just(s), vectors(s.m, s.n))))
def test_text_and_json_round_trip(arg):
    sys, v = arg
    assert parse_vector(format_vector(v), sys.m, sys.n) == v
    assert Vector.from_json(v.to_json()) == v
    assert vector_from_any(v.to_json(), sys.m, sys.n) == v
    assert Vector.from_coords(sys.m, sys.n, v.coords()) == v
