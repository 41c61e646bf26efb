import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quadjordan.exactfield import (DivisionByZero, ExpressionError, FieldElem, GaloisUndefined,
                                   LevelOutOfRange, RadicandIsSquare, TowerMismatch, TowerTooDeep,
                                   _c_inv, _c_mul, galois_conj, is_rational_square, make_tower,
                                   verify_two_squares_witness)

TOWERS = {
    "Q": make_tower([]),
    "Q(sqrt5)": make_tower([5]),
    "Q(i,sqrt5)": make_tower([-1, 5]),
    "Q(sqrt-7,sqrt5)": make_tower([-7, 5]),
    "Q(sqrt2)(sqrt(1+sqrt2))": make_tower([2, "1 + sqrt(2)"]),
}

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elems(tower):
    return st.lists(small, min_size=tower.dimension, max_size=tower.dimension).map(tower.from_coords)


tower_names = st.sampled_from(sorted(TOWERS))


@st.composite
def triple(draw):
    t = TOWERS[draw(tower_names)]
    return draw(elems(t)), draw(elems(t)), draw(elems(t))


def test_sqrt5_squares_to_5():
    t = TOWERS["Q(sqrt5)"]
    s = t.gen(0)
    assert s * s == 5
    assert (1 + s) * (1 - s) == -4


def test_basis_product_in_biquadratic():
    t = TOWERS["Q(sqrt-7,sqrt5)"]
    a, b = t.gen(0), t.gen(1)
    ab = a * b
    assert ab * ab == -35
    assert ab.coords == (0, 0, 0, 1)


def test_nonrational_radicand_multiplication():
    t = TOWERS["Q(sqrt2)(sqrt(1+sqrt2))"]
    s = t.gen(1)
    assert s * s == t.parse("1 + sqrt(2)")
    # (s^2 - 1)^2 = 2
    assert (s * s - 1) ** 2 == 2


def test_parse_and_to_expr_round_trip():
    t = TOWERS["Q(sqrt-7,sqrt5)"]
    x = t.parse("(sqrt(-7) + sqrt(5)) / (-1 + sqrt(-35))")
    assert t.parse(x.to_expr()) == x
    assert str(t(Fraction(-3, 2))) == "-3/2"
    assert str(t.zero()) == "0"


def test_sqrt_of_composite_radicand_is_basis_multiple():
    t = TOWERS["Q(sqrt-7,sqrt5)"]
    assert t.parse("sqrt(-35)") == t.gen(0) * t.gen(1)
    assert t.parse("sqrt(20)") == 2 * t.gen(1)


def test_parse_errors():
    t = TOWERS["Q(sqrt5)"]
    for bad in ("sqrt(3)", "x + 1", "1.5", "2 ** sqrt(5)", "sqrt(5"):
        with pytest.raises(ExpressionError):
            t.parse(bad)


def test_tower_validation():
    with pytest.raises(RadicandIsSquare):
        make_tower([4])
    with pytest.raises(RadicandIsSquare):
        make_tower([Fraction(9, 16)])
    with pytest.raises(RadicandIsSquare):
        make_tower([5, "(1 + sqrt(5))**2"])
    with pytest.raises(RadicandIsSquare):
        make_tower([5, "6 + 2*sqrt(5)"])  # (1 + sqrt5)^2 again, written out
    with pytest.raises(RadicandIsSquare):
        make_tower([-1, -1])
    with pytest.raises(TowerTooDeep):
        make_tower([2, 3, 5])


def test_is_rational_square():
    assert is_rational_square(Fraction(49, 9))
    assert not is_rational_square(-4)
    assert not is_rational_square(Fraction(2, 9))


def test_division_by_zero():
    t = TOWERS["Q(i,sqrt5)"]
    with pytest.raises(DivisionByZero):
        t.one() / t.zero()
    with pytest.raises(ZeroDivisionError):
        t.zero().inverse()


def test_mixed_towers_rejected_but_embedding_works():
    a, b = TOWERS["Q(sqrt5)"], TOWERS["Q(i,sqrt5)"]
    with pytest.raises(TowerMismatch):
        a.gen(0) + b.gen(0)
    big = make_tower([5, -1])
    assert big.embed(a.gen(0)) == big.gen(0)


def test_towers_compare_by_radicands():
    assert make_tower([-1, 5]) == make_tower(["-1", "5"])
    assert hash(make_tower([-1, 5])) == hash(make_tower([-1, 5]))


def test_galois_conj_levels():
    t = TOWERS["Q(i,sqrt5)"]
    i, s = t.gen(0), t.gen(1)
    x = 1 + 2 * i + 3 * s + 4 * i * s
    assert galois_conj(x, 0) == 1 - 2 * i + 3 * s - 4 * i * s
    assert galois_conj(x, 1) == 1 + 2 * i - 3 * s - 4 * i * s
    with pytest.raises(LevelOutOfRange):
        galois_conj(x, 2)


def test_galois_obstruction_for_nonrational_top_radicand():
    t = TOWERS["Q(sqrt2)(sqrt(1+sqrt2))"]
    with pytest.raises(GaloisUndefined):
        galois_conj(t.gen(1), 0)
    # the top involution is always defined
    assert galois_conj(t.gen(1), 1) == -t.gen(1)


def test_two_squares_witness():
    t = TOWERS["Q(sqrt-7,sqrt5)"]
    d = t.parse("-1 + sqrt(-7)*sqrt(5)")
    x = t.parse("sqrt(-7) + sqrt(5)") / d
    y = 6 / d
    assert verify_two_squares_witness(x, y)
    assert not verify_two_squares_witness(t.one(), y)


def test_equality_with_rationals():
    t = TOWERS["Q(sqrt5)"]
    assert t(Fraction(1, 2)) == Fraction(1, 2)
    assert t.gen(0) != 5
    assert t(3).rational_value() == 3
    assert t.gen(0).rational_value() is None


@settings(max_examples=60, deadline=None)
@given(triple())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if not x.is_zero():
        assert x * x.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(triple())
def test_multiplication_matches_recursive_kernel(xyz):
    # structure-constant product against the (lo, hi) recursive product
    x, y, _ = xyz
    assert (x * y).coords == _c_mul(x.coords, y.coords, x.tower.radicands)
    if not x.is_zero():
        assert x.inverse().coords == _c_inv(x.coords, x.tower.radicands)


@settings(max_examples=60, deadline=None)
@given(triple())
def test_conjugation_is_a_ring_automorphism(xyz):
    x, y, _ = xyz
    t = x.tower
    for level in range(t.levels):
        try:
            galois_conj(t.one(), level)
        except GaloisUndefined:
            continue
        c = lambda e: galois_conj(e, level)  # noqa: E731
        assert c(x * y) == c(x) * c(y)
        assert c(x + y) == c(x) + c(y)
        assert c(c(x)) == x


@settings(max_examples=60, deadline=None)
@given(elems(TOWERS["Q(sqrt-7,sqrt5)"]), elems(TOWERS["Q(sqrt-7,sqrt5)"]))
def test_real_embedding_agrees_with_floats(x, y):
    # sqrt(5) -> 2.236..., sqrt(-7) -> i*2.645...; compare as complex numbers
    def emb(e):
        a, b, c, d = (float(q) for q in e.coords)
        r7, r5 = 1j * math.sqrt(7), math.sqrt(5)
        return a + b * r7 + c * r5 + d * r7 * r5
    assert abs(emb(x * y) - emb(x) * emb(y)) <= 1e-9 * (1 + abs(emb(x)) * abs(emb(y)))


def test_hash_consistent_with_equality():
    t = TOWERS["Q(i,sqrt5)"]
    a = t.parse("1/2 + sqrt(5)/2")
    b = (1 + t.gen(1)) / 2
    assert a == b and hash(a) == hash(b)
    assert len({a, b, t.one()}) == 2


def test_fieldelem_constructor_normalizes():
    t = TOWERS["Q(sqrt5)"]
    x = FieldElem(t, [Fraction(2, 4), Fraction(6, 8)])
    assert x.den == 4 and x.nums == (2, 3)
