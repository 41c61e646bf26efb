import pytest

from quadjordan.constructions import (A5Witness, MAX_WREATH_BASE, ResultTooLarge, WitnessInvalid,
                                      a5_group, a5_lifts, a5_matrices, builtin_witness,
                                      cyclic_group, derive_qsqrt_m7_witness, dihedral_group,
                                      direct_product, quaternion_group, s4_group,
                                      s5_twisted_generators, s5_twisted_group, square_wreath,
                                      verify_presentation_a5)
from quadjordan.exactfield import make_tower
from quadjordan.groupcore import center, jordan_constant, recognize
from quadjordan.permgroup import Permutation, perm_context, symmetric_group
from quadjordan.projgroup import mat_mul, mat_pow, proj_context, scalar_of, twisted_context


def test_builtin_witnesses_validate():
    for name in ("Q(i)", "Q(sqrt-7)"):
        w = builtin_witness(name)
        assert w.u * w.u + w.v * w.v == -1
        assert not w.problems()


def test_qsqrt_m7_fixture_equals_derivation():
    w, d = builtin_witness("Q(sqrt-7)"), derive_qsqrt_m7_witness()
    assert (w.a, w.b, w.c, w.d) == (d.a, d.b, d.c, d.d)


def test_witness_dict_round_trip():
    w = builtin_witness("Q(sqrt-7)")
    again = A5Witness.from_dict(w.to_dict())
    assert (again.a, again.b, again.c, again.d) == (w.a, w.b, w.c, w.d)


def test_witness_from_two_squares_dict():
    w = A5Witness.from_dict({"tower": ["-1", "5"], "r_level": 1, "sqrt5": "sqrt(5)",
                             "x": "sqrt(-1)", "y": "0"})
    assert not w.problems()


def test_bad_witness_rejected():
    t = make_tower([-1, 5])
    w = A5Witness(t, 1, t.gen(1), t.one(), t.zero(), t.zero(), t.zero())
    with pytest.raises(WitnessInvalid):
        w.validate()
    # b must lie in the base field Q(i), not involve sqrt5
    w = A5Witness(t, 1, t.gen(1), t.gen(0), t.gen(1), t.zero(), t.zero())
    assert w.problems()


@pytest.mark.parametrize("name", ["Q(i)", "Q(sqrt-7)"])
def test_a5_relations_and_lift_scalars(name):
    w = builtin_witness(name)
    A, C = a5_lifts(w)
    t = w.tower
    assert scalar_of(mat_pow(A, 2)) == -1
    assert scalar_of(mat_pow(C, 5)) == t.parse("5632 - 2560*sqrt(5)")
    assert scalar_of(mat_pow(mat_mul(C, A), 3)) == t.parse("128 - 64*sqrt(5)")
    G = a5_group(w)
    assert G.order == 60 and recognize(G) == "A5"


@pytest.mark.parametrize("name", ["Q(i)", "Q(sqrt-7)"])
def test_twisted_s5(name):
    w = builtin_witness(name)
    A, C, R = s5_twisted_generators(w)
    ctx = twisted_context(w.tower, w.r_level)
    m = ctx.mul
    assert m(R, R) == ctx.identity
    assert m(m(R, A), R) == A
    assert m(m(R, C), R) == ctx.power(m(m(C, C), A), 3)
    G = s5_twisted_group(w)
    assert G.order == 120 and len(center(G)) == 1 and recognize(G) == "S5"


def test_s4_from_two_squares():
    for radicands, x, y in (([-1], "sqrt(-1)", "0"),
                            ([-7, 5], "-1/6*sqrt(-7) + 1/6*sqrt(5)", "-1/6 - 1/6*sqrt(-7)*sqrt(5)")):
        t = make_tower(radicands)
        G = s4_group(t.parse(x), t.parse(y))
        assert G.order == 24 and jordan_constant(G).constant == 6
    t = make_tower([-1])
    with pytest.raises(WitnessInvalid):
        s4_group(t.one(), t.zero())


@pytest.mark.parametrize("build, value", [
    (lambda: cyclic_group(2), 2),
    (lambda: cyclic_group(3), 2),
    (lambda: symmetric_group(3), 8),
    (lambda: dihedral_group(4), 2),
    (lambda: dihedral_group(8), 8),
    (quaternion_group, 8),
    (lambda: dihedral_group(10), 8),
])
def test_wreath_law(build, value):
    G = build()
    W = square_wreath(G)
    assert W.order == 2 * G.order ** 2
    assert jordan_constant(W).constant == value == 2 * jordan_constant(G).constant ** 2


def test_wreath_size_limit():
    with pytest.raises(ResultTooLarge):
        square_wreath(cyclic_group(MAX_WREATH_BASE + 1))


def test_small_catalog_groups():
    assert dihedral_group(4).order == 4 and jordan_constant(dihedral_group(4)).constant == 1
    assert jordan_constant(quaternion_group()).constant == 2
    assert direct_product(cyclic_group(2), cyclic_group(3)).order == 6
    with pytest.raises(ValueError):
        dihedral_group(5)


def test_presentation_verifier():
    ctx = perm_context(5)
    x, y = Permutation.from_cycles("(12345)", 5), Permutation.from_cycles("(12)(34)", 5)
    assert verify_presentation_a5(x, y, ctx)
    assert not verify_presentation_a5(Permutation.from_cycles("(123)", 5), y, ctx)
    # relations hold but the group collapses: x = y = e
    e = Permutation.identity(5)
    assert not verify_presentation_a5(e, e, ctx)
    A, C = a5_matrices(builtin_witness("Q(i)"))
    assert verify_presentation_a5(C, A, proj_context(A.tower))
