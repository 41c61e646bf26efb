"""The twelve acceptance criteria, each timed against its limit.

A one-line verdict per criterion is printed in the "acceptance criteria"
section of the pytest summary (see conftest.py).
"""
import math
import random
import time
from contextlib import contextmanager

import pytest

from quadjordan.classifier import (all_predicate_profiles, builtin_profile, fired_clauses,
                                   jordan_aut_p1xp1, m_of_k)
from quadjordan.constructions import (a5_group, a5_lifts, a5_matrices, builtin_witness,
                                      cyclic_group, derive_qsqrt_m7_witness, dihedral_group,
                                      s5_twisted_generators, s5_twisted_group, square_wreath,
                                      verify_presentation_a5)
from quadjordan.exactfield import galois_conj, make_tower, verify_two_squares_witness
from quadjordan.groupcore import center, jordan_constant, recognize
from quadjordan.permgroup import (CycleType, Permutation, alternating_group,
                                  class_splits_in_alternating, perm_context, symmetric_group,
                                  verify_three_cycle_counting)
from quadjordan.projgroup import (ProjMatrix, galois_conj_matrix, mat_mul, mat_pow, proj_context,
                                  scalar_of, trace_sq_over_det, twisted_context)


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def J(G):
    return jordan_constant(G).constant


CATALOG = (
    [(f"Z/{n}", lambda n=n: cyclic_group(n), 1) for n in range(1, 13)]
    + [("D4", lambda: dihedral_group(4), 1)]
    + [(f"D{2 * n}", lambda n=n: dihedral_group(2 * n), 2) for n in range(3, 9)]
    + [("A4", lambda: alternating_group(4), 3), ("S4", lambda: symmetric_group(4), 6),
       ("A5", lambda: alternating_group(5), 60)]
)


@pytest.mark.criterion(1, 1)
@pytest.mark.parametrize("name, build, value", CATALOG, ids=[c[0] for c in CATALOG])
def test_c01_catalog_jordan_constants(name, build, value):
    with within(1):
        assert J(build()) == value


@pytest.mark.criterion(2, 5)
def test_c02_jordan_s5():
    with within(5):
        assert J(symmetric_group(5)) == 120


@pytest.mark.criterion(3, 60)
def test_c03_wreath_law():
    cases = [("Z/2", cyclic_group(2), 2), ("Z/3", cyclic_group(3), 2),
             ("S3", symmetric_group(3), 8), ("D4", dihedral_group(4), 2),
             ("A4", alternating_group(4), 18), ("S4", symmetric_group(4), 72)]
    with within(60):
        for name, G, value in cases:
            W = square_wreath(G)
            assert W.order == 2 * G.order ** 2
            assert J(W) == value == 2 * J(G) ** 2, name


@pytest.mark.slow
@pytest.mark.criterion(4, 600)
def test_c04_wreath_a5_is_7200():
    with within(600):
        W = square_wreath(a5_group(builtin_witness("Q(i)")))
        assert W.order == 7200
        cert = jordan_constant(W)
        assert cert.constant == 7200
        assert cert.witness == (0,)


@pytest.mark.criterion(5, 10)
def test_c05_a5_matrices_over_qi_sqrt5():
    with within(10):
        w = builtin_witness("Q(i)")
        t = w.tower
        A, C = a5_lifts(w)
        assert scalar_of(mat_pow(A, 2)) is not None
        assert scalar_of(mat_pow(C, 5)) == -2560 * t.parse("sqrt(5)") + 5632
        assert scalar_of(mat_pow(mat_mul(C, A), 3)) == -64 * t.parse("sqrt(5)") + 128
        G = a5_group(w)
        assert G.order == 60 and recognize(G) == "A5"


@pytest.mark.criterion(6, 30)
def test_c06_twisted_s5_over_qi_sqrt5():
    with within(30):
        w = builtin_witness("Q(i)")
        A, C, R = s5_twisted_generators(w)
        ctx = twisted_context(w.tower, w.r_level)
        m = ctx.mul
        assert m(R, R) == ctx.identity
        assert m(m(R, A), R) == A
        C2A3 = ctx.power(m(m(C, C), A), 3)
        assert C2A3.flag == 0 and m(m(R, C), R) == C2A3
        G = s5_twisted_group(w)
        assert G.order == 120
        assert len(center(G)) == 1
        assert J(G) == 120


@pytest.mark.criterion(7, 1)
def test_c07_qsqrt_m7_witness():
    with within(1):
        t = make_tower([-7, 5])
        d = t.parse("-1 + sqrt(-35)")
        x, y = t.parse("sqrt(-7) + sqrt(5)") / d, 6 / d
        assert x * x + y * y == -1
        assert verify_two_squares_witness(x, y)
        w = derive_qsqrt_m7_witness()
        assert not w.problems()
        assert (w.u, w.v) == (x, y)
        stored = builtin_witness("Q(sqrt-7)")
        assert (stored.a, stored.b, stored.c, stored.d) == (w.a, w.b, w.c, w.d)


@pytest.mark.criterion(8, 5)
def test_c08_trace_invariant():
    with within(5):
        w = builtin_witness("Q(i)")
        t = w.tower
        _, C = a5_matrices(w)
        plus, minus = t.parse("3/2 + sqrt(5)/2"), t.parse("3/2 - sqrt(5)/2")
        rng = random.Random(8)
        seen = set()
        for k in range(20):
            while True:
                entries = [t(rng.randint(-4, 4)) + rng.randint(-2, 2) * t.gen(1)
                           + rng.randint(-2, 2) * t.gen(0) for _ in range(4)]
                if not (entries[0] * entries[3] - entries[1] * entries[2]).is_zero():
                    break
            g = ProjMatrix(entries)
            x = C ** (1 + k % 4)
            val = trace_sq_over_det(g * x * g.inverse())
            assert val in (plus, minus)
            seen.add(val)
        assert seen == {plus, minus}
        assert plus + minus == 3 and plus * minus == 1
        v = trace_sq_over_det(C)
        # conjugating i leaves the value alone; squaring C swaps it with its sqrt5-conjugate
        assert trace_sq_over_det(galois_conj_matrix(C, 0)) == v
        assert trace_sq_over_det(C * C) == galois_conj(v, 1) != v


def _brute_splits(n, t, even):
    images, start = [], 0
    for length in t:
        images += [start + (k + 1) % length for k in range(length)]
        start += length
    rep = Permutation(images)
    orbit = {g * rep * g.inverse() for g in even}
    return 2 * len(orbit) == t.class_size()


@pytest.mark.criterion(9, 60)
def test_c09_splitting_criterion():
    with within(60):
        for n in range(4, 8):
            even = list(alternating_group(n).elements)
            types = set()
            for p in symmetric_group(n).elements if n <= 7 else ():
                types.add(CycleType(len(c) for c in p.cycles()))
            for t in types:
                if t.is_even:
                    assert class_splits_in_alternating(t) == _brute_splits(n, t, even), (n, t)


@pytest.mark.criterion(10, 1)
def test_c10_three_cycle_counting():
    with within(1):
        for n in range(7, 13):
            lhs = 2 * math.comb(n, 3)
            for k in range(1, n // 3 + 1):
                rhs = math.factorial(n) // (math.factorial(k) * 3 ** k * math.factorial(n - 3 * k))
                assert (lhs == rhs) == (k == 1)
            assert verify_three_cycle_counting(n) == {k: k == 1 for k in range(1, n // 3 + 1)}


@pytest.mark.criterion(11, 1)
def test_c11_classifier_truth_table():
    with within(1):
        decided = 0
        for p in all_predicate_profiles():
            verdicts = [ok for _, _, ok in fired_clauses(p)]
            if True in verdicts:
                assert verdicts.count(True) == 1
                decided += 1
        assert decided == 12
        expected = {"Q": 8, "R": 60, "Q(i)": 120, "Q(sqrt-7)": 120, "C": 7200}
        assert {n: m_of_k(builtin_profile(n)).value for n in expected} == expected
        aut = {n: jordan_aut_p1xp1(builtin_profile(n)).value for n in ("C", "Q(i)", "Q", "R")}
        assert aut == {"C": 7200, "Q(i)": 72, "Q": 8, "R": 8}
        assert set(aut.values()) == {7200, 72, 8}


@pytest.mark.criterion(12, 10)
def test_c12_presentation_verifier():
    with within(10):
        ctx = perm_context(5)
        y = Permutation.from_cycles("(12)(34)", 5)
        assert verify_presentation_a5(Permutation.from_cycles("(12345)", 5), y, ctx)
        A, C = a5_matrices(builtin_witness("Q(i)"))
        assert verify_presentation_a5(C, A, proj_context(A.tower))
        # (1234) is odd of order 4: x^5 != e
        assert not verify_presentation_a5(Permutation.from_cycles("(1234)", 5), y, ctx)
        # (123)(45) has order 6
        assert not verify_presentation_a5(Permutation.from_cycles("(123)(45)", 5), y, ctx)
