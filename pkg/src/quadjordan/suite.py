"""The reproduction suite behind ``quadjordan verify-paper``.

Each entry recomputes one published constant or identity and compares it
with an expected value tagged by where it comes from:

    [PAPER]    a published value, reproduced here
    [DERIVED]  computed independently here (brute force or a closed formula)
    [TRIVIAL]  immediate from definitions
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .classifier import (all_predicate_profiles, builtin_catalog, fired_clauses, jordan_aut_p1xp1,
                         jordan_pgl2, m_of_k)
from .constructions import (A5Witness, a5_group, a5_lifts, a5_matrices, cyclic_group,
                            derive_qsqrt_m7_witness, dihedral_group, s5_twisted_generators,
                            s5_twisted_group, square_wreath, verify_presentation_a5)
from .exactfield import galois_conj, verify_two_squares_witness
from .groupcore import DEFAULT_LATTICE_BUDGET, center, jordan_constant, recognize
from .permgroup import (CycleType, Permutation, _partitions, alternating_group,
                        class_splits_in_alternating, perm_context, symmetric_group,
                        verify_three_cycle_counting)
from .projgroup import (ProjMatrix, galois_conj_matrix, mat_mul, mat_pow, proj_context,
                        scalar_of, trace_sq_over_det, twisted_context)

__all__ = ["Entry", "REPORT_FORMAT", "run_suite", "render_text", "render_json", "load_fixture"]

REPORT_FORMAT = "quadjordan-report/1"
DEFAULT_SEED = 20240601


@dataclass
class Entry:
    claim: str
    anchor: str
    tag: str
    expected: object
    measured: object = None
    status: str = "pending"
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"claim": self.claim, "anchor": self.anchor, "status": self.status,
               "measured": self.measured, "expected": self.expected, "tag": self.tag}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class _Check:
    claim: str
    anchor: str
    tag: str
    expected: object
    run: Callable
    slow: bool = False


def load_fixture(path: Optional[str]) -> dict:
    """Witness fixtures keyed by name; ``path`` follows the bundled witnesses.json layout."""
    if path is None:
        from .constructions import _builtin_witness_data
        data = _builtin_witness_data()
    else:
        data = json.loads(Path(path).read_text())
    return data["a5_witnesses"]


def _witness(fixtures: dict, name: str) -> A5Witness:
    return A5Witness.from_dict({"name": name, **fixtures[name]})


# -- individual checks ------------------------------------------------------------

def _j(G, budget):
    return jordan_constant(G, budget).constant


def _a5_relations(w: A5Witness) -> dict:
    A, C = a5_lifts(w)
    out = {}
    for label, m in (("A^2", mat_pow(A, 2)), ("C^5", mat_pow(C, 5)),
                     ("(CA)^3", mat_pow(mat_mul(C, A), 3))):
        lam = scalar_of(m)
        out[label] = None if lam is None else lam.to_expr()
    G = a5_group(w)
    out["order"] = G.order
    out["recognized"] = recognize(G)
    return out


def _twisted_s5(w: A5Witness, budget) -> dict:
    A, C, R = s5_twisted_generators(w)
    ctx = twisted_context(w.tower, w.r_level)
    e = ctx.identity
    m = ctx.mul
    C2A3 = ctx.power(m(m(C, C), A), 3)
    G = s5_twisted_group(w)
    return {
        "(R,1)^2 = e": m(R, R) == e,
        "(R,1)(A,0)(R,1) = (A,0)": m(m(R, A), R) == A,
        "(R,1)(C,0)(R,1) = ((C^2A)^3,0)": m(m(R, C), R) == C2A3 and C2A3.flag == 0,
        "order": G.order,
        "center": len(center(G)),
        "J": _j(G, budget),
    }


def _witness_identity(fixtures: dict) -> dict:
    w = _witness(fixtures, "Q(sqrt-7)")
    derived = derive_qsqrt_m7_witness()
    return {
        "x^2 + y^2 = -1": verify_two_squares_witness(w.u, w.v),
        "A5Witness invariant": not w.problems(),
        "fixture = derivation": all(getattr(w, k) == getattr(derived, k) for k in "abcd"),
    }


def _random_invertible(tower, rng: random.Random) -> ProjMatrix:
    s5 = tower.gen(tower.levels - 1)
    while True:
        entries = [tower(rng.randint(-4, 4)) + rng.randint(-2, 2) * s5 for _ in range(4)]
        a, b, c, d = entries
        if not (a * d - b * c).is_zero():
            return ProjMatrix(entries)


def _trace_invariant(w: A5Witness, seed: int) -> dict:
    """tr^2/det over 20 random conjugates of C, C^2, C^3, C^4 (all of order 5)."""
    rng = random.Random(seed)
    _, C = a5_matrices(w)
    powers = [C, C * C, C * C * C, C * C * C * C]
    values = set()
    for i in range(20):
        g = _random_invertible(w.tower, rng)
        values.add(trace_sq_over_det(g * powers[i % 4] * g.inverse()).to_expr())
    t1 = trace_sq_over_det(C)
    t2 = trace_sq_over_det(C * C)
    top = w.tower.levels - 1
    base_conj = [trace_sq_over_det(galois_conj_matrix(C, k)) == t1 for k in range(top)]
    return {
        "values": sorted(values),
        "sum": (t1 + t2).to_expr(),
        "product": (t1 * t2).to_expr(),
        "conjugating the base field fixes it": all(base_conj),
        "squaring swaps": t2 == galois_conj(t1, top) and t2 != t1,
    }


def _splitting_brute_force(nmin: int = 4, nmax: int = 7) -> dict:
    mismatches = []
    checked = 0
    for n in range(nmin, nmax + 1):
        An = alternating_group(n)
        even = [Permutation(p.images) for p in An.elements]
        for part in _partitions(n):
            t = CycleType(part)
            if not t.is_even:
                continue
            rep = _perm_of_type(t)
            orbit = {g * rep * g.inverse() for g in even}
            split = len(orbit) * 2 == t.class_size()
            checked += 1
            if split != class_splits_in_alternating(t):
                mismatches.append([n, list(t)])
    return {"classes checked": checked, "mismatches": mismatches}


def _perm_of_type(t: CycleType) -> Permutation:
    images, start = [], 0
    for length in t:
        images += [start + (k + 1) % length for k in range(length)]
        start += length
    return Permutation(images)


def _counting_identity() -> dict:
    return {str(n): sorted(k for k, ok in verify_three_cycle_counting(n).items() if ok)
            for n in range(7, 13)}


def _truth_table() -> dict:
    decided, fired_once = 0, True
    for p in all_predicate_profiles():
        verdicts = [ok for _, _, ok in fired_clauses(p)]
        if None in verdicts and True not in verdicts:
            continue
        decided += 1
        fired_once &= verdicts.count(True) == 1
    cat = {p.name: p for p in builtin_catalog()}
    m = {n: m_of_k(cat[n]).value for n in ("Q", "R", "Q(i)", "Q(sqrt-7)", "C")}
    aut = {n: jordan_aut_p1xp1(cat[n]).value for n in ("C", "Q(i)", "Q", "R")}
    law = all(jordan_aut_p1xp1(p).value == 2 * jordan_pgl2(p).value ** 2
              for p in cat.values() if p.resolved().m1_two_squares_K.value != "unknown")
    return {"decidable profiles": decided, "exactly one clause": fired_once,
            "M": m, "J(Aut(P1xP1))": aut, "aut = 2 J(PGL2)^2": law}


def _presentation(w: A5Witness) -> dict:
    n5 = perm_context(5)
    x = Permutation.from_cycles("(12345)", 5)
    y = Permutation.from_cycles("(12)(34)", 5)
    A, C = a5_matrices(w)
    bad = Permutation.from_cycles("(1234)", 5)
    return {
        "(12345), (12)(34)": verify_presentation_a5(x, y, n5),
        "C, A": verify_presentation_a5(C, A, proj_context(w.tower)),
        "(1234), (12)(34)": verify_presentation_a5(bad, y, n5),
    }


# -- suite assembly ---------------------------------------------------------------

def _checks(fixtures: dict, seed: int, budget: int) -> list:
    qi = lambda: _witness(fixtures, "Q(i)")  # noqa: E731
    checks = []
    for n in range(1, 9):
        checks.append(_Check(f"catalog/J(Z/{n})", "J(Z/n) = 1", "PAPER", 1,
                             lambda n=n: _j(cyclic_group(n), budget)))
    checks.append(_Check("catalog/J(D4)", "J(D_4) = 1", "PAPER", 1,
                         lambda: _j(dihedral_group(4), budget)))
    for n in range(3, 9):
        checks.append(_Check(f"catalog/J(D{2 * n})", "J(D_2n) = 2 for n >= 3", "PAPER", 2,
                             lambda n=n: _j(dihedral_group(2 * n), budget)))
    for name, build, value in (("A4", lambda: alternating_group(4), 3),
                               ("S4", lambda: symmetric_group(4), 6),
                               ("A5", lambda: alternating_group(5), 60)):
        checks.append(_Check(f"catalog/J({name})", f"J({name}) = {value}", "PAPER", value,
                             lambda b=build: _j(b(), budget)))
    checks.append(_Check("catalog/J(S5)", "J(S5) = 120", "PAPER", 120,
                         lambda: _j(symmetric_group(5), budget)))
    for name, build, value in (("Z/2", lambda: cyclic_group(2), 2),
                               ("Z/3", lambda: cyclic_group(3), 2),
                               ("S3", lambda: symmetric_group(3), 8),
                               ("D4", lambda: dihedral_group(4), 2),
                               ("D8", lambda: dihedral_group(8), 8),
                               ("A4", lambda: alternating_group(4), 18),
                               ("S4", lambda: symmetric_group(4), 72)):
        checks.append(_Check(f"wreath/J(wreath2({name}))", "J((G x G) x| Z/2) = 2 J(G)^2",
                             "DERIVED", value, lambda b=build: _j(square_wreath(b()), budget)))
    checks.append(_Check("wreath/J(wreath2(A5))", "J = 7200 iff sqrt5 in K and -1 = x^2 + y^2",
                         "PAPER", 7200,
                         lambda: _j(square_wreath(a5_group(qi())), budget), slow=True))
    checks.append(_Check(
        "a5/relations", "A^2 = C^5 = (CA)^3 = e in PGL2(K(sqrt r))", "PAPER",
        {"A^2": "-1", "C^5": "5632 - 2560*sqrt(5)", "(CA)^3": "128 - 64*sqrt(5)",
         "order": 60, "recognized": "A5"},
        lambda: _a5_relations(qi())))
    checks.append(_Check(
        "s5/twisted", "<(G',0), (R,1)> = S5 and J(S5) = 120", "PAPER",
        {"(R,1)^2 = e": True, "(R,1)(A,0)(R,1) = (A,0)": True,
         "(R,1)(C,0)(R,1) = ((C^2A)^3,0)": True, "order": 120, "center": 1, "J": 120},
        lambda: _twisted_s5(qi(), budget)))
    checks.append(_Check(
        "witness/Q(sqrt-7)", "x^2 + y^2 = -1 in Q(sqrt-7, sqrt5)", "PAPER",
        {"x^2 + y^2 = -1": True, "A5Witness invariant": True, "fixture = derivation": True},
        lambda: _witness_identity(fixtures)))
    checks.append(_Check(
        "trace/order5", "tr^2/det = 3/2 +- (1/2) sqrt5", "PAPER",
        {"values": ["3/2 + 1/2*sqrt(5)", "3/2 - 1/2*sqrt(5)"], "sum": "3", "product": "1",
         "conjugating the base field fixes it": True, "squaring swaps": True},
        lambda: _trace_invariant(qi(), seed)))
    checks.append(_Check(
        "perm/splitting", "class splits in A_n iff cycle lengths odd and distinct", "DERIVED",
        {"classes checked": 3 + 4 + 6 + 8, "mismatches": []},
        _splitting_brute_force))
    checks.append(_Check(
        "perm/counting", "2 C(n,3) = n!/(k! 3^k (n-3k)!) only for k = 1", "PAPER",
        {str(n): [1] for n in range(7, 13)}, _counting_identity))
    checks.append(_Check(
        "classifier/truth-table", "M(K) in {7200, 120, 60, 8} by the four clauses", "PAPER",
        {"decidable profiles": 12, "exactly one clause": True,
         "M": {"Q": 8, "R": 60, "Q(i)": 120, "Q(sqrt-7)": 120, "C": 7200},
         "J(Aut(P1xP1))": {"C": 7200, "Q(i)": 72, "Q": 8, "R": 8}, "aut = 2 J(PGL2)^2": True},
        _truth_table))
    checks.append(_Check(
        "presentation/A5", "A5 = <x, y | x^5 = y^2 = (xy)^3 = e>", "PAPER",
        {"(12345), (12)(34)": True, "C, A": True, "(1234), (12)(34)": False},
        lambda: _presentation(qi())))
    return checks


def run_suite(scope: str = "fast", fixture: Optional[str] = None, seed: int = DEFAULT_SEED,
              budget: int = DEFAULT_LATTICE_BUDGET) -> dict:
    if scope not in ("fast", "all"):
        raise ValueError("scope must be 'fast' or 'all'")
    fixtures = load_fixture(fixture)
    entries = []
    for chk in _checks(fixtures, seed, budget):
        if chk.slow and scope == "fast":
            continue
        e = Entry(chk.claim, chk.anchor, chk.tag, chk.expected)
        t0 = time.perf_counter()
        try:
            e.measured = chk.run()
            e.status = "pass" if e.measured == e.expected else "fail"
        except Exception as exc:  # a crash is a failed entry, not a crashed suite
            e.measured = f"error: {type(exc).__name__}: {exc}"
            e.status = "fail"
        e.seconds = time.perf_counter() - t0
        entries.append(e)
    failed = sum(e.status != "pass" for e in entries)
    return {"format": REPORT_FORMAT, "version": __version__, "scope": scope, "seed": seed,
            "entries": entries, "passed": len(entries) - failed, "failed": failed}


def render_json(report: dict, timings: bool = False) -> str:
    out = dict(report)
    out["entries"] = [e.to_dict(timings) for e in report["entries"]]
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def render_text(report: dict, timings: bool = False) -> str:
    lines = []
    for e in report["entries"]:
        line = f"{e.status.upper():4}  {e.claim}  [{e.tag}]"
        if timings:
            line += f"  {e.seconds:.2f}s"
        lines.append(line)
        if e.status != "pass":
            lines.append(f"      expected {e.expected}")
            lines.append(f"      measured {e.measured}")
    lines.append(f"{report['passed']} passed, {report['failed']} failed ({report['scope']} suite)")
    return "\n".join(lines) + "\n"
