"""Explicit groups: A5 inside PGL_2(K(sqrt r)), the twisted S5, wreath squares,
direct products and a few small catalog groups."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import NamedTuple, Optional

from .exactfield import FieldElem, Tower, galois_conj, make_tower
from .groupcore import (DEFAULT_CAP, Extension, FiniteGroup, GroupContext,
                        center, classify_extension, generate, recognize)
from .projgroup import (ProjMatrix, TwistedElement, mat_mul, mat_pow, proj_context,
                        scalar_of, twisted_context)

__all__ = [
    "WitnessInvalid",
    "RelationFailed",
    "UnexpectedStructure",
    "ResultTooLarge",
    "A5Witness",
    "WreathElement",
    "a5_matrices",
    "a5_lifts",
    "a5_group",
    "s5_twisted_generators",
    "s5_twisted_group",
    "s4_group",
    "square_wreath",
    "direct_product",
    "cyclic_group",
    "dihedral_group",
    "quaternion_group",
    "verify_presentation_a5",
    "builtin_witness",
    "derive_qsqrt_m7_witness",
    "MAX_WREATH_BASE",
]

MAX_WREATH_BASE = 64


class WitnessInvalid(ValueError):
    pass


class RelationFailed(AssertionError):
    pass


class UnexpectedStructure(AssertionError):
    pass


class ResultTooLarge(ValueError):
    pass


# -- A5 witnesses -------------------------------------------------------------

@dataclass(frozen=True)
class A5Witness:
    """Data for A5 in PGL_2(K(sqrt r)): (a + b sqrt r)^2 + (c + d sqrt r)^2 = -1.

    ``r_level`` is the tower level whose generator plays sqrt r; with
    ``r_level=None`` the witness is simply u = a, v = c in the whole tower
    (b and d must then be 0).
    """

    tower: Tower
    r_level: Optional[int]
    sqrt5: FieldElem
    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem
    name: str = ""

    @property
    def sqrt_r(self) -> FieldElem:
        if self.r_level is None:
            return self.tower.zero()
        return self.tower.gen(self.r_level)

    @property
    def u(self) -> FieldElem:
        return self.a + self.b * self.sqrt_r

    @property
    def v(self) -> FieldElem:
        return self.c + self.d * self.sqrt_r

    def problems(self) -> list:
        out = []
        if self.sqrt5 * self.sqrt5 != 5:
            out.append("sqrt5^2 != 5")
        if self.u * self.u + self.v * self.v != -1:
            out.append("(a + b sqrt r)^2 + (c + d sqrt r)^2 != -1")
        if self.r_level is None:
            if not (self.b.is_zero() and self.d.is_zero()):
                out.append("b, d must vanish without an r level")
        else:
            for label, x in zip("abcd", (self.a, self.b, self.c, self.d)):
                if galois_conj(x, self.r_level) != x:
                    out.append(f"{label} does not lie in the base field")
        return out

    def validate(self) -> "A5Witness":
        bad = self.problems()
        if bad:
            raise WitnessInvalid(f"{self.name or 'witness'}: " + "; ".join(bad))
        return self

    @classmethod
    def from_two_squares(cls, x: FieldElem, y: FieldElem, sqrt5: FieldElem,
                         r_level: Optional[int] = None, name: str = "") -> "A5Witness":
        """Split x = a + b sqrt r, y = c + d sqrt r along the Galois involution at ``r_level``."""
        tower = x.tower
        if r_level is None:
            zero = tower.zero()
            return cls(tower, None, sqrt5, x, zero, y, zero, name)
        s = tower.gen(r_level)

        def split(z):
            zc = galois_conj(z, r_level)
            return (z + zc) / 2, (z - zc) / (2 * s)

        a, b = split(x)
        c, d = split(y)
        return cls(tower, r_level, sqrt5, a, b, c, d, name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tower": [self.tower.radicand(k).to_expr() for k in range(self.tower.levels)],
            "r_level": self.r_level,
            "sqrt5": self.sqrt5.to_expr(),
            "a": self.a.to_expr(), "b": self.b.to_expr(),
            "c": self.c.to_expr(), "d": self.d.to_expr(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "A5Witness":
        try:
            tower = make_tower(data["tower"])
            r_level = data.get("r_level")
            if "x" in data or "y" in data:
                x, y = (tower.parse(str(data.get(k, "0"))) for k in ("x", "y"))
                return cls.from_two_squares(x, y, tower.parse(str(data["sqrt5"])), r_level,
                                            data.get("name", ""))
            vals = {k: tower.parse(str(data.get(k, "0"))) for k in ("sqrt5", "a", "b", "c", "d")}
        except KeyError as exc:
            raise WitnessInvalid(f"missing field {exc}") from None
        return cls(tower, r_level, vals["sqrt5"], vals["a"], vals["b"], vals["c"], vals["d"],
                   data.get("name", ""))


@lru_cache(maxsize=None)
def _builtin_witness_data() -> dict:
    text = resources.files("quadjordan").joinpath("data/witnesses.json").read_text()
    return json.loads(text)


def builtin_witness(name: str) -> A5Witness:
    """Stored witness fixture, re-verified on load ('Q(i)', 'Q(sqrt-7)')."""
    data = _builtin_witness_data()["a5_witnesses"]
    if name not in data:
        raise KeyError(f"no witness fixture {name!r}; have {sorted(data)}")
    return A5Witness.from_dict({"name": name, **data[name]}).validate()


def derive_qsqrt_m7_witness() -> A5Witness:
    """Recompute the Q(sqrt -7) witness from the two-squares identity in Q(sqrt -7, sqrt 5)."""
    tower = make_tower([-7, 5])
    denom = tower.parse("-1 + sqrt(-7)*sqrt(5)")
    x = (tower.parse("sqrt(-7) + sqrt(5)")) / denom
    y = 6 / denom
    return A5Witness.from_two_squares(x, y, tower.gen(1), r_level=1, name="Q(sqrt-7)")


# -- A5 and S5 ------------------------------------------------------------------

def a5_lifts(w: A5Witness) -> tuple:
    """Raw (unscaled) matrices A and C as 4-tuples."""
    t = w.tower
    s5, u, v = w.sqrt5, w.u, w.v
    A = (t.zero(), t.one(), t(-1), t.zero())
    C = (2 * v + s5 - 3, 2 * u - s5 + 1,
         2 * u + s5 - 1, -2 * v + s5 - 3)
    return A, C


def a5_matrices(w: A5Witness) -> tuple:
    """(A, C) with A^2 = C^5 = (CA)^3 = e generating A5."""
    w.validate()
    A_raw, C_raw = a5_lifts(w)
    relations = {
        "A^2": mat_pow(A_raw, 2),
        "C^5": mat_pow(C_raw, 5),
        "(CA)^3": mat_pow(mat_mul(C_raw, A_raw), 3),
    }
    for label, m in relations.items():
        if scalar_of(m) is None:
            raise RelationFailed(f"{label} is not scalar")
    return ProjMatrix(A_raw), ProjMatrix(C_raw)


def a5_group(w: A5Witness) -> FiniteGroup:
    A, C = a5_matrices(w)
    G = generate([A, C], proj_context(w.tower), cap=120, name="A5<A,C>")
    if G.order != 60 or recognize(G) != "A5":
        raise RelationFailed(f"<A, C> has order {G.order}")
    return G


def _check_r5(w: A5Witness):
    if w.r_level is None:
        raise WitnessInvalid("twisted S5 needs r_level pointing at sqrt(5)")
    s = w.tower.gen(w.r_level)
    if s * s != 5 or w.sqrt5 not in (s, -s):
        raise WitnessInvalid("twisted S5 needs r = 5 with sqrt5 the conjugated generator")


def s5_twisted_generators(w: A5Witness) -> tuple:
    """(A,0), (C,0), (R,1) with R = [[a+c, a-c], [a-c, -a-c]]."""
    w.validate()
    _check_r5(w)
    A, C = a5_matrices(w)
    a, c = w.a, w.c
    R = ProjMatrix((a + c, a - c, a - c, -a - c))
    return TwistedElement(A, 0), TwistedElement(C, 0), TwistedElement(R, 1)


def s5_twisted_group(w: A5Witness) -> FiniteGroup:
    """<(A,0), (C,0), (R,1)> in PGL_2(K(sqrt 5)) x| Z/2, checked to be S5."""
    gens = s5_twisted_generators(w)
    ctx = twisted_context(w.tower, w.r_level)
    G = generate(list(gens), ctx, cap=240, name="S5<(A,0),(C,0),(R,1)>")
    if G.order != 120:
        raise UnexpectedStructure(f"order {G.order}, expected 120")
    if len(center(G)) != 1:
        raise UnexpectedStructure("centre is not trivial")
    flag0 = [i for i, x in enumerate(G.elements) if x.flag == 0]
    if classify_extension(G, flag0) is not Extension.SYMMETRIC_GROUP:
        raise UnexpectedStructure("extension of A5 by Z/2 is not S5")
    return G


def s4_group(x: FieldElem, y: FieldElem) -> FiniteGroup:
    """S4 in PGL_2(K) from -1 = x^2 + y^2 in K.

    I = [[x, y], [y, -x]] and J = [[0, 1], [-1, 0]] satisfy I^2 = J^2 = -1 and
    IJ = -JI, so they span a copy of the Hamilton quaternions; the quarter
    turns 1 + I and 1 + J generate the rotation group of the octahedron.
    """
    t = x.tower
    if x * x + y * y != -1:
        raise WitnessInvalid("x^2 + y^2 != -1")
    one, zero = t.one(), t.zero()
    g1 = ProjMatrix((one + x, y, y, one - x))
    g2 = ProjMatrix((one, one, -one, one))
    G = generate([g1, g2], proj_context(t), cap=48, name="S4<1+I,1+J>")
    if G.order != 24 or recognize(G) != "S4":
        raise UnexpectedStructure(f"<1+I, 1+J> has order {G.order}")
    return G


# -- products -------------------------------------------------------------------

class WreathElement(NamedTuple):
    """(g1, g2, flag) over element indices of the base group."""

    left: int
    right: int
    flag: int

    def __str__(self):
        return f"({self.left}, {self.right}; {self.flag})"


def square_wreath(G: FiniteGroup, name: str = "") -> FiniteGroup:
    """(G x G) x| Z/2 with the swap action; elements sorted by (flag, left, right)."""
    if G.order > MAX_WREATH_BASE:
        raise ResultTooLarge(f"|G| = {G.order} > {MAX_WREATH_BASE}")
    tab = G.table()
    inv = [G.inv(i) for i in range(G.order)]
    W = WreathElement

    def mul(x, y):
        if x.flag:
            return W(tab[x.left][y.right], tab[x.right][y.left], 1 - y.flag)
        return W(tab[x.left][y.left], tab[x.right][y.right], y.flag)

    def inverse(x):
        if x.flag:
            return W(inv[x.right], inv[x.left], 1)
        return W(inv[x.left], inv[x.right], 0)

    ctx = GroupContext(mul, W(0, 0, 0), inverse, key=lambda x: (x.flag, x.left, x.right),
                       name=f"wreath2({G.name})")
    n = G.order
    elements = [W(i, j, f) for f in (0, 1) for i in range(n) for j in range(n)]
    index = {x: k for k, x in enumerate(elements)}
    gens = [index[W(g, 0, 0)] for g in G.gens if g] + [index[W(0, 0, 1)]]
    return FiniteGroup(elements, ctx, gens, name=name or f"wreath2({G.name})")


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CAP,
                   name: str = "") -> FiniteGroup:
    if G.order * H.order > cap:
        raise ResultTooLarge(f"|G x H| = {G.order * H.order} > {cap}")
    tg, th = G.table(), H.table()
    ig = [G.inv(i) for i in range(G.order)]
    ih = [H.inv(i) for i in range(H.order)]
    ctx = GroupContext(lambda x, y: (tg[x[0]][y[0]], th[x[1]][y[1]]), (0, 0),
                       lambda x: (ig[x[0]], ih[x[1]]), name=f"{G.name}x{H.name}")
    elements = [(i, j) for i in range(G.order) for j in range(H.order)]
    m = H.order
    gens = [g * m for g in G.gens if g] + [h for h in H.gens if h]
    return FiniteGroup(elements, ctx, gens or [0], name=name or f"{G.name}x{H.name}")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    ctx = GroupContext(lambda a, b: (a + b) % n, 0, lambda a: (-a) % n, name=f"C{n}")
    return FiniteGroup(range(n), ctx, [1] if n > 1 else [0], name=f"C{n}")


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given order 2n: pairs (k, s) = rot^k ref^s."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2

    def mul(x, y):
        k1, s1 = x
        k2, s2 = y
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    def inverse(x):
        k, s = x
        return (k, 1) if s else ((-k) % n, 0)

    ctx = GroupContext(mul, (0, 0), inverse, name=f"D{order}")
    elements = [(k, s) for s in (0, 1) for k in range(n)]
    gens = ([1] if n > 1 else []) + [n]
    return FiniteGroup(elements, ctx, gens, name=f"D{order}")


def quaternion_group() -> FiniteGroup:
    """Q8 as signed units (sign, unit) with unit in 1, i, j, k."""
    table = {  # unit products: (x, y) -> (sign, unit), unit 0=1, 1=i, 2=j, 3=k
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }

    def mul(x, y):
        if x[1] == 0:
            return (x[0] * y[0], y[1])
        if y[1] == 0:
            return (x[0] * y[0], x[1])
        s, u = table[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    def inverse(x):
        return x if x[1] == 0 else (-x[0], x[1])

    ctx = GroupContext(mul, (1, 0), inverse, name="Q8")
    elements = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    return FiniteGroup(elements, ctx, [2, 4], name="Q8")


def verify_presentation_a5(x, y, ctx: GroupContext, cap: int = 120) -> bool:
    """x^5 = y^2 = (xy)^3 = e and <x, y> has order 60."""
    e = ctx.identity
    if ctx.power(x, 5) != e or ctx.power(y, 2) != e or ctx.power(ctx.mul(x, y), 3) != e:
        return False
    return generate([x, y], ctx, cap=cap).order == 60
