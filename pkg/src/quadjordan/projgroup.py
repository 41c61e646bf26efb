"""PGL_2 over tower fields and the Galois-twisted product PGL_2(L) x| Z/2.

A projective matrix is stored scaled so that its first nonzero entry (in
row-major order) is 1, which makes equality of classes plain equality of
entries without needing square roots of determinants.
"""
from __future__ import annotations

import ast
from functools import lru_cache
from typing import NamedTuple, Sequence

from .exactfield import (ExpressionError, FieldElem, LevelOutOfRange, Tower, galois_conj)
from .groupcore import GroupContext

__all__ = [
    "ProjMatrix",
    "TwistedElement",
    "SingularMatrix",
    "OrderExceedsCap",
    "proj",
    "pmul",
    "pinv",
    "porder",
    "trace_sq_over_det",
    "galois_conj_matrix",
    "proj_context",
    "twisted_context",
    "mat_mul",
    "mat_pow",
    "scalar_of",
    "parse_matrix",
    "DEFAULT_ORDER_CAP",
]

DEFAULT_ORDER_CAP = 120


class SingularMatrix(ValueError):
    pass


class OrderExceedsCap(RuntimeError):
    pass


# raw 2x2 matrices are 4-tuples (a, b, c, d) = [[a, b], [c, d]]

def mat_mul(x: Sequence, y: Sequence) -> tuple:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_pow(x: Sequence, k: int) -> tuple:
    one, zero = x[0].tower.one(), x[0].tower.zero()
    out = (one, zero, zero, one)
    for _ in range(k):
        out = mat_mul(out, x)
    return out


def scalar_of(x: Sequence):
    """lambda if x == lambda * identity, else None."""
    a, b, c, d = x
    if b.is_zero() and c.is_zero() and a == d:
        return a
    return None


class ProjMatrix:
    __slots__ = ("entries", "_hash")

    def __init__(self, entries: Sequence[FieldElem]):
        a, b, c, d = entries
        tower = a.tower
        if any(e.tower != tower for e in (b, c, d)):
            raise ValueError("entries must share a tower")
        if (a * d - b * c).is_zero():
            raise SingularMatrix("determinant is zero")
        lead = next(e for e in (a, b, c, d) if not e.is_zero())
        if lead.den == 1 and lead.nums[0] == 1 and not any(lead.nums[1:]):
            self.entries = (a, b, c, d)
        else:
            s = lead.inverse()
            self.entries = (a * s, b * s, c * s, d * s)
        self._hash = hash(tuple((e.nums, e.den) for e in self.entries))

    @property
    def tower(self) -> Tower:
        return self.entries[0].tower

    def __eq__(self, other):
        return isinstance(other, ProjMatrix) and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(e.coords for e in self.entries)

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return ProjMatrix(mat_mul(self.entries, other.entries))

    def inverse(self) -> "ProjMatrix":
        a, b, c, d = self.entries
        return ProjMatrix((d, -b, -c, a))

    def __pow__(self, k: int) -> "ProjMatrix":
        base = self if k >= 0 else self.inverse()
        out = identity_matrix(self.tower)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        a, b, c, d = self.entries
        return b.is_zero() and c.is_zero() and a == d

    def conj(self, level: int) -> "ProjMatrix":
        return galois_conj_matrix(self, level)

    def __str__(self):
        a, b, c, d = (e.to_expr() for e in self.entries)
        return f"[[{a}, {b}], [{c}, {d}]]"

    def __repr__(self):
        return f"ProjMatrix({self})"


def identity_matrix(tower: Tower) -> ProjMatrix:
    return ProjMatrix((tower.one(), tower.zero(), tower.zero(), tower.one()))


def proj(a, b, c, d) -> ProjMatrix:
    return ProjMatrix((a, b, c, d))


def pmul(x: ProjMatrix, y: ProjMatrix) -> ProjMatrix:
    return x * y


def pinv(x: ProjMatrix) -> ProjMatrix:
    return x.inverse()


def porder(x: ProjMatrix, cap: int = DEFAULT_ORDER_CAP) -> int:
    y = x
    for k in range(1, cap + 1):
        if y.is_identity():
            return k
        y = y * x
    raise OrderExceedsCap(f"order exceeds {cap}")


def trace_sq_over_det(x) -> FieldElem:
    """tr^2/det, independent of the chosen lift; accepts a ProjMatrix or a raw 4-tuple."""
    a, b, c, d = x.entries if isinstance(x, ProjMatrix) else x
    t = a + d
    return t * t / (a * d - b * c)


def galois_conj_matrix(x: ProjMatrix, level: int) -> ProjMatrix:
    return ProjMatrix(tuple(galois_conj(e, level) for e in x.entries))


@lru_cache(maxsize=None)
def proj_context(tower: Tower) -> GroupContext:
    return GroupContext(
        mul=ProjMatrix.__mul__,
        identity=identity_matrix(tower),
        inverse=ProjMatrix.inverse,
        key=ProjMatrix.sort_key,
        name=f"PGL2{tower}",
    )


class TwistedElement(NamedTuple):
    """(gamma, flag) in PGL_2(L) x| Z/2, flag 1 acting by Galois conjugation."""

    mat: ProjMatrix
    flag: int

    def __str__(self):
        return f"({self.mat}, {self.flag})"


@lru_cache(maxsize=None)
def twisted_context(tower: Tower, level: int) -> GroupContext:
    """(g1, i)(g2, j) = (g1 * phi_i(g2), i + j), phi_1 = entrywise conjugation at ``level``."""
    if not 0 <= level < tower.levels:
        raise LevelOutOfRange(f"level {level} not in tower of depth {tower.levels}")
    galois_conj(tower.one(), level)  # raises if this level has no Galois involution

    def phi(m: ProjMatrix, flag: int) -> ProjMatrix:
        return galois_conj_matrix(m, level) if flag else m

    def mul(x: TwistedElement, y: TwistedElement) -> TwistedElement:
        return TwistedElement(x.mat * phi(y.mat, x.flag), (x.flag + y.flag) % 2)

    def inverse(x: TwistedElement) -> TwistedElement:
        return TwistedElement(phi(x.mat, x.flag).inverse(), x.flag)

    return GroupContext(
        mul=mul,
        identity=TwistedElement(identity_matrix(tower), 0),
        inverse=inverse,
        key=lambda x: (x.flag, x.mat.sort_key()),
        name=f"PGL2{tower}x|Z2",
    )


def parse_matrix(text: str, tower: Tower) -> ProjMatrix:
    """Parse ``[[e, e], [e, e]]`` with field-element expressions as entries."""
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse matrix {text!r}: {exc.msg}") from None
    if not (isinstance(node, ast.List) and len(node.elts) == 2
            and all(isinstance(r, ast.List) and len(r.elts) == 2 for r in node.elts)):
        raise ExpressionError(f"matrix must look like [[a,b],[c,d]]: {text!r}")
    entries = [tower._eval(e, text) for row in node.elts for e in row.elts]
    return ProjMatrix(entries)
