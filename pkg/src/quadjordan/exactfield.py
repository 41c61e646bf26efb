"""Exact arithmetic in towers Q, Q(sqrt r1), Q(sqrt r1)(sqrt r2).

An element of a tower with k levels has 2**k rational coordinates over the
basis 1, sqrt(r1), sqrt(r2), sqrt(r1)*sqrt(r2) (bit j of a basis index says
whether sqrt(r_{j+1}) occurs).  Equivalently an element of level k is a pair
(lo, hi) of level k-1 elements meaning lo + hi*sqrt(r_k); the reference
kernels ``_c_mul``/``_c_inv`` recurse on that split over Fractions.

For speed, elements store integer numerators over one common positive
denominator, and multiplication uses structure constants of the basis
computed once per tower with the reference kernel.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldError",
    "RadicandIsSquare",
    "TowerTooDeep",
    "TowerMismatch",
    "LevelOutOfRange",
    "GaloisUndefined",
    "DivisionByZero",
    "ExpressionError",
    "Tower",
    "FieldElem",
    "make_tower",
    "add",
    "mul",
    "neg",
    "inv",
    "galois_conj",
    "verify_two_squares_witness",
    "is_rational_square",
]

MAX_LEVELS = 2

Coords = tuple  # tuple[Fraction, ...]
Scalar = Union[int, Fraction]


class FieldError(ValueError):
    pass


class RadicandIsSquare(FieldError):
    pass


class TowerTooDeep(FieldError):
    pass


class TowerMismatch(FieldError):
    pass


class LevelOutOfRange(FieldError):
    pass


class GaloisUndefined(FieldError):
    """Negating sqrt(r1) does not extend to the top level (r2 is not rational)."""


class DivisionByZero(ZeroDivisionError):
    pass


class ExpressionError(FieldError):
    pass


# -- reference kernels over Fractions ---------------------------------------

def _c_add(x: Coords, y: Coords) -> Coords:
    return tuple(a + b for a, b in zip(x, y))


def _c_sub(x: Coords, y: Coords) -> Coords:
    return tuple(a - b for a, b in zip(x, y))


def _c_neg(x: Coords) -> Coords:
    return tuple(-a for a in x)


def _c_mul(x: Coords, y: Coords, rads: Sequence[Coords]) -> Coords:
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    r = rads[h.bit_length() - 1]
    ac = _c_mul(a, c, rads)
    bd = _c_mul(b, d, rads)
    ad = _c_mul(a, d, rads)
    bc = _c_mul(b, c, rads)
    return _c_add(ac, _c_mul(bd, r, rads)) + _c_add(ad, bc)


def _c_inv(x: Coords, rads: Sequence[Coords]) -> Coords:
    n = len(x)
    if n == 1:
        if x[0] == 0:
            raise DivisionByZero("inverse of zero")
        return (1 / x[0],)
    h = n // 2
    a, b = x[:h], x[h:]
    r = rads[h.bit_length() - 1]
    # (a + b s)^-1 = (a - b s) / (a^2 - b^2 r)
    norm = _c_sub(_c_mul(a, a, rads), _c_mul(_c_mul(b, b, rads), r, rads))
    ninv = _c_inv(norm, rads)
    return _c_mul(a, ninv, rads) + _c_neg(_c_mul(b, ninv, rads))


def is_rational_square(q: Scalar) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _rational_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def _is_square(s: Coords, rads: Sequence[Coords]) -> bool:
    """Exact square test for an element of level 0 or 1."""
    if len(s) == 1:
        return is_rational_square(s[0])
    if len(s) != 2:
        raise TowerTooDeep("square test only implemented up to level 1")
    s0, s1 = s
    r1 = rads[0][0]
    if s1 == 0:
        # (p + q sqrt r1)^2 = s0 forces q = 0 or p = 0
        return is_rational_square(s0) or is_rational_square(s0 / r1)
    # p, q both nonzero: p^2 + q^2 r1 = s0 and 2pq = s1
    disc = s0 * s0 - s1 * s1 * r1
    if not is_rational_square(disc):
        return False
    root = _rational_sqrt(disc)
    return any(p2 > 0 and is_rational_square(p2) for p2 in ((s0 + root) / 2, (s0 - root) / 2))


# -- integer representation -------------------------------------------------

def _normalize(nums: list, den: int):
    g = math.gcd(den, *nums)
    if g != 1:
        nums = [a // g for a in nums]
        den //= g
    return tuple(nums), den


def _to_int(coords: Coords):
    den = 1
    for c in coords:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _normalize([int(c * den) for c in coords], den)


# -- towers ----------------------------------------------------------------

class Tower:
    """A tower Q subset Q(sqrt r1) subset Q(sqrt r1)(sqrt r2) of depth <= 2.

    ``radicands[k]`` holds the Fraction coordinates (over the first k levels)
    of the element adjoined at level k.
    """

    __slots__ = ("radicands", "_labels", "_hash", "_struct", "_struct_den", "_zero", "_one")

    def __init__(self, radicands: Iterable[Coords] = ()):
        rads = tuple(tuple(Fraction(c) for c in r) for r in radicands)
        if len(rads) > MAX_LEVELS:
            raise TowerTooDeep(f"at most {MAX_LEVELS} levels, got {len(rads)}")
        for k, r in enumerate(rads):
            if len(r) != 2 ** k:
                raise FieldError(f"radicand {k} must have {2 ** k} coordinates")
            if not any(r):
                raise FieldError("radicand must be nonzero")
            if _is_square(r, rads[:k]):
                raise RadicandIsSquare(
                    f"radicand {FieldElem(Tower(rads[:k]), r)} is a square")
        self.radicands = rads
        self._labels = None
        self._hash = hash(rads)
        self._build_structure()
        self._zero = FieldElem._make(self, (0,) * self.dimension, 1)
        self._one = FieldElem._make(self, (1,) + (0,) * (self.dimension - 1), 1)

    def _build_structure(self):
        n = self.dimension
        unit = [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]
        raw = [[_c_mul(unit[i], unit[j], self.radicands) for j in range(n)] for i in range(n)]
        den = 1
        for row in raw:
            for prod in row:
                for c in prod:
                    den = den * c.denominator // math.gcd(den, c.denominator)
        self._struct = tuple(
            tuple(tuple((k, int(c * den)) for k, c in enumerate(prod) if c) for prod in row)
            for row in raw)
        self._struct_den = den

    @property
    def levels(self) -> int:
        return len(self.radicands)

    @property
    def dimension(self) -> int:
        return 2 ** len(self.radicands)

    def prefix(self, k: int) -> "Tower":
        return self if k == self.levels else Tower(self.radicands[:k])

    def __eq__(self, other):
        return self is other or (isinstance(other, Tower) and self.radicands == other.radicands)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(str(self.radicand(k)) for k in range(self.levels))
        return f"Tower([{inner}])"

    def radicand(self, k: int) -> "FieldElem":
        return FieldElem(self.prefix(k), self.radicands[k])

    # element constructors
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            return self.embed(value)
        if isinstance(value, str):
            return self.parse(value)
        q = Fraction(value)
        return FieldElem._make(self, (q.numerator,) + (0,) * (self.dimension - 1), q.denominator)

    def zero(self) -> "FieldElem":
        return self._zero

    def one(self) -> "FieldElem":
        return self._one

    def gen(self, level: int) -> "FieldElem":
        """sqrt of the radicand adjoined at ``level``."""
        if not 0 <= level < self.levels:
            raise LevelOutOfRange(f"level {level} not in tower of depth {self.levels}")
        return self.basis(1 << level)

    def basis(self, index: int) -> "FieldElem":
        nums = [0] * self.dimension
        nums[index] = 1
        return FieldElem._make(self, tuple(nums), 1)

    def from_coords(self, coords: Iterable[Scalar]) -> "FieldElem":
        c = tuple(Fraction(v) for v in coords)
        if len(c) != self.dimension:
            raise FieldError(f"expected {self.dimension} coordinates")
        return FieldElem(self, c)

    def embed(self, x: "FieldElem") -> "FieldElem":
        """Image of an element of a prefix tower (or of this tower)."""
        k = x.tower.levels
        if x.tower != self.prefix(k):
            raise TowerMismatch(f"{x.tower} is not a prefix of {self}")
        pad = (0,) * (self.dimension - len(x.nums))
        return FieldElem._make(self, x.nums + pad, x.den)

    def basis_labels(self) -> tuple:
        if self._labels is None:
            gens = [f"sqrt({self.radicand(k).to_expr()})" for k in range(self.levels)]
            labels = []
            for i in range(self.dimension):
                parts = [gens[j] for j in range(self.levels) if i >> j & 1]
                labels.append("*".join(parts))
            self._labels = tuple(labels)
        return self._labels

    def sqrt(self, value) -> "FieldElem":
        """A square root of ``value`` of the form t * (basis element), t > 0 rational.

        Only roots proportional to a basis element are found; this is how
        ``sqrt(n)`` atoms in element expressions are resolved.
        """
        v = value if isinstance(value, FieldElem) else self(value)
        if v.is_zero():
            return self.zero()
        for i in range(self.dimension):
            b = self.basis(i)
            q = (v / (b * b)).rational_value()
            if q is not None and is_rational_square(q):
                return b * _rational_sqrt(q)
        raise ExpressionError(f"sqrt({v}) is not a rational multiple of a basis element of {self}")

    def parse(self, text: str) -> "FieldElem":
        """Parse integer/fraction literals, sqrt(...) atoms and + - * / ** ( )."""
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return self(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ExpressionError(f"exponent must be an integer literal in {text!r}")
                return left ** node.right.value
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords:
            return self.sqrt(self._eval(node.args[0], text))
        raise ExpressionError(f"unsupported syntax in {text!r}")


def make_tower(radicands: Sequence = ()) -> Tower:
    """Build a tower from radicands given as numbers, expressions or elements.

    Radicand k may be written over the first k levels, e.g. ``[-7, 5]`` or
    ``[5, "1+sqrt(5)"]``.
    """
    if len(radicands) > MAX_LEVELS:
        raise TowerTooDeep(f"at most {MAX_LEVELS} levels, got {len(radicands)}")
    tower = Tower()
    for r in radicands:
        elem = r if isinstance(r, FieldElem) else tower(r)
        if elem.tower != tower:
            elem = tower.embed(elem)
        tower = Tower(tower.radicands + (elem.coords,))
    return tower


# -- elements --------------------------------------------------------------

class FieldElem:
    """Immutable tower element; ``coords`` gives reduced Fraction coordinates."""

    __slots__ = ("tower", "nums", "den", "_hash")

    def __init__(self, tower: Tower, coords: Iterable[Scalar]):
        nums, den = _to_int(tuple(Fraction(c) for c in coords))
        self.tower = tower
        self.nums = nums
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, tower: Tower, nums: tuple, den: int) -> "FieldElem":
        x = object.__new__(cls)
        x.tower = tower
        x.nums = nums
        x.den = den
        x._hash = None
        return x

    @property
    def coords(self) -> Coords:
        return tuple(Fraction(a, self.den) for a in self.nums)

    # coercion
    def _lift(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.tower is not self.tower and other.tower != self.tower:
                raise TowerMismatch(f"{self.tower} vs {other.tower}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            nums = [a + b for a, b in zip(self.nums, o.nums)]
            den = self.den
        else:
            nums = [a * o.den + b * self.den for a, b in zip(self.nums, o.nums)]
            den = self.den * o.den
        return FieldElem._make(self.tower, *_normalize(nums, den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __neg__(self):
        return FieldElem._make(self.tower, tuple(-a for a in self.nums), self.den)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElem._make(self.tower, *_normalize([a * other for a in self.nums], self.den))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        tower = self.tower
        struct = tower._struct
        out = [0] * len(self.nums)
        ys = [(j, b) for j, b in enumerate(o.nums) if b]
        for i, a in enumerate(self.nums):
            if not a:
                continue
            row = struct[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return FieldElem._make(tower, *_normalize(out, self.den * o.den * tower._struct_den))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not any(self.nums):
            raise DivisionByZero("inverse of zero")
        return FieldElem(self.tower, _c_inv(self.coords, self.tower.radicands))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = self.tower.one()
        for _ in range(abs(k)):
            result = result * base
        return result

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (self.nums == other.nums and self.den == other.den
                    and (self.tower is other.tower or self.tower == other.tower))
        if isinstance(other, (int, Fraction)):
            return Fraction(self.nums[0], self.den) == other and not any(self.nums[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nums, self.den))
        return self._hash

    def sort_key(self) -> tuple:
        return self.coords

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self):
        return any(self.nums)

    def rational_value(self):
        """The element as a Fraction if it lies in Q, else None."""
        if any(self.nums[1:]):
            return None
        return Fraction(self.nums[0], self.den)

    def conj(self, level: int) -> "FieldElem":
        return galois_conj(self, level)

    # text
    def to_expr(self) -> str:
        labels = self.tower.basis_labels()
        terms = []
        for c, label in zip(self.coords, labels):
            if c == 0:
                continue
            mag = abs(c)
            if not label:
                body = str(mag)
            elif mag == 1:
                body = label
            else:
                body = f"{mag}*{label}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"FieldElem({self.to_expr()!r})"


# -- functional API --------------------------------------------------------

def add(x: FieldElem, y: FieldElem) -> FieldElem:
    return x + y


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    return x * y


def neg(x: FieldElem) -> FieldElem:
    return -x


def inv(x: FieldElem) -> FieldElem:
    return x.inverse()


def galois_conj(x: FieldElem, level: int) -> FieldElem:
    """Automorphism negating sqrt(r_{level+1}) and fixing the other generator."""
    tower = x.tower
    if not 0 <= level < tower.levels:
        raise LevelOutOfRange(f"level {level} not in tower of depth {tower.levels}")
    for k in range(level + 1, tower.levels):
        # every higher radicand must be fixed by the conjugation
        if any(c for i, c in enumerate(tower.radicands[k]) if i >> level & 1):
            raise GaloisUndefined(
                f"negating sqrt({tower.radicand(level)}) moves radicand {tower.radicand(k)}")
    bit = 1 << level
    nums = tuple(-a if i & bit else a for i, a in enumerate(x.nums))
    return FieldElem._make(tower, nums, x.den)


def verify_two_squares_witness(x: FieldElem, y: FieldElem) -> bool:
    """True iff x**2 + y**2 == -1 exactly."""
    if x.tower != y.tower:
        raise TowerMismatch(f"{x.tower} vs {y.tower}")
    return x * x + y * y == -1
