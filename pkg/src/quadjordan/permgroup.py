"""Permutations of {1..n}, symmetric and alternating groups, cycle types.

Composition is right to left: ``(p * q)(i) = p(q(i))``.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .groupcore import FiniteGroup, GroupContext, generate

__all__ = [
    "Permutation",
    "CycleType",
    "DegreeMismatch",
    "DegreeTooLarge",
    "OddPermutation",
    "CycleNotationError",
    "compose",
    "inverse",
    "parity",
    "cycle_type",
    "perm_context",
    "symmetric_group",
    "alternating_group",
    "class_splits_in_alternating",
    "verify_three_cycle_counting",
    "alternating_class_sizes",
    "MAX_DEGREE",
    "MAX_ENUM_DEGREE",
]

MAX_DEGREE = 12
MAX_ENUM_DEGREE = 8


class DegreeMismatch(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class OddPermutation(ValueError):
    pass


class CycleNotationError(ValueError):
    pass


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        """``images`` is the 0-based image list of 0..n-1."""
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {images}")
        if len(images) > MAX_DEGREE:
            raise DegreeTooLarge(f"degree {len(images)} > {MAX_DEGREE}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse ``(12)(34)`` or ``(1 2 3)(10 11)``; points are 1-based."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)*", text):
            raise CycleNotationError(f"bad cycle notation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if re.search(r"[\s,]", body):
                pts = [int(t) for t in re.split(r"[\s,]+", body) if t]
            else:
                pts = [int(ch) for ch in body]
            if len(set(pts)) != len(pts) or min(pts) < 1:
                raise CycleNotationError(f"bad cycle ({body})")
            cycles.append(pts)
        moved = max((max(c) for c in cycles), default=1)
        n = moved if degree is None else degree
        if n < moved:
            raise CycleNotationError(f"point {moved} exceeds degree {n}")
        if n > MAX_DEGREE:
            raise DegreeTooLarge(f"degree {n} > {MAX_DEGREE}")
        img = list(range(n))
        seen = set()
        for c in cycles:
            if seen & set(c):
                raise CycleNotationError("cycles must be disjoint")
            seen |= set(c)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        """Image of the 1-based point ``i``."""
        return self.images[i - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        p = self.images
        if len(p) != len(other.images):
            raise DegreeMismatch(f"{len(p)} vs {len(other.images)}")
        return Permutation._raw(tuple([p[i] for i in other.images]))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def cycles(self) -> list:
        """Disjoint cycles (1-based), fixed points included, each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self):
        sep = " " if self.degree >= 10 else ""
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + sep.join(map(str, c)) + ")" for c in parts)

    def __repr__(self):
        return f"Permutation({self}, deg={self.degree})"


class CycleType(tuple):
    """Cycle lengths in non-increasing order, fixed points counted as 1-cycles."""

    def __new__(cls, lengths: Iterable[int]):
        lengths = sorted((int(k) for k in lengths), reverse=True)
        if not lengths or min(lengths) < 1:
            raise ValueError("cycle lengths must be positive")
        return super().__new__(cls, lengths)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def is_even(self) -> bool:
        return (self.degree - len(self)) % 2 == 0

    def class_size(self) -> int:
        """Size of the corresponding conjugacy class of S_n."""
        denom = 1
        for length, mult in Counter(self).items():
            denom *= length ** mult * math.factorial(mult)
        return math.factorial(self.degree) // denom


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def parity(p: Permutation) -> str:
    return "even" if (p.degree - len(p.cycles())) % 2 == 0 else "odd"


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(len(c) for c in p.cycles())


# -- groups -----------------------------------------------------------------

@lru_cache(maxsize=None)
def perm_context(n: int) -> GroupContext:
    return GroupContext(
        mul=Permutation.__mul__,
        identity=Permutation.identity(n),
        inverse=Permutation.inverse,
        key=lambda p: p.images,
        name=f"Perm({n})",
    )


def _check_enum_degree(n: int):
    if n > MAX_ENUM_DEGREE:
        raise DegreeTooLarge(f"full enumeration limited to degree {MAX_ENUM_DEGREE}")
    if n < 1:
        raise ValueError("degree must be positive")


def _cycle(n: int, *points: int) -> Permutation:
    return Permutation.from_cycles("(" + " ".join(map(str, points)) + ")", degree=n)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    _check_enum_degree(n)
    ctx = perm_context(n)
    if n == 1:
        return FiniteGroup([ctx.identity], ctx, [0], name="S1")
    gens = [_cycle(n, 1, 2), _cycle(n, *range(1, n + 1))]
    return generate(gens, ctx, cap=math.factorial(n), name=f"S{n}")


@lru_cache(maxsize=None)
def alternating_group(n: int) -> FiniteGroup:
    """A_n generated by the 3-cycles (1 2 k), k = 3..n."""
    _check_enum_degree(n)
    ctx = perm_context(n)
    if n < 3:
        return FiniteGroup([ctx.identity], ctx, [0], name=f"A{n}")
    gens = [_cycle(n, 1, 2, k) for k in range(3, n + 1)]
    return generate(gens, ctx, cap=max(1, math.factorial(n) // 2), name=f"A{n}")


def class_splits_in_alternating(t: Iterable[int]) -> bool:
    """Whether the S_n-class of an even permutation of type ``t`` splits in A_n.

    It splits exactly when all cycle lengths (fixed points included) are odd
    and pairwise distinct.
    """
    t = CycleType(t)
    if not t.is_even:
        raise OddPermutation(f"cycle type {list(t)} is odd")
    return all(k % 2 for k in t) and len(set(t)) == len(t)


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def alternating_class_sizes(n: int) -> list:
    """Conjugacy class sizes of A_n from cycle types and the splitting rule."""
    sizes = []
    for part in _partitions(n):
        t = CycleType(part)
        if not t.is_even:
            continue
        size = t.class_size()
        if n > 1 and class_splits_in_alternating(t) and size > 1:
            sizes += [size // 2, size // 2]
        else:
            sizes.append(size)
    return sorted(sizes)


def verify_three_cycle_counting(n: int) -> dict:
    """For each k with 3k <= n: does 2*C(n,3) equal the number of products of k disjoint 3-cycles?"""
    lhs = 2 * math.comb(n, 3)
    out = {}
    for k in range(1, n // 3 + 1):
        rhs = math.factorial(n) // (math.factorial(k) * 3**k * math.factorial(n - 3 * k))
        out[k] = lhs == rhs
    return out


def all_permutations(n: int):
    return [Permutation(p) for p in permutations(range(n))]
