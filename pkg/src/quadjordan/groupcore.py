"""Enumerated finite groups: closure, conjugacy classes, normal subgroups,
Jordan constants and small-group recognition.

Groups are stored as a tuple of opaque hashable elements together with a
:class:`GroupContext` (multiplication, identity, inverse, sort key).  All
queries work on element indices.  No Cayley table is built for the group
itself; conjugacy classes come from orbits under the generators, and the
normal-subgroup lattice is searched on conjugacy classes using a
class-product table (which classes meet ``rep_i * C_j``), costing
``#classes * |G|`` products in total.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

__all__ = [
    "GroupContext",
    "FiniteGroup",
    "JordanCertificate",
    "CapExceeded",
    "BudgetExceeded",
    "PreconditionFailed",
    "Extension",
    "generate",
    "conjugacy_classes",
    "normal_subgroups",
    "jordan_constant",
    "center",
    "is_abelian",
    "derived_subgroup",
    "element_order",
    "classify_extension",
    "recognize",
    "DEFAULT_CAP",
    "DEFAULT_LATTICE_BUDGET",
]

DEFAULT_CAP = 20000
DEFAULT_LATTICE_BUDGET = 10**6
TABLE_LIMIT = 2048


class CapExceeded(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class PreconditionFailed(ValueError):
    pass


def _identity_key(x):
    return x


@dataclass(frozen=True)
class GroupContext:
    """Element operations for one universe of group elements."""

    mul: Callable[[Any, Any], Any]
    identity: Hashable
    inverse: Callable[[Any], Any]
    key: Callable[[Any], Any] = _identity_key
    name: str = ""

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inverse(x), -k
        result = self.identity
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result


class FiniteGroup:
    """An immutable enumerated group.

    ``elements[0]`` is always the identity; ``gens`` are indices of a
    generating set (used for conjugacy orbits and normality checks).
    """

    def __init__(self, elements: Sequence, context: GroupContext,
                 gens: Iterable[int] = (), name: str = ""):
        self.elements = tuple(elements)
        self.context = context
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        if self.elements[0] != context.identity:
            raise ValueError("elements[0] must be the identity")
        gens = tuple(gens)
        self.gens = gens if gens else tuple(range(1, len(self.elements)))
        self.name = name
        self._inv = None
        self._classes = None
        self._class_of = None
        self._class_prod = None
        self._commute = {}
        self._table = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        label = self.name or "group"
        return f"<FiniteGroup {label} of order {self.order}>"

    # -- element arithmetic on indices
    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self.index[self.context.mul(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        if self._inv is None:
            inv = [0] * self.order
            for k, x in enumerate(self.elements):
                inv[k] = self.index[self.context.inverse(x)]
            self._inv = inv
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, i: int, k: int) -> int:
        return self.index[self.context.power(self.elements[i], k)]

    def table(self) -> list:
        """Full multiplication table (only for groups of order <= 2048)."""
        if self._table is None:
            if self.order > TABLE_LIMIT:
                raise CapExceeded(f"no Cayley table above order {TABLE_LIMIT}")
            els, idx, m = self.elements, self.index, self.context.mul
            self._table = [[idx[m(a, b)] for b in els] for a in els]
        return self._table

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    # -- subgroups as index sets
    def generated(self, gens: Iterable[int], start: Iterable[int] = (0,)) -> frozenset:
        """Subgroup generated by ``gens`` and the subgroup ``start``."""
        gens = list(gens)
        seen = set(start)
        seen.add(0)
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def subgroup(self, members: Iterable[int], name: str = "") -> "FiniteGroup":
        """A subset closed under multiplication, as a FiniteGroup in its own right."""
        members = sorted(set(members))
        if not members or members[0] != 0:
            raise PreconditionFailed("subgroup must contain the identity")
        sub_gens = _greedy_generators(self, members)
        if self.generated(sub_gens) != frozenset(members):
            raise PreconditionFailed("subset is not closed under multiplication")
        elements = [self.elements[i] for i in members]
        pos = {i: k for k, i in enumerate(members)}
        return FiniteGroup(elements, self.context, [pos[g] for g in sub_gens], name=name)

    def is_subgroup(self, members: Iterable[int]) -> bool:
        members = frozenset(members)
        return 0 in members and all(self.mul(a, b) in members for a in members for b in members)

    def is_normal(self, members: Iterable[int]) -> bool:
        members = frozenset(members)
        return all(self.conj(g, h) in members for g in self.gens for h in members)

    def is_abelian_subset(self, members: Iterable[int]) -> bool:
        members = sorted(set(members))
        gens = _greedy_generators(self, members)
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    # -- conjugacy
    def classes(self) -> list:
        if self._classes is None:
            inv_gens = [(g, self.inv(g)) for g in self.gens]
            class_of = [-1] * self.order
            raw = []
            for start in range(self.order):
                if class_of[start] >= 0:
                    continue
                cid = len(raw)
                class_of[start] = cid
                orbit = [start]
                k = 0
                while k < len(orbit):
                    x = orbit[k]
                    k += 1
                    for g, gi in inv_gens:
                        y = self.mul(self.mul(g, x), gi)
                        if class_of[y] < 0:
                            class_of[y] = cid
                            orbit.append(y)
                raw.append(sorted(orbit))
            order = sorted(range(len(raw)), key=lambda c: (len(raw[c]), raw[c][0]))
            self._classes = [tuple(raw[c]) for c in order]
            relabel = {c: k for k, c in enumerate(order)}
            self._class_of = [relabel[c] for c in class_of]
        return self._classes

    def class_of(self, i: int) -> int:
        self.classes()
        return self._class_of[i]

    def class_products(self) -> list:
        """prod[i][j] = bitmask of classes meeting rep_i * C_j."""
        if self._class_prod is None:
            classes = self.classes()
            cof = self._class_of
            prod = []
            for ci in classes:
                rep = ci[0]
                row = []
                for cj in classes:
                    mask = 0
                    for y in cj:
                        mask |= 1 << cof[self.mul(rep, y)]
                    row.append(mask)
                prod.append(row)
            self._class_prod = prod
        return self._class_prod

    def classes_commute(self, i: int, j: int) -> bool:
        """Whether every element of class i commutes with every element of class j."""
        key = (i, j) if i <= j else (j, i)
        hit = self._commute.get(key)
        if hit is None:
            classes = self.classes()
            rep = classes[key[0]][0]
            hit = all(self.mul(rep, y) == self.mul(y, rep) for y in classes[key[1]])
            self._commute[key] = hit
        return hit

    def mask_members(self, mask: int) -> tuple:
        classes = self.classes()
        out = []
        for c in _bits(mask):
            out.extend(classes[c])
        return tuple(sorted(out))

    def mask_of(self, members: Iterable[int]) -> int:
        mask = 0
        for i in members:
            mask |= 1 << self.class_of(i)
        return mask


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy_generators(G: FiniteGroup, members: Sequence[int]) -> list:
    """A generating set for the subgroup ``members`` (assumed closed)."""
    span = {0}
    gens = []
    for x in members:
        if x not in span:
            gens.append(x)
            span = set(G.generated(gens))
    return gens


def _close(G: FiniteGroup, base: int, extra: int, counter: list, budget: int) -> int:
    """Smallest class-union subgroup containing ``base`` (already closed) and ``extra``."""
    prod = G.class_products()
    mask = base
    queue = list(_bits(extra & ~base))
    for c in queue:
        mask |= 1 << c
    while queue:
        x = queue.pop()
        new = 0
        for y in _bits(mask):
            new |= prod[x][y] | prod[y][x]
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(f"normal-subgroup search exceeded {budget} steps")
        new &= ~mask
        if new:
            mask |= new
            queue.extend(_bits(new))
    return mask


def _mask_is_abelian(G: FiniteGroup, mask: int) -> bool:
    cs = list(_bits(mask))
    return all(G.classes_commute(a, b) for k, a in enumerate(cs) for b in cs[k:])


def _lattice(G: FiniteGroup, budget: int, abelian_only: bool = False) -> list:
    counter = [0]
    k = len(G.classes())
    start = 1  # the identity class sorts first
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for N in frontier:
            for c in range(k):
                if N >> c & 1:
                    continue
                M = _close(G, N, 1 << c, counter, budget)
                if M in found:
                    continue
                if abelian_only and not _mask_is_abelian(G, M):
                    continue
                found.add(M)
                nxt.append(M)
        frontier = nxt
    return sorted(found, key=lambda m: (len(G.mask_members(m)), G.mask_members(m)))


# -- public operations ------------------------------------------------------

def generate(gens: Sequence, ctx: GroupContext, cap: int = DEFAULT_CAP,
             name: str = "") -> FiniteGroup:
    """Closure of ``gens``; elements ordered by word length, ties by ``ctx.key``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    e = ctx.identity
    seen = {e}
    elements = [e]
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = ctx.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        new.sort(key=ctx.key)
        elements.extend(new)
        if len(elements) > cap:
            raise CapExceeded(f"closure exceeded {cap} elements")
        frontier = new
    index = {x: i for i, x in enumerate(elements)}
    gen_idx = []
    for g in gens:
        i = index[g]
        if i != 0 and i not in gen_idx:
            gen_idx.append(i)
    return FiniteGroup(elements, ctx, gen_idx or [0], name=name)


def conjugacy_classes(G: FiniteGroup) -> list:
    """Classes as sorted index tuples, ordered by (size, least index)."""
    return list(G.classes())


def normal_subgroups(G: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET) -> list:
    """Every normal subgroup, as sorted index tuples ordered by (order, members)."""
    return [G.mask_members(m) for m in _lattice(G, budget)]


@dataclass(frozen=True)
class JordanCertificate:
    constant: int
    witness: tuple
    audit: int
    group_order: int
    witness_generators: tuple = field(default=(), compare=False)

    @property
    def witness_order(self) -> int:
        return len(self.witness)


def jordan_constant(G: FiniteGroup, budget: int = DEFAULT_LATTICE_BUDGET) -> JordanCertificate:
    """Least index of a normal abelian subgroup, with the attaining subgroup.

    The search walks the lattice of normal subgroups upwards from the trivial
    one, pruning non-abelian nodes.  Since every normal subgroup of an abelian
    normal subgroup chain is abelian, every abelian normal subgroup is reached.
    Ties (same order) go to the lexicographically least member tuple.
    """
    if is_abelian(G):
        members = tuple(range(G.order))
        return JordanCertificate(1, members, 1, G.order, tuple(G.gens))
    masks = _lattice(G, budget, abelian_only=True)
    best = None
    for m in masks:
        members = G.mask_members(m)
        cand = (-len(members), members)
        if best is None or cand < best:
            best = cand
    witness = best[1]
    return JordanCertificate(G.order // len(witness), witness, len(masks), G.order,
                             tuple(_greedy_generators(G, witness)))


def center(G: FiniteGroup) -> tuple:
    return tuple(sorted(c[0] for c in G.classes() if len(c) == 1))


def is_abelian(G: FiniteGroup) -> bool:
    gens = G.gens
    return all(G.mul(a, b) == G.mul(b, a) for k, a in enumerate(gens) for b in gens[k + 1:])


def derived_subgroup(G: FiniteGroup) -> tuple:
    """Normal closure of the commutators of the generators."""
    mask = 1
    for a in G.gens:
        for b in G.gens:
            comm = G.mul(G.mul(a, b), G.inv(G.mul(b, a)))
            mask |= 1 << G.class_of(comm)
    mask = _close(G, 1, mask, [0], DEFAULT_LATTICE_BUDGET)
    return G.mask_members(mask)


def element_order(G: FiniteGroup, i: int) -> int:
    return G.element_order(i)


def order_census(G: FiniteGroup) -> Counter:
    return Counter(G.element_order(i) for i in range(G.order))


def class_sizes(G: FiniteGroup) -> tuple:
    return tuple(sorted(len(c) for c in G.classes()))


# -- recognition ------------------------------------------------------------

_CENSUS = {
    (12, (1, 3, 4, 4)): "A4",
    (24, (1, 3, 6, 6, 8)): "S4",
    (60, (1, 12, 12, 15, 20)): "A5",
    (120, (1, 10, 15, 20, 20, 24, 30)): "S5",
    (120, (1, 1, 12, 12, 12, 12, 15, 15, 20, 20)): "A5xC2",
}


def _is_dihedral(G: FiniteGroup) -> bool:
    n = G.order // 2
    if G.order % 2 or n < 2:
        return False
    for a in range(1, G.order):
        if G.element_order(a) == n:
            cyc = G.generated([a])
            return all(G.element_order(x) == 2 for x in range(G.order) if x not in cyc)
    return False


def recognize(G: FiniteGroup) -> str:
    """One of C<n>, D<2n>, A4, S4, A5, S5, A5xC2, or 'other'."""
    n = G.order
    if is_abelian(G):
        if any(G.element_order(i) == n for i in range(n)):
            return f"C{n}"
        if n == 4:
            return "D4"
        return "other"
    if _is_dihedral(G):
        return f"D{n}"
    tag = _CENSUS.get((n, class_sizes(G)))
    if tag is None:
        return "other"
    z = len(center(G))
    if tag in ("S4", "S5", "A4", "A5") and z != 1:
        return "other"
    if tag == "S4" and len(derived_subgroup(G)) != 12:
        return "other"
    if tag == "S5" and len(derived_subgroup(G)) != 60:
        return "other"
    if tag == "A5xC2" and z != 2:
        return "other"
    return tag


class Extension(str, enum.Enum):
    DIRECT_PRODUCT = "DirectProduct"
    SYMMETRIC_GROUP = "SymmetricGroup"
    NORMAL_HALF_PRODUCT = "NormalHalfProduct"


def _alternating_degree(N: FiniteGroup):
    tag = recognize(N)
    if tag == "A4":
        return 4
    if tag == "A5":
        return 5
    from .permgroup import alternating_class_sizes

    for n in range(7, 13):
        if math.factorial(n) // 2 == N.order:
            if class_sizes(N) == tuple(sorted(alternating_class_sizes(n))):
                return n
    return None


def _coset_order(G: FiniteGroup, g: int, N: frozenset) -> int:
    k, x = 1, g
    while x not in N:
        x = G.mul(x, g)
        k += 1
    return k


def classify_extension(G: FiniteGroup, N: Iterable[int]) -> Extension:
    """Shape of G given a normal alternating N (n >= 4, n != 6) with G/N cyclic.

    m = 2: A_n x Z/2 (centre of order 2) or S_n (trivial centre).
    m odd: always A_n x Z/m, verified by |Z(G)| = m.
    m even > 2: A_n x Z/m if |Z(G)| = m, otherwise G contains the index-2
    normal subgroup <A_n, g^2> = A_n x Z/(m/2) (checked via its centre).
    """
    N = frozenset(N)
    if not G.is_subgroup(N) or not G.is_normal(N):
        raise PreconditionFailed("N is not a normal subgroup")
    n = _alternating_degree(G.subgroup(N))
    if n is None or n < 4 or n == 6:
        raise PreconditionFailed("N is not recognised as A_n with n >= 4, n != 6")
    m = G.order // len(N)
    g = next((x for x in range(G.order) if _coset_order(G, x, N) == m), None)
    if g is None:
        raise PreconditionFailed("G/N is not cyclic")
    z = len(center(G))
    if m == 1:
        return Extension.DIRECT_PRODUCT
    if m == 2:
        if z == 2:
            return Extension.DIRECT_PRODUCT
        if z == 1:
            return Extension.SYMMETRIC_GROUP
        raise PreconditionFailed(f"unexpected centre of order {z}")
    if m % 2:
        if z != m:
            raise PreconditionFailed(f"odd quotient but centre of order {z}")
        return Extension.DIRECT_PRODUCT
    if z == m:
        return Extension.DIRECT_PRODUCT
    g2 = G.mul(g, g)
    half = G.generated([g2], start=N)
    k = m // 2
    if len(half) != len(N) * k or not G.is_normal(half):
        raise PreconditionFailed("no index-2 normal subgroup <N, g^2>")
    central = [x for x in half if all(G.mul(x, y) == G.mul(y, x) for y in list(N) + [g2])]
    if len(central) != k:
        raise PreconditionFailed("<N, g^2> is not N x Z/(m/2)")
    return Extension.NORMAL_HALF_PRODUCT
