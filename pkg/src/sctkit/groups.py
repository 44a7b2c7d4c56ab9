"""Finite groups given by materialized multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Subgroups carry a bitmask so that containment, intersection and equality
are single integer operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotASubgroup,
    NotAssociative,
    NotNormal,
    OrderCapExceeded,
    ParentMismatch,
    ProductNotSubgroup,
)

DEFAULT_ORDER_CAP = 10000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on ``0..n-1`` with identity ``0``.

    ``origin`` records, for groups derived from another group (subgroups
    turned into groups, quotients), which elements of the root group each
    element stands for.  It is ``None`` for a root group.
    """

    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    origin: tuple[frozenset[int], ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.mult)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conj(self, g: int, t: int) -> int:
        """Return ``t g t^-1``."""
        return self.mult[self.mult[t][g]][self.inv[t]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mult[result][base]
            base = self.mult[base][base]
            k >>= 1
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            k += 1
        return k

    @property
    def exponent(self) -> int:
        if "exponent" not in self._cache:
            from math import lcm

            e = 1
            for g in range(self.order):
                e = lcm(e, self.element_order(g))
            self._cache["exponent"] = e
        return self._cache["exponent"]

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    def origin_of(self, g: int) -> frozenset[int]:
        if self.origin is None:
            return frozenset((g,))
        return self.origin[g]

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    mask: int

    @classmethod
    def from_members(cls, parent: FiniteGroup, members: Iterable[int]) -> "Subgroup":
        ms = tuple(sorted(set(members)))
        mask = 0
        for g in ms:
            mask |= 1 << g
        return cls(parent, ms, mask)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order


@dataclass(frozen=True)
class Partition:
    """A partition of ``0..m-1`` into blocks sorted by least element."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], size: int | None = None) -> "Partition":
        bl = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        if any(not b for b in bl):
            raise ValueError("empty block")
        m = sum(len(b) for b in bl)
        if size is not None and m != size:
            raise ValueError(f"blocks cover {m} indices, expected {size}")
        block_of = [-1] * m
        for i, b in enumerate(bl):
            for x in b:
                if x < 0 or x >= m or block_of[x] != -1:
                    raise ValueError(f"index {x} repeated or out of range")
                block_of[x] = i
        return cls(tuple(bl), tuple(block_of))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(groups.values(), len(labels))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def size(self) -> int:
        return len(self.block_of)

    def block(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]

    def is_finer_than(self, other: "Partition") -> bool:
        """True when every block of ``self`` lies inside one block of ``other``."""
        return all(len({other.block_of[x] for x in b}) == 1 for b in self.blocks)

    def coarsen(self, other: "Partition") -> "Partition":
        """Finest common coarsening (union-find over both partitions)."""
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for part in (self, other):
            for b in part.blocks:
                r = find(b[0])
                for x in b[1:]:
                    s = find(x)
                    if s != r:
                        parent[s] = r
        return Partition.from_labels([find(x) for x in range(self.size)])


@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: FiniteGroup
    target: FiniteGroup
    kernel: Subgroup
    fiber: Partition
    image_of: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.image_of[g]

    def preimage(self, elements: Iterable[int]) -> frozenset[int]:
        # cosets are numbered by least element, which is also their fiber order
        out: list[int] = []
        for x in elements:
            out.extend(self.fiber.blocks[x])
        return frozenset(out)


# ---------------------------------------------------------------------------
# builders


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds the cap {cap}")


def _trusted_group(
    mult: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    origin: Sequence[frozenset[int]] | None = None,
) -> FiniteGroup:
    m = tuple(tuple(int(x) for x in row) for row in mult)
    inv = [0] * len(m)
    for g, row in enumerate(m):
        inv[g] = row.index(0)
    return FiniteGroup(m, tuple(inv), tuple(labels) if labels else None, tuple(origin) if origin else None)


def build_group_from_cayley(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Validate a Cayley table and return the group, relabelling the identity to 0."""
    n = len(table)
    _check_cap(n, cap)
    if n == 0 or any(len(row) != n for row in table):
        raise ValueError("Cayley table must be a non-empty square")
    M = np.asarray(table, dtype=np.int64)
    if M.min() < 0 or M.max() >= n:
        raise ValueError("table entries must lie in 0..n-1")
    ar = np.arange(n)
    e = next((x for x in range(n) if (M[x] == ar).all() and (M[:, x] == ar).all()), None)
    if e is None:
        raise NoIdentity("no element acts as a two-sided identity")
    if e != 0:
        perm = ar.copy()
        perm[[0, e]] = perm[[e, 0]]
        M = perm[M[np.ix_(perm, perm)]]
        if labels:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]
    for g in range(n):
        hits = np.nonzero(M[g] == 0)[0]
        if len(hits) != 1 or M[hits[0], g] != 0:
            raise NoInverse(g)
    for g in range(n):
        if len(np.unique(M[g])) != n:
            raise NoInverse(g)
        if len(np.unique(M[:, g])) != n:
            raise NoInverse(g)
    for a in range(n):
        lhs = M[M[a]]  # (a*b)*c indexed [b, c]
        rhs = M[a][M]  # a*(b*c) indexed [b, c]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            raise NotAssociative(a, int(b), int(c))
    return _trusted_group(M.tolist(), labels)


def _perm_label(p: Sequence[int]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def build_group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close the generators under composition, breadth first.

    Elements are listed identity first, then in discovery order.  The
    product ``a*b`` is the composition "apply ``b``, then ``a``".
    """
    gens = []
    for gen in generators:
        t = tuple(int(x) for x in gen)
        if len(t) != degree or sorted(t) != list(range(degree)):
            raise NotAPermutation(f"{list(gen)} is not a permutation of 0..{degree - 1}")
        gens.append(t)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(x[s[i]] for i in range(degree))
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise OrderCapExceeded(f"permutation closure exceeds the cap {cap}")
                queue.append(y)
    n = len(elems)
    if degree == 0:
        return _trusted_group([[0]], ["()"])
    P = np.asarray(elems, dtype=np.int64)
    weights = degree ** np.arange(degree, dtype=np.int64) if degree ** degree < 2**62 else None
    if weights is not None:
        codes = {int(c): i for i, c in enumerate(P @ weights)}
        mult = [[codes[int(c)] for c in (P[a][P] @ weights)] for a in range(n)]
    else:
        mult = [[index[tuple(P[a][P[b]])] for b in range(n)] for a in range(n)]
    return _trusted_group(mult, [_perm_label(p) for p in elems])


# ---------------------------------------------------------------------------
# structure


def conjugacy_classes(G: FiniteGroup) -> Partition:
    if "classes" not in G._cache:
        n = G.order
        label = [-1] * n
        k = 0
        for g in range(n):
            if label[g] != -1:
                continue
            for t in range(n):
                label[G.conj(g, t)] = k
            k += 1
        G._cache["classes"] = Partition.from_labels(label)
    return G._cache["classes"]


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), (1 << G.order) - 1)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,), 1)


def _closure_mask(G: FiniteGroup, seed: Iterable[int]) -> int:
    gens = sorted(set(seed) - {0})
    mask = 1
    frontier = [0]
    m = G.mult
    while frontier:
        nxt = []
        for x in frontier:
            row = m[x]
            for s in gens:
                y = row[s]
                if not mask >> y & 1:
                    mask |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return mask


def subgroup_from_mask(G: FiniteGroup, mask: int) -> Subgroup:
    members = tuple(i for i in range(G.order) if mask >> i & 1)
    return Subgroup(G, members, mask)


def generated_subgroup(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    return subgroup_from_mask(G, _closure_mask(G, seed))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    ms = set(members)
    if 0 not in ms:
        return False
    return all(G.mult[a][b] in ms for a in ms for b in ms)


def as_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    ms = list(members)
    if not is_subgroup(G, ms):
        raise NotASubgroup(f"{sorted(set(ms))} is not closed under the group law")
    return Subgroup.from_members(G, ms)


def normality_witness(G: FiniteGroup, N: Subgroup) -> tuple[int, int, int] | None:
    for n in N.members:
        for g in range(G.order):
            c = G.conj(n, g)
            if c not in N:
                return (n, g, c)
    return None


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    return normality_witness(G, N) is None


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, QuotientMap]:
    if N.parent is not G:
        raise ParentMismatch("subgroup belongs to a different group")
    key = ("quotient", N.mask)
    if key in G._cache:
        return G._cache[key]
    w = normality_witness(G, N)
    if w is not None:
        raise NotNormal(*w)
    n = G.order
    image = [-1] * n
    cosets: list[list[int]] = []
    for g in range(n):
        if image[g] != -1:
            continue
        coset = sorted(G.mult[g][x] for x in N.members)
        for x in coset:
            image[x] = len(cosets)
        cosets.append(coset)
    reps = [c[0] for c in cosets]
    mult = [[image[G.mult[a][b]] for b in reps] for a in reps]
    origin = [frozenset().union(*(G.origin_of(x) for x in c)) for c in cosets]
    labels = None
    if G.labels:
        labels = [G.labels[r] + "N" if len(N) > 1 else G.labels[r] for r in reps]
    Q = _trusted_group(mult, labels, origin)
    qmap = QuotientMap(G, Q, N, Partition.from_blocks(cosets, n), tuple(image))
    G._cache[key] = (Q, qmap)
    return Q, qmap


def subgroup_as_group(H: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Return ``H`` as a group in its own right plus the embedding into the parent."""
    G = H.parent
    if H.is_whole():
        return G, tuple(range(G.order))
    key = ("as_group", H.mask)
    if key not in G._cache:
        members = H.members
        pos = {g: i for i, g in enumerate(members)}
        mult = [[pos[G.mult[a][b]] for b in members] for a in members]
        labels = [G.labels[g] for g in members] if G.labels else None
        origin = [G.origin_of(g) for g in members]
        G._cache[key] = (_trusted_group(mult, labels, origin), members)
    return G._cache[key]


def subgroup_intersection(H: Subgroup, N: Subgroup) -> Subgroup:
    if H.parent is not N.parent:
        raise ParentMismatch("subgroups belong to different groups")
    return subgroup_from_mask(H.parent, H.mask & N.mask)


def subgroup_product(H: Subgroup, N: Subgroup) -> Subgroup:
    if H.parent is not N.parent:
        raise ParentMismatch("subgroups belong to different groups")
    G = H.parent
    mask = 0
    for h in H.members:
        row = G.mult[h]
        for n in N.members:
            mask |= 1 << row[n]
    S = subgroup_from_mask(G, mask)
    if not (is_normal(G, H) or is_normal(G, N)) and not is_subgroup(G, S.members):
        raise ProductNotSubgroup("neither factor is normal and HN is not closed")
    return S


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    m, inv = G.mult, G.inv
    comms = {m[m[inv[a]][inv[b]]][m[a][b]] for a in range(G.order) for b in range(G.order)}
    return generated_subgroup(G, comms)


def group_center(G: FiniteGroup) -> Subgroup:
    cls = conjugacy_classes(G)
    return Subgroup.from_members(G, [b[0] for b in cls.blocks if len(b) == 1])


def is_abelian_quotient(N: Subgroup, H: Subgroup) -> bool:
    """Whether ``N/H`` is abelian, for ``H <= N`` with ``H`` normal in ``N``."""
    G = N.parent
    m, inv = G.mult, G.inv
    return all(m[m[inv[a]][inv[b]]][m[a][b]] in H for a in N.members for b in N.members)


def is_nilpotent_group(G: FiniteGroup) -> bool:
    """Classical nilpotence through the lower central series."""
    m, inv = G.mult, G.inv
    current = whole_group(G)
    while True:
        comms = {m[m[inv[a]][inv[b]]][m[a][b]] for a in current.members for b in range(G.order)}
        nxt = generated_subgroup(G, comms)
        if nxt == current:
            return current.is_trivial()
        current = nxt
