"""Brute-force oracles that share no code with the package internals.

They are deliberately naive: conjugacy classes by direct conjugation,
supercharacter theories as central Schur rings found by trying every set
partition of the classes, and double orbits of unitriangular matrices by
multiplying actual matrices.
"""

from __future__ import annotations

import itertools
from collections import Counter

from sctkit.cyclotomic import Cyclotomic


def brute_classes(G):
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        cls = frozenset(G.mul(G.mul(G.inv[t], g), t) for t in range(G.order))
        seen |= cls
        out.append(cls)
    return out


def set_partitions(items):
    """All set partitions of a list, as lists of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _class_products(G, classes):
    """Element multiplicities of each product of two class sums."""
    prods = {}
    for i, A in enumerate(classes):
        for j, B in enumerate(classes):
            c = Counter(G.mul(a, b) for a in A for b in B)
            prods[i, j] = c
    return prods


def schur_ring_partitions(G, limit_classes=9):
    """Element partitions that span a central Schur ring.

    A partition of G into unions of conjugacy classes, with {1} a block and
    inversion permuting blocks, gives a supercharacter theory exactly when the
    span of its block sums is closed under multiplication.  Returns the
    partitions as frozensets of frozensets.
    """
    classes = brute_classes(G)
    one = next(i for i, c in enumerate(classes) if G.identity in c)
    rest = [i for i in range(len(classes)) if i != one]
    if len(rest) > limit_classes:
        raise ValueError("too many classes for the brute-force oracle")
    prods = _class_products(G, classes)
    inv_class = {}
    for i, c in enumerate(classes):
        image = frozenset(G.inv[g] for g in c)
        inv_class[i] = classes.index(image)
    found = []
    for part in set_partitions(rest):
        blocks = [[one]] + part
        block_sets = {frozenset(b) for b in blocks}
        if any(frozenset(inv_class[i] for i in b) not in block_sets for b in blocks):
            continue
        elem_blocks = [frozenset().union(*(classes[i] for i in b)) for b in blocks]
        ok = True
        for a, b in itertools.product(range(len(blocks)), repeat=2):
            total = Counter()
            for i in blocks[a]:
                for j in blocks[b]:
                    total.update(prods[i, j])
            for E in elem_blocks:
                if len({total[g] for g in E}) != 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(frozenset(elem_blocks))
    return found


# ---------------------------------------------------------------------------
# unitriangular matrices over a prime field


def _units(n):
    return sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda t: (t[1] - t[0], t[0]))


def _matmul(A, B, p):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))


def unitriangular(n, p):
    units = _units(n)
    out = []
    for vals in itertools.product(range(p), repeat=len(units)):
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(units, vals):
            M[i][j] = v
        out.append(tuple(tuple(r) for r in M))
    return out


def matrix_index(M, p):
    """Index of 1 + x in the package's algebra group (coordinates little-endian base p)."""
    x = 0
    for i, j in reversed(_units(len(M))):
        x = x * p + M[i][j]
    return x


def _closure(start, moves):
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for x in frontier:
            for m in moves:
                y = m(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def ut_double_orbits(n, p):
    """Superclasses {1 + g(M - 1)h} and dual orbits with their characters, by brute force.

    The two-sided orbit of G x G is the closure under left and right
    multiplication by every group element separately.  Returns
    (superclasses as sets of package indices, list of (orbit size,
    {package index: value})) where the value at 1 + x is the sum over mu in
    the orbit of zeta_p^{mu(x)}.
    """
    G = unitriangular(n, p)
    ident = G[0]
    units = _units(n)

    def minus_one(M):
        return tuple(tuple((M[i][j] - ident[i][j]) % p for j in range(n)) for i in range(n))

    def plus_one(x):
        return tuple(tuple((v + ident[i][j]) % p for j, v in enumerate(row)) for i, row in enumerate(x))

    xs = [minus_one(M) for M in G]
    moves = [lambda x, g=g: _matmul(g, x, p) for g in G] + [lambda x, g=g: _matmul(x, g, p) for g in G]
    classes, seen = set(), set()
    for x in xs:
        if x in seen:
            continue
        orbit = _closure(x, moves)
        seen |= orbit
        classes.add(frozenset(matrix_index(plus_one(y), p) for y in orbit))

    def pair(mu, x):
        return sum(mu[k] * x[i][j] for k, (i, j) in enumerate(units)) % p

    elementary = [tuple(tuple(int((a, b) == (i, j)) for b in range(n)) for a in range(n)) for i, j in units]

    def dual_move(g, left):
        # mu -> (x -> mu(g x)) or (x -> mu(x g)), in coordinates
        imgs = [_matmul(g, e, p) if left else _matmul(e, g, p) for e in elementary]
        return lambda mu: tuple(pair(mu, y) for y in imgs)

    dmoves = [dual_move(g, True) for g in G] + [dual_move(g, False) for g in G]
    seen, duals = set(), []
    for lam in itertools.product(range(p), repeat=len(units)):
        if lam in seen:
            continue
        orbit = _closure(lam, dmoves)
        seen |= orbit
        values = {}
        for M, x in zip(G, xs):
            counts = [0] * p
            for mu in orbit:
                counts[pair(mu, x)] += 1
            values[matrix_index(M, p)] = Cyclotomic.from_exponent_counts(p, counts)
        duals.append((len(orbit), values))
    return classes, duals
