"""Nilpotent F_q-algebras, their algebra groups and the double-orbit theory.

An algebra ``J`` is given by structure constants on a basis b_0..b_{d-1}.
Vectors are tuples of field elements and are numbered in base q
(index = sum coord_i q^i), so the zero vector is 0.  The algebra group
``G = 1 + J`` uses the same numbering: index r stands for 1 + r, and the
identity is index 0 as the group builders require.

The double-orbit theory has superclasses 1 + G r G and supercharacters
sum over mu in G lam G of theta(mu(g - 1)), where theta(x) = zeta_p^Tr(x)
and the orbit is taken for the two-sided action of G on the dual space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Iterable, Optional, Sequence

from .characters import ClassFunction, character_table
from .cyclotomic import Cyclotomic
from .errors import (
    AlgebraNotAssociative,
    InputError,
    NotNilpotent,
    OrderCapExceeded,
    UnsupportedField,
    ValidationFailure,
)
from .fields import FiniteField, _prime_power, make_field
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, Subgroup, _trusted_group, conjugacy_classes, generated_subgroup
from .report import Report
from .theory import SupercharacterTheory, validate_sct

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# linear algebra over F_q


def rref(F: FiniteField, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = F.inv[A[r][c]]
        A[r] = [F.mul[s][x] for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = F.neg[A[i][c]]
                A[i] = [F.add[x][F.mul[f][y]] for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def reduce_vector(F: FiniteField, v: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int]) -> Vec:
    """Remainder of ``v`` modulo the span of an RREF basis (zero on pivot columns)."""
    out = list(v)
    for row, c in zip(basis, pivots):
        if out[c]:
            f = F.neg[out[c]]
            out = [F.add[x][F.mul[f][y]] for x, y in zip(out, row)]
    return tuple(out)


def nullspace(F: FiniteField, A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : A x = 0}."""
    R, pivots = rref(F, A)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(R, pivots):
            x[c] = F.neg[row[f]]
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    field: FiniteField
    dim: int
    # sc[i][j] = coordinates of b_i b_j
    sc: tuple[tuple[Vec, ...], ...]
    nilpotency_class: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.dim

    def zero(self) -> Vec:
        return (0,) * self.dim

    def basis_vector(self, i: int) -> Vec:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        A = self.field.add
        return tuple(A[x][y] for x, y in zip(u, v))

    def scale(self, c: int, u: Sequence[int]) -> Vec:
        M = self.field.mul[c]
        return tuple(M[x] for x in u)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        F = self.field
        out = [0] * self.dim
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(v):
                if not y:
                    continue
                c = F.mul[x][y]
                for k, s in enumerate(self.sc[i][j]):
                    if s:
                        out[k] = F.add[out[k]][F.mul[c][s]]
        return tuple(out)

    def encode(self, v: Sequence[int]) -> int:
        x = 0
        for c in reversed(v):
            x = x * self.q + c
        return x

    def decode(self, x: int) -> Vec:
        out = []
        for _ in range(self.dim):
            out.append(x % self.q)
            x //= self.q
        return tuple(out)

    def is_zero_algebra(self) -> bool:
        return all(not any(v) for row in self.sc for v in row)


def _span_products(J: NilpotentAlgebra, left: Sequence[Vec], right: Sequence[Vec]) -> list[Vec]:
    rows = [J.mul(a, b) for a in left for b in right]
    R, _ = rref(J.field, rows)
    return [tuple(r) for r in R]


def build_algebra(
    p: int,
    k: int,
    dim: int,
    products: Iterable[tuple[int, int, Sequence[int]]],
    modulus: Optional[Sequence[int]] = None,
) -> NilpotentAlgebra:
    """Validate structure constants and return the algebra.

    ``products`` lists (i, j, coords) with b_i b_j = sum coords[k] b_k; omitted
    products are zero.  Coordinates are field elements as integers < q.
    """
    F = make_field(p, k, modulus)
    if dim < 0:
        raise InputError("dimension must be non-negative")
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, coords in products:
        if not (0 <= i < dim and 0 <= j < dim) or len(coords) != dim:
            raise InputError(f"bad structure constant entry ({i}, {j}, {list(coords)})")
        if any(not (0 <= int(c) < F.q) for c in coords):
            raise InputError(f"coordinates must lie in 0..{F.q - 1}")
        table[i][j] = [int(c) for c in coords]
    sc = tuple(tuple(tuple(v) for v in row) for row in table)
    J = NilpotentAlgebra(F, dim, sc, 0)
    basis = [J.basis_vector(i) for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            bij = sc[i][j]
            for t in range(dim):
                if J.mul(bij, basis[t]) != J.mul(basis[i], sc[j][t]):
                    raise AlgebraNotAssociative(i, j, t)
    # nilpotency class: least c with J^c = 0
    power = [tuple(b) for b in basis]
    c = 1
    while power:
        nxt = _span_products(J, power, basis)
        if len(nxt) == len(power):
            raise NotNilpotent(f"J^{c} = J^{c + 1} has dimension {len(power)}")
        power = nxt
        c += 1
    return NilpotentAlgebra(F, dim, sc, c)


# ---------------------------------------------------------------------------
# ideals and series


@dataclass(frozen=True, eq=False)
class Ideal:
    algebra: NilpotentAlgebra
    basis: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, J: NilpotentAlgebra, vectors: Iterable[Sequence[int]]) -> "Ideal":
        R, piv = rref(J.field, [list(v) for v in vectors])
        return cls(J, tuple(tuple(r) for r in R), tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(reduce_vector(self.algebra.field, v, self.basis, self.pivots))

    def reduce(self, v: Sequence[int]) -> Vec:
        return reduce_vector(self.algebra.field, v, self.basis, self.pivots)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.algebra is other.algebra and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __le__(self, other: "Ideal") -> bool:
        return all(b in other for b in self.basis)

    def __repr__(self) -> str:
        return f"Ideal(dim={self.dim}, basis={[list(b) for b in self.basis]})"

    def elements(self) -> list[Vec]:
        J = self.algebra
        out = []
        for coeffs in product(range(J.q), repeat=self.dim):
            v = J.zero()
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = J.add(v, J.scale(c, b))
            out.append(v)
        return out

    def indices(self) -> frozenset[int]:
        return frozenset(self.algebra.encode(v) for v in self.elements())

    def is_two_sided(self) -> bool:
        J = self.algebra
        for b in self.basis:
            for i in range(J.dim):
                e = J.basis_vector(i)
                if J.mul(b, e) not in self or J.mul(e, b) not in self:
                    return False
        return True


def whole_ideal(J: NilpotentAlgebra) -> Ideal:
    return Ideal.span(J, [J.basis_vector(i) for i in range(J.dim)])


def zero_ideal(J: NilpotentAlgebra) -> Ideal:
    return Ideal(J, (), ())


def power_ideals(J: NilpotentAlgebra) -> list[Ideal]:
    """J = J^1 >= J^2 >= ... >= J^c = 0."""
    basis = [J.basis_vector(i) for i in range(J.dim)]
    out = [whole_ideal(J)]
    while out[-1].dim:
        out.append(Ideal.span(J, _span_products(J, out[-1].basis, basis)))
    return out


def annihilator_series(J: NilpotentAlgebra) -> list[Ideal]:
    """0 = Ann_0 <= Ann_1 <= ... <= J, with Ann_{i+1}/Ann_i the annihilator of J/Ann_i."""
    F = J.field
    d = J.dim
    basis = [J.basis_vector(i) for i in range(d)]
    out = [zero_ideal(J)]
    while out[-1].dim < d:
        A = out[-1]
        # row t: images of e_t under x -> x b_j and x -> b_j x, modulo A
        rows = []
        for t in range(d):
            img: list[int] = []
            for b in basis:
                img.extend(A.reduce(J.mul(basis[t], b)))
                img.extend(A.reduce(J.mul(b, basis[t])))
            rows.append(img)
        # x = sum c_t e_t lies in Ann_{i+1} iff sum c_t rows[t] = 0
        cols = [[rows[t][s] for t in range(d)] for s in range(len(rows[0]))] if rows[0] else []
        kernel = nullspace(F, cols, d) if cols else [list(b) for b in basis]
        nxt = Ideal.span(J, kernel)
        if nxt.dim == A.dim:
            raise NotNilpotent("annihilator series stalled before reaching J")
        out.append(nxt)
    return out


def quotient_algebra(J: NilpotentAlgebra, I: Ideal) -> tuple[NilpotentAlgebra, list[int]]:
    """J/I on the complement basis of non-pivot coordinates.

    Returns the algebra and the list of kept coordinates, so the image of
    v is ``I.reduce(v)`` read at those coordinates.
    """
    if not I.is_two_sided():
        raise InputError("not a two-sided ideal")
    keep = [c for c in range(J.dim) if c not in I.pivots]
    prods = []
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            v = I.reduce(J.mul(J.basis_vector(ca), J.basis_vector(cb)))
            coords = [v[c] for c in keep]
            if any(coords):
                prods.append((a, b, coords))
    F = J.field
    Q = build_algebra(F.p, F.k, len(keep), prods, F.modulus if F.k > 1 else None)
    return Q, keep


# ---------------------------------------------------------------------------
# the algebra group


@dataclass(frozen=True, eq=False)
class AlgebraGroup:
    algebra: NilpotentAlgebra
    group: FiniteGroup
    add: list = field(repr=False)
    mulJ: list = field(repr=False)

    def vector(self, g: int) -> Vec:
        return self.algebra.decode(g)

    def index(self, v: Sequence[int]) -> int:
        return self.algebra.encode(v)

    def subgroup_of(self, I: Ideal) -> Subgroup:
        """The subgroup 1 + I."""
        return Subgroup.from_members(self.group, I.indices())


def algebra_group(J: NilpotentAlgebra, cap: int = DEFAULT_ORDER_CAP) -> AlgebraGroup:
    """G = 1 + J with (1+x)(1+y) = 1 + (x + y + xy)."""
    if "group" in J._cache:
        return J._cache["group"]
    n = J.size
    if n > cap:
        raise OrderCapExceeded(f"q^dim = {n} exceeds the cap {cap}")
    vecs = [J.decode(x) for x in range(n)]
    add = [[J.encode(J.add(u, v)) for v in vecs] for u in vecs]
    mulJ = [[J.encode(J.mul(u, v)) for v in vecs] for u in vecs]
    mult = [[add[add[a][b]][mulJ[a][b]] for b in range(n)] for a in range(n)]
    labels = ["1"] + ["1+(" + ",".join(map(str, v)) + ")" for v in vecs[1:]]
    G = _trusted_group(mult, labels)
    AG = AlgebraGroup(J, G, add, mulJ)
    J._cache["group"] = AG
    return AG


def _generators(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    H = generated_subgroup(G, [])
    for g in range(G.order):
        if g not in H:
            gens.append(g)
            H = generated_subgroup(G, gens)
            if H.is_whole():
                break
    return gens


def _orbits(n: int, moves: list) -> list[list[int]]:
    """Orbits of {0..n-1} under the maps in ``moves`` (each a list), BFS from the least point."""
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orbit, frontier = [start], [start]
        while frontier:
            nxt = []
            for x in frontier:
                for m in moves:
                    y = m[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        out.append(sorted(orbit))
    return out


def superclass_orbits(AG: AlgebraGroup) -> list[list[int]]:
    """Two-sided orbits G r G on J, as sets of group indices 1 + r."""
    gens = _generators(AG.group)
    n = AG.group.order
    add, mulJ = AG.add, AG.mulJ
    moves = []
    for a in gens:
        moves.append([add[r][mulJ[a][r]] for r in range(n)])  # r -> (1+a) r
        moves.append([add[r][mulJ[r][a]] for r in range(n)])  # r -> r (1+a)
    return _orbits(n, moves)


def dual_orbits(AG: AlgebraGroup) -> list[list[int]]:
    """Two-sided orbits on J*: mu -> (x -> mu(x g)) and mu -> (x -> mu(g x))."""
    J = AG.algebra
    F = J.field
    d, n = J.dim, J.size
    gens = _generators(AG.group)
    basis = [J.basis_vector(i) for i in range(d)]
    funcs = [J.decode(m) for m in range(n)]

    def evaluate(mu: Vec, v: Vec) -> int:
        s = 0
        for a, b in zip(mu, v):
            if a and b:
                s = F.add[s][F.mul[a][b]]
        return s

    moves = []
    for a in gens:
        av = J.decode(a)
        right = [J.add(e, J.mul(e, av)) for e in basis]  # e (1+a)
        left = [J.add(e, J.mul(av, e)) for e in basis]  # (1+a) e
        moves.append([J.encode(tuple(evaluate(mu, w) for w in right)) for mu in funcs])
        moves.append([J.encode(tuple(evaluate(mu, w) for w in left)) for mu in funcs])
    return _orbits(n, moves)


def orbit_character(AG: AlgebraGroup, orbit: Sequence[int]) -> ClassFunction:
    """sum over mu in the orbit of zeta_p^Tr(mu(g - 1)), on conjugacy classes."""
    J = AG.algebra
    F = J.field
    p = F.p
    G = AG.group
    mus = [J.decode(m) for m in orbit]
    values = []
    for b in conjugacy_classes(G).blocks:
        r = J.decode(b[0])
        counts = [0] * p
        for mu in mus:
            s = 0
            for a, x in zip(mu, r):
                if a and x:
                    s = F.add[s][F.mul[a][x]]
            counts[F.trace[s]] += 1
        values.append(Cyclotomic.from_exponent_counts(p, counts))
    return ClassFunction(G, tuple(values))


def double_orbit_sct(J: NilpotentAlgebra) -> SupercharacterTheory:
    """The double-orbit theory of 1 + J, cross-validated against the axioms."""
    if "sct" in J._cache:
        return J._cache["sct"]
    AG = algebra_group(J)
    table = character_table(AG.group)
    classes = superclass_orbits(AG)
    S = validate_sct(table, classes)
    if not isinstance(S, SupercharacterTheory):
        raise ValidationFailure(f"double orbits rejected: {S.axiom} {S.message} {S.witness}")
    duals = dual_orbits(AG)
    if len(duals) != len(classes):
        raise ValidationFailure(f"{len(duals)} dual orbits against {len(classes)} superclasses")
    chars = [orbit_character(AG, O) for O in duals]
    blocks = {frozenset(X) for X in S.char_partition.blocks}
    for O, xi in zip(duals, chars):
        X = table.constituents(xi)
        if X not in blocks:
            raise ValidationFailure(f"orbit of {O[0]} gives constituents outside the character partition")
        if xi != S.supercharacters[S.char_partition.block_of[min(X)]]:
            raise ValidationFailure(f"orbit of {O[0]} does not give sigma of its constituents")
    J._cache["sct"] = S
    J._cache["dual_orbits"] = duals
    return S


def superclass_sizes_and_degrees(J: NilpotentAlgebra) -> tuple[list[int], list[int]]:
    S = double_orbit_sct(J)
    return sorted(S.class_sizes), sorted(S.degrees)


# ---------------------------------------------------------------------------
# comparisons with the central series of the theory


def compare_series(J: NilpotentAlgebra) -> Report:
    """Check gamma_i(S) = 1 + J^i and zeta_i(S) = 1 + Ann_i(J) term by term."""
    from .structure import lower_central_series, upper_central_series

    AG = algebra_group(J)
    S = double_orbit_sct(J)
    rep = Report("algebra-series")
    low = [t.mask for t in lower_central_series(S).terms]
    up = [t.mask for t in upper_central_series(S).terms][::-1]
    powers = [AG.subgroup_of(I).mask for I in power_ideals(J)]
    anns = [AG.subgroup_of(I).mask for I in annihilator_series(J)]
    name = f"q={J.q} dim={J.dim}"
    rep.add("lower-series-length", "gamma_i(S) = 1 + J^i", len(low) == len(powers), name, [len(low), len(powers)])
    for i, (a, b) in enumerate(zip(low, powers), start=1):
        rep.add("lower-series-term", "gamma_i(S) = 1 + J^i", a == b, f"{name} i={i}", [bin(a).count("1"), bin(b).count("1")])
    rep.add("upper-series-length", "zeta_i(S) = 1 + Ann_i(J)", len(up) == len(anns), name, [len(up), len(anns)])
    for i, (a, b) in enumerate(zip(up, anns)):
        rep.add("upper-series-term", "zeta_i(S) = 1 + Ann_i(J)", a == b, f"{name} i={i}", [bin(a).count("1"), bin(b).count("1")])
    return rep


def ideal_subgroups_by_order(J: NilpotentAlgebra) -> list[tuple[int, Subgroup, Ideal]]:
    """One S-normal ideal subgroup of order q^m for each 0 <= m <= dim.

    Take the largest Ann_i of dimension <= m and extend it by part of a
    complement inside Ann_{i+1}; any such subspace is an ideal.
    """
    from .structure import is_s_normal

    AG = algebra_group(J)
    S = double_orbit_sct(J)
    anns = annihilator_series(J)
    out = []
    for m in range(J.dim + 1):
        i = max(t for t, A in enumerate(anns) if A.dim <= m)
        A = anns[i]
        if A.dim == m:
            I = A
        else:
            nxt = anns[i + 1]
            extra = []
            for b in nxt.basis:
                r = A.reduce(b)
                if any(r) and len(extra) < m - A.dim:
                    trial = Ideal.span(J, list(A.basis) + extra + [r])
                    if trial.dim > A.dim + len(extra):
                        extra.append(r)
            I = Ideal.span(J, list(A.basis) + extra)
        if I.dim != m or not I.is_two_sided():
            raise ValidationFailure(f"could not build an ideal of dimension {m}")
        N = AG.subgroup_of(I)
        if not is_s_normal(S, N):
            raise ValidationFailure(f"1 + I of order q^{m} is not S-normal")
        out.append((J.q**m, N, I))
    return out


def quotient_theory_matches(J: NilpotentAlgebra, I: Ideal) -> bool:
    """Whether the double-orbit theory of 1 + J/I is the quotient theory of S by 1 + I.

    Compared through the isomorphism gN -> 1 + (g - 1) + I.
    """
    from .groups import quotient_group
    from .structure import deflate_theory

    AG = algebra_group(J)
    S = double_orbit_sct(J)
    N = AG.subgroup_of(I)
    D = deflate_theory(S, N)
    Qalg, keep = quotient_algebra(J, I)
    T = double_orbit_sct(Qalg)
    if N.is_trivial():
        def phi(g: int) -> int:
            return Qalg.encode(tuple(J.decode(g)[c] for c in keep))
        mapped = {frozenset(phi(g) for g in b) for b in S.classes}
    else:
        _, qmap = quotient_group(AG.group, N)

        def phi(x: int) -> int:
            g = qmap.fiber.blocks[x][0]
            v = I.reduce(J.decode(g))
            return Qalg.encode(tuple(v[c] for c in keep))

        mapped = {frozenset(phi(x) for x in b) for b in D.classes}
    return mapped == {frozenset(b) for b in T.classes}


def s_normal_sets_closed(J: NilpotentAlgebra) -> list[tuple[int, bool]]:
    """For every S-normal 1 + M: whether M is closed under products and sums."""
    from .structure import s_normal_subgroups

    AG = algebra_group(J)
    S = double_orbit_sct(J)
    out = []
    for N in s_normal_subgroups(S):
        ms = set(N.members)
        ok = all(AG.mulJ[a][b] in ms and AG.add[a][b] in ms for a in ms for b in ms)
        out.append((N.order, ok))
    return out


# ---------------------------------------------------------------------------
# specs


SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


def builtin_algebra(name: str, n: int, q: int) -> dict[str, Any]:
    """Structure-constant spec; ``ut`` is strictly upper-triangular n x n matrices."""
    if name != "ut":
        raise InputError(f"unknown built-in algebra {name!r}")
    if n < 2:
        raise InputError("ut needs n >= 2")
    pk = _prime_power(q)
    if pk is None or q not in SUPPORTED_Q:
        raise UnsupportedField(f"q = {q} is not a supported field order {SUPPORTED_Q}")
    p, k = pk
    # e_ij for i < j, ordered by distance from the diagonal then by row
    units = sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda t: (t[1] - t[0], t[0]))
    pos = {u: t for t, u in enumerate(units)}
    d = len(units)
    sc = []
    for (i, j), a in pos.items():
        for (k2, l), b in pos.items():
            if j == k2:
                coords = [0] * d
                coords[pos[(i, l)]] = 1
                sc.append([a, b, coords])
    spec: dict[str, Any] = {"p": p, "k": k, "dim": d, "sc": sorted(sc)}
    if k > 1:
        from .fields import BUILTIN_MODULI

        spec["modulus"] = list(BUILTIN_MODULI[q][1])
    return spec


def algebra_from_spec(spec: dict[str, Any]) -> NilpotentAlgebra:
    try:
        p = int(spec["p"])
        k = int(spec.get("k", 1))
        dim = int(spec["dim"])
        entries = [(int(i), int(j), [int(c) for c in coords]) for i, j, coords in spec.get("sc", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed algebra spec: {exc}") from exc
    return build_algebra(p, k, dim, entries, spec.get("modulus"))


def parse_algebra_name(text: str) -> dict[str, Any]:
    """``ut:n:q`` to a spec."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"expected name:n:q, got {text!r}")
    try:
        return builtin_algebra(parts[0], int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_algebra(source: str) -> NilpotentAlgebra:
    """A built-in name such as ``ut:3:2`` or a path to a JSON spec."""
    if source.startswith("ut:"):
        return algebra_from_spec(parse_algebra_name(source))
    try:
        with open(source) as fh:
            return algebra_from_spec(json.load(fh))
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from exc


def algebra_to_spec(J: NilpotentAlgebra) -> dict[str, Any]:
    F = J.field
    sc = [[i, j, list(J.sc[i][j])] for i in range(J.dim) for j in range(J.dim) if any(J.sc[i][j])]
    spec: dict[str, Any] = {"p": F.p, "k": F.k, "dim": J.dim, "sc": sc}
    if F.k > 1:
        spec["modulus"] = list(F.modulus)
    return spec
