"""Exact irreducible character tables and class-function operations.

The table is computed with the Dixon method: the class-sum structure
constants give commuting integer matrices whose common eigenvectors are the
central characters.  Those are found modulo a prime ``p = 1 (mod exponent)``
and every character value is then lifted to an exact cyclotomic number from
the eigenvalue multiplicities of the powers of each class representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic, ONE, ZERO
from .errors import (
    GroupMismatch,
    KernelDoesNotContainN,
    NotACharacter,
    NotASubgroup,
    NotClassClosed,
    OrderCapExceeded,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Partition,
    QuotientMap,
    Subgroup,
    conjugacy_classes,
    subgroup_as_group,
    subgroup_from_mask,
)


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """A class function, stored as one value per conjugacy class of ``group``."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[conjugacy_classes(self.group).block_of[g]]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def _check(self, other: "ClassFunction") -> None:
        if other.group is not self.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    __radd__ = __add__

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return ClassFunction(self.group, tuple(-a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.group, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __truediv__(self, q):
        return ClassFunction(self.group, tuple(a / q for a in self.values))

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(a.conjugate() for a in self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.group), self.values))

    def __repr__(self) -> str:
        return f"ClassFunction({list(self.values)})"

    def as_element_values(self) -> list[Cyclotomic]:
        cls = conjugacy_classes(self.group)
        return [self.values[cls.block_of[g]] for g in range(self.group.order)]


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    irreducibles: tuple[ClassFunction, ...]
    class_sizes: tuple[int, ...]
    class_reps: tuple[int, ...]
    exponent: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def classes(self) -> Partition:
        return conjugacy_classes(self.group)

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(chi.degree.to_fraction()) for chi in self.irreducibles)

    def trivial(self) -> ClassFunction:
        return self.irreducibles[0]

    def multiplicities(self, f: ClassFunction) -> tuple[Cyclotomic, ...]:
        """Inner products of ``f`` with every irreducible."""
        if f.group is not self.group:
            raise GroupMismatch("class function is not on this table's group")
        conj = self._cache.get("weighted_conj")
        if conj is None:
            n = self.group.order
            conj = [
                [chi.values[c].conjugate() * Fraction(self.class_sizes[c], n) for c in range(len(self.class_sizes))]
                for chi in self.irreducibles
            ]
            self._cache["weighted_conj"] = conj
        out = []
        for row in conj:
            s = ZERO
            for a, b in zip(f.values, row):
                if a:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def decompose(self, f: ClassFunction) -> tuple[Fraction, ...]:
        """Rational multiplicities of the irreducibles in ``f``; raises if not rational."""
        out = []
        for m in self.multiplicities(f):
            q = m.lift_free_rational()
            if q is None:
                raise NotACharacter(f"non-rational multiplicity {m}")
            out.append(q)
        return tuple(out)

    def constituents(self, f: ClassFunction) -> frozenset[int]:
        return frozenset(i for i, m in enumerate(self.decompose(f)) if m != 0)

    def is_character(self, f: ClassFunction) -> bool:
        try:
            return all(m >= 0 and m.denominator == 1 for m in self.decompose(f))
        except NotACharacter:
            return False

    def to_json(self) -> dict:
        e = self.exponent
        return {
            "conductor": e,
            "class_sizes": list(self.class_sizes),
            "class_reps": list(self.class_reps),
            "characters": [[[str(c) for c in v.coeffs_at(e)] for v in chi.values] for chi in self.irreducibles],
        }


# ---------------------------------------------------------------------------
# modular linear algebra for the eigenvector search


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def dixon_prime(order: int, exponent: int, max_class: int) -> int:
    bound = 2 * (isqrt(order - 1) + 1 if order > 1 else 1) * max_class
    p = (bound // exponent + 1) * exponent + 1
    while not _is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    m, factors, f = p - 1, [], 2
    while f * f <= m:
        if m % f == 0:
            factors.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {y : A y = 0} over F_p."""
    m = len(A[0])
    R, pivots = _rref(A, p)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        y = [0] * m
        y[f] = 1
        for row, pc in zip(R, pivots):
            y[pc] = -row[f] % p
        basis.append(y)
    return basis


def _charpoly(A: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (lowest degree first) via Hessenberg reduction."""
    n = len(A)
    H = [row[:] for row in A]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j] % p), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(H[j + 1][j], p - 2, p)
        for i in range(j + 2, n):
            f = H[i][j] * inv % p
            if f:
                H[i] = [(x - f * y) % p for x, y in zip(H[i], H[j + 1])]
                for row in H:
                    row[j + 1] = (row[j + 1] + f * row[i]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik * prod h * p_{i-1}
        prev = polys[k - 1]
        cur = [0] + prev[:]
        for t, c in enumerate(prev):
            cur[t] = (cur[t] - H[k - 1][k - 1] * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            coef = prod * H[i - 1][k - 1] % p
            if coef:
                for t, c in enumerate(polys[i - 1]):
                    cur[t] = (cur[t] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly: list[int], p: int) -> list[int]:
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _split_space(basis: list[list[int]], M: list[list[int]], p: int) -> list[list[list[int]]]:
    """Split the M-invariant span of ``basis`` into eigenspaces of M."""
    R, pivots = _rref(basis, p)
    m = len(R)
    k = len(M)
    MB = [[sum(M[s][t] * v[t] for t in range(k)) % p for s in range(k)] for v in R]
    # restricted matrix A with A[i][j] = coordinate i of M v_j
    A = [[MB[j][pivots[i]] for j in range(m)] for i in range(m)]
    pieces = []
    for lam in _roots(_charpoly(A, p), p):
        shifted = [[(A[i][j] - (lam if i == j else 0)) % p for j in range(m)] for i in range(m)]
        for y in [_nullspace(shifted, p)]:
            vecs = [[sum(y_i * R[i][t] for i, y_i in enumerate(yy)) % p for t in range(k)] for yy in y]
            if vecs:
                pieces.append(vecs)
    if sum(len(v) for v in pieces) != m:
        raise ArithmeticError("class algebra did not diagonalize modulo p")
    return pieces


def character_table(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> CharacterTable:
    if "char_table" in G._cache:
        return G._cache["char_table"]
    n = G.order
    if n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds the cap {cap}")
    cls = conjugacy_classes(G)
    k = len(cls)
    sizes = [len(b) for b in cls.blocks]
    reps = [b[0] for b in cls.blocks]
    e = G.exponent
    p = dixon_prime(n, e, max(sizes))
    inv_class = [cls.block_of[G.inv[r]] for r in reps]

    mats = []
    for r in range(1, k):
        M = [[0] * k for _ in range(k)]
        for x in cls.blocks[r]:
            xi = G.inv[x]
            for t in range(k):
                M[cls.block_of[G.mult[xi][reps[t]]]][t] += 1
        mats.append(M)

    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for M in mats:
        if all(len(V) == 1 for V in spaces):
            break
        nxt = []
        for V in spaces:
            nxt.extend([V] if len(V) == 1 else _split_space(V, M, p))
        spaces = nxt
    if len(spaces) != k:
        raise ArithmeticError("central characters were not separated modulo p")

    z = pow(_primitive_root(p), (p - 1) // e, p)
    pow_class = [[cls.block_of[G.power(r, l)] for l in range(e)] for r in reps]
    inv_e = pow(e, p - 2, p)
    chars = []
    for (w,) in spaces:
        w0 = pow(w[0], p - 2, p)
        w = [x * w0 % p for x in w]
        s = sum(w[c] * w[inv_class[c]] * pow(sizes[c], p - 2, p) for c in range(k)) % p
        d2 = n * pow(s, p - 2, p) % p
        d = next(d for d in range(1, isqrt(n) + 1) if d * d % p == d2)
        modp = [w[c] * d * pow(sizes[c], p - 2, p) % p for c in range(k)]
        values = []
        for c in range(k):
            counts = []
            for j in range(e):
                acc = 0
                for l in range(e):
                    acc += modp[pow_class[c][l]] * pow(z, (-j * l) % e, p)
                m = acc * inv_e % p
                if m > d:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                counts.append(m)
            values.append(Cyclotomic.from_exponent_counts(e, counts))
        chars.append(ClassFunction(G, tuple(values)))

    def sort_key(chi: ClassFunction):
        deg = chi.values[0].to_fraction()
        trivial = all(v == ONE for v in chi.values)
        return (deg, not trivial, tuple(v.coeffs_at(e) for v in chi.values))

    chars.sort(key=sort_key)
    table = CharacterTable(G, tuple(chars), tuple(sizes), tuple(reps), e)
    if sum(d * d for d in table.degrees) != n:
        raise ArithmeticError("degree sum check failed")
    G._cache["char_table"] = table
    return table


# ---------------------------------------------------------------------------
# class-function operations


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, tuple(ONE for _ in conjugacy_classes(G).blocks))


def regular_character(G: FiniteGroup) -> ClassFunction:
    k = len(conjugacy_classes(G))
    return ClassFunction(G, (Cyclotomic.rational(G.order),) + tuple(ZERO for _ in range(k - 1)))


def class_function_from_element_values(G: FiniteGroup, values: Sequence[Cyclotomic]) -> ClassFunction:
    cls = conjugacy_classes(G)
    for b in cls.blocks:
        if any(values[g] != values[b[0]] for g in b[1:]):
            raise NotClassClosed(f"values are not constant on the class of {b[0]}")
    return ClassFunction(G, tuple(Cyclotomic.coerce(values[b[0]]) for b in cls.blocks))


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    if a.group is not b.group:
        raise GroupMismatch("class functions live on different groups")
    sizes = [len(bl) for bl in conjugacy_classes(a.group).blocks]
    s = ZERO
    for size, x, y in zip(sizes, a.values, b.values):
        if x and y:
            s = s + x * y.conjugate() * size
    return s / a.group.order


def restrict(chi: ClassFunction, N: Subgroup) -> ClassFunction:
    if N.parent is not chi.group:
        raise NotASubgroup("subgroup does not belong to the character's group")
    H, emb = subgroup_as_group(N)
    if H is chi.group:
        return chi
    return ClassFunction(H, tuple(chi(emb[b[0]]) for b in conjugacy_classes(H).blocks))


def induce(psi: ClassFunction, N: Subgroup) -> ClassFunction:
    """Induce ``psi`` (a class function on ``N`` viewed as a group) up to ``N.parent``."""
    G = N.parent
    H, emb = subgroup_as_group(N)
    if psi.group is not H:
        raise NotASubgroup("class function is not defined on this subgroup")
    pos = {g: i for i, g in enumerate(emb)}
    values = []
    for b in conjugacy_classes(G).blocks:
        g = b[0]
        s = ZERO
        for t in range(G.order):
            x = G.conj(g, t)
            if x in N:
                s = s + psi(pos[x])
        values.append(s / N.order)
    return ClassFunction(G, tuple(values))


def kernel_mask(chi: ClassFunction) -> int:
    d = chi.degree
    mask = 0
    for b, v in zip(conjugacy_classes(chi.group).blocks, chi.values):
        if v == d:
            for g in b:
                mask |= 1 << g
    return mask


def deflate(chi: ClassFunction, q: QuotientMap) -> ClassFunction:
    if q.source is not chi.group:
        raise GroupMismatch("quotient map does not start at the character's group")
    if q.kernel.mask & ~kernel_mask(chi):
        raise KernelDoesNotContainN("the normal subgroup is not inside the kernel")
    Q = q.target
    return ClassFunction(Q, tuple(chi(q.fiber.blocks[b[0]][0]) for b in conjugacy_classes(Q).blocks))


def inflate(psi: ClassFunction, q: QuotientMap) -> ClassFunction:
    if psi.group is not q.target:
        raise GroupMismatch("class function is not on the quotient")
    return ClassFunction(q.source, tuple(psi(q.image_of[b[0]]) for b in conjugacy_classes(q.source).blocks))


def _require_character(chi: ClassFunction) -> None:
    if not character_table(chi.group).is_character(chi):
        raise NotACharacter("not a non-negative integer combination of irreducibles")


def kernel(chi: ClassFunction) -> Subgroup:
    _require_character(chi)
    return subgroup_from_mask(chi.group, kernel_mask(chi))


def character_center(chi: ClassFunction) -> Subgroup:
    _require_character(chi)
    d2 = chi.degree * chi.degree
    mask = 0
    for b, v in zip(conjugacy_classes(chi.group).blocks, chi.values):
        if v.abs2() == d2:
            for g in b:
                mask |= 1 << g
    return subgroup_from_mask(chi.group, mask)


def central_character(chi: ClassFunction, K: Iterable[int]) -> Cyclotomic:
    """omega_chi of the class sum of ``K`` (a union of conjugacy classes)."""
    ks = set(K)
    cls = conjugacy_classes(chi.group)
    for g in ks:
        if not set(cls.block(g)) <= ks:
            raise NotClassClosed(f"the class of {g} is not contained in the set")
    s = ZERO
    for b, v in zip(cls.blocks, chi.values):
        if b[0] in ks:
            s = s + v * len(b)
    return s / chi.degree
