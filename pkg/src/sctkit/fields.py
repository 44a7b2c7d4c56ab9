"""Small finite fields F_q = F_p[t]/(f) as lookup tables.

An element is an integer 0 <= x < q standing for the polynomial
sum c_i t^i with x = sum c_i p^i.  Everything is precomputed, which is
fine for the desk-scale fields used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BadField, UnsupportedField

# monic irreducible moduli, lowest degree first
BUILTIN_MODULI = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (1, 0, 1)),
}


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def _prime_power(q: int) -> Optional[tuple[int, int]]:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    add: tuple = field(repr=False)
    mul: tuple = field(repr=False)
    neg: tuple = field(repr=False)
    inv: tuple = field(repr=False)
    trace: tuple = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def from_prime(self, c: int) -> int:
        return c % self.p

    def digits(self, x: int) -> list[int]:
        return _digits(x, self.p, self.k)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"


def make_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FiniteField:
    """Build F_{p^k}.  ``modulus`` is a monic degree-k polynomial, lowest degree first."""
    if not _is_prime(p):
        raise BadField(f"characteristic {p} is not prime")
    if k < 1:
        raise BadField(f"degree must be positive, got {k}")
    if k == 1:
        mod = (0, 1)
    else:
        if modulus is None:
            entry = BUILTIN_MODULI.get(p**k)
            if entry is None:
                raise UnsupportedField(f"no built-in modulus for q = {p}^{k}; supply one")
            modulus = entry[1]
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise BadField(f"modulus must be monic of degree {k}")
    q = p**k

    def polymul(a: int, b: int) -> int:
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for j in range(k + 1):
                    prod[top - k + j] = (prod[top - k + j] - c * mod[j]) % p
        return _undigits(prod[:k], p)

    add = tuple(
        tuple(_undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p) for b in range(q))
        for a in range(q)
    )
    mul = tuple(tuple(polymul(a, b) for b in range(q)) for a in range(q))
    neg = tuple(_undigits([(-x) % p for x in _digits(a, p, k)], p) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        row = mul[a]
        hits = [b for b in range(1, q) if row[b] == 1]
        if len(hits) != 1:
            raise BadField(f"modulus {list(mod)} is reducible: {a} has no inverse")
        inv[a] = hits[0]
    trace = []
    for a in range(q):
        s, x = 0, a
        for _ in range(k):
            s = add[s][x]
            y = 1
            for _ in range(p):
                y = mul[y][x]
            x = y
        if s >= p:
            raise BadField("trace left the prime field")
        trace.append(s)
    return FiniteField(p, k, mod, add, mul, neg, tuple(inv), tuple(trace))


def field_of_order(q: int, modulus: Optional[Sequence[int]] = None) -> FiniteField:
    pk = _prime_power(q)
    if pk is None:
        raise UnsupportedField(f"{q} is not a prime power")
    return make_field(pk[0], pk[1], modulus)


def check_field_axioms(F: FiniteField) -> bool:
    """Exhaustive check of the field axioms (intended for q <= 16)."""
    q = F.q
    A, M = F.add, F.mul
    for a in range(q):
        if A[a][0] != a or M[a][1] != a or A[a][F.neg[a]] != 0:
            return False
        if a and M[a][F.inv[a]] != 1:
            return False
        for b in range(q):
            if A[a][b] != A[b][a] or M[a][b] != M[b][a]:
                return False
            for c in range(q):
                if A[A[a][b]][c] != A[a][A[b][c]] or M[M[a][b]][c] != M[a][M[b][c]]:
                    return False
                if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                    return False
    return True
