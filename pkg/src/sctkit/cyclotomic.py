"""Exact arithmetic in cyclotomic fields Q(zeta_e).

An element is a rational polynomial in ``zeta_e`` reduced modulo the e-th
cyclotomic polynomial, so it is stored as ``phi(e)`` Fraction coefficients.
Binary operations lift both operands to the lcm of their conductors.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, lowest degree first."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in _divisors(e)[:-1]:
        num = _exact_divide(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "non-exact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _power_table(e: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of x^j mod Phi_e for 0 <= j < 2e."""
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(2 * e + 1):
        rows.append(tuple(cur))
        # multiply by x: shift, then fold the top coefficient using Phi monic
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(deg):
                cur[k] -= top * phi[k]
    return tuple(rows)


def _reduce(e: int, poly: Sequence[Number]) -> tuple[Fraction, ...]:
    table = _power_table(e)
    deg = euler_phi(e)
    out = [Fraction(0)] * deg
    for j, c in enumerate(poly):
        if c:
            row = table[j % e]
            for k in range(deg):
                if row[k]:
                    out[k] += c * row[k]
    return tuple(out)


@lru_cache(maxsize=None)
def _trace_weights(e: int) -> tuple[Fraction, ...]:
    w = []
    for j in range(euler_phi(e)):
        m = e // gcd(j, e)
        w.append(Fraction(mobius(m), euler_phi(m)))
    return tuple(w)


class Cyclotomic:
    """An element of Q(zeta_conductor)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Number]):
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) != euler_phi(conductor):
            c = _reduce(conductor, c)
        self.conductor = conductor
        self.coeffs = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, q: Number) -> "Cyclotomic":
        return cls(1, (q,))

    @classmethod
    def zeta(cls, e: int, k: int = 1) -> "Cyclotomic":
        return cls.from_exponent_counts(e, {k % e: 1})

    @classmethod
    def from_exponent_counts(cls, e: int, counts: dict[int, Number] | Sequence[Number]) -> "Cyclotomic":
        """Sum of ``counts[j] * zeta_e^j``."""
        poly = [Fraction(0)] * e
        items = counts.items() if isinstance(counts, dict) else enumerate(counts)
        for j, c in items:
            poly[j % e] += c
        return cls(e, _reduce(e, poly))

    @staticmethod
    def coerce(x: "Cyclotomic | Number") -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return Cyclotomic.rational(x)

    # -- structure --------------------------------------------------------
    def lift(self, e: int) -> "Cyclotomic":
        if e == self.conductor:
            return self
        if e % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {e}")
        step = e // self.conductor
        poly = [Fraction(0)] * (step * len(self.coeffs))
        for j, c in enumerate(self.coeffs):
            poly[j * step] = c
        return Cyclotomic(e, _reduce(e, poly))

    def coeffs_at(self, e: int) -> tuple[Fraction, ...]:
        return self.lift(e).coeffs

    def _pair(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other)
        e = lcm(self.conductor, other.conductor)
        return self.lift(e), other.lift(e)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._pair(other)
        return Cyclotomic(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        return self + (-Cyclotomic.coerce(other))

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, tuple(x * other for x in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        n = len(a.coeffs)
        poly = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        poly[i + j] += x * y
        return Cyclotomic(a.conductor, _reduce(a.conductor, poly))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            q = other.lift_free_rational()
            if q is None:
                raise TypeError("division only by rational cyclotomics is supported")
            other = q
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero")
        q = Fraction(1) / Fraction(other)
        return self * q

    def conjugate(self) -> "Cyclotomic":
        e = self.conductor
        poly = [Fraction(0)] * e
        for j, c in enumerate(self.coeffs):
            poly[(-j) % e] += c
        return Cyclotomic(e, _reduce(e, poly))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k (k coprime to the conductor)."""
        e = self.conductor
        poly = [Fraction(0)] * e
        for j, c in enumerate(self.coeffs):
            poly[(j * k) % e] += c
        return Cyclotomic(e, _reduce(e, poly))

    def abs2(self) -> "Cyclotomic":
        return self * self.conjugate()

    # -- predicates -------------------------------------------------------
    def is_rational(self) -> bool:
        return self.lift_free_rational() is not None

    def lift_free_rational(self) -> Fraction | None:
        # rational iff fixed by every Galois automorphism; then it equals its normalized trace
        t = self.normalized_trace()
        return t if self == Cyclotomic.rational(t) else None

    def to_fraction(self) -> Fraction:
        q = self.lift_free_rational()
        if q is None:
            raise ValueError(f"{self} is not rational")
        return q

    def is_integer(self) -> bool:
        q = self.lift_free_rational()
        return q is not None and q.denominator == 1

    def normalized_trace(self) -> Fraction:
        return sum((c * w for c, w in zip(self.coeffs, _trace_weights(self.conductor))), Fraction(0))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # both quantities are invariant under lifting to a larger conductor
        return hash((self.normalized_trace(), self.abs2().normalized_trace()))

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return complex(sum(float(c) * z**j for j, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        q = self.lift_free_rational()
        if q is not None:
            return str(q)
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "1" if j == 0 else (f"z{self.conductor}" if j == 1 else f"z{self.conductor}^{j}")
            if j and c == 1:
                terms.append(mon)
            elif j and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}" if j == 0 else f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)
