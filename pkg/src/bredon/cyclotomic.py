"""Exact arithmetic in cyclotomic fields Q(ζ_n).

A value is stored at some conductor ``n`` as rational coefficients over the
power basis ``1, ζ, …, ζ^(φ(n)-1)`` (i.e. reduced modulo the n-th cyclotomic
polynomial), so equality at a fixed conductor is coefficient equality.
Values of different conductors are compared by lifting to the lcm.
``canonical()`` additionally reduces to the smallest conductor that holds
the value, which is what hashing and ordering use.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // lead
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_reductions(n: int) -> tuple[tuple[int, ...], ...]:
    """Coefficients of ζ_n^k in the power basis, for k = 0..n-1."""
    phi = totient(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x, then reduce x^phi using the monic Φ_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * poly[j]
    return tuple(rows)


def _normalize(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Cyclotomic:
    """An element of Q(ζ_n); immutable."""

    __slots__ = ("n", "coeffs", "_canon")

    def __init__(self, n: int, coeffs: Iterable[Rational]):
        coeffs = tuple(_normalize(c) for c in coeffs)
        if len(coeffs) != totient(n):
            raise ValueError(f"expected {totient(n)} coefficients for conductor {n}")
        self.n = n
        self.coeffs = coeffs
        self._canon = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_exponent_sum(cls, n: int, terms: dict[int, Rational] | Iterable[tuple[int, Rational]]) -> "Cyclotomic":
        """Σ c_k ζ_n^k from ``{k: c_k}`` (exponents taken mod n)."""
        red = _power_reductions(n)
        acc = [0] * totient(n)
        items = terms.items() if isinstance(terms, dict) else terms
        for k, c in items:
            if not c:
                continue
            row = red[k % n]
            for j, r in enumerate(row):
                if r:
                    acc[j] += c * r
        return cls(n, acc)

    @classmethod
    def rational(cls, q: Rational) -> "Cyclotomic":
        return cls(1, (q,))

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls.from_exponent_sum(n, {k: 1})

    # -- conductor handling -------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """The same value written at conductor ``m`` (a multiple of ``n``)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {m} is not a multiple of {self.n}")
        step = m // self.n
        return Cyclotomic.from_exponent_sum(m, ((i * step, c) for i, c in enumerate(self.coeffs)))

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.n == other.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def canonical(self) -> "Cyclotomic":
        """Rewrite at the smallest conductor whose field contains the value."""
        if self._canon is not None:
            return self._canon
        result = self
        if self.is_rational():
            result = Cyclotomic(1, (self.coeffs[0],))
        else:
            for d in sorted(d for d in range(2, self.n) if self.n % d == 0):
                sub = self._restrict_to(d)
                if sub is not None:
                    result = sub
                    break
        self._canon = result
        return result

    def _restrict_to(self, d: int) -> "Cyclotomic | None":
        """Solve for coefficients at conductor d, or None if the value is not in Q(ζ_d)."""
        step = self.n // d
        red = _power_reductions(self.n)
        phi_d = totient(d)
        # columns: images of ζ_d^i = ζ_n^(i*step) in the Q(ζ_n) power basis
        cols = [red[(i * step) % self.n] for i in range(phi_d)]
        rows = len(self.coeffs)
        aug = [[Fraction(cols[i][r]) for i in range(phi_d)] + [Fraction(self.coeffs[r])]
               for r in range(rows)]
        pivots = []
        r = 0
        for c in range(phi_d):
            p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            pv = aug[r][c]
            aug[r] = [v / pv for v in aug[r]]
            for i in range(rows):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        if any(aug[i][phi_d] != 0 for i in range(r, rows)):
            return None
        sol = [Fraction(0)] * phi_d
        for i, c in enumerate(pivots):
            sol[c] = aug[i][phi_d]
        return Cyclotomic(d, sol)

    # -- predicates ----------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and isinstance(self.coeffs[0], int)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        a, b = self._common(other)
        return Cyclotomic(a.n, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, (-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            if other == 0:
                return Cyclotomic(self.n, [0] * totient(self.n))
            return Cyclotomic(self.n, (c * other for c in self.coeffs))
        a, b = self._common(other)
        if b.is_rational():
            return a * b.coeffs[0]
        if a.is_rational():
            return b * a.coeffs[0]
        n = a.n
        terms: dict[int, Rational] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    terms[i + j] = terms.get(i + j, 0) + x * y
        return Cyclotomic.from_exponent_sum(n, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise TypeError("division only by rationals is supported")
            other = other.coeffs[0]
        q = Fraction(other)
        return Cyclotomic(self.n, (Fraction(c) / q for c in self.coeffs))

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate (ζ -> ζ^-1)."""
        return self.galois(-1)

    def galois(self, a: int) -> "Cyclotomic":
        """Apply ζ -> ζ^a (a coprime to the conductor)."""
        if math.gcd(a, self.n) != 1:
            raise ValueError(f"{a} is not a unit mod {self.n}")
        return Cyclotomic.from_exponent_sum(self.n, ((i * a, c) for i, c in enumerate(self.coeffs)))

    # -- comparison --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and self.coeffs[0] == other
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        c = self.canonical()
        if c.n == 1:
            return hash(c.coeffs[0])
        return hash((c.n, c.coeffs))

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum((complex(float(c)) * z ** i for i, c in enumerate(self.coeffs) if c), 0j)

    def sort_key(self) -> tuple[float, float]:
        """Descending real part, then descending imaginary part.

        Used only to order characters for display and basis layout; the
        rounding never feeds back into arithmetic.
        """
        z = complex(self)
        return (-round(z.real, 9) + 0.0, -round(z.imag, 9) + 0.0)

    def __repr__(self):
        return f"Cyclotomic({self.n}, {list(self.coeffs)})"

    def __str__(self):
        c = self.canonical()
        if c.n == 1:
            return str(c.coeffs[0])
        parts = []
        for i, v in enumerate(c.coeffs):
            if not v:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if i == 0:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{v}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ")
        return f"{body} (z=E({c.n}))"
