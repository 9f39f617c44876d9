"""Exact arithmetic in real quadratic fields Q(sqrt d) and trace spectral data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt


class FieldMismatchError(ValueError):
    """Two elements from different fields Q(sqrt d) were combined."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (inputs here stay below ~10^9)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [q * p**k for q in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = f^2 * d with d square-free; returns (f, d)."""
    if n < 1:
        raise ValueError("squarefree_decompose needs n >= 1")
    f, d = 1, 1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
        d *= p ** (e % 2)
    return f, d


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def _frac_json(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@total_ordering
@dataclass(frozen=True, slots=True)
class QuadElem:
    """x + y sqrt(d) with rational x, y."""

    x: Fraction
    y: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def rational(cls, q, d: int) -> QuadElem:
        return cls(Fraction(q), Fraction(0), d)

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise FieldMismatchError(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(
            self.x * o.x + self.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> QuadElem:
        return QuadElem(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadElem(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QuadElem:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadElem(Fraction(1), Fraction(0), self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of x + y sqrt d (no floating point)."""
        sx = (self.x > 0) - (self.x < 0)
        sy = (self.y > 0) - (self.y < 0)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: whichever term dominates in absolute value wins
        return sx if self.x * self.x > self.d * self.y * self.y else sy

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadElem):
            return self.x == other.x and self.y == other.y and self.d == other.d
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.d))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def is_rational(self) -> bool:
        return self.y == 0

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __float__(self) -> float:
        return float(self.x) + float(self.y) * self.d**0.5

    def __repr__(self) -> str:
        return f"QuadElem({self.x}, {self.y}, d={self.d})"

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        return f"{self.x}{'+' if self.y > 0 else '-'}{abs(self.y)}*sqrt({self.d})"

    def to_json(self) -> dict:
        return {"x": _frac_json(self.x), "y": _frac_json(self.y), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadElem:
        return cls(Fraction(obj["x"]), Fraction(obj["y"]), int(obj["d"]))


def _convergent_unit(p0: int, q0: int, d: int) -> tuple[int, int]:
    """Walk the continued fraction of (p0 + sqrt d)/q0 until a convergent p/q
    makes p - q * conj(alpha) a unit; returns (p, q).

    Complete quotients (P + sqrt d)/Q are tracked exactly; a repeated (P, Q)
    state marks the end of a period, by which time a unit must have appeared.
    """
    if (d - p0 * p0) % q0:
        raise ValueError("q0 must divide d - p0^2")
    sd = isqrt(d)
    P, Q = p0, q0
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    # conj(alpha) = (p0 - sqrt d)/q0, so p - q*conj(alpha) = (q0 p - q p0 + q sqrt d)/q0
    seen = set()
    while True:
        # Q > 0 throughout for these expansions, so floor((P + sqrt d)/Q) = (P + isqrt d) // Q
        a = (P + sd) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        num_x = q0 * p - q * p0
        norm = num_x * num_x - d * q * q
        if norm in (q0 * q0, -q0 * q0):
            return p, q
        state = (P, Q)
        if state in seen:
            raise ArithmeticError(f"no unit found in a full period for d={d}")
        seen.add(state)
        P = a * Q - P
        Q = (d - P * P) // Q


def fundamental_unit(d: int) -> QuadElem:
    """Smallest unit > 1 in the ring of integers of Q(sqrt d), d square-free >= 2."""
    if d < 2 or not is_squarefree(d):
        raise ValueError(f"d must be square-free and >= 2, got {d}")
    if d % 4 == 1:
        # ring of integers is Z[(1 + sqrt d)/2]
        p, q = _convergent_unit(1, 2, d)
        eps = QuadElem(Fraction(2 * p - q, 2), Fraction(q, 2), d)
    else:
        p, q = _convergent_unit(0, 1, d)
        eps = QuadElem(Fraction(p), Fraction(q), d)
    if eps.sign() < 0:
        eps = -eps
    if eps < 1:
        eps = eps.inverse()
    return eps


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalue data of trace-T matrices: T^2 - 4 = f^2 d, lam = eps^m."""

    T: int
    f: int
    d: int
    lam: QuadElem
    eps: QuadElem
    m: int

    @property
    def lam_inv(self) -> QuadElem:
        return self.lam.conj()

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "f": self.f,
            "d": self.d,
            "lambda": self.lam.to_json(),
            "eps": self.eps.to_json(),
            "m": self.m,
        }


_SPECTRAL_CACHE: dict[int, SpectralData] = {}


def spectral_of_trace(T: int) -> SpectralData:
    if T < 3:
        raise ValueError(f"trace must be > 2, got {T}")
    cached = _SPECTRAL_CACHE.get(T)
    if cached is not None:
        return cached
    f, d = squarefree_decompose(T * T - 4)
    lam = QuadElem(Fraction(T, 2), Fraction(f, 2), d)
    eps = fundamental_unit(d)
    power, m = eps, 1
    while power < lam:
        power = power * eps
        m += 1
    if power != lam:
        raise ArithmeticError(f"lambda is not a power of the fundamental unit for T={T}")
    data = SpectralData(T, f, d, lam, eps, m)
    _SPECTRAL_CACHE[T] = data
    return data
