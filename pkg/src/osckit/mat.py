"""Exact 2x2 integer matrices and the fixed generator matrices.

Entries are Python ints, so nothing overflows regardless of magnitude.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class NotUnimodularError(ValueError):
    """Raised when an inverse is needed but det is not +-1."""


@dataclass(frozen=True, order=True, slots=True)
class Mat2:
    """The matrix (a b; c d). Ordering is lexicographic on (a, b, c, d)."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: Mat2) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __pow__(self, n: int) -> Mat2:
        return unimodular_pow(self, n)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def scale(self, k: int) -> Mat2:
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def inverse(self) -> Mat2:
        det = self.det
        if det not in (1, -1):
            raise NotUnimodularError(f"{self} has determinant {det}")
        # det is its own inverse when it is +-1
        return Mat2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def apply(self, v):
        """Matrix-vector product; works for any ring elements supporting + and *."""
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return format_mat(self)


I2 = Mat2(1, 0, 0, 1)
A_HAT = Mat2(1, 1, 0, 1)
B_HAT = Mat2(1, 0, 1, 1)
U_HAT = Mat2(0, 1, 1, 0)
W_HAT = Mat2(0, -1, 1, 0)
R_HAT = Mat2(0, 1, -1, 0)
# generator of the hyperbolic one-parameter group e^{tA}; same entries as U_HAT
A_HYP = Mat2(0, 1, 1, 0)


def unimodular_pow(m: Mat2, n: int) -> Mat2:
    """Exact n-th power by repeated squaring; negative n needs det = +-1."""
    if n < 0:
        m = m.inverse()
        n = -n
    result = I2
    base = m
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def conjugate(m: Mat2, b: Mat2) -> Mat2:
    """Return m b m^-1 for unimodular m."""
    return m @ b @ m.inverse()


def hyperboloid_coords(b: Mat2) -> tuple[int, int, int]:
    """[K, D, S] = [a - d, b + c, c - b]; satisfies K^2 + D^2 - S^2 = T^2 - 4 when det b = 1."""
    return (b.a - b.d, b.b + b.c, b.c - b.b)


_MAT_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


def parse_mat(text: str) -> Mat2:
    """Parse the literal "a,b;c,d" (spaces allowed)."""
    m = _MAT_RE.match(text)
    if m is None:
        raise ValueError(f"not a matrix literal 'a,b;c,d': {text!r}")
    return Mat2(*(int(g) for g in m.groups()))


def format_mat(m: Mat2) -> str:
    return f"{m.a},{m.b};{m.c},{m.d}"


def in_BT(b: Mat2, T: int | None = None) -> bool:
    """det 1 and trace > 2 (and equal to T if given)."""
    if b.det != 1 or b.trace <= 2:
        return False
    return T is None or b.trace == T
