"""Symmetry group S(B) and reversing symmetry group R(B) of a trace-T matrix.

S(B) = {+-G^q} where G is the integral root of B of largest index inside the
centraliser {x I + y B}; R(B) adds one reversing symmetry R with R B R^-1 = B^-1
when B is reversible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import (
    cycle_bar,
    cycle_of,
    in_H0_red,
    path_conjugator,
    reduce_to_cycle,
)
from .mat import I2, U_HAT, W_HAT, Mat2, conjugate, format_mat, in_BT
from .quad import divisors, spectral_of_trace


class VerificationError(AssertionError):
    """An internally computed witness failed its exact check (a bug, not data)."""


@dataclass(frozen=True)
class SymmetryData:
    B: Mat2
    G: Mat2
    j: int
    reversible: bool
    R: Mat2 | None

    def generators(self) -> list[Mat2]:
        gens = [-I2, self.G]
        if self.R is not None:
            gens.append(self.R)
        return gens

    def to_json(self) -> dict:
        return {
            "generator": format_mat(self.G),
            "root_index": self.j,
            "reversible": self.reversible,
            "reversing": format_mat(self.R) if self.R is not None else None,
        }


def _centralizer_element(b: Mat2, mu, lam) -> Mat2 | None:
    # G = x I + y B with eigenvalue mu on the lam-eigenvector of B
    diff = mu - mu.conj()
    y = diff / (lam - lam.conj())
    x = mu - y * lam
    if not (x.is_rational() and y.is_rational()):
        raise ArithmeticError("centraliser coefficients left Q")
    x, y = x.x, y.x
    entries = [x + y * b.a, y * b.b, y * b.c, x + y * b.d]
    if any(Fraction(e).denominator != 1 for e in entries):
        return None
    return Mat2(*(int(e) for e in entries))


def symmetry_generator(b: Mat2) -> tuple[Mat2, int]:
    """(G, j): G generates S(B) together with -I, and G^j = B."""
    if not in_BT(b):
        raise ValueError(f"{b} needs det 1 and trace > 2")
    sp = spectral_of_trace(b.trace)
    for j in sorted(divisors(sp.m), reverse=True):
        g = _centralizer_element(b, sp.eps ** (sp.m // j), sp.lam)
        if g is not None:
            if g.trace < 0:
                g = -g
            if g**j != b:
                raise VerificationError(f"G^{j} != B for B={b}")
            return g, j
    raise VerificationError("j = 1 must always give G = B")


def normalize_sign(m: Mat2) -> Mat2:
    """Pick the sign of +-m whose (c, d) is lexicographically positive."""
    return m if (m.c, m.d) > (0, 0) else -m


def reversing_symmetry(b: Mat2) -> Mat2 | None:
    """A reversing symmetry of b in H0_red, read off from the cycles z and zbar."""
    if not in_H0_red(b):
        raise ValueError(f"{b} is not in H0_red")
    z = cycle_of(b)
    bt = b.transpose()
    winv = W_HAT.inverse()
    if bt in z:
        r = winv @ path_conjugator(z, b, bt)
    else:
        zb = cycle_bar(z)
        if bt not in zb:
            return None
        r = winv @ path_conjugator(zb, conjugate(U_HAT, b), bt) @ U_HAT
    if r @ b @ r.inverse() != b.inverse():
        raise VerificationError(f"R={r} does not reverse B={b}")
    return normalize_sign(r)


def symmetry_data(b: Mat2) -> SymmetryData:
    """Generators of R(B) for any B of det 1 and trace > 2, in B's own frame."""
    g, j = symmetry_generator(b)
    rep, conj = reduce_to_cycle(b)
    r_rep = reversing_symmetry(rep)
    r = None
    if r_rep is not None:
        r = normalize_sign(conj.inverse() @ r_rep @ conj)
        if r @ b @ r.inverse() != b.inverse():
            raise VerificationError(f"transported R={r} does not reverse B={b}")
    return SymmetryData(b, g, j, r is not None, r)


def reversing_group(b: Mat2) -> list[Mat2]:
    """Generator list [-I, G, (R)] of R(B)."""
    return symmetry_data(b).generators()


def is_reversible(b: Mat2) -> bool:
    return symmetry_data(b).reversible
