"""The continuous split oscillator group over Q(sqrt d) and its lattices.

Elements are (z, xi, k s) with e^s = lambda the dominant eigenvalue of a trace-T
matrix, so every coordinate stays in Q(sqrt d).  The product is

    (z, xi, t)(z', xi', t') = (z + z' + w(xi, e^{tA} xi')/2, xi + e^{tA} xi', t + t')

with w(x, y) = x1 y2 - y1 x2 and A = (0 1; 1 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classify import GroupRep
from .mat import Mat2
from .quad import QuadElem, spectral_of_trace
from .symmetry import VerificationError

Q = Fraction


# -- 2x2 matrices over Q(sqrt d) ---------------------------------------------------


@dataclass(frozen=True)
class QMat2:
    a: QuadElem
    b: QuadElem
    c: QuadElem
    d: QuadElem

    @classmethod
    def from_int(cls, m: Mat2, d: int) -> QMat2:
        return cls(*(QuadElem.rational(e, d) for e in m.entries()))

    @property
    def field(self) -> int:
        return self.a.d

    def __matmul__(self, o: QMat2) -> QMat2:
        return QMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def scale(self, s) -> QMat2:
        return QMat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self) -> QuadElem:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> QMat2:
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix over Q(sqrt d)")
        inv = det.inverse()
        return QMat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def is_integral(self) -> bool:
        return all(e.is_rational() and e.x.denominator == 1 for e in self.entries())

    def to_int(self) -> Mat2:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return Mat2(*(int(e.x) for e in self.entries()))

    def entries(self) -> tuple[QuadElem, QuadElem, QuadElem, QuadElem]:
        return (self.a, self.b, self.c, self.d)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries()]

    @classmethod
    def from_json(cls, obj: list) -> QMat2:
        return cls(*(QuadElem.from_json(e) for e in obj))


def omega(u, v) -> QuadElem:
    return u[0] * v[1] - v[0] * u[1]


def _qvec(v, d: int):
    return tuple(e if isinstance(e, QuadElem) else QuadElem.rational(e, d) for e in v)


def _vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _vneg(u):
    return (-u[0], -u[1])


@lru_cache(maxsize=1024)
def exp_sA(T: int, k: int) -> QMat2:
    """e^{k s A} = (ch, sh; sh, ch) with ch, sh = (lambda^k +- lambda^-k)/2."""
    lam = spectral_of_trace(T).lam
    lk = lam**k
    lki = lk.inverse()
    ch = (lk + lki) * Q(1, 2)
    sh = (lk - lki) * Q(1, 2)
    return QMat2(ch, sh, sh, ch)


# -- group elements ---------------------------------------------------------------


@dataclass(frozen=True)
class ContOsc:
    """(zc, xi, k s) in the trace-T context."""

    T: int
    zc: QuadElem
    xi: tuple[QuadElem, QuadElem]
    k: int

    @classmethod
    def make(cls, T: int, zc, xi, k: int = 0) -> ContOsc:
        d = spectral_of_trace(T).d
        zc = zc if isinstance(zc, QuadElem) else QuadElem.rational(zc, d)
        return cls(T, zc, _qvec(xi, d), k)

    @classmethod
    def identity(cls, T: int) -> ContOsc:
        return cls.make(T, 0, (0, 0), 0)

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "z": self.zc.to_json(),
            "xi": [e.to_json() for e in self.xi],
            "k": self.k,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ContOsc:
        return cls(
            int(obj["T"]),
            QuadElem.from_json(obj["z"]),
            tuple(QuadElem.from_json(e) for e in obj["xi"]),
            int(obj["k"]),
        )


def cont_mul(g: ContOsc, h: ContOsc) -> ContOsc:
    if g.T != h.T:
        raise ValueError(f"elements from trace contexts {g.T} and {h.T}")
    ehx = exp_sA(g.T, g.k).apply(h.xi)
    return ContOsc(g.T, g.zc + h.zc + omega(g.xi, ehx) * Q(1, 2), _vadd(g.xi, ehx), g.k + h.k)


def cont_inv(g: ContOsc) -> ContOsc:
    return ContOsc(g.T, -g.zc, _vneg(exp_sA(g.T, -g.k).apply(g.xi)), -g.k)


def cont_pow(g: ContOsc, n: int) -> ContOsc:
    if n < 0:
        g, n = cont_inv(g), -n
    out = ContOsc.identity(g.T)
    base = g
    while n:
        if n & 1:
            out = cont_mul(out, base)
        base = cont_mul(base, base)
        n >>= 1
    return out


def cont_prod(*elems: ContOsc) -> ContOsc:
    out = ContOsc.identity(elems[0].T)
    for e in elems:
        out = cont_mul(out, e)
    return out


# -- Gamma_r and B_r --------------------------------------------------------------


def gamma_r_contains(r: int, z, xi) -> bool:
    """(z, xi) in Gamma_r: xi integral and z in xi1 xi2 / 2 + (1/r) Z."""
    z = Q(z)
    x1, x2 = Q(xi[0]), Q(xi[1])
    if x1.denominator != 1 or x2.denominator != 1:
        return False
    return (r * (z - x1 * x2 / 2)).denominator == 1


def _in_rZ(q: Fraction, r: int) -> bool:
    return (r * q).denominator == 1


def br_check_raw(r: int, xi, B: Mat2) -> bool:
    """Image of the Heisenberg generators under (xi, B) stays in Gamma_r."""
    if B.det not in (1, -1):
        return False
    x1, x2 = Q(xi[0]), Q(xi[1])
    a, b, c, d = B.entries()
    return _in_rZ(x1 * c - x2 * a - Q(a * c, 2), r) and _in_rZ(x1 * d - x2 * b - Q(b * d, 2), r)


def br_check(r: int, xi, B: Mat2) -> bool:
    """(xi, B) in B_r, decided by the parity table and cross-checked against the raw condition."""
    x1, x2 = Q(xi[0]), Q(xi[1])
    if B.det not in (1, -1):
        table = False
    elif r % 2 == 0:
        table = _in_rZ(x1, r) and _in_rZ(x2, r)
    else:
        ab_even = (B.a * B.b) % 2 == 0
        cd_even = (B.c * B.d) % 2 == 0
        half = Q(1, 2)
        if ab_even and cd_even:
            table = _in_rZ(x1, r) and _in_rZ(x2, r)
        elif ab_even:
            table = _in_rZ(x1, r) and _in_rZ(x2 - half, r)
        else:
            table = _in_rZ(x1 - half, r) and _in_rZ(x2, r)
    if table != br_check_raw(r, xi, B):
        raise VerificationError(f"parity table and raw condition disagree for {B}, {xi}, r={r}")
    return table


def _shift_vector(B: Mat2) -> tuple[int, int]:
    return (-B.b * B.d, B.a * B.c)


def l_to_xi(r: int, B: Mat2, l) -> tuple[Fraction, Fraction]:
    """xi = B l / r - B (-bd, ac) / 2."""
    bl = B.apply(l)
    bv = B.apply(_shift_vector(B))
    return (Q(bl[0], r) - Q(bv[0], 2), Q(bl[1], r) - Q(bv[1], 2))


def xi_to_l(r: int, B: Mat2, xi) -> tuple[int, int]:
    """l = r B^-1 xi + r (-bd, ac) / 2, reduced mod r."""
    if not br_check(r, xi, B):
        raise ValueError(f"({xi}, {B}) is not in B_r for r={r}")
    v = _shift_vector(B)
    bi = B.inverse().apply((Q(xi[0]), Q(xi[1])))
    l = (r * bi[0] + Q(r * v[0], 2), r * bi[1] + Q(r * v[1], 2))
    if l[0].denominator != 1 or l[1].denominator != 1:
        raise ValueError("xi does not correspond to an integral l")
    return (int(l[0]) % r, int(l[1]) % r)


# -- conjugating B into e^{sA} -------------------------------------------------------


def canonical_P(B: Mat2) -> QMat2:
    """P over Q(sqrt d) with P B = e^{sA} P: eigenvectors of B go to (1, 1) and (1, -1)."""
    T = B.trace
    sp = spectral_of_trace(T)
    d = sp.d
    lam, lami = sp.lam, sp.lam_inv

    def eigvec(mu):
        # first coordinate scaled to 1 when possible, otherwise the second
        if B.b != 0:
            return (QuadElem.rational(1, d), (mu - B.a) * Q(1, B.b))
        return ((mu - B.d) * Q(1, B.c), QuadElem.rational(1, d))

    v1, v2 = eigvec(lam), eigvec(lami)
    V = QMat2(v1[0], v2[0], v1[1], v2[1])
    H = QMat2.from_int(Mat2(1, 1, 1, -1), d)
    P = H @ V.inverse()
    if P @ QMat2.from_int(B, d) != exp_sA(T, 1) @ P:
        raise VerificationError(f"P does not conjugate {B} into e^(sA)")
    return P


# -- automorphisms ----------------------------------------------------------------


def heis_hbar(S: QMat2, z: QuadElem, xi) -> tuple[QuadElem, tuple]:
    """The Heisenberg automorphism (z, xi) -> (det S z, S xi)."""
    return S.det() * z, S.apply(xi)


def conj_by_eta(eta, g: ContOsc) -> ContOsc:
    """F_eta: conjugation by (0, eta, 0)."""
    E = exp_sA(g.T, g.k)
    e_eta = E.apply(eta)
    zc = g.zc + omega(eta, g.xi) * Q(1, 2) - omega(_vadd(eta, g.xi), e_eta) * Q(1, 2)
    return ContOsc(g.T, zc, _vsub(_vadd(eta, g.xi), e_eta), g.k)


@dataclass(frozen=True)
class AutDescriptor:
    """F_u o F_eta o F_S with u' = u s; S must satisfy S A = mu A S."""

    u_prime: QuadElem
    eta: tuple[QuadElem, QuadElem]
    S: QMat2
    mu: int


def _check_S(S: QMat2, mu: int) -> None:
    d = S.field
    A = QMat2.from_int(Mat2(0, 1, 1, 0), d)
    if mu not in (1, -1) or S @ A != (A @ S).scale(mu) or S.det().is_zero():
        raise ValueError("S is not in the group of matrices with S A = +-A S")


def apply_aut(a: AutDescriptor, g: ContOsc) -> ContOsc:
    _check_S(a.S, a.mu)
    zs, xs = heis_hbar(a.S, g.zc, g.xi)
    h = ContOsc(g.T, zs, xs, a.mu * g.k)
    h = conj_by_eta(a.eta, h)
    return ContOsc(h.T, h.zc + a.u_prime * h.k, h.xi, h.k)


# -- lattice parameters -------------------------------------------------------------


@dataclass(frozen=True)
class LatticeParams:
    r: int
    T: int
    eta: tuple[QuadElem, QuadElem]
    P: QMat2
    zc: QuadElem
    xi: tuple[Fraction, Fraction]

    def __post_init__(self):
        B = self.B
        if not br_check(self.r, self.xi, B):
            raise ValueError(f"(xi, B) = ({self.xi}, {B}) is not in B_r for r={self.r}")

    @property
    def B(self) -> Mat2:
        Bq = self.P.inverse() @ exp_sA(self.T, 1) @ self.P
        if not Bq.is_integral():
            raise ValueError("P^-1 e^(sA) P is not an integer matrix")
        return Bq.to_int()

    @classmethod
    def from_rep(cls, rep: GroupRep) -> LatticeParams:
        T = rep.T
        d = spectral_of_trace(T).d
        zero = QuadElem.rational(0, d)
        return cls(rep.r, T, (zero, zero), canonical_P(rep.B), zero, l_to_xi(rep.r, rep.B, rep.l))

    def delta(self) -> ContOsc:
        """F_eta((det P z, P xi, 0)(0, 0, s))."""
        d = self.P.field
        core = ContOsc(self.T, self.P.det() * self.zc, self.P.apply(_qvec(self.xi, d)), 1)
        return conj_by_eta(self.eta, core)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "T": self.T,
            "eta": [e.to_json() for e in self.eta],
            "P": self.P.to_json(),
            "z": self.zc.to_json(),
            "xi": [f"{q.numerator}/{q.denominator}" for q in self.xi],
        }

    @classmethod
    def from_json(cls, obj: dict) -> LatticeParams:
        return cls(
            int(obj["r"]),
            int(obj["T"]),
            tuple(QuadElem.from_json(e) for e in obj["eta"]),
            QMat2.from_json(obj["P"]),
            QuadElem.from_json(obj["z"]),
            tuple(Fraction(q) for q in obj["xi"]),
        )


def lattice_generators(p: LatticeParams) -> list[ContOsc]:
    """gamma, alpha, beta, delta generators of the lattice."""
    d = p.P.field
    zero = QuadElem.rational(0, d)
    detP = p.P.det()
    e1 = p.P.apply(_qvec((1, 0), d))
    e2 = p.P.apply(_qvec((0, 1), d))
    Pxi = p.P.apply(_qvec(p.xi, d))
    E = exp_sA(p.T, 1)
    eta = p.eta
    g_gamma = ContOsc(p.T, detP * Q(1, p.r), (zero, zero), 0)
    g_alpha = ContOsc(p.T, omega(eta, e1), e1, 0)
    g_beta = ContOsc(p.T, omega(eta, e2), e2, 0)
    v = _vadd(Pxi, eta)
    e_eta = E.apply(eta)
    g_delta = ContOsc(
        p.T,
        p.zc * detP - omega(v, _vadd(eta, e_eta)) * Q(1, 2),
        _vsub(v, e_eta),
        1,
    )
    return [g_gamma, g_alpha, g_beta, g_delta]


def lattice_contains(p: LatticeParams, g: ContOsc) -> bool:
    """Undo F_eta, strip the delta power, undo P and test Gamma_r membership."""
    if g.T != p.T:
        raise ValueError("element from another trace context")
    neg_eta = _vneg(p.eta)
    h = conj_by_eta(neg_eta, g)
    core = conj_by_eta(neg_eta, p.delta())
    h = cont_mul(h, cont_pow(core, -g.k))
    Pinv = p.P.inverse()
    z = h.zc * p.P.det().inverse()
    xi = Pinv.apply(h.xi)
    if not (z.is_rational() and xi[0].is_rational() and xi[1].is_rational()):
        return False
    return gamma_r_contains(p.r, z.x, (xi[0].x, xi[1].x))


def _heis_mul(u, v):
    # Heisenberg product on (z, xi) pairs with rational entries
    (z, x), (z2, x2) = u, v
    w = x[0] * x2[1] - x2[0] * x[1]
    return (z + z2 + Q(w) / 2, (x[0] + x2[0], x[1] + x2[1]))


def _heis_inv(u):
    z, x = u
    return (-z, (-x[0], -x[1]))


def param_action(p: LatticeParams, kl, zeta_K) -> LatticeParams:
    """Action of (k, l) in Gamma_r and (zeta, K) in B_r on lattice parameters."""
    k, l = kl
    zeta, K = zeta_K
    if not gamma_r_contains(p.r, k, l):
        raise ValueError(f"({k}, {l}) is not in Gamma_r")
    if not br_check(p.r, zeta, K):
        raise ValueError(f"({zeta}, {K}) is not in B_r")
    d = p.P.field
    B = p.B
    zeta = (Q(zeta[0]), Q(zeta[1]))
    l = (Q(l[0]), Q(l[1]))
    eta_new = _vadd(p.eta, p.P.apply(_qvec(zeta, d)))
    P_new = p.P @ QMat2.from_int(K, d)
    if not p.zc.is_rational():
        raise ValueError("the parameter action needs a rational z")
    u = (Q(0), _vneg(zeta))
    u = _heis_mul(u, _heis_inv((Q(k), l)))
    u = _heis_mul(u, (p.zc.x, p.xi))
    u = _heis_mul(u, (Q(0), B.apply(zeta)))
    Kinv = K.inverse()
    z_new = Kinv.det * u[0]
    xi_new = Kinv.apply(u[1])
    # closed form for the second component
    bz = (B - Mat2(1, 0, 0, 1)).apply(zeta)
    expect = Kinv.apply((p.xi[0] - l[0] + bz[0], p.xi[1] - l[1] + bz[1]))
    if tuple(xi_new) != tuple(expect):
        raise VerificationError("new xi disagrees with K^-1 (xi - l + (B - I) zeta)")
    return LatticeParams(p.r, p.T, eta_new, P_new, QuadElem.rational(z_new, d), xi_new)


# -- embedding of Osc^r(B, l) ---------------------------------------------------------


def embedding_images(rep: GroupRep) -> dict[str, ContOsc]:
    """alpha -> (0, P e1, 0), beta -> (0, P e2, 0), gamma -> (det P / r, 0, 0), delta -> (0, P xi, s)."""
    p = LatticeParams.from_rep(rep)
    g_gamma, g_alpha, g_beta, g_delta = lattice_generators(p)
    return {"alpha": g_alpha, "beta": g_beta, "gamma": g_gamma, "delta": g_delta}


def check_embedding(rep: GroupRep) -> list[str]:
    """Names of defining relations that fail for the embedding; empty when exact."""
    im = embedding_images(rep)
    a, b, g, dl = im["alpha"], im["beta"], im["gamma"], im["delta"]
    B, (l1, l2), r = rep.B, rep.l, rep.r
    inv = cont_inv
    checks = {
        "[alpha,beta]=gamma^r": (cont_prod(a, b, inv(a), inv(b)), cont_pow(g, r)),
        "alpha gamma = gamma alpha": (cont_mul(a, g), cont_mul(g, a)),
        "beta gamma = gamma beta": (cont_mul(b, g), cont_mul(g, b)),
        "delta alpha delta^-1 = phi(alpha)": (
            cont_prod(dl, a, inv(dl)),
            cont_prod(cont_pow(a, B.a), cont_pow(b, B.c), cont_pow(g, -l2)),
        ),
        "delta beta delta^-1 = phi(beta)": (
            cont_prod(dl, b, inv(dl)),
            cont_prod(cont_pow(a, B.b), cont_pow(b, B.d), cont_pow(g, l1)),
        ),
        "delta gamma delta^-1 = gamma": (cont_prod(dl, g, inv(dl)), g),
    }
    return [name for name, (lhs, rhs) in checks.items() if lhs != rhs]
