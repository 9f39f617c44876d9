"""Exact models of H^r(Z) and Osc^r(B, l) with homomorphism checking.

Elements of H^r(Z) are normal forms alpha^x beta^y gamma^z stored as (x, y, z).
From beta alpha = gamma^-r alpha beta the product is

    (x, y, z)(x', y', z') = (x + x', y + y', z + z' - r x' y).

Osc^r(B, l) elements are pairs (h, k) meaning h delta^k, with delta acting by

    alpha -> alpha^a beta^c gamma^-l2,  beta -> alpha^b beta^d gamma^l1,  gamma -> gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .classify import GroupRep, act_kappa, act_linear
from .mat import Mat2, format_mat

HeisWord = tuple[int, int, int]
DOscElem = tuple[HeisWord, int]

H_ID: HeisWord = (0, 0, 0)
ALPHA: HeisWord = (1, 0, 0)
BETA: HeisWord = (0, 1, 0)
GAMMA: HeisWord = (0, 0, 1)


def heis_mul(r: int, g: HeisWord, h: HeisWord) -> HeisWord:
    return (g[0] + h[0], g[1] + h[1], g[2] + h[2] - r * h[0] * g[1])


def heis_inv(r: int, g: HeisWord) -> HeisWord:
    x, y, z = g
    return (-x, -y, -z - r * x * y)


def heis_pow(r: int, g: HeisWord, n: int) -> HeisWord:
    x, y, z = g
    return (n * x, n * y, n * z - r * x * y * (n * (n - 1) // 2))


def heis_word(r: int, letters: list[tuple[str, int]]) -> HeisWord:
    """Multiply out a word like [("a", 2), ("b", -1), ("g", 3)]."""
    gens = {"a": ALPHA, "b": BETA, "g": GAMMA}
    out = H_ID
    for letter, e in letters:
        out = heis_mul(r, out, heis_pow(r, gens[letter], e))
    return out


# -- Osc^r(B, l) ----------------------------------------------------------------


def _phi_once(rep: GroupRep, w: HeisWord) -> HeisWord:
    r, B, (l1, l2) = rep.r, rep.B, rep.l
    fa = (B.a, B.c, -l2)
    fb = (B.b, B.d, l1)
    x, y, z = w
    return heis_mul(r, heis_mul(r, heis_pow(r, fa, x), heis_pow(r, fb, y)), (0, 0, z))


def _phi_inv_once(rep: GroupRep, w: HeisWord) -> HeisWord:
    # the linear part is B^-1; gamma is fixed and central, so fix z afterwards
    x, y = rep.B.inverse().apply((w[0], w[1]))
    guess = (x, y, 0)
    img = _phi_once(rep, guess)
    return (x, y, w[2] - img[2])


def dosc_phi(rep: GroupRep, w: HeisWord, k: int) -> HeisWord:
    """phi(delta)^k applied to w."""
    step = _phi_once if k >= 0 else _phi_inv_once
    for _ in range(abs(k)):
        w = step(rep, w)
    return w


def dosc_mul(rep: GroupRep, g: DOscElem, h: DOscElem) -> DOscElem:
    return heis_mul(rep.r, g[0], dosc_phi(rep, h[0], g[1])), g[1] + h[1]


def dosc_inv(rep: GroupRep, g: DOscElem) -> DOscElem:
    h, k = g
    return dosc_phi(rep, heis_inv(rep.r, h), -k), -k


def dosc_pow(rep: GroupRep, g: DOscElem, n: int) -> DOscElem:
    if n < 0:
        g, n = dosc_inv(rep, g), -n
    out: DOscElem = (H_ID, 0)
    base = g
    while n:
        if n & 1:
            out = dosc_mul(rep, out, base)
        base = dosc_mul(rep, base, base)
        n >>= 1
    return out


def dosc_prod(rep: GroupRep, *elems: DOscElem) -> DOscElem:
    out: DOscElem = (H_ID, 0)
    for e in elems:
        out = dosc_mul(rep, out, e)
    return out


D_ID: DOscElem = (H_ID, 0)
D_ALPHA: DOscElem = (ALPHA, 0)
D_BETA: DOscElem = (BETA, 0)
D_GAMMA: DOscElem = (GAMMA, 0)
D_DELTA: DOscElem = (H_ID, 1)


# -- homomorphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class HomDescriptor:
    """A map Osc(source) -> Osc(target) given by the images of alpha, beta, gamma, delta."""

    kind: str
    source: GroupRep
    target: GroupRep
    images: tuple[DOscElem, DOscElem, DOscElem, DOscElem]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "images": [[list(h), k] for h, k in self.images],
        }


def hom_apply(f: HomDescriptor, g: DOscElem) -> DOscElem:
    """Image of h delta^k, using F(alpha^x beta^y gamma^z) = F(alpha)^x F(beta)^y F(gamma)^z."""
    t = f.target
    fa, fb, fg, fd = f.images
    (x, y, z), k = g
    return dosc_prod(
        t,
        dosc_pow(t, fa, x),
        dosc_pow(t, fb, y),
        dosc_pow(t, fg, z),
        dosc_pow(t, fd, k),
    )


def compose(f: HomDescriptor, g: HomDescriptor) -> HomDescriptor:
    """g o f (apply f first)."""
    if f.target != g.source:
        raise ValueError("target of the first map is not the source of the second")
    images = tuple(hom_apply(g, im) for im in f.images)
    return HomDescriptor(f"{g.kind}*{f.kind}", f.source, g.target, images)


def relations(rep: GroupRep) -> list[tuple[str, DOscElem, DOscElem]]:
    """Defining relations as (name, lhs, rhs) word pairs in Osc(rep)."""
    r, B, (l1, l2) = rep.r, rep.B, rep.l
    a, b, g, d = D_ALPHA, D_BETA, D_GAMMA, D_DELTA
    inv = lambda e: dosc_inv(rep, e)  # noqa: E731
    phi_a = dosc_prod(rep, dosc_pow(rep, a, B.a), dosc_pow(rep, b, B.c), dosc_pow(rep, g, -l2))
    phi_b = dosc_prod(rep, dosc_pow(rep, a, B.b), dosc_pow(rep, b, B.d), dosc_pow(rep, g, l1))
    return [
        ("[alpha,beta]=gamma^r", dosc_prod(rep, a, b, inv(a), inv(b)), dosc_pow(rep, g, r)),
        ("alpha gamma = gamma alpha", dosc_prod(rep, a, g), dosc_prod(rep, g, a)),
        ("beta gamma = gamma beta", dosc_prod(rep, b, g), dosc_prod(rep, g, b)),
        ("delta alpha delta^-1 = phi(alpha)", dosc_prod(rep, d, a, inv(d)), phi_a),
        ("delta beta delta^-1 = phi(beta)", dosc_prod(rep, d, b, inv(d)), phi_b),
        ("delta gamma delta^-1 = gamma", dosc_prod(rep, d, g, inv(d)), g),
    ]


def _relation_words(rep: GroupRep):
    # the relations as words in the generators, so they can be pushed through a map
    B, (l1, l2), r = rep.B, rep.l, rep.r
    return [
        ("[alpha,beta]=gamma^r", [("a", 1), ("b", 1), ("a", -1), ("b", -1)], [("g", r)]),
        ("alpha gamma = gamma alpha", [("a", 1), ("g", 1)], [("g", 1), ("a", 1)]),
        ("beta gamma = gamma beta", [("b", 1), ("g", 1)], [("g", 1), ("b", 1)]),
        (
            "delta alpha delta^-1 = phi(alpha)",
            [("d", 1), ("a", 1), ("d", -1)],
            [("a", B.a), ("b", B.c), ("g", -l2)],
        ),
        (
            "delta beta delta^-1 = phi(beta)",
            [("d", 1), ("b", 1), ("d", -1)],
            [("a", B.b), ("b", B.d), ("g", l1)],
        ),
        ("delta gamma delta^-1 = gamma", [("d", 1), ("g", 1), ("d", -1)], [("g", 1)]),
    ]


def _eval_word(f: HomDescriptor, word) -> DOscElem:
    t = f.target
    idx = {"a": 0, "b": 1, "g": 2, "d": 3}
    out = D_ID
    for letter, e in word:
        out = dosc_mul(t, out, dosc_pow(t, f.images[idx[letter]], e))
    return out


def check_relations(f: HomDescriptor) -> str | None:
    """Name of the first source relation not preserved by f, or None."""
    for name, lhs, rhs in _relation_words(f.source):
        if _eval_word(f, lhs) != _eval_word(f, rhs):
            return name
    return None


def is_bijective_shape(f: HomDescriptor) -> bool:
    """alpha, beta go to a unimodular block, gamma to gamma^+-1 and delta to h delta^+-1.

    Such a map induces isomorphisms on gamma, on H/<gamma> and on the quotient
    by H, hence is an isomorphism once the relations hold.
    """
    (fa, ka), (fb, kb), (fg, kg), (fd, kd) = f.images
    K = Mat2(fa[0], fb[0], fa[1], fb[1])
    return (
        ka == 0
        and kb == 0
        and kg == 0
        and kd in (1, -1)
        and K.det in (1, -1)
        and fg[:2] == (0, 0)
        and fg[2] == K.det
    )


def verify_hom(f: HomDescriptor, expected_target: GroupRep | None = None) -> tuple[bool, str | None]:
    if expected_target is not None and f.target != expected_target:
        return False, "target differs from the group action"
    bad = check_relations(f)
    if bad is not None:
        return False, bad
    if not is_bijective_shape(f):
        return False, "images do not have the shape of an isomorphism"
    return True, None


def lift(
    kind: str,
    source: GroupRep,
    target: GroupRep,
    K: Mat2,
    kappa: int,
    shifts: list[tuple[int, int]] | None = None,
) -> HomDescriptor | None:
    """Search for an isomorphism with linear part K and delta -> h delta^kappa.

    Images: alpha -> alpha^k1 beta^k3 gamma^e1, beta -> alpha^k2 beta^k4 gamma^e2,
    gamma -> gamma^det K, delta -> alpha^p beta^q delta^kappa.  For each shift
    (e1, e2) the delta relations are affine in (p, q), so p, q come from a
    2x2 rational solve and must be integral.
    """
    r = target.r
    if shifts is None:
        shifts = [(e1, e2) for e1 in range(r) for e2 in range(r)]
    gamma_img: DOscElem = ((0, 0, K.det), 0)
    for e1, e2 in shifts:
        fa: DOscElem = ((K.a, K.c, e1), 0)
        fb: DOscElem = ((K.b, K.d, e2), 0)

        def build(p: int, q: int) -> HomDescriptor:
            return HomDescriptor(kind, source, target, (fa, fb, gamma_img, ((p, q, 0), kappa)))

        def defect(p: int, q: int) -> tuple[int, int] | None:
            f = build(p, q)
            words = _relation_words(source)
            out = []
            for _, lhs, rhs in words[3:5]:
                u, v = _eval_word(f, lhs), _eval_word(f, rhs)
                if u[1] != v[1] or u[0][:2] != v[0][:2]:
                    return None
                out.append(u[0][2] - v[0][2])
            return out[0], out[1]

        d0 = defect(0, 0)
        if d0 is None:
            # linear parts disagree: K does not conjugate B_source to B_target^kappa
            return None
        d1, d2 = defect(1, 0), defect(0, 1)
        # defect(p, q) = d0 + p (d1 - d0) + q (d2 - d0)
        m11, m21 = d1[0] - d0[0], d1[1] - d0[1]
        m12, m22 = d2[0] - d0[0], d2[1] - d0[1]
        det = m11 * m22 - m12 * m21
        if det == 0:
            continue
        p = Fraction(-d0[0] * m22 + d0[1] * m12, det)
        q = Fraction(-m11 * d0[1] + m21 * d0[0], det)
        if p.denominator != 1 or q.denominator != 1:
            continue
        f = build(int(p), int(q))
        if check_relations(f) is None:
            return f
    return None


def build_hom(kind: str, source: GroupRep, param) -> HomDescriptor:
    """F_K (param K), F_m (param m) or F_kappa (param +-1) with its target from the group action."""
    r = source.r
    if kind == "F_K":
        K = param
        B, l = act_linear(K, (0, 0), source.B, source.l, r)
        f = lift(kind, source, GroupRep(r, B, l), K, 1)
    elif kind == "F_m":
        m = param
        B, l = act_linear(Mat2(1, 0, 0, 1), m, source.B, source.l, r)
        target = GroupRep(r, B, l)
        f = lift(kind, source, target, Mat2(1, 0, 0, 1), 1, [(-m[1] % r, m[0] % r)])
        if f is None:
            f = lift(kind, source, target, Mat2(1, 0, 0, 1), 1)
    elif kind == "F_kappa":
        kappa = param
        B, l = act_kappa(kappa, source.B, source.l, r)
        f = lift(kind, source, GroupRep(r, B, l), Mat2(1, 0, 0, 1), kappa)
    else:
        raise ValueError(f"unknown homomorphism kind {kind!r}")
    if f is None:
        raise ArithmeticError(f"no lift of {kind} with parameter {param} found")
    return f


# -- brute-force isomorphism oracle ---------------------------------------------------


def gl2_box(bound: int) -> list[Mat2]:
    """All integer matrices with entries in [-bound, bound] and det +-1."""
    rng = range(-bound, bound + 1)
    return [Mat2(a, b, c, d) for a, b, c, d in product(rng, repeat=4) if a * d - b * c in (1, -1)]


def brute_force_iso(g1: GroupRep, g2: GroupRep, box: list[Mat2]) -> HomDescriptor | None:
    """Search isomorphisms Osc(g1) -> Osc(g2) by generator images with linear part in box.

    Independent of cycles and residue orbits: it enumerates the images of
    alpha and beta (matrix K plus gamma shifts in [0, r)), the sign of delta,
    and solves for the Heisenberg part of the image of delta.  Shifts outside
    [0, r) are absorbed by inner automorphisms.
    """
    if g1.r != g2.r or g1.T != g2.T:
        return None
    B1, B2 = g1.B, g2.B
    for kappa in (1, -1):
        target = B2 if kappa == 1 else B2.inverse()
        for K in box:
            # delta relation on H/<gamma>: B2^kappa K = K B1
            if target @ K != K @ B1:
                continue
            f = lift("oracle", g1, g2, K, kappa)
            if f is not None:
                return f
    return None


def describe(f: HomDescriptor) -> str:
    names = ("alpha", "beta", "gamma", "delta")
    parts = [f"{n} -> {list(h)} delta^{k}" for n, (h, k) in zip(names, f.images)]
    return f"{f.kind}: {format_mat(f.source.B)} -> {format_mat(f.target.B)}; " + ", ".join(parts)
