"""Isomorphism classification and commensurability of discrete split oscillator groups.

A group is given by (r, B, l).  Two groups are isomorphic when r and trace
agree and (B, l) are related by the action of Z_2 x (GL(2,Z) |x Z^2):

    (K, m) . (B, l) = (K B K^-1, K (l - (I - B^-1) m))
    kappa  . (B, l) = (B^-1, -B l)                        (kappa = -1)

For a fixed B the residual freedom on l is the relation ~_B generated by
translations through the image of (B - I) and by l -> K l for K in R(B).
That image contains (T - 2) Z^2, so the classes only depend on r through
g = gcd(r, T - 2).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from .cycles import cycle_bar, cycle_of, decompose_trace, path_conjugator, reduce_to_cycle
from .mat import I2, U_HAT, W_HAT, Mat2, conjugate, format_mat, in_BT, parse_mat
from .quad import spectral_of_trace, squarefree_decompose
from .symmetry import VerificationError, reversing_group

Residue = tuple[int, int]


@dataclass(frozen=True)
class GroupRep:
    """Osc^r(B, l); l is stored reduced mod r."""

    r: int
    B: Mat2
    l: Residue

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if not in_BT(self.B):
            raise ValueError(f"{self.B} needs det 1 and trace > 2")
        object.__setattr__(self, "l", (self.l[0] % self.r, self.l[1] % self.r))

    @property
    def T(self) -> int:
        return self.B.trace

    def to_json(self) -> dict:
        return {"r": self.r, "B": format_mat(self.B), "l": list(self.l)}

    @classmethod
    def from_json(cls, obj: dict) -> GroupRep:
        return cls(int(obj["r"]), parse_mat(obj["B"]), tuple(obj["l"]))


# -- group action on (B, l) -------------------------------------------------


def _vec_mod(v, r: int) -> Residue:
    return (v[0] % r, v[1] % r)


def act_linear(K: Mat2, m: Residue, B: Mat2, l: Residue, r: int) -> tuple[Mat2, Residue]:
    """(K, m) . (B, l)."""
    shift = (I2 - B.inverse()).apply(m)
    return conjugate(K, B), _vec_mod(K.apply((l[0] - shift[0], l[1] - shift[1])), r)


def act_kappa(kappa: int, B: Mat2, l: Residue, r: int) -> tuple[Mat2, Residue]:
    if kappa == 1:
        return B, _vec_mod(l, r)
    if kappa != -1:
        raise ValueError("kappa must be +-1")
    bl = B.apply(l)
    return B.inverse(), _vec_mod((-bl[0], -bl[1]), r)


def act(kappa: int, K: Mat2, m: Residue, B: Mat2, l: Residue, r: int) -> tuple[Mat2, Residue]:
    """kappa . ((K, m) . (B, l)): the map F_kappa o F_K o F_m on parameters."""
    B1, l1 = act_linear(K, m, B, l, r)
    return act_kappa(kappa, B1, l1, r)


# -- linear congruences -----------------------------------------------------


def _smith(M: Mat2) -> tuple[Mat2, tuple[int, int], Mat2]:
    """U, (d1, d2), V with U M V = diag(d1, d2), U and V unimodular."""
    U, V = I2, I2
    A = M
    while True:
        # clear the first column and first row by Euclid steps
        if A.a == 0 and A.c == 0 and A.b == 0:
            if A.d != 0:
                # move the non-zero pivot to the top-left
                U = Mat2(0, 1, 1, 0) @ U
                V = V @ Mat2(0, 1, 1, 0)
                A = Mat2(0, 1, 1, 0) @ A @ Mat2(0, 1, 1, 0)
            return U, (A.a, A.d), V
        if A.c != 0 and (A.a == 0 or abs(A.c) < abs(A.a)):
            E = Mat2(0, 1, 1, 0)
            U, A = E @ U, E @ A
            continue
        if A.b != 0 and (A.a == 0 or abs(A.b) < abs(A.a)):
            E = Mat2(0, 1, 1, 0)
            V, A = V @ E, A @ E
            continue
        if A.c != 0:
            q = A.c // A.a
            E = Mat2(1, 0, -q, 1)
            U, A = E @ U, E @ A
            continue
        if A.b != 0:
            q = A.b // A.a
            E = Mat2(1, -q, 0, 1)
            V, A = V @ E, A @ E
            continue
        if A.d % A.a != 0:
            # make a divide d: add row 2 to row 1 and repeat
            E = Mat2(1, 1, 0, 1)
            U, A = E @ U, E @ A
            continue
        return U, (A.a, A.d), V


def _solve_scalar(d: int, w: int, r: int) -> int | None:
    g = gcd(d, r)
    if w % g:
        return None
    rr = r // g
    if rr == 1:
        return 0
    return (w // g) * pow((d // g) % rr, -1, rr) % rr


def solve_congruence(M: Mat2, v: Residue, r: int) -> Residue | None:
    """Some x with M x = v (mod r), or None when the system is insoluble."""
    U, (d1, d2), V = _smith(M)
    w = U.apply(v)
    y1 = _solve_scalar(d1, w[0], r)
    y2 = _solve_scalar(d2, w[1], r)
    if y1 is None or y2 is None:
        return None
    x = _vec_mod(V.apply((y1, y2)), r)
    mx = M.apply(x)
    if (mx[0] - v[0]) % r or (mx[1] - v[1]) % r:
        raise VerificationError("congruence solver produced a non-solution")
    return x


# -- the relation ~_B --------------------------------------------------------


def _translation_columns(B: Mat2) -> list[Residue]:
    D = B - I2
    return [(D.a, D.c), (D.b, D.d)]


def residue_orbits(B: Mat2, r: int, generators: list[Mat2] | None = None) -> list[list[Residue]]:
    """Orbits of ~_B on (Z_r)^2 as sorted lists, ordered by their smallest member."""
    if generators is None:
        generators = reversing_group(B)
    n = r * r
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            if ri < rj:
                parent[rj] = ri
            else:
                parent[ri] = rj

    cols = _translation_columns(B)
    for x in range(r):
        for y in range(r):
            i = x * r + y
            for cx, cy in cols:
                union(i, ((x + cx) % r) * r + (y + cy) % r)
            for K in generators:
                kx, ky = K.apply((x, y))
                union(i, (kx % r) * r + ky % r)
    groups: dict[int, list[Residue]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append((i // r, i % r))
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def orbit_reps(B: Mat2, r: int, generators: list[Mat2] | None = None) -> list[Residue]:
    """Smallest member of each ~_B orbit; computed on (Z_g)^2 with g = gcd(r, T-2)."""
    g = gcd(r, B.trace - 2)
    return [o[0] for o in residue_orbits(B, g, generators)]


def orbit_rep_of(B: Mat2, r: int, l: Residue, generators: list[Mat2] | None = None) -> Residue:
    g = gcd(r, B.trace - 2)
    target = (l[0] % g, l[1] % g)
    for o in residue_orbits(B, g, generators):
        if target in o:
            return o[0]
    raise AssertionError("orbits do not cover (Z_g)^2")


# -- class representatives ---------------------------------------------------


def class_representatives(T: int) -> list[Mat2]:
    """One matrix per pair {z, zbar} of cycles: the smallest matrix in z u zbar."""
    reps = set()
    for z in decompose_trace(T):
        zb = cycle_bar(z)
        reps.add(min(z.elements[0], zb.elements[0]))
    return sorted(reps)


@dataclass
class ClassEntry:
    B: Mat2
    l_reps: list[Residue]


@dataclass
class ClassList:
    T: int
    r: int
    entries: list[ClassEntry] = field(default_factory=list)

    def count(self) -> int:
        return sum(len(e.l_reps) for e in self.entries)

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "r": self.r,
            "classes": [
                {"B": format_mat(e.B), "l_reps": [list(l) for l in e.l_reps]}
                for e in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ClassList:
        entries = [
            ClassEntry(parse_mat(c["B"]), [tuple(l) for l in c["l_reps"]])
            for c in obj["classes"]
        ]
        return cls(int(obj["T"]), int(obj["r"]), entries)


def enumerate_classes(T: int, r: int) -> ClassList:
    if T < 3:
        raise ValueError(f"trace must be > 2, got {T}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    out = ClassList(T, r)
    for B in class_representatives(T):
        out.entries.append(ClassEntry(B, orbit_reps(B, r)))
    return out


def canonical_frame(B: Mat2) -> tuple[Mat2, Mat2]:
    """(B_j, K) with B_j the class representative of B's GL(2,Z) class and K B K^-1 = B_j."""
    rep, C = reduce_to_cycle(B)
    z = cycle_of(rep)
    target = min(z.elements[0], cycle_bar(z).elements[0])
    if target in z:
        K = path_conjugator(z, rep, target) @ C
    else:
        rep_bar = conjugate(U_HAT, rep)
        K = path_conjugator(cycle_of(rep_bar), rep_bar, target) @ U_HAT @ C
    if conjugate(K, B) != target:
        raise VerificationError(f"frame conjugator failed for {B}")
    return target, K


# -- isomorphism ------------------------------------------------------------


@dataclass(frozen=True)
class IsoWitness:
    """kappa . ((K, m) . (B1, l1)) = (B2, l2)."""

    kappa: int
    K: Mat2
    m: Residue

    def to_json(self) -> dict:
        return {"kappa": self.kappa, "K": format_mat(self.K), "m": list(self.m)}


def _linear_part_to(B: Mat2, r: int, gens: list[Mat2], src: Residue, dst: Residue) -> Mat2 | None:
    """L in the group generated by gens with L src = dst modulo the (B - I) translations.

    Breadth-first search on (Z_g)^2; the translations commute past every
    generator because each one maps the image of (B - I) to itself.
    """
    g = gcd(r, B.trace - 2)
    start = _vec_mod(src, g)
    goal = _vec_mod(dst, g)
    cols = _translation_columns(B)
    seen = {start: I2}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        L = seen[x]
        if x == goal:
            return L
        for cx, cy in cols:
            y = ((x[0] + cx) % g, (x[1] + cy) % g)
            if y not in seen:
                seen[y] = L
                queue.append(y)
        for K in gens:
            y = _vec_mod(K.apply(x), g)
            if y not in seen:
                seen[y] = K @ L
                queue.append(y)
    return None


def _finish_witness(g1: GroupRep, g2: GroupRep, K_total: Mat2) -> IsoWitness | None:
    r = g1.r
    candidates = []
    for M in (I2, g2.B, g2.B.inverse()):
        for s in (1, -1):
            candidates.append((M @ K_total).scale(s))
    for kappa in (1, -1):
        B2k, l2k = act_kappa(kappa, g2.B, g2.l, r)
        for K in candidates:
            if conjugate(K, g1.B) != B2k:
                continue
            # need K (I - B1^-1) m = K l1 - l2k (mod r)
            kl = K.apply(g1.l)
            m = solve_congruence(K @ (I2 - g1.B.inverse()), (kl[0] - l2k[0], kl[1] - l2k[1]), r)
            if m is None:
                continue
            if act(kappa, K, m, g1.B, g1.l, r) != (g2.B, g2.l):
                raise VerificationError("isomorphism witness failed its check")
            return IsoWitness(kappa, K, m)
    return None


def iso(g1: GroupRep, g2: GroupRep) -> tuple[bool, IsoWitness | None]:
    """Decide Osc^r1(B1,l1) ~= Osc^r2(B2,l2); a verified witness accompanies True."""
    if g1.r != g2.r or g1.T != g2.T:
        return False, None
    r = g1.r
    Bj2, K2 = canonical_frame(g2.B)
    l2f = K2.apply(g2.l)
    for kappa in (1, -1):
        B1k, l1k = act_kappa(kappa, g1.B, g1.l, r)
        # B^-1 is carried to B^T by W_HAT before reduction
        pre = W_HAT if kappa == -1 else I2
        Bj1, K1 = canonical_frame(conjugate(pre, B1k))
        if Bj1 != Bj2:
            continue
        K1 = K1 @ pre
        gens = reversing_group(Bj2)
        L = _linear_part_to(Bj2, r, gens, K1.apply(l1k), l2f)
        if L is None:
            continue
        # K_total carries B1 to B2 or B2^-1 on matrices and l1 to l2 up to translations
        K_total = K2.inverse() @ L @ K1
        w = _finish_witness(g1, g2, K_total)
        if w is None:
            raise VerificationError("orbit match found but no witness could be assembled")
        return True, w
    return False, None


# -- commensurability ---------------------------------------------------------


def commensurability_field(T: int) -> int:
    if T < 3:
        raise ValueError(f"trace must be > 2, got {T}")
    return squarefree_decompose(T * T - 4)[1]


def commensurable(g1: GroupRep, g2: GroupRep) -> tuple[bool, tuple[int, int] | None]:
    """True iff the fields agree; witness (m, n) with lambda_1^m = lambda_2^n."""
    d1 = commensurability_field(g1.T)
    d2 = commensurability_field(g2.T)
    if d1 != d2:
        return False, None
    s1 = spectral_of_trace(g1.T)
    s2 = spectral_of_trace(g2.T)
    g = gcd(s1.m, s2.m)
    m, n = s2.m // g, s1.m // g
    if s1.lam**m != s2.lam**n:
        raise VerificationError("commensurability exponents failed their check")
    return True, (m, n)
