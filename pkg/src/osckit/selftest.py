"""Fast invariant checks runnable from the command line (`osckit selftest`)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd

from .classify import GroupRep, enumerate_classes, iso, residue_orbits
from .cycles import H0_red_elements, cycle_of, decompose_trace, in_H0_red, reduce_to_cycle
from .discrete import brute_force_iso, gl2_box, build_hom, verify_hom
from .lattice import check_embedding
from .mat import A_HAT, B_HAT, W_HAT, Mat2, conjugate
from .quad import spectral_of_trace
from .symmetry import symmetry_data


@dataclass
class SelfTestConfig:
    seed: int = 0
    max_trace_partition: int = 30
    max_trace_table: int = 7
    max_r_table: int = 12
    reductions_per_trace: int = 50
    iso_pairs: int = 60


def _check_spectral(cfg: SelfTestConfig) -> None:
    for T in range(3, 40):
        sp = spectral_of_trace(T)
        assert sp.eps**sp.m == sp.lam, T
        assert sp.eps.norm() in (1, -1), T
        assert sp.lam.norm() == 1, T


def _check_partition(cfg: SelfTestConfig) -> None:
    for T in range(3, cfg.max_trace_partition + 1):
        seen = set()
        for z in decompose_trace(T):
            assert not (seen & z.element_set()), T
            seen |= z.element_set()
        assert seen == set(H0_red_elements(T)), T


def _check_symmetry(cfg: SelfTestConfig) -> None:
    for T in range(3, 15):
        for b in H0_red_elements(T):
            s = symmetry_data(b)
            assert s.G @ b == b @ s.G and s.G**s.j == b
            if s.R is not None:
                assert s.R @ b @ s.R.inverse() == b.inverse()


def _check_table(cfg: SelfTestConfig) -> None:
    for T in range(3, cfg.max_trace_table + 1):
        for r in range(1, cfg.max_r_table + 1):
            cl = enumerate_classes(T, r)
            for e in cl.entries:
                orbits = residue_orbits(e.B, r)
                assert sum(len(o) for o in orbits) == r * r
                g = gcd(r, T - 2)
                assert [o[0] for o in orbits] == e.l_reps, (T, r, g)


def _check_reduction(cfg: SelfTestConfig) -> None:
    rng = random.Random(cfg.seed)
    moves = [A_HAT, A_HAT.inverse(), B_HAT, B_HAT.inverse(), W_HAT]
    for T in range(3, 13):
        els = H0_red_elements(T)
        for _ in range(cfg.reductions_per_trace):
            b0 = rng.choice(els)
            M = Mat2(1, 0, 0, 1)
            for _ in range(rng.randint(0, 8)):
                M = rng.choice(moves) @ M
            b = conjugate(M, b0)
            rep, C = reduce_to_cycle(b)
            assert in_H0_red(rep) and conjugate(C, b) == rep
            assert rep in cycle_of(b0)


def _check_iso(cfg: SelfTestConfig) -> None:
    rng = random.Random(cfg.seed + 1)
    box = gl2_box(4)
    for _ in range(cfg.iso_pairs):
        T = rng.randint(3, 6)
        r = rng.randint(1, 3)
        els = H0_red_elements(T)
        g1 = GroupRep(r, rng.choice(els), (rng.randrange(r), rng.randrange(r)))
        g2 = GroupRep(r, rng.choice(els), (rng.randrange(r), rng.randrange(r)))
        ok, _ = iso(g1, g2)
        assert ok == (brute_force_iso(g1, g2, box) is not None), (g1, g2)


def _check_homs(cfg: SelfTestConfig) -> None:
    rep = GroupRep(3, Mat2(5, 2, 2, 1), (1, 2))
    for kind, par in (("F_K", Mat2(0, 1, 1, 0)), ("F_m", (1, 0)), ("F_kappa", -1)):
        ok, bad = verify_hom(build_hom(kind, rep, par))
        assert ok, (kind, bad)


def _check_embedding(cfg: SelfTestConfig) -> None:
    for T in range(3, 6):
        for r in range(1, 7):
            for e in enumerate_classes(T, r).entries:
                for l in e.l_reps:
                    assert not check_embedding(GroupRep(r, e.B, l))


CHECKS = [
    ("spectral data", _check_spectral),
    ("cycle partition", _check_partition),
    ("symmetry witnesses", _check_symmetry),
    ("residue orbits", _check_table),
    ("reduction roundtrips", _check_reduction),
    ("iso vs brute force", _check_iso),
    ("homomorphism lifts", _check_homs),
    ("exact embedding", _check_embedding),
]


def run_selftest(cfg: SelfTestConfig | None = None) -> list[tuple[str, bool, str, float]]:
    cfg = cfg or SelfTestConfig()
    results = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            fn(cfg)
            ok, detail = True, ""
        except Exception as exc:  # report every failure, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail, time.perf_counter() - t0))
    return results
