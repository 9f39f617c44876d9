"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line (collected in RESULTS and shown in
the pytest terminal summary).  Run directly with `python tests/test_acceptance.py`
to print just those lines.
"""

from __future__ import annotations

import random
import time

from osckit.classify import (
    GroupRep,
    canonical_frame,
    class_representatives,
    commensurability_field,
    commensurable,
    enumerate_classes,
    iso,
    orbit_rep_of,
)
from osckit.cycles import H0_red_elements, ReductionError, cycle_of, cycle_step, decompose_trace, in_H0_red, reduce_to_cycle
from osckit.discrete import brute_force_iso, gl2_box
from osckit.lattice import LatticeParams, check_embedding, cont_inv, cont_prod, lattice_contains, lattice_generators
from osckit.mat import A_HAT, B_HAT, W_HAT, Mat2, conjugate, parse_mat
from osckit.quad import spectral_of_trace
from osckit.symmetry import symmetry_data

from oracles import brute_H0_red, brute_step

RESULTS: list[str] = []


def record(n: int, title: str, failures: list[str], seconds: float, limit: float | None = None) -> None:
    if limit is not None and seconds >= limit:
        failures = failures + [f"runtime {seconds:.2f}s exceeds {limit}s"]
    status = "PASS" if not failures else "FAIL"
    detail = "; ".join(failures) if failures else "ok"
    line = f"criterion {n} {status}: {title} ({seconds:.2f}s) {detail}"
    RESULTS.append(line)
    print(line)
    assert not failures, line


def M(s: str) -> Mat2:
    return parse_mat(s)


def _canonical(elements, labels):
    i = elements.index(min(elements))
    return list(elements[i:] + elements[:i]), list(labels[i:] + labels[:i])


def _labels(z):
    return [b if q == 1 else f"{b}^{q}" for b, q in z.operators]


# reference cycles, listed as (elements, operator taking element i to element i+1)
REF_CYCLES = {
    3: [([M("2,1;1,1"), M("1,1;1,2")], ["B", "A"])],
    4: [
        ([M("3,2;1,1"), M("1,2;1,3")], ["B", "A^2"]),
        ([M("3,1;2,1"), M("1,1;2,3")], ["B^2", "A"]),
    ],
}
REF_T20_CYCLE = ([M("18,7;5,2"), M("4,7;9,16"), M("13,10;9,7"), M("3,10;5,17")], ["B^2", "A", "B", "A^3"])
REF_T20_COUNT = 6


def test_criterion_1_cycle_reproduction():
    t0 = time.perf_counter()
    fails = []
    for T, ref in REF_CYCLES.items():
        got = sorted(_canonical(list(z.elements), _labels(z)) for z in decompose_trace(T))
        want = sorted(_canonical(e, o) for e, o in ref)
        if got != want:
            fails.append(f"T={T}: got {got}, expected {want}")
    zs = decompose_trace(20)
    want = _canonical(*REF_T20_CYCLE)
    if not any(_canonical(list(z.elements), _labels(z)) == want for z in zs):
        fails.append("T=20: reference cycle not found")
    if len(zs) != REF_T20_COUNT:
        fails.append(f"T=20: {len(zs)} cycles computed, expected {REF_T20_COUNT}")
    record(1, "cycle reproduction T=3,4,20", fails, time.perf_counter() - t0, 1.0)


def _r_rule(rules):
    def f(r):
        for cond, reps in rules:
            if cond(r):
                return reps
        raise AssertionError("no rule applies")

    return f


ALL = lambda r: True  # noqa: E731
REF_TABLE = {
    3: [(M("2,1;1,1"), _r_rule([(ALL, [(0, 0)])]))],
    4: [(M("3,2;1,1"), _r_rule([(lambda r: r % 2 == 0, [(0, 0), (1, 0)]), (ALL, [(0, 0)])]))],
    5: [(M("4,3;1,1"), _r_rule([(lambda r: r % 3 == 0, [(0, 0), (1, 0)]), (ALL, [(0, 0)])]))],
    6: [
        (
            M("5,4;1,1"),
            _r_rule(
                [
                    (lambda r: r % 4 == 0, [(0, 0), (1, 0), (2, 0)]),
                    (lambda r: r % 4 == 2, [(0, 0), (1, 0)]),
                    (ALL, [(0, 0)]),
                ]
            ),
        ),
        (M("5,2;2,1"), _r_rule([(lambda r: r % 2 == 0, [(0, 0), (1, 0), (1, 1)]), (ALL, [(0, 0)])])),
    ],
    7: [
        (M("6,5;1,1"), _r_rule([(lambda r: r % 5 == 0, [(0, 0), (1, 0), (2, 0)]), (ALL, [(0, 0)])])),
        (M("5,3;3,2"), _r_rule([(lambda r: r % 5 == 0, [(0, 0), (0, 1)]), (ALL, [(0, 0)])])),
    ],
}


def test_criterion_2_table_reproduction():
    t0 = time.perf_counter()
    fails = []
    for T, ref in REF_TABLE.items():
        frames = [(canonical_frame(B), rule) for B, rule in ref]
        if sorted(Bj for (Bj, _), _ in frames) != class_representatives(T):
            fails.append(f"T={T}: reference matrices do not biject onto the computed classes")
            continue
        for r in range(1, 25):
            computed = {e.B: e.l_reps for e in enumerate_classes(T, r).entries}
            for (Bj, K), rule in frames:
                ref_reps = rule(r)
                mapped = [orbit_rep_of(Bj, r, K.apply(l)) for l in ref_reps]
                if len(set(mapped)) != len(ref_reps) or sorted(mapped) != computed[Bj]:
                    fails.append(f"T={T} r={r} B={Bj}: reference {ref_reps} -> {mapped}, computed {computed[Bj]}")
    record(2, "classification table T=3..7, r=1..24", fails, time.perf_counter() - t0, 5.0)


def test_criterion_3_symmetry_data():
    t0 = time.perf_counter()
    fails = []

    def expect(label, got, want):
        if got != want:
            fails.append(f"{label}: got {got}, expected {want}")

    s4 = symmetry_data(M("3,2;1,1"))
    expect("T=4 reversing", s4.R, M("-1,0;1,1"))
    s6 = symmetry_data(M("5,2;2,1"))
    expect("T=6 B2 generator", (s6.G, s6.j), (M("2,1;1,0"), 2))
    expect("T=6 B2 reversing", s6.R, W_HAT)
    s7b = symmetry_data(M("5,3;3,2"))
    expect("T=7 B2 generator", (s7b.G, s7b.j), (M("1,1;1,0"), 4))
    s7a = symmetry_data(M("6,5;1,1"))
    expect("T=7 B1 generator", (s7a.G, s7a.j), (M("6,5;1,1"), 1))
    record(3, "symmetry data", fails, time.perf_counter() - t0)


def test_criterion_4_commensurability():
    t0 = time.perf_counter()
    fails = []
    fields = [commensurability_field(T) for T in range(3, 8)]
    if fields != [5, 3, 21, 2, 5]:
        fails.append(f"fields {fields}")
    ok, w = commensurable(GroupRep(1, M("2,1;1,1"), (0, 0)), GroupRep(1, M("6,5;1,1"), (0, 0)))
    if not ok or w != (2, 1):
        fails.append(f"T=3 vs T=7 gave {ok}, {w}")
    if spectral_of_trace(3).lam ** 2 != spectral_of_trace(7).lam:
        fails.append("lambda_3^2 != lambda_7")
    record(4, "commensurability fields and witness", fails, time.perf_counter() - t0)


def test_criterion_5_oracle_equivalence():
    t0 = time.perf_counter()
    fails = []
    for T in range(3, 41):
        for b in H0_red_elements(T):
            (base, q), _ = cycle_step(b)
            if brute_step(b, T + 2) != (base, q):
                fails.append(f"cycle_step {b}")
    for T in range(3, 61):
        zs = decompose_trace(T)
        elems = [e for z in zs for e in z.elements]
        if len(elems) != len(set(elems)) or set(elems) != brute_H0_red(T):
            fails.append(f"partition T={T}")
        for z in zs:
            if any(cycle_step(e)[1] not in z for e in z.elements):
                fails.append(f"cycle not closed T={T}")
    box = gl2_box(5)
    for T in range(3, 8):
        for r in range(1, 5):
            groups = [GroupRep(r, B, (x, y)) for B in H0_red_elements(T) for x in range(r) for y in range(r)]
            # partition by the classifier and by the brute-force oracle, then compare
            oracle_reps: list[GroupRep] = []
            oracle_label = {}
            for g in groups:
                for i, h in enumerate(oracle_reps):
                    if brute_force_iso(h, g, box) is not None:
                        oracle_label[g] = i
                        break
                else:
                    oracle_label[g] = len(oracle_reps)
                    oracle_reps.append(g)
            for g in groups:
                for i, h in enumerate(oracle_reps):
                    if iso(h, g)[0] != (oracle_label[g] == i):
                        fails.append(f"iso disagrees with oracle on {h} vs {g}")
    record(5, "oracle equivalence (cycle_step, partition, iso)", fails, time.perf_counter() - t0, 120.0)


def test_criterion_6_exact_embedding():
    t0 = time.perf_counter()
    fails = []
    n = 0
    for T in range(3, 8):
        for r in range(1, 25):
            for e in enumerate_classes(T, r).entries:
                for l in e.l_reps:
                    rep = GroupRep(r, e.B, l)
                    n += 1
                    bad = check_embedding(rep)
                    if bad:
                        fails.append(f"{rep}: {bad}")
                    p = LatticeParams.from_rep(rep)
                    gens = lattice_generators(p)
                    for g in gens:
                        if not lattice_contains(p, cont_prod(gens[3], g, cont_inv(gens[3]))):
                            fails.append(f"{rep}: conjugation leaves the lattice")
    record(6, f"exact embedding of {n} table classes", fails, time.perf_counter() - t0, 30.0)


def test_criterion_7_reduction_soundness():
    t0 = time.perf_counter()
    fails = []
    rng = random.Random(20261015)
    moves = [A_HAT, A_HAT.inverse(), B_HAT, B_HAT.inverse(), W_HAT]
    failed = 0
    for T in range(3, 13):
        els = H0_red_elements(T)
        for _ in range(500):
            b0 = rng.choice(els)
            C0 = Mat2(1, 0, 0, 1)
            for _ in range(rng.randint(1, 12)):
                C0 = rng.choice(moves) @ C0
            b = conjugate(C0, b0)
            try:
                rep, C = reduce_to_cycle(b)
            except ReductionError:
                failed += 1
                continue
            if not (in_H0_red(rep) and C.det == 1 and conjugate(C, b) == rep and rep in cycle_of(b0)):
                fails.append(f"bad reduction of {b}")
    if failed:
        fails.append(f"{failed} reductions failed")
    record(7, "5000 scramble-reduce roundtrips", fails, time.perf_counter() - t0, 60.0)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
