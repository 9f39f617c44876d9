from __future__ import annotations

import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osckit.classify import (
    ClassList,
    GroupRep,
    act,
    canonical_frame,
    class_representatives,
    commensurability_field,
    commensurable,
    enumerate_classes,
    iso,
    orbit_reps,
    residue_orbits,
    solve_congruence,
)
from osckit.cycles import H0_red_elements, cycle_bar, cycle_of
from osckit.mat import I2, Mat2, conjugate
from osckit.quad import spectral_of_trace
from osckit.symmetry import reversing_group, symmetry_data

from strategies import reduced_matrices, trace_matrices


def _orbit_sets(orbits):
    return {frozenset(o) for o in orbits}


def test_residue_orbit_examples():
    assert [o[0] for o in residue_orbits(Mat2(2, 1, 1, 1), 7)] == [(0, 0)]
    assert [o[0] for o in residue_orbits(Mat2(3, 2, 1, 1), 2)] == [(0, 0), (1, 0)]
    assert len(residue_orbits(Mat2(5, 2, 2, 1), 2)) == 3


@given(reduced_matrices(3, 12), st.integers(1, 12))
def test_orbits_partition(B, r):
    orbits = residue_orbits(B, r)
    flat = [x for o in orbits for x in o]
    assert len(flat) == len(set(flat)) == r * r


@given(reduced_matrices(3, 12), st.integers(1, 30))
def test_orbit_reps_depend_on_gcd_only(B, r):
    full = [o[0] for o in residue_orbits(B, r)]
    assert orbit_reps(B, r) == full
    assert orbit_reps(B, gcd(r, B.trace - 2)) == full


@given(trace_matrices(3, 12), st.integers(1, 10))
def test_translation_images_agree(B, r):
    # image of (B - I) equals image of (I - B^-1) modulo r
    def image(M):
        return {((M.a * x + M.b * y) % r, (M.c * x + M.d * y) % r) for x in range(r) for y in range(r)}

    assert image(B - I2) == image(I2 - B.inverse())


@given(reduced_matrices(3, 10), st.integers(1, 8))
def test_corollary_action_gives_same_orbits(B, r):
    s = symmetry_data(B)
    alt = [-I2, s.G]
    if s.R is not None:
        alt.append((-B.inverse()) @ s.R)
    assert _orbit_sets(residue_orbits(B, r, alt)) == _orbit_sets(residue_orbits(B, r))


@pytest.mark.parametrize("T", range(3, 11))
def test_counts_stable_across_cycle_pair(T):
    for Bj in class_representatives(T):
        z = cycle_of(Bj)
        members = set(z.elements) | set(cycle_bar(z).elements)
        for r in (2, 3, 4, 6, T - 2):
            n = len(orbit_reps(Bj, r))
            for B in members:
                assert len(orbit_reps(B, r)) == n


def test_enumerate_examples():
    cl = enumerate_classes(5, 3)
    assert len(cl.entries) == 1 and len(cl.entries[0].l_reps) == 2
    cl = enumerate_classes(6, 4)
    assert sorted(len(e.l_reps) for e in cl.entries) == [3, 3]
    cl = enumerate_classes(7, 3)
    assert [len(e.l_reps) for e in cl.entries] == [1, 1]


def test_classlist_json_roundtrip():
    cl = enumerate_classes(6, 4)
    again = ClassList.from_json(cl.to_json())
    assert again.to_json() == cl.to_json()


@given(trace_matrices(3, 20))
def test_canonical_frame(B):
    Bj, K = canonical_frame(B)
    assert conjugate(K, B) == Bj
    assert Bj in class_representatives(B.trace)


def test_iso_examples():
    B = Mat2(3, 2, 1, 1)
    assert iso(GroupRep(2, B, (1, 0)), GroupRep(2, B, (0, 0)))[0] is False
    assert iso(GroupRep(5, B, (1, 2)), GroupRep(5, B, (6, 2)))[0] is True
    ok, w = iso(GroupRep(1, Mat2(2, 1, 1, 1), (0, 0)), GroupRep(1, Mat2(1, 1, 1, 2), (0, 0)))
    assert ok and w is not None
    assert iso(GroupRep(2, B, (0, 0)), GroupRep(3, B, (0, 0)))[0] is False


@st.composite
def group_reps(draw, T=None, r=None):
    T = T or draw(st.integers(3, 8))
    r = r or draw(st.integers(1, 6))
    B = draw(st.sampled_from(H0_red_elements(T)))
    return GroupRep(r, B, (draw(st.integers(0, r - 1)), draw(st.integers(0, r - 1))))


@given(st.integers(3, 8), st.integers(1, 6), st.data())
def test_iso_equivalence_relation(T, r, data):
    g1, g2, g3 = (data.draw(group_reps(T, r)) for _ in range(3))
    assert iso(g1, g1)[0]
    assert iso(g1, g2)[0] == iso(g2, g1)[0]
    if iso(g1, g2)[0] and iso(g2, g3)[0]:
        assert iso(g1, g3)[0]


@given(st.integers(3, 8), st.integers(1, 6), st.data())
def test_iso_witness_verifies(T, r, data):
    g1, g2 = data.draw(group_reps(T, r)), data.draw(group_reps(T, r))
    ok, w = iso(g1, g2)
    if ok:
        assert act(w.kappa, w.K, w.m, g1.B, g1.l, r) == (g2.B, g2.l)


@given(group_reps(), st.data())
def test_iso_invariant_under_random_action(g, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    K = Mat2(1, 0, 0, 1)
    for _ in range(rng.randint(0, 5)):
        K = rng.choice([Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1), Mat2(0, -1, 1, 0), Mat2(0, 1, 1, 0)]) @ K
    m = (rng.randrange(g.r), rng.randrange(g.r))
    kappa = rng.choice([1, -1])
    B2, l2 = act(kappa, K, m, g.B, g.l, g.r)
    assert iso(g, GroupRep(g.r, B2, l2))[0]


@given(trace_matrices(3, 8), st.integers(1, 9), st.integers(0, 8), st.integers(0, 8))
def test_solve_congruence(M, r, v1, v2):
    x = solve_congruence(M - I2, (v1, v2), r)
    brute = [
        (a, b)
        for a in range(r)
        for b in range(r)
        if ((M.a - 1) * a + M.b * b - v1) % r == 0 and (M.c * a + (M.d - 1) * b - v2) % r == 0
    ]
    assert (x is None) == (not brute)
    if x is not None:
        assert x in brute


def _brute_squarefree_part(n: int) -> int:
    best = 1
    k = 1
    while k * k <= n:
        if n % (k * k) == 0:
            best = k
        k += 1
    return n // (best * best)


@pytest.mark.parametrize("T", range(3, 80))
def test_commensurability_field_vs_brute(T):
    assert commensurability_field(T) == _brute_squarefree_part(T * T - 4)


def test_field_examples():
    assert [commensurability_field(T) for T in range(3, 8)] == [5, 3, 21, 2, 5]


def test_commensurable_examples():
    g3 = GroupRep(1, Mat2(2, 1, 1, 1), (0, 0))
    g7 = GroupRep(1, Mat2(6, 5, 1, 1), (0, 0))
    ok, (m, n) = commensurable(g3, g7)
    assert ok and (m, n) == (2, 1)
    assert spectral_of_trace(3).lam ** 2 == spectral_of_trace(7).lam
    assert commensurable(GroupRep(1, Mat2(3, 2, 1, 1), (0, 0)), GroupRep(1, Mat2(5, 2, 2, 1), (0, 0))) == (False, None)
    assert commensurable(g3, g3) == (True, (1, 1))


@given(st.integers(3, 60), st.integers(3, 60))
def test_commensurable_witness(T1, T2):
    g1 = GroupRep(1, Mat2(T1 - 1, 1, T1 - 2, 1), (0, 0))
    g2 = GroupRep(1, Mat2(T2 - 1, 1, T2 - 2, 1), (0, 0))
    ok, w = commensurable(g1, g2)
    assert ok == (commensurability_field(T1) == commensurability_field(T2))
    if ok:
        m, n = w
        assert spectral_of_trace(T1).lam ** m == spectral_of_trace(T2).lam ** n
