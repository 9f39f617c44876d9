from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osckit.classify import GroupRep, act, iso
from osckit.cycles import H0_red_elements
from osckit.discrete import (
    ALPHA,
    BETA,
    GAMMA,
    H_ID,
    brute_force_iso,
    build_hom,
    compose,
    dosc_inv,
    dosc_mul,
    dosc_phi,
    gl2_box,
    heis_inv,
    heis_mul,
    heis_pow,
    heis_word,
    relations,
    verify_hom,
)
from osckit.mat import I2, U_HAT, Mat2

rs = st.integers(1, 6)
heis = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-30, 30))


@st.composite
def reps(draw):
    T = draw(st.integers(3, 8))
    r = draw(rs)
    B = draw(st.sampled_from(H0_red_elements(T)))
    return GroupRep(r, B, (draw(st.integers(0, r - 1)), draw(st.integers(0, r - 1))))


def test_heis_examples():
    r = 3
    assert heis_mul(r, ALPHA, BETA) == (1, 1, 0)
    assert heis_mul(r, BETA, ALPHA) == (1, 1, -r)
    comm = heis_word(r, [("a", 1), ("b", 1), ("a", -1), ("b", -1)])
    assert comm == (0, 0, r)
    assert heis_mul(3, (2, 1, 0), (1, 0, 0)) == (3, 1, -3)


@given(rs, heis, heis, heis)
def test_heis_group_laws(r, x, y, z):
    assert heis_mul(r, heis_mul(r, x, y), z) == heis_mul(r, x, heis_mul(r, y, z))
    assert heis_mul(r, x, heis_inv(r, x)) == H_ID
    assert heis_mul(r, GAMMA, x) == heis_mul(r, x, GAMMA)


@given(rs, heis, st.integers(-6, 6))
def test_heis_pow(r, x, n):
    p = H_ID
    for _ in range(abs(n)):
        p = heis_mul(r, p, x if n > 0 else heis_inv(r, x))
    assert heis_pow(r, x, n) == p


def test_phi_examples():
    rep = GroupRep(1, Mat2(2, 1, 1, 1), (0, 0))
    assert dosc_phi(rep, GAMMA, 1) == GAMMA
    assert dosc_phi(rep, ALPHA, 1) == heis_word(1, [("a", 2), ("b", 1)])


@given(reps(), heis, st.integers(-3, 3))
def test_phi_roundtrip_and_hom(rep, w, k):
    assert dosc_phi(rep, dosc_phi(rep, w, k), -k) == w
    v = (1, -2, 5)
    assert dosc_phi(rep, heis_mul(rep.r, w, v), k) == heis_mul(
        rep.r, dosc_phi(rep, w, k), dosc_phi(rep, v, k)
    )


@given(reps(), heis, heis, heis, st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_dosc_group_laws(rep, a, b, c, i, j, k):
    x, y, z = (a, i), (b, j), (c, k)
    assert dosc_mul(rep, dosc_mul(rep, x, y), z) == dosc_mul(rep, x, dosc_mul(rep, y, z))
    assert dosc_mul(rep, x, dosc_inv(rep, x)) == (H_ID, 0)


@given(reps())
def test_relations_hold(rep):
    assert all(lhs == rhs for _, lhs, rhs in relations(rep))


def test_hom_examples():
    rep = GroupRep(2, Mat2(3, 2, 1, 1), (0, 0))
    f = build_hom("F_kappa", rep, 1)
    assert f.images[0] == (ALPHA, 0) and f.images[3] == (H_ID, 1)
    assert verify_hom(f) == (True, None)
    f = build_hom("F_K", rep, U_HAT)
    assert f.target == GroupRep(2, Mat2(1, 1, 2, 3), (0, 0))
    assert verify_hom(f, GroupRep(2, *act(1, U_HAT, (0, 0), rep.B, rep.l, 2))) == (True, None)
    f = build_hom("F_m", GroupRep(3, Mat2(5, 2, 2, 1), (1, 2)), (1, 0))
    assert verify_hom(f)[0]


def test_verify_names_failing_relation():
    rep = GroupRep(2, Mat2(3, 2, 1, 1), (0, 0))
    f = build_hom("F_kappa", rep, 1)
    bad = type(f)(f.kind, f.source, f.target, (f.images[1], f.images[0], f.images[2], f.images[3]))
    ok, name = verify_hom(bad)
    assert not ok and name


_SMALL_K = [Mat2(1, 0, 0, 1), Mat2(0, 1, 1, 0), Mat2(2, 1, 1, 1), Mat2(0, -1, 1, 0), Mat2(1, 1, 0, 1)]


@given(reps(), st.sampled_from(_SMALL_K), st.integers(0, 5), st.integers(0, 5), st.sampled_from([1, -1]))
def test_composite_matches_orbit_action(rep, K, m1, m2, kappa):
    m = (m1 % rep.r, m2 % rep.r)
    fm = build_hom("F_m", rep, m)
    fK = build_hom("F_K", fm.target, K)
    fk = build_hom("F_kappa", fK.target, kappa)
    total = compose(compose(fm, fK), fk)
    B, l = act(kappa, K, m, rep.B, rep.l, rep.r)
    assert verify_hom(total, GroupRep(rep.r, B, l)) == (True, None)


BOX = gl2_box(5)


@pytest.mark.parametrize("T", range(3, 7))
def test_oracle_agrees_on_samples(T):
    els = H0_red_elements(T)
    for r in (1, 2, 3):
        g0 = GroupRep(r, els[0], (0, 0))
        for B in els:
            for l in [(0, 0), (1 % r, 0), (0, 1 % r)]:
                g = GroupRep(r, B, l)
                assert iso(g0, g)[0] == (brute_force_iso(g0, g, BOX) is not None)
