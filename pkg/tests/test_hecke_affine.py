import itertools
import random

import pytest

from ggdim.coeff import RF_ONE, RF_Q, RatFunc, q_power
from ggdim.cover import (
    TypeSpec, derive_params, kp_cover, orbits, savin_cover,
    whittaker_dim_closed, x_lambda,
)
from ggdim.hecke_affine import (
    AffineHeckeElement, LatticeSpec, ah_multiply, ah_one, ah_phi, ah_t,
    bernstein_cross, check_twphi_lemma, gg_module, lattice_for, lattice_spec,
    whittaker_dim_hecke,
)
from ggdim.hecke_finite import FiniteHeckeElement, h0_multiply
from ggdim.symgroup import (
    Permutation, all_permutations, identity, simple,
)

Q0M1 = RF_Q - RF_ONE


def savin_lat():
    return lattice_for(savin_cover(4), TypeSpec(r=2, k=2, l0=1))


def kp_lat_k3():
    return lattice_for(kp_cover(4, 0), TypeSpec(r=3, k=3, l0=1))


def test_lattice_for_golden():
    lat = savin_lat()
    assert lat.basis == ((2, 0), (0, 2))
    assert lat.coroot_multiplier == 2
    lat3 = kp_lat_k3()
    assert lat3.coroot_multiplier == 4
    assert lat3.contains((2, 2, 2))
    assert not lat3.contains((2, 2, 0))


def test_lattice_spec_rejects_unstable():
    with pytest.raises(ValueError):
        lattice_spec([[1, 2], [0, 5]])


def test_lattice_spec_rejects_deficient_rank():
    with pytest.raises(ValueError):
        lattice_spec([[1, 1]])


def test_bernstein_cross_commuting_case():
    lat = savin_lat()
    got = bernstein_cross(lat, (2, 2), 1)
    assert got == AffineHeckeElement(lat, {((2, 2), simple(1, 2)): RF_ONE})
    # phi_t * T_s = T_s * phi_t when s.t = t
    assert ah_multiply(ah_phi(lat, (2, 2)), ah_t(lat, simple(1, 2))) == \
        ah_multiply(ah_t(lat, simple(1, 2)), ah_phi(lat, (2, 2)))


def test_bernstein_cross_single_step():
    lat = savin_lat()
    s = simple(1, 2)
    got = bernstein_cross(lat, (2, 0), 1)
    expect = AffineHeckeElement(lat, {
        ((0, 2), s): RF_ONE,
        ((2, 0), identity(2)): Q0M1,
    })
    assert got == expect
    # the identity it encodes: phi_(2,0) * T_s = T_s * phi_(0,2) + (q0-1) phi_(2,0)
    lhs = ah_multiply(ah_phi(lat, (2, 0)), ah_t(lat, s))
    rhs = ah_multiply(ah_t(lat, s), ah_phi(lat, (0, 2))) + \
        ah_phi(lat, (2, 0)).scale(Q0M1)
    assert lhs == rhs


def test_bernstein_cross_two_step_geometric_sum():
    lat = savin_lat()
    s = simple(1, 2)
    got = bernstein_cross(lat, (4, 0), 1)
    expect = AffineHeckeElement(lat, {
        ((0, 4), s): RF_ONE,
        ((4, 0), identity(2)): Q0M1,
        ((2, 2), identity(2)): Q0M1,
    })
    assert got == expect


def test_bernstein_cross_errors():
    lat = savin_lat()
    with pytest.raises(ValueError):
        bernstein_cross(lat, (1, 0), 1)          # not in Y
    with pytest.raises(ValueError):
        bernstein_cross(lat, (2, 0), 2)          # bad simple index
    broken = LatticeSpec(k=2, basis=((1, 0), (0, 1)), coroot_multiplier=2)
    with pytest.raises(ValueError):
        bernstein_cross(broken, (1, 0), 1)       # divisibility failure


def test_lattice_subalgebra():
    lat = savin_lat()
    rng = random.Random(12)
    for _ in range(30):
        t = tuple(2 * rng.randint(-3, 3) for _ in range(2))
        u = tuple(2 * rng.randint(-3, 3) for _ in range(2))
        got = ah_multiply(ah_phi(lat, t), ah_phi(lat, u))
        expect = ah_phi(lat, tuple(a + b for a, b in zip(t, u)))
        assert got == expect


def test_finite_subalgebra_embedding():
    # products of pure T-elements agree with the finite Hecke algebra
    lat = kp_lat_k3()
    rng = random.Random(4)
    perms = all_permutations(3)
    zero = (0, 0, 0)
    for _ in range(40):
        v, w = rng.choice(perms), rng.choice(perms)
        fin = h0_multiply(FiniteHeckeElement.basis(v), FiniteHeckeElement.basis(w))
        emb = ah_multiply(ah_t(lat, v), ah_t(lat, w))
        expect = AffineHeckeElement(lat, {(zero, u): c for u, c in fin.support.items()})
        assert emb == expect


def test_quadratic_relation_in_affine_algebra():
    for lat in (savin_lat(), kp_lat_k3()):
        one = ah_one(lat)
        for i in range(1, lat.k):
            t = ah_t(lat, simple(i, lat.k))
            prod = ah_multiply(t + one, t - one.scale(RF_Q))
            assert prod.is_zero()


def _window(lat, radius):
    """All lattice points of Y with coordinates in [-radius, radius]."""
    pts = []
    for t in itertools.product(range(-radius, radius + 1), repeat=lat.k):
        if lat.contains(t):
            pts.append(t)
    return pts


def test_bernstein_identity_window_savin():
    lat = savin_lat()
    s = simple(1, 2)
    alpha = (lat.coroot_multiplier, -lat.coroot_multiplier)
    neg_alpha = tuple(-x for x in alpha)
    for t in _window(lat, 4):
        st = (t[1], t[0])
        cross = bernstein_cross(lat, t, 1)
        lattice_part = cross - AffineHeckeElement(lat, {(st, s): RF_ONE})
        # 1) the relation: phi_t * T_s - T_s * phi_{s.t} = lattice part
        lhs = ah_multiply(ah_phi(lat, t), ah_t(lat, s)) - \
            ah_multiply(ah_t(lat, s), ah_phi(lat, st))
        assert lhs == lattice_part
        # 2) oracle for the geometric sum: multiplying by (1 - phi_{-alpha})
        #    must give (q0-1)(phi_t - phi_{s.t})
        check = ah_multiply(lattice_part, ah_one(lat) - ah_phi(lat, neg_alpha))
        expect = (ah_phi(lat, t) - ah_phi(lat, st)).scale(Q0M1)
        assert check == expect


def test_bernstein_identity_window_kp_k3():
    lat = kp_lat_k3()
    for t in _window(lat, 4):
        for i in (1, 2):
            s = simple(i, lat.k)
            st = list(t)
            st[i - 1], st[i] = st[i], st[i - 1]
            st = tuple(st)
            lhs = ah_multiply(ah_phi(lat, t), ah_t(lat, s)) - \
                ah_multiply(ah_t(lat, s), ah_phi(lat, st))
            cross = bernstein_cross(lat, t, i)
            lattice_part = cross - AffineHeckeElement(lat, {(st, s): RF_ONE})
            assert lhs == lattice_part
            alpha = [0] * lat.k
            alpha[i - 1], alpha[i] = lat.coroot_multiplier, -lat.coroot_multiplier
            neg_alpha = tuple(-x for x in alpha)
            check = ah_multiply(lattice_part, ah_one(lat) - ah_phi(lat, neg_alpha))
            expect = (ah_phi(lat, t) - ah_phi(lat, st)).scale(Q0M1)
            assert check == expect


def test_constant_vectors_are_central():
    lat = savin_lat()
    for c in (-4, -2, 2, 4):
        z = ah_phi(lat, (c, c))
        for w in all_permutations(2):
            tw = ah_t(lat, w)
            assert ah_multiply(z, tw) == ah_multiply(tw, z)


def test_associativity_random_triples():
    rng = random.Random(31)
    for lat in (savin_lat(), kp_lat_k3()):
        k = lat.k
        perms = all_permutations(k)
        window = _window(lat, 2 * derive_params(
            savin_cover(4) if k == 2 else kp_cover(4, 0),
            TypeSpec(r=k, k=k, l0=1) if k == 2 else TypeSpec(r=3, k=3, l0=1)).n0)

        def rand_elt():
            supp = {}
            for _ in range(rng.randint(1, 2)):
                c = rng.randint(-2, 2)
                if c:
                    supp[(rng.choice(window), rng.choice(perms))] = RatFunc(c)
            return AffineHeckeElement(lat, supp)

        for _ in range(25):
            a, b, c = rand_elt(), rand_elt(), rand_elt()
            assert ah_multiply(ah_multiply(a, b), c) == ah_multiply(a, ah_multiply(b, c))


def test_ah_multiply_lattice_mismatch():
    with pytest.raises(ValueError):
        ah_multiply(ah_one(savin_lat()), ah_one(kp_lat_k3()))


def test_gg_module_golden_kp():
    gg = gg_module(kp_cover(4, 0), TypeSpec(r=2, k=2, l0=1))
    assert len(gg.blocks) == 10
    assert gg.total_rank() == 16
    assert gg.x_order == 16


def test_gg_module_golden_savin():
    gg = gg_module(savin_cover(4), TypeSpec(r=2, k=2, l0=1))
    assert len(gg.blocks) == 3
    assert [m.dim for _o, m in gg.blocks] == [1, 2, 1]
    assert gg.total_rank() == 4


def test_gg_module_trivial_cover():
    gg = gg_module(kp_cover(1, 0), TypeSpec(r=4, k=4, l0=1))
    assert len(gg.blocks) == 1
    rec, mod = gg.blocks[0]
    assert rec.stabilizer == (4,)
    assert mod.dim == 1
    assert gg.total_rank() == 1


def test_gg_module_generic_rejected():
    from ggdim.cover import generic_cover
    with pytest.raises(ValueError):
        gg_module(generic_cover(4, 0, 2), TypeSpec(r=2, k=2, l0=1))


def test_whittaker_dim_hecke_goldens():
    assert whittaker_dim_hecke(kp_cover(4, 0), TypeSpec(r=2, k=2, l0=1)) == 10
    assert whittaker_dim_hecke(savin_cover(4), TypeSpec(r=2, k=2, l0=1)) == 3
    assert whittaker_dim_hecke(kp_cover(1, 0), TypeSpec(r=3, k=3, l0=1)) == 1


def test_triple_agreement_small():
    cases = []
    for n in (1, 2, 3, 4):
        for k in (1, 2, 3):
            for c in range(n):
                cases.append((kp_cover(n, c), TypeSpec(r=k, k=k, l0=1)))
            cases.append((savin_cover(n), TypeSpec(r=2 * k, k=k, l0=1)))
    for cov, ty in cases:
        closed = whittaker_dim_closed(cov, ty)
        brute = len(orbits(x_lambda(cov, ty)))
        hecke = whittaker_dim_hecke(cov, ty)
        assert closed == brute == hecke


def test_twphi_identity_w():
    lat = savin_lat()
    rep = check_twphi_lemma(lat, identity(2), (0, 2), (0, 3))
    assert rep.terms == [((0, 2), identity(2), RF_ONE)]
    assert rep.all_ok


def test_twphi_commuting_case():
    lat = savin_lat()
    rep = check_twphi_lemma(lat, simple(1, 2), (2, 2), (0, 4))
    assert rep.terms == [((2, 2), simple(1, 2), RF_ONE)]
    assert rep.all_ok


def test_twphi_sorted_example():
    lat = savin_lat()
    rep = check_twphi_lemma(lat, simple(1, 2), (0, 2), (0, 2))
    got = {(tp, wp.one_line): c for tp, wp, c in rep.terms}
    assert got == {
        ((2, 0), (2, 1)): RF_ONE,
        ((0, 2), (1, 2)): Q0M1,
    }
    assert all(sum(tp) == 2 for tp, _w, _c in rep.terms)
    assert rep.all_ok


def test_twphi_descending_reports_negative():
    # for the decreasing tuple the T_e coefficient is -(q0-1): the report
    # must flag it rather than hide it
    lat = savin_lat()
    rep = check_twphi_lemma(lat, simple(1, 2), (2, 0), (0, 2))
    assert rep.length_ok and rep.ord_ok
    assert not rep.nonneg_ok
    assert any("non-negative" in msg for msg in rep.failures)
    got = {(tp, wp.one_line): c for tp, wp, c in rep.terms}
    assert got[((0, 2), (1, 2))] == RF_ONE - RF_Q


def test_twphi_sorted_window_savin():
    lat = savin_lat()
    n0 = 2
    box = (0, 2 * n0)
    perms = all_permutations(2)
    for t in itertools.product(range(0, 2 * n0 + 1), repeat=2):
        if list(t) != sorted(t) or not lat.contains(t):
            continue
        for w in perms:
            rep = check_twphi_lemma(lat, w, t, box)
            assert rep.all_ok, rep.failures


def test_twphi_sorted_window_kp_k3_longest():
    lat = kp_lat_k3()
    w0 = Permutation([3, 2, 1])
    box = (0, 8)
    for t in itertools.combinations_with_replacement(range(0, 9), 3):
        if not lat.contains(t):
            continue
        rep = check_twphi_lemma(lat, w0, t, box)
        assert rep.length_ok and rep.ord_ok
        assert rep.nonneg_ok, rep.failures


def test_twphi_preconditions():
    lat = savin_lat()
    with pytest.raises(ValueError):
        check_twphi_lemma(lat, simple(1, 2), (0, 2), (0, 1))   # outside box
    with pytest.raises(ValueError):
        check_twphi_lemma(lat, simple(1, 2), (0, 1), (0, 2))   # not in Y


def test_twphi_at_f2():
    lat = savin_lat()
    rep = check_twphi_lemma(lat, simple(1, 2), (0, 2), (0, 2), f=2)
    got = {(tp, wp.one_line): c for tp, wp, c in rep.terms}
    assert got[((0, 2), (1, 2))] == q_power(2) - RF_ONE
    assert rep.all_ok
