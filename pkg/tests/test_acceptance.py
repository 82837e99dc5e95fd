"""Acceptance suite: one test, and one printed pass/fail line, per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts.  The parameter sweep shared by
criteria 1, 2, 3 and 7 is built once as a module fixture.
"""

import itertools
import random
import time
from math import factorial

import pytest

from ggdim.cocycle import FieldElem, FieldModel, hilbert, sigma_cover_torus
from ggdim.coeff import RF_ONE, RF_Q, RatFunc
from ggdim.cover import (
    KIND_KP, TypeSpec, derive_params, kp_cover, orbits, savin_cover,
    verify_kp_lemma, whittaker_dim_closed, x_lambda,
)
from ggdim.hecke_affine import (
    AffineHeckeElement, ah_multiply, ah_one, ah_phi, ah_t, bernstein_cross,
    check_twphi_lemma, lattice_for, whittaker_dim_hecke,
)
from ggdim.hecke_finite import (
    FiniteHeckeElement, h0_multiply, hom_to_sign_dim, induced_sign_module,
)
from ggdim.symgroup import all_permutations, simple


def _line(num: int, ok: bool, desc: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {desc}")


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def _compositions(k):
    out = []
    for cuts in itertools.product((0, 1), repeat=k - 1):
        comp, run = [], 1
        for cut in cuts:
            if cut:
                comp.append(run)
                run = 1
            else:
                run += 1
        comp.append(run)
        out.append(tuple(comp))
    return out


@pytest.fixture(scope="module")
def sweep():
    """All (cover, type) instances of criterion 1, with everything computed."""
    t0 = time.monotonic()
    rows = []
    for n in range(1, 11):
        covers = [kp_cover(n, c) for c in range(n)] + [savin_cover(n)]
        for cov in covers:
            mults = (1, 2, 3, 4) if cov.kind == KIND_KP else (1, 2)
            for k in (1, 2, 3, 4):
                for mult in mults:
                    for l0 in _divisors(n):
                        ty = TypeSpec(r=mult * k, k=k, l0=l0)
                        der = derive_params(cov, ty)
                        xg = x_lambda(cov, ty)
                        recs = orbits(xg)
                        closed = whittaker_dim_closed(cov, ty)
                        hecke = whittaker_dim_hecke(cov, ty)
                        rows.append((cov, ty, der, xg, recs, closed, hecke))
    return rows, time.monotonic() - t0


def test_criterion_01_triple_agreement(sweep):
    rows, elapsed = sweep
    bad = [(cov, ty) for cov, ty, _d, _x, recs, closed, hecke in rows
           if not (closed == len(recs) == hecke)]
    ok = not bad and elapsed < 120.0
    _line(1, ok, f"dim_closed = orbit count = Hecke Hom dim on "
                 f"{len(rows)} instances ({elapsed:.1f}s)")
    assert not bad, bad[:5]
    assert elapsed < 120.0


def test_criterion_02_x_order_formulas(sweep):
    rows, _ = sweep
    bad = []
    for cov, ty, der, xg, _r, _c, _h in rows:
        want = der.n0 ** (ty.k - 1) * der.d0 if cov.kind == KIND_KP \
            else der.n0 ** ty.k
        if xg.order != want:
            bad.append((cov, ty, xg.order, want))
    _line(2, not bad, f"|X| matches the closed formula on {len(rows)} instances")
    assert not bad, bad[:5]


def test_criterion_03_kp_gcd_lemma(sweep):
    rows, _ = sweep
    kp_rows = [(cov, ty) for cov, ty, *_ in rows if cov.kind == KIND_KP]
    bad = [(cov, ty) for cov, ty in kp_rows if not verify_kp_lemma(cov, ty)]
    _line(3, not bad, f"KP gcd lemma on {len(kp_rows)} instances")
    assert not bad, bad[:5]


def test_criterion_04_multiplicity_one():
    bad = []
    for k in range(1, 7):
        for cov in (kp_cover(1, 0), savin_cover(1)):
            ty = TypeSpec(r=k, k=k, l0=1)
            dims = (whittaker_dim_closed(cov, ty),
                    len(orbits(x_lambda(cov, ty))),
                    whittaker_dim_hecke(cov, ty))
            if dims != (1, 1, 1):
                bad.append((cov, k, dims))
    _line(4, not bad, "n=1 gives Whittaker dimension 1 for k <= 6")
    assert not bad, bad


def test_criterion_05_finite_hecke_suite():
    t0 = time.monotonic()
    failures = []
    for k in range(2, 5):
        if len(all_permutations(k)) != factorial(k):
            failures.append(f"basis size k={k}")
        for i in range(1, k):
            ts = FiniteHeckeElement.basis(simple(i, k))
            expect = ts.scale(RF_Q - RF_ONE) + \
                FiniteHeckeElement.unit(k).scale(RF_Q)
            if h0_multiply(ts, ts) != expect:
                failures.append(f"quadratic k={k} i={i}")
        for i in range(1, k - 1):
            a = FiniteHeckeElement.basis(simple(i, k))
            b = FiniteHeckeElement.basis(simple(i + 1, k))
            if h0_multiply(h0_multiply(a, b), a) != \
                    h0_multiply(h0_multiply(b, a), b):
                failures.append(f"braid k={k} i={i}")
    rng = random.Random(424)
    perms = all_permutations(4)
    for _ in range(200):
        a, b, c = (FiniteHeckeElement.basis(rng.choice(perms))
                   for _ in range(3))
        if h0_multiply(h0_multiply(a, b), c) != \
                h0_multiply(a, h0_multiply(b, c)):
            failures.append("associativity k=4")
            break
    for k in range(1, 6):
        for comp in _compositions(k):
            mod = induced_sign_module(k, comp)
            expect = factorial(k)
            for part in comp:
                expect //= factorial(part)
            if mod.dim != expect:
                failures.append(f"induced dim {comp}")
            if hom_to_sign_dim(mod) != 1:
                failures.append(f"hom dim {comp}")
    elapsed = time.monotonic() - t0
    ok = not failures and elapsed < 60.0
    _line(5, ok, f"finite Hecke relations, induced modules, hom dims "
                 f"({elapsed:.1f}s)")
    assert not failures, failures
    assert elapsed < 60.0


def _bernstein_lattices():
    return [
        (kp_cover(4, 0), TypeSpec(r=2, k=2, l0=1)),
        (kp_cover(4, 0), TypeSpec(r=3, k=3, l0=1)),
        (savin_cover(4), TypeSpec(r=2, k=2, l0=1)),
        (savin_cover(4), TypeSpec(r=3, k=3, l0=1)),
    ]


def test_criterion_06_bernstein_suite():
    t0 = time.monotonic()
    failures = []
    for cov, ty in _bernstein_lattices():
        lat = lattice_for(cov, ty)
        n0 = derive_params(cov, ty).n0
        cm = lat.coroot_multiplier
        window = [t for t in itertools.product(
            range(-2 * n0, 2 * n0 + 1), repeat=ty.k) if lat.contains(t)]
        for t in window:
            for i in range(1, ty.k):
                s = simple(i, ty.k)
                st = list(t)
                st[i - 1], st[i] = st[i], st[i - 1]
                st = tuple(st)
                lhs = ah_multiply(ah_phi(lat, t), ah_t(lat, s)) - \
                    ah_multiply(ah_t(lat, s), ah_phi(lat, st))
                cross = bernstein_cross(lat, t, i)
                lattice_part = cross - \
                    AffineHeckeElement(lat, {(st, s): RF_ONE})
                if lhs != lattice_part:
                    failures.append(f"normal form {cov.kind} t={t} i={i}")
                    continue
                alpha = [0] * ty.k
                alpha[i - 1], alpha[i] = -cm, cm
                check = ah_multiply(lattice_part,
                                    ah_one(lat) - ah_phi(lat, tuple(alpha)))
                expect = (ah_phi(lat, t) - ah_phi(lat, st)).scale(RF_Q - RF_ONE)
                if check != expect:
                    failures.append(f"telescope {cov.kind} t={t} i={i}")
        # expansion lemma on the nondecreasing window [0, 2n0]
        box = (0, 2 * n0)
        for t in itertools.combinations_with_replacement(
                range(0, 2 * n0 + 1), ty.k):
            if not lat.contains(t):
                continue
            for w in all_permutations(ty.k):
                rep = check_twphi_lemma(lat, w, t, box)
                if not rep.all_ok:
                    failures.append(
                        f"expansion {cov.kind} k={ty.k} w={w.one_line} t={t}: "
                        f"{rep.failures}")
    rng = random.Random(77)
    for cov, ty in (_bernstein_lattices()[0], _bernstein_lattices()[3]):
        lat = lattice_for(cov, ty)
        window = [t for t in itertools.product(range(-4, 5), repeat=ty.k)
                  if lat.contains(t)]
        perms = all_permutations(ty.k)
        for _ in range(25):
            elts = []
            for _j in range(3):
                supp = {(rng.choice(window), rng.choice(perms)):
                        RatFunc(rng.randint(-2, 2))}
                elts.append(AffineHeckeElement(lat, supp))
            a, b, c = elts
            if ah_multiply(ah_multiply(a, b), c) != \
                    ah_multiply(a, ah_multiply(b, c)):
                failures.append("affine associativity")
                break
    elapsed = time.monotonic() - t0
    ok = not failures and elapsed < 120.0
    _line(6, ok, f"Bernstein relation window, expansion lemma, "
                 f"associativity ({elapsed:.1f}s)")
    assert not failures, failures[:5]
    assert elapsed < 120.0


def test_criterion_07_free_rank_shadow(sweep):
    rows, _ = sweep
    bad = []
    for cov, ty, _d, xg, recs, _c, _h in rows:
        total = sum(factorial(ty.k) // rec.stabilizer_order for rec in recs)
        if total != xg.order:
            bad.append((cov, ty, total, xg.order))
    _line(7, not bad, f"sum of [S_k : W_O] equals |X| on {len(rows)} instances")
    assert not bad, bad[:5]


def test_criterion_08_cocycle_suite():
    t0 = time.monotonic()
    failures = []
    rng = random.Random(88)
    for q in (5, 7, 13):
        for n in _divisors(q - 1):
            fm = FieldModel(q, n)
            pool = [FieldElem(v, e) for v in (-1, 0, 1, 2)
                    for e in range(q - 1)]
            for u in pool:
                for v in pool:
                    if u.is_unit() and v.is_unit() and \
                            not hilbert(fm, u, v).is_identity():
                        failures.append(f"unit pair q={q} n={n}")
                    if not (hilbert(fm, u, v) * hilbert(fm, v, u)).is_identity():
                        failures.append(f"antisymmetry q={q} n={n}")
            for _ in range(200):
                x, y, z = (rng.choice(pool) for _ in range(3))
                if hilbert(fm, x * y, z) != hilbert(fm, x, z) * hilbert(fm, y, z) \
                        or hilbert(fm, x, y * z) != \
                        hilbert(fm, x, y) * hilbert(fm, x, z):
                    failures.append(f"bimultiplicativity q={q} n={n}")
                    break
            classes = [FieldElem(a, e) for a in range(n) for e in range(n)]
            for x in classes:
                if x.valuation % n == 0 and x.unit_exp % n == 0:
                    continue
                if all(hilbert(fm, x, y).is_identity() for y in classes):
                    failures.append(f"degenerate class q={q} n={n} {x}")
            for c, d in ((0, 1), (1, 1), (-1, 2)):
                for _ in range(200):
                    r = rng.randint(1, 3)
                    g1, g2, g3 = (tuple(
                        FieldElem(rng.randint(-3, 3), rng.randint(0, q - 2))
                        for _ in range(r)) for _ in range(3))
                    g12 = tuple(a * b for a, b in zip(g1, g2))
                    g23 = tuple(a * b for a, b in zip(g2, g3))
                    lhs = sigma_cover_torus(fm, c, d, g1, g2) * \
                        sigma_cover_torus(fm, c, d, g12, g3)
                    rhs = sigma_cover_torus(fm, c, d, g1, g23) * \
                        sigma_cover_torus(fm, c, d, g2, g3)
                    if lhs != rhs:
                        failures.append(f"cocycle identity q={q} n={n} "
                                        f"c={c} d={d}")
                        break
    elapsed = time.monotonic() - t0
    ok = not failures and elapsed < 30.0
    _line(8, ok, f"Hilbert symbol axioms and 2-cocycle identity ({elapsed:.1f}s)")
    assert not failures, failures[:5]
    assert elapsed < 30.0


def test_criterion_09_worked_instances():
    bad = []
    cases = [
        (kp_cover(4, 0), TypeSpec(r=2, k=2, l0=1), 4, 4, 16, 10),
        (kp_cover(4, 0), TypeSpec(r=3, k=3, l0=1), 4, 2, 32, 10),
        (savin_cover(4), TypeSpec(r=2, k=2, l0=1), 2, 2, 4, 3),
    ]
    for cov, ty, n0, d0, xo, dim in cases:
        der = derive_params(cov, ty)
        xg = x_lambda(cov, ty)
        got = (der.n0, der.d0, xg.order, whittaker_dim_closed(cov, ty),
               len(orbits(xg)), whittaker_dim_hecke(cov, ty))
        want = (n0, d0, xo, dim, dim, dim)
        if got != want:
            bad.append((cov, ty, got, want))
    _line(9, not bad, "worked instances match all frozen values")
    assert not bad, bad
