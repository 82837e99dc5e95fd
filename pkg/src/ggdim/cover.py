"""Cover parameters, the finite quotient X(lambda), and orbit combinatorics.

A degree-n cover of GL_r is described here by the pair of integers (c, d)
weighting the two basic torus 2-cocycles (determinant type and block type);
d = 1 gives the Kazhdan-Patterson family, (c, d) = (-1, 2) the Savin cover.
A simple type inside GL_r is described by the block count k (so r = k*r0)
and a twist order l0 dividing n.

Everything this package ultimately counts lives in the finite abelian group

    X(lambda) = T(b) / T(b, rho),

where T(b) = Z^k records block valuations of diagonal torus elements
diag(w^{s_1} I_{r0}, ..., w^{s_k} I_{r0}) and T(b, rho) is the sublattice cut
out by the k congruences

    l0 * [ (s_1+...+s_k)*(2c+d)*r0 - s_i*d ] = 0  (mod n),   i = 1..k.

The derived constants are

    n0 = n / gcd(n, (2c+d)*r0*l0, d*l0),
    d0 = n / gcd(n, l0*(2cr + dr - d)),

with d0 | n0 | n; n0*Z^k (the lattice T0(b)) always sits inside T(b, rho).

The congruence system is the primary definition: x_lambda solves it by Smith
normal form, yielding the invariant factors of X(lambda), a projection
Z^k -> X(lambda) with kernel exactly T(b, rho), and an integer-matrix model
of the coordinate-permutation action of S_k on the quotient.  The structural
formulas |X| = n0^(k-1)*d0 (KP) and n0^k (Savin) are asserted against it, and
the generator description of T(b, rho) is checked by tests rather than taken
as the definition, so the Generic kind is supported by the same code path.

Orbit enumeration is exhaustive (vectorised over the element table), with
canonical representatives chosen lexicographically smallest in projected
coordinates.  The recorded stabilizer is the point stabilizer of the first
orbit element (in canonical order) whose stabilizer is a standard Young
subgroup, stored as the composition of its block sizes; orbits where no such
element exists are flagged instead of guessed (not observed for KP/Savin,
conceivable for Generic).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd

import numpy as np

from ._intmat import (
    hermite_row_basis, hnf_contains, ident, mat_mul, mat_vec,
    smith_normal_form,
)
from .symgroup import all_permutations, young_order

KIND_KP = "kp"
KIND_SAVIN = "savin"
KIND_GENERIC = "generic"

DEFAULT_ORBIT_BOUND = 10 ** 6


@dataclass(frozen=True)
class CoverSpec:
    """Degree-n cover with cocycle exponents (c, d)."""
    kind: str
    n: int
    c: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cover degree n must be >= 1, got %d" % self.n)
        if self.kind == KIND_KP:
            if self.d != 1:
                raise ValueError("KP covers have d = 1")
        elif self.kind == KIND_SAVIN:
            if (self.c, self.d) != (-1, 2):
                raise ValueError("the Savin cover has (c, d) = (-1, 2)")
        elif self.kind != KIND_GENERIC:
            raise ValueError("unknown cover kind %r" % (self.kind,))


def kp_cover(n: int, c: int) -> CoverSpec:
    return CoverSpec(KIND_KP, n, c, 1)


def savin_cover(n: int) -> CoverSpec:
    return CoverSpec(KIND_SAVIN, n, -1, 2)


def generic_cover(n: int, c: int, d: int) -> CoverSpec:
    return CoverSpec(KIND_GENERIC, n, c, d)


@dataclass(frozen=True)
class TypeSpec:
    """Block shape of a simple type: r = k*r0 blocks of size r0, twist order l0."""
    r: int
    k: int
    l0: int = 1
    f: int = 1

    def __post_init__(self):
        for name in ("r", "k", "l0", "f"):
            if getattr(self, name) < 1:
                raise ValueError("%s must be >= 1" % name)
        if self.r % self.k != 0:
            raise ValueError("k=%d does not divide r=%d" % (self.k, self.r))


@dataclass(frozen=True)
class DerivedParams:
    r0: int
    n0: int
    d0: int


def derive_params(cov: CoverSpec, ty: TypeSpec) -> DerivedParams:
    """The constants (r0, n0, d0); raises if l0 does not divide n."""
    if cov.n % ty.l0 != 0:
        raise ValueError("l0=%d does not divide n=%d" % (ty.l0, cov.n))
    r0 = ty.r // ty.k
    n, c, d, l0, r = cov.n, cov.c, cov.d, ty.l0, ty.r
    n0 = n // gcd(n, (2 * c + d) * r0 * l0, d * l0)
    d0 = n // gcd(n, l0 * (2 * c * r + d * r - d))
    assert n0 % d0 == 0 and n % n0 == 0 and n % d0 == 0
    return DerivedParams(r0=r0, n0=n0, d0=d0)


def ord_sum(t) -> int:
    """Coordinate sum of a torus exponent vector (permutation invariant)."""
    return sum(t)


def _congruence_rows(cov: CoverSpec, ty: TypeSpec) -> list:
    r0 = ty.r // ty.k
    a = ty.l0 * (2 * cov.c + cov.d) * r0
    b = ty.l0 * cov.d
    return [[a - (b if i == j else 0) for j in range(ty.k)]
            for i in range(ty.k)]


def in_T_brho(cov: CoverSpec, ty: TypeSpec, t) -> bool:
    """Does the exponent vector t satisfy all k defining congruences mod n?"""
    if len(t) != ty.k:
        raise ValueError("expected a vector of length k=%d" % ty.k)
    derive_params(cov, ty)          # validates the pairing
    rows = _congruence_rows(cov, ty)
    return all(sum(row[j] * t[j] for j in range(ty.k)) % cov.n == 0
               for row in rows)


class QuotientGroup:
    """X(lambda) = Z^k / T(b, rho) with its S_k action.

    project maps an exponent vector to its canonical tuple of residues
    (coordinates along the Smith basis, reduced mod the invariant factors);
    lift gives one integer preimage.  The kernel of project is exactly the
    relation lattice.
    """

    def __init__(self, k: int, relation_rows):
        self.k = k
        self.relation_lattice = hermite_row_basis(relation_rows)
        if len(self.relation_lattice) != k:
            raise ValueError("relation lattice does not have full rank %d" % k)
        # Smith form of the basis matrix B (basis vectors as columns)
        b = [[self.relation_lattice[j][i] for j in range(k)] for i in range(k)]
        u, uinv, dd, _v = smith_normal_form(b)
        self._u = u
        self._uinv = uinv
        self.invariant_factors = tuple(dd[i][i] for i in range(k))
        assert all(f >= 1 for f in self.invariant_factors)
        self.order = 1
        for f in self.invariant_factors:
            self.order *= f

    def project(self, t) -> tuple:
        if len(t) != self.k:
            raise ValueError("expected a vector of length k=%d" % self.k)
        raw = mat_vec(self._u, t)
        return tuple(x % f for x, f in zip(raw, self.invariant_factors))

    def lift(self, x) -> tuple:
        return mat_vec(self._uinv, x)

    def contains_zero(self, t) -> bool:
        """Is t in the relation lattice (i.e. projects to 0)?"""
        return hnf_contains(self.relation_lattice, t)

    def perm_matrix(self, w) -> list:
        """Integer matrix of the action of w on projected coordinates."""
        k = self.k
        p = [[1 if w(j + 1) - 1 == i else 0 for j in range(k)] for i in range(k)]
        return mat_mul(mat_mul(self._u, p), self._uinv)

    def act_class(self, w, x) -> tuple:
        raw = mat_vec(self.perm_matrix(w), x)
        return tuple(v % f for v, f in zip(raw, self.invariant_factors))

    def __repr__(self):
        return "QuotientGroup(k=%d, order=%d, factors=%s)" % (
            self.k, self.order, list(self.invariant_factors))


def x_lambda(cov: CoverSpec, ty: TypeSpec) -> QuotientGroup:
    """The quotient X(lambda), from the congruence system by Smith reduction."""
    dp = derive_params(cov, ty)
    k, n = ty.k, cov.n
    a = _congruence_rows(cov, ty)
    # solution lattice of A s = 0 (mod n): with U A V = D diagonal,
    # s = V z where d_i z_i = 0 (mod n), i.e. z_i in (n/gcd(n, d_i)) Z
    _u, _uinv, dd, v = smith_normal_form(a)
    mult = [n // gcd(n, dd[i][i]) for i in range(k)]
    basis_rows = [[v[i][j] * mult[j] for i in range(k)] for j in range(k)]
    xg = QuotientGroup(k, basis_rows)
    if cov.kind == KIND_KP:
        assert xg.order == dp.n0 ** (k - 1) * dp.d0, \
            "KP order formula violated (implementation bug)"
    elif cov.kind == KIND_SAVIN:
        assert xg.order == dp.n0 ** k, \
            "Savin order formula violated (implementation bug)"
    return xg


@dataclass(frozen=True)
class OrbitRecord:
    """One S_k-orbit on X(lambda).

    stabilizer is the composition of the point stabilizer of the first orbit
    element (in canonical order) whose stabilizer is standard Young; when no
    orbit element has a Young stabilizer it is None and young is False (the
    stabilizer order is still recorded).
    """
    representative: tuple
    size: int
    stabilizer: tuple | None
    stabilizer_order: int
    young: bool


def _young_composition_of(stab_words, k: int) -> tuple | None:
    """Composition if the given permutation set is standard Young, else None."""
    adjacent = set()
    for w in stab_words:
        ol = w.one_line
        for i in range(1, k):
            swapped = list(range(1, k + 1))
            swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
            if ol == tuple(swapped):
                adjacent.add(i)
    parts = []
    run = 1
    for i in range(1, k):
        if i in adjacent:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    comp = tuple(parts)
    if young_order(comp) == len(stab_words):
        return comp
    return None


def orbits(xg: QuotientGroup, bound: int = DEFAULT_ORBIT_BOUND) -> list:
    """Exhaustive S_k-orbit decomposition of X(lambda).

    Elements are encoded as mixed-radix codes over the invariant factors
    (big-endian, so code order = lexicographic order on projected tuples);
    each permutation acts through an integer matrix on projected coordinates
    and the canonical representative of an orbit is its smallest code.
    """
    if xg.order > bound:
        raise ValueError("enumeration bound exceeded: |X| = %d > %d"
                         % (xg.order, bound))
    k = xg.k
    factors = np.array(xg.invariant_factors, dtype=np.int64)
    weights = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        weights[i] = weights[i + 1] * factors[i + 1]
    n_el = xg.order

    # element table: row ix = digits of code ix
    codes = np.arange(n_el, dtype=np.int64)
    table = (codes[:, None] // weights[None, :]) % factors[None, :]

    perms = all_permutations(k)
    mats = {w: np.array(xg.perm_matrix(w), dtype=np.int64) for w in perms}
    canon = codes.copy()
    for w in perms:
        if w.is_identity():
            continue
        img = (table @ mats[w].T) % factors[None, :]
        np.minimum(canon, img @ weights, out=canon)

    reps, counts = np.unique(canon, return_counts=True)
    order_by_orbit = np.argsort(canon, kind="stable")
    boundaries = np.searchsorted(canon[order_by_orbit], reps)

    def decode(code):
        return tuple(int(x) for x in (code // weights) % factors)

    def point_stab(x):
        out = []
        for w in perms:
            raw = mats[w] @ np.array(x, dtype=np.int64)
            if tuple(raw % factors) == x:
                out.append(w)
        return out

    records = []
    for oi, rep_code in enumerate(reps):
        size = int(counts[oi])
        members = order_by_orbit[boundaries[oi]:boundaries[oi] + size]
        comp = None
        stab_order = factorial(k) // size
        if stab_order == 1:
            comp = (1,) * k                # free orbit: trivial = Young
        else:
            for ix in members:             # ascending code order within orbit
                stab = point_stab(decode(codes[ix]))
                assert len(stab) == stab_order
                comp = _young_composition_of(stab, k)
                if comp is not None:
                    break
        records.append(OrbitRecord(
            representative=decode(int(rep_code)),
            size=size,
            stabilizer=comp,
            stabilizer_order=stab_order,
            young=comp is not None,
        ))
    return records


def whittaker_dim_closed(cov: CoverSpec, ty: TypeSpec) -> int:
    """Closed-form orbit count: C(k+n0-1, k) * d0/n0 for KP, C(k+n0-1, k) for Savin."""
    dp = derive_params(cov, ty)
    if cov.kind == KIND_KP:
        val = Fraction(comb(ty.k + dp.n0 - 1, ty.k) * dp.d0, dp.n0)
    elif cov.kind == KIND_SAVIN:
        val = Fraction(comb(ty.k + dp.n0 - 1, ty.k))
    else:
        raise ValueError("no closed form asserted for kind %r" % (cov.kind,))
    if val.denominator != 1 or val <= 0:
        raise AssertionError("closed form is not a positive integer: %s" % val)
    return int(val)


def verify_kp_lemma(cov: CoverSpec, ty: TypeSpec) -> bool:
    """Check n0/d0 = gcd(n/l0, 2cr + r - 1) and gcd(n0/d0, k) = 1."""
    if cov.kind != KIND_KP:
        raise ValueError("KP-only lemma")
    dp = derive_params(cov, ty)
    lhs = dp.n0 // dp.d0
    rhs = gcd(cov.n // ty.l0, 2 * cov.c * ty.r + ty.r - 1)
    return lhs == rhs and gcd(lhs, ty.k) == 1


def select_representatives(cov: CoverSpec, ty: TypeSpec) -> list:
    """Sorted-box orbit representatives in T(b).

    All nondecreasing tuples in {0..n0-1}^k for Savin; for KP the subset with
    coordinate sum mod n0 in {0..d0-1}.  Their images in X(lambda) meet every
    S_k-orbit exactly once (tested, not assumed).
    """
    dp = derive_params(cov, ty)
    if cov.kind == KIND_KP:
        return [t for t in itertools.combinations_with_replacement(range(dp.n0), ty.k)
                if ord_sum(t) % dp.n0 < dp.d0]
    if cov.kind == KIND_SAVIN:
        return list(itertools.combinations_with_replacement(range(dp.n0), ty.k))
    raise ValueError("no representative rule asserted for kind %r" % (cov.kind,))


def kp_class_test(cov: CoverSpec, ty: TypeSpec, t1, t2) -> bool:
    """For t1 ~ t2 mod T(b, rho): is t1 - t2 in T0(b) = n0*Z^k?

    Raises if t1 and t2 are not equivalent.  The return value must agree with
    the congruence ord(t1) = ord(t2) mod n0; that agreement is what the
    verifier checks.
    """
    if cov.kind != KIND_KP:
        raise ValueError("KP-only test")
    dp = derive_params(cov, ty)
    diff = tuple(a - b for a, b in zip(t1, t2))
    if not in_T_brho(cov, ty, diff):
        raise ValueError("t1 and t2 are not equivalent mod T(b, rho)")
    return all(x % dp.n0 == 0 for x in diff)
