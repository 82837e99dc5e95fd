"""The affine Hecke algebra in Bernstein presentation, over the lattice Y.

Here Y = T(b, rho) is a finite-index S_k-stable sublattice of Z^k (produced
by the cover module).  The algebra H has underlying vector space
C[Y] (x) H_0, with C[Y] spanned by phi_t (t in Y, phi_t*phi_u = phi_{t+u})
and H_0 the finite Hecke algebra with parameter q0.  Elements are kept in
lattice-left normal form: linear combinations of phi_t * T_w.

The two subalgebra structures are glued by the Bernstein relation

    phi_t * T_s - T_s * phi_{s.t} = (q0 - 1) (phi_t - phi_{s.t}) / (1 - phi_{-a}),

where, for the simple reflection s = s_i, the coroot direction must be
rescaled to the minimal lattice multiple a = c*(e_i - e_{i+1}) with c the
coroot_multiplier of Y (e_i - e_{i+1} itself need not lie in Y; minimality
of c is verified against the cover data, not assumed).  The right-hand side
is the finite geometric sum

    (q0 - 1) * sum_{j=0}^{m-1} phi_{t - j*a}          for m > 0,
  - (q0 - 1) * sum_{j=1}^{|m|}  phi_{t + j*a}          for m < 0,
    0                                                  for m = 0,

with m = (t_i - t_{i+1})/c, and it equals both phi_t*T_s - T_s*phi_{s.t} and
T_s*phi_t - phi_{s.t}*T_s (the relation is symmetric in that sense).
bernstein_cross returns the normal form of T_{s_i} * phi_t, i.e. the element
phi_{s.t}*T_s plus that lattice part; general products rewrite T_s past
lattice factors with it, one reduced-word letter at a time.

The Gelfand-Graev module attached to a cover and type decomposes into one
block per S_k-orbit on X(lambda); each block is the free C[Y]-module on the
sign module induced from the orbit's stabilizer composition.  Its Whittaker
dimension is the sum over blocks of dim Hom(block, sign), and a homomorphism
from C[Y] (x) W to a one-dimensional module is determined by its restriction
to W, so each block contributes hom_to_sign_dim of its finite part.  (The
one-dimensional C[Y]-action on the target is a scalar normalisation with no
effect on dimensions; it is fixed to 1 throughout.)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._intmat import hermite_row_basis, hnf_contains, smith_normal_form
from .coeff import IntPoly, RF_ONE, RF_Q, RF_ZERO, RatFunc, q_power
from .cover import CoverSpec, TypeSpec, DEFAULT_ORBIT_BOUND, orbits, ord_sum, x_lambda
from .hecke_finite import (
    FiniteHeckeElement, h0_multiply, hom_to_sign_dim, induced_sign_module,
)
from .symgroup import Permutation, act, identity, length, reduced_word, simple

RF_MINUS_ONE = RatFunc(-1)


@dataclass(frozen=True)
class LatticeSpec:
    """A full-rank S_k-stable sublattice Y of Z^k with its coroot multiplier."""
    k: int
    basis: tuple
    coroot_multiplier: int

    def contains(self, t) -> bool:
        return hnf_contains(self.basis, t)


def lattice_spec(rows) -> LatticeSpec:
    """Build a LatticeSpec from generating rows, validating the invariants."""
    basis = hermite_row_basis(rows)
    if not basis:
        raise ValueError("empty lattice")
    k = len(basis[0])
    if len(basis) != k:
        raise ValueError("lattice is not full rank in Z^%d" % k)
    # S_k-stability: permuted generators stay inside
    for w in [simple(i, k) for i in range(1, k)]:
        for row in basis:
            if not hnf_contains(basis, act(w, row)):
                raise ValueError("lattice is not S_k-stable")
    # index of Y in Z^k bounds the coroot multiplier (exponent | order)
    cols = [[basis[j][i] for j in range(k)] for i in range(k)]
    _u, _ui, dd, _v = smith_normal_form(cols)
    index = 1
    for i in range(k):
        index *= dd[i][i]
    cm = None
    if k == 1:
        cm = 1          # no roots; keep the field total and harmless
    for c in range(1, index + 1) if k > 1 else ():
        alpha = [c, -c] + [0] * (k - 2)
        if hnf_contains(basis, alpha):
            cm = c
            break
    if cm is None:
        raise ValueError("no coroot multiple found up to the lattice index")
    for i in range(1, k):
        alpha = [0] * k
        alpha[i - 1], alpha[i] = cm, -cm
        if not hnf_contains(basis, alpha):
            raise ValueError("coroot multiplier is not uniform across i")
        if cm > 1:
            smaller = [x // cm for x in alpha]
            for c in range(1, cm):
                if hnf_contains(basis, [c * x for x in smaller]):
                    raise ValueError("coroot multiplier is not minimal at i=%d" % i)
    return LatticeSpec(k=k, basis=basis, coroot_multiplier=cm)


def lattice_for(cov: CoverSpec, ty: TypeSpec) -> LatticeSpec:
    """The lattice T(b, rho) of a cover/type pair, via the congruence system."""
    return lattice_spec(x_lambda(cov, ty).relation_lattice)


class AffineHeckeElement:
    """Linear combination of phi_t * T_w (normal form), t in Y."""

    __slots__ = ("lattice", "support")

    def __init__(self, lattice: LatticeSpec, support=None, _checked=False):
        self.lattice = lattice
        clean = {}
        for (t, w), c in (support or {}).items():
            t = tuple(t)
            if not _checked:
                if len(t) != lattice.k or not lattice.contains(t):
                    raise ValueError("lattice vector %r is not in Y" % (t,))
                if not isinstance(w, Permutation) or w.k != lattice.k:
                    raise ValueError("bad Weyl label %r" % (w,))
            if c:
                clean[(t, w)] = c
        self.support = clean

    def __add__(self, other: "AffineHeckeElement") -> "AffineHeckeElement":
        self._check_same(other)
        out = dict(self.support)
        for key, c in other.support.items():
            v = out.get(key, RF_ZERO) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return AffineHeckeElement(self.lattice, out, _checked=True)

    def scale(self, c) -> "AffineHeckeElement":
        if not c:
            return AffineHeckeElement(self.lattice, {}, _checked=True)
        return AffineHeckeElement(
            self.lattice, {k: x * c for k, x in self.support.items()}, _checked=True)

    def __sub__(self, other):
        return self + other.scale(RF_MINUS_ONE)

    def __mul__(self, other):
        return ah_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineHeckeElement)
                and self.lattice == other.lattice
                and self.support == other.support)

    def is_zero(self) -> bool:
        return not self.support

    def _check_same(self, other):
        if self.lattice != other.lattice:
            raise ValueError("lattice mismatch")

    def __repr__(self):
        if not self.support:
            return "AffineHeckeElement(0)"
        keys = sorted(self.support, key=lambda kw: (kw[0], kw[1].one_line))
        return " + ".join("(%s)*phi%s*T%s" % (self.support[kw], list(kw[0]),
                                              list(kw[1].one_line))
                          for kw in keys)


def ah_phi(lat: LatticeSpec, t) -> AffineHeckeElement:
    """The basis element phi_t."""
    return AffineHeckeElement(lat, {(tuple(t), identity(lat.k)): RF_ONE})


def ah_t(lat: LatticeSpec, w: Permutation) -> AffineHeckeElement:
    """The basis element T_w."""
    zero = (0,) * lat.k
    return AffineHeckeElement(lat, {(zero, w): RF_ONE})


def ah_one(lat: LatticeSpec) -> AffineHeckeElement:
    return ah_t(lat, identity(lat.k))


def bernstein_cross(lat: LatticeSpec, t, i: int,
                    q0: RatFunc = RF_Q) -> AffineHeckeElement:
    """Normal form of T_{s_i} * phi_t: phi_{s.t}*T_{s_i} + geometric lattice part.

    By the symmetry of the Bernstein relation the same lattice part also
    witnesses phi_t*T_{s_i} - T_{s_i}*phi_{s.t}.
    """
    t = tuple(t)
    if not lat.contains(t):
        raise ValueError("lattice vector %r is not in Y" % (t,))
    k = lat.k
    if not 1 <= i <= k - 1:
        raise ValueError("simple index %d out of range" % i)
    cm = lat.coroot_multiplier
    diff = t[i - 1] - t[i]
    if diff % cm != 0:
        raise ValueError(
            "t_i - t_{i+1} = %d is not divisible by the coroot multiplier %d "
            "(lattice-spec bug)" % (diff, cm))
    m = diff // cm
    s = simple(i, k)
    st = act(s, t)
    supp = {(st, s): RF_ONE}
    q0m1 = q0 - RF_ONE
    if m > 0:
        for j in range(m):
            lab = list(t)
            lab[i - 1] -= j * cm
            lab[i] += j * cm
            key = (tuple(lab), identity(k))
            supp[key] = supp.get(key, RF_ZERO) + q0m1
    elif m < 0:
        for j in range(1, -m + 1):
            lab = list(t)
            lab[i - 1] += j * cm
            lab[i] -= j * cm
            key = (tuple(lab), identity(k))
            supp[key] = supp.get(key, RF_ZERO) - q0m1
    return AffineHeckeElement(lat, supp, _checked=True)


def _cross_word_phi(lat: LatticeSpec, word: tuple, u: tuple, q0: RatFunc,
                    memo: dict) -> dict:
    """Normal form of T_{s_{word}} * phi_u as a support dict."""
    if not word:
        return {(u, identity(lat.k)): RF_ONE}
    key = (word, u)
    hit = memo.get(key)
    if hit is not None:
        return hit
    tail = _cross_word_phi(lat, word[1:], u, q0, memo)
    i = word[0]
    k = lat.k
    out: dict = {}
    for (x, y), c in tail.items():
        crossed = bernstein_cross(lat, x, i, q0)
        for (x2, y2), c2 in crossed.support.items():
            # multiply the finite parts: T_{y2} * T_y
            if y2.is_identity():
                fin = {y: RF_ONE}
            else:
                prod = h0_multiply(FiniteHeckeElement.basis(y2),
                                   FiniteHeckeElement.basis(y), q0)
                fin = prod.support
            cc = c * c2
            for z, cz in fin.items():
                lab = (x2, z)
                v = out.get(lab, RF_ZERO) + cc * cz
                if v:
                    out[lab] = v
                else:
                    out.pop(lab, None)
    memo[key] = out
    return out


def ah_multiply(a: AffineHeckeElement, b: AffineHeckeElement,
                q0: RatFunc = RF_Q) -> AffineHeckeElement:
    """Normal-form product in H = C[Y] (x) H_0."""
    a._check_same(b)
    lat = a.lattice
    memo: dict = {}
    acc: dict = {}
    for (t, w), ca in a.support.items():
        word = reduced_word(w)
        for (u, v), cb in b.support.items():
            mid = _cross_word_phi(lat, word, u, q0, memo)
            cab = ca * cb
            for (x, y), cm_ in mid.items():
                # phi_t * (phi_x * T_y) * T_v
                if y.is_identity():
                    fin = {v: RF_ONE}
                elif v.is_identity():
                    fin = {y: RF_ONE}
                else:
                    fin = h0_multiply(FiniteHeckeElement.basis(y),
                                      FiniteHeckeElement.basis(v), q0).support
                lab0 = tuple(ti + xi for ti, xi in zip(t, x))
                for z, cz in fin.items():
                    lab = (lab0, z)
                    val = acc.get(lab, RF_ZERO) + cab * cm_ * cz
                    if val:
                        acc[lab] = val
                    else:
                        acc.pop(lab, None)
    return AffineHeckeElement(lat, acc, _checked=True)


@dataclass
class GGModule:
    """Block data of the Gelfand-Graev module: one block per orbit."""
    lattice: LatticeSpec
    blocks: list          # (OrbitRecord, InducedSignModule) pairs
    x_order: int

    def total_rank(self) -> int:
        return sum(m.dim for _o, m in self.blocks)


def gg_module(cov: CoverSpec, ty: TypeSpec,
              bound: int = DEFAULT_ORBIT_BOUND) -> GGModule:
    """The block decomposition over the orbits of X(lambda)."""
    if cov.kind not in ("kp", "savin"):
        raise ValueError("module decomposition asserted only for KP/Savin")
    xg = x_lambda(cov, ty)
    lat = lattice_spec(xg.relation_lattice)
    blocks = []
    for rec in orbits(xg, bound=bound):
        if rec.stabilizer is None:
            raise ValueError("orbit with non-Young stabilizer: %r" % (rec,))
        blocks.append((rec, induced_sign_module(ty.k, rec.stabilizer)))
    gg = GGModule(lattice=lat, blocks=blocks, x_order=xg.order)
    assert gg.total_rank() == xg.order
    return gg


def whittaker_dim_hecke(cov: CoverSpec, ty: TypeSpec,
                        bound: int = DEFAULT_ORBIT_BOUND) -> int:
    """Sum of Hom-to-sign dimensions over the blocks of the module."""
    gg = gg_module(cov, ty, bound=bound)
    q0 = q_power(ty.f)
    cache: dict = {}
    total = 0
    for _rec, mod in gg.blocks:
        key = (mod.k, mod.J)
        if key not in cache:
            cache[key] = hom_to_sign_dim(mod, q0)
        total += cache[key]
    return total


@dataclass
class TwPhiReport:
    """Expansion of T_w * phi_{-t} in the basis {phi_{-t'} * T_{w'}}.

    terms holds (t', w', coefficient) with the sign-flipped labels, so the
    report reads in the inverted-element coordinates: t' label means the
    basis element phi_{-t'} * T_{w'}.
    """
    w: Permutation
    t: tuple
    terms: list
    length_ok: bool
    ord_ok: bool
    nonneg_ok: bool
    failures: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return self.length_ok and self.ord_ok and self.nonneg_ok


def _nonneg_poly_in_q0(c: RatFunc, f: int) -> bool:
    """Is c a q0-polynomial with non-negative coefficients in powers of (q0-1)?

    The structure constants produced by the crossings are built from q0 and
    (q0 - 1) with non-negative multiplicities, so the shifted basis is the
    one in which positivity is visible: q0 - 1 itself must count as positive
    while -(q0 - 1) must not.  Membership in N[q0 - 1] implies non-negative
    integer values at every integer q0 >= 1, in particular at prime powers.
    """
    if c.den.degree != 0 or c.den.leading() != 1:
        return False
    # coefficients a_j of c as a polynomial in q0 = q^f
    a = []
    for deg, coef in enumerate(c.num.coeffs):
        if deg % f == 0:
            a.append(coef)
        elif coef != 0:
            return False            # not a polynomial in q0 at all
    # expand sum a_j*(u+1)^j in u = q0 - 1 by Horner
    shifted = IntPoly()
    u_plus_1 = IntPoly((1, 1))
    for coef in reversed(a):
        shifted = shifted * u_plus_1 + IntPoly.const(coef)
    return all(x >= 0 for x in shifted.coeffs)


def check_twphi_lemma(lat: LatticeSpec, w: Permutation, t, box, f: int = 1) -> TwPhiReport:
    """Expand T_w * phi_{-t} and check the three expected properties.

    box = (lo, hi) is the coordinate window the caller sweeps; t must lie in
    it (and in Y).  The checks: (a) support permutations no longer than w,
    (b) ord preserved on the sign-flipped labels, (c) coefficients are
    q0-polynomials with non-negative integer coefficients in powers of
    (q0 - 1) (see _nonneg_poly_in_q0).  Failures are recorded in the report,
    never silently dropped.  Expect (c) to hold for nondecreasing t; for a
    decreasing t the T_e coefficient of a single crossing is -(q0-1) and the
    report will say so.
    """
    t = tuple(t)
    lo, hi = box
    if not all(lo <= x <= hi for x in t):
        raise ValueError("t=%r outside the box window [%d, %d]" % (t, lo, hi))
    if not lat.contains(t):
        raise ValueError("t=%r is not in Y" % (t,))
    q0 = q_power(f)
    neg_t = tuple(-x for x in t)
    prod = ah_multiply(ah_t(lat, w), ah_phi(lat, neg_t), q0)
    terms = []
    for (u, wp), c in sorted(prod.support.items(),
                             key=lambda kw: (kw[0][0], kw[0][1].one_line)):
        terms.append((tuple(-x for x in u), wp, c))
    lw = length(w)
    failures = []
    length_ok = True
    ord_ok = True
    nonneg_ok = True
    base_ord = ord_sum(t)
    for tp, wp, c in terms:
        if length(wp) > lw:
            length_ok = False
            failures.append("length(%r) > length(w) in term %r" % (wp, tp))
        if ord_sum(tp) != base_ord:
            ord_ok = False
            failures.append("ord %d != %d at term %r" % (ord_sum(tp), base_ord, tp))
        if not _nonneg_poly_in_q0(c, f):
            nonneg_ok = False
            failures.append("coefficient %s at term (%r, %r) is not a "
                            "non-negative q0-polynomial" % (c, tp, wp.one_line))
    return TwPhiReport(w=w, t=t, terms=terms, length_ok=length_ok,
                       ord_ok=ord_ok, nonneg_ok=nonneg_ok, failures=failures)
