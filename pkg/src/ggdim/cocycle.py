"""Tame local-field arithmetic: Hilbert symbols and torus 2-cocycles.

For a local field F with residue cardinality q and gcd(n, char) = 1, the
n-th Hilbert symbol (u, v)_n is tame: it factors through F^x/(1 + m), so
we model F^x as Z x Z/(q-1), recording the valuation and the exponent of
the residue unit with respect to a fixed generator g of the residue
field's unit group.  One-units are invisible and never represented.

The symbol itself is computed by the standard tame formula.  Writing
a = val(u), b = val(v), the residue class

    (-1)^{ab} * unit(u)^b * unit(v)^{-a}

is raised to the power (q-1)/n, which lands in mu_n = <zeta> for
zeta = g^{(q-1)/n}.  In exponents this reads

    E(u, v) = a*b*e + b*unit_exp(u) - a*unit_exp(v)   (mod q-1)

where e is the exponent of -1 (that is (q-1)/2 for odd q and 0 in even
characteristic), and the mu_n exponent is E mod n.  Bimultiplicativity
and triviality on unit pairs are visible in the formula; antisymmetry
follows from 2*e = q-1.  The opposite antisymmetry convention (swapping
the roles of u and v in the unit part) would satisfy the same four
properties; we fix this one and all torus cocycles inherit it.

On the diagonal torus of GL_r the two basic 2-cocycles are

    sigma_det(t, t') = (prod t_i, prod t'_j)_n
    sigma_kp(t, t')  = prod_{i<j} (t_i, t'_j)_n

and a general cover is the Baer-sum power sigma_det^c * sigma_kp^d.
Both are bimultiplicative in each slot, therefore 2-cocycles, and the
commutator pairing sigma(t,t') / sigma(t',t) descends to the classes of
t, t' modulo n-th powers.

Elements of mu_n are carried around as exponents of a fixed generator;
raw exponents depend on the choice of g, but orders and identity tests
do not.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class FieldModel:
    """Residue data of a tame local field: cardinality q, symbol order n."""

    q: int
    n: int

    def __post_init__(self) -> None:
        if not is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        if self.n < 1:
            raise ValueError("n must be positive")
        if (self.q - 1) % self.n != 0:
            raise ValueError(f"n = {self.n} does not divide q - 1 = {self.q - 1}")

    @property
    def generator_exponent_modulus(self) -> int:
        return self.q - 1

    @property
    def minus_one_exp(self) -> int:
        """Exponent of -1 in the residue units (0 in even characteristic)."""
        if self.q % 2 == 1:
            return (self.q - 1) // 2
        return 0


@dataclass(frozen=True)
class FieldElem:
    """An element of F^x/(1+m): uniformizer power times a residue unit."""

    valuation: int
    unit_exp: int

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(self.valuation + other.valuation,
                         self.unit_exp + other.unit_exp)

    def power(self, m: int) -> "FieldElem":
        return FieldElem(m * self.valuation, m * self.unit_exp)

    def is_unit(self) -> bool:
        return self.valuation == 0


ONE = FieldElem(0, 0)
UNIFORMIZER = FieldElem(1, 0)


def unit(e: int) -> FieldElem:
    return FieldElem(0, e)


@dataclass(frozen=True)
class MuN:
    """An n-th root of unity, stored as an exponent of a fixed generator."""

    n: int
    exp: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "exp", self.exp % self.n)

    def __mul__(self, other: "MuN") -> "MuN":
        if self.n != other.n:
            raise ValueError("mixed mu_n groups")
        return MuN(self.n, self.exp + other.exp)

    def inverse(self) -> "MuN":
        return MuN(self.n, -self.exp)

    def power(self, m: int) -> "MuN":
        return MuN(self.n, m * self.exp)

    def is_identity(self) -> bool:
        return self.exp == 0

    @property
    def order(self) -> int:
        return self.n // gcd(self.n, self.exp)


def hilbert(fm: FieldModel, u: FieldElem, v: FieldElem) -> MuN:
    """The n-th Hilbert symbol (u, v)_n in the tame convention above."""
    a, b = u.valuation, v.valuation
    e = a * b * fm.minus_one_exp + b * u.unit_exp - a * v.unit_exp
    return MuN(fm.n, e % (fm.q - 1))


def _check_lengths(t: tuple, tp: tuple) -> None:
    if len(t) != len(tp):
        raise ValueError(f"torus length mismatch: {len(t)} vs {len(tp)}")


def sigma_det_torus(fm: FieldModel, t: tuple, tp: tuple) -> MuN:
    """Determinant cocycle on the diagonal torus: (prod t, prod t')_n."""
    _check_lengths(t, tp)
    return hilbert(fm, prod(t, start=ONE), prod(tp, start=ONE))


def sigma_kp_torus(fm: FieldModel, t: tuple, tp: tuple) -> MuN:
    """Kazhdan-Patterson cocycle on the torus: prod over i<j of (t_i, t'_j)_n."""
    _check_lengths(t, tp)
    out = MuN(fm.n, 0)
    for i in range(len(t)):
        for j in range(i + 1, len(tp)):
            out = out * hilbert(fm, t[i], tp[j])
    return out


def sigma_cover_torus(fm: FieldModel, c: int, d: int, t: tuple, tp: tuple) -> MuN:
    """Torus cocycle of the (c, d) cover: sigma_det^c * sigma_kp^d."""
    return sigma_det_torus(fm, t, tp).power(c) * sigma_kp_torus(fm, t, tp).power(d)


def commutator_torus(fm: FieldModel, c: int, d: int, t: tuple, tp: tuple) -> MuN:
    """Commutator pairing sigma(t,t') * sigma(t',t)^(-1) on the torus."""
    return sigma_cover_torus(fm, c, d, t, tp) * \
        sigma_cover_torus(fm, c, d, tp, t).inverse()
