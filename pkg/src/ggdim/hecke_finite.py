"""The finite Hecke algebra H_0 = H(S_k, q0) and its induced sign modules.

H_0 has vector basis {T_w : w in S_k} over Q(q), with multiplication fixed by

    T_w * T_{s} = T_{ws}                     if length(ws) > length(w),
    T_w * T_{s} = q0*T_{ws} + (q0-1)*T_w     otherwise,

extended along reduced words; equivalently (T_s + 1)(T_s - q0) = 0 plus the
braid relations.  The parameter q0 is passed explicitly to the operations (it
is q^f for the cover at hand, default the monomial q), so elements themselves
are plain linear combinations and carry no algebra state.

For a composition J of k, the parabolic subalgebra H_J is spanned by the T_u
with u in the Young subgroup W_J, and eps_J denotes its sign character,
T_u -> (-1)^length(u).  The induced module H_0 tensor_{H_J} eps_J has basis
{T_x (x) 1 : x a minimal coset representative of x W_J}; the left action is
computed by multiplying in H_0 and rewriting T_w (x) 1 = (-1)^length(u)
T_x (x) 1 along the length-additive factorisation w = x*u, u in W_J.

hom_to_sign_dim computes dim Hom(M, eps) for such a module M, i.e. the space
of linear functionals f with f(T_s . v) = -f(v) for every simple s, by exact
kernel computation over Q(q).
"""

from __future__ import annotations

from math import factorial

from .coeff import RF_ONE, RF_Q, RF_ZERO, RatFunc, RFMatrix, kernel_basis
from .symgroup import (
    Permutation, identity, length, min_coset_reps, parabolic_decompose,
    reduced_word, simple, young_order, young_subgroup,
)

RF_MINUS_ONE = RatFunc(-1)


class FiniteHeckeElement:
    """Linear combination of basis elements T_w, stored sparsely."""

    __slots__ = ("k", "support")

    def __init__(self, k: int, support=None):
        self.k = k
        clean = {}
        for w, c in (support or {}).items():
            if not isinstance(w, Permutation) or w.k != k:
                raise ValueError("bad basis label %r for k=%d" % (w, k))
            if c:
                clean[w] = c
        self.support = clean

    @staticmethod
    def basis(w: Permutation) -> "FiniteHeckeElement":
        return FiniteHeckeElement(w.k, {w: RF_ONE})

    @staticmethod
    def unit(k: int) -> "FiniteHeckeElement":
        return FiniteHeckeElement(k, {identity(k): RF_ONE})

    def __add__(self, other: "FiniteHeckeElement") -> "FiniteHeckeElement":
        if self.k != other.k:
            raise ValueError("rank mismatch: %d vs %d" % (self.k, other.k))
        out = dict(self.support)
        for w, c in other.support.items():
            v = out.get(w, RF_ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FiniteHeckeElement(self.k, out)

    def scale(self, c) -> "FiniteHeckeElement":
        if not c:
            return FiniteHeckeElement(self.k, {})
        return FiniteHeckeElement(self.k, {w: x * c for w, x in self.support.items()})

    def __sub__(self, other):
        return self + other.scale(RF_MINUS_ONE)

    def __mul__(self, other):
        return h0_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteHeckeElement)
                and self.k == other.k and self.support == other.support)

    def is_zero(self) -> bool:
        return not self.support

    def __repr__(self):
        if not self.support:
            return "FiniteHeckeElement(0)"
        terms = sorted(self.support.items(), key=lambda it: (length(it[0]), it[0].one_line))
        return " + ".join("(%s)*T%s" % (c, list(w.one_line)) for w, c in terms)


def _right_mult_simple(k: int, support: dict, i: int, q0: RatFunc) -> dict:
    """Multiply a support dict by T_{s_i} on the right."""
    s = simple(i, k)
    q0m1 = q0 - RF_ONE
    out: dict = {}
    for w, c in support.items():
        ws = w * s
        if w(i) < w(i + 1):          # length goes up
            v = out.get(ws, RF_ZERO) + c
            if v:
                out[ws] = v
            else:
                out.pop(ws, None)
        else:
            v = out.get(ws, RF_ZERO) + c * q0
            if v:
                out[ws] = v
            else:
                out.pop(ws, None)
            v = out.get(w, RF_ZERO) + c * q0m1
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def h0_multiply(a: FiniteHeckeElement, b: FiniteHeckeElement,
                q0: RatFunc = RF_Q) -> FiniteHeckeElement:
    """Product in H_0 with parameter q0."""
    if a.k != b.k:
        raise ValueError("rank mismatch: %d vs %d" % (a.k, b.k))
    k = a.k
    acc: dict = {}
    for v, cb in b.support.items():
        cur = a.support
        for i in reduced_word(v):
            cur = _right_mult_simple(k, cur, i, q0)
        for w, c in cur.items():
            x = acc.get(w, RF_ZERO) + c * cb
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return FiniteHeckeElement(k, acc)


def sign_value(w: Permutation) -> RatFunc:
    """The sign character on the basis: T_w -> (-1)^length(w)."""
    return RF_MINUS_ONE if length(w) % 2 else RF_ONE


class InducedSignModule:
    """H_0 tensor_{H_J} eps_J with its minimal-coset-representative basis."""

    __slots__ = ("k", "J", "basis", "dim", "_index", "_Jset")

    def __init__(self, k: int, J):
        J = tuple(J)
        if sum(J) != k or any(p < 1 for p in J):
            raise ValueError("not a composition of %d: %r" % (k, J))
        self.k = k
        self.J = J
        self._Jset = young_subgroup(J)
        self.basis = tuple(min_coset_reps(k, self._Jset))
        self.dim = len(self.basis)
        assert self.dim == factorial(k) // young_order(J)
        self._index = {x: n for n, x in enumerate(self.basis)}

    def __repr__(self):
        return "InducedSignModule(k=%d, J=%s, dim=%d)" % (self.k, self.J, self.dim)


def induced_sign_module(k: int, J) -> InducedSignModule:
    return InducedSignModule(k, J)


def module_act(h: FiniteHeckeElement, m: InducedSignModule, vec,
               q0: RatFunc = RF_Q) -> list:
    """Left action of h on a coefficient vector indexed by m.basis."""
    if h.k != m.k:
        raise ValueError("rank mismatch: %d vs %d" % (h.k, m.k))
    if len(vec) != m.dim:
        raise ValueError("vector length %d does not match dim %d" % (len(vec), m.dim))
    out = [RF_ZERO] * m.dim
    for n, cv in enumerate(vec):
        if not cv:
            continue
        prod = h0_multiply(h, FiniteHeckeElement.basis(m.basis[n]), q0)
        for w, c in prod.support.items():
            x, u = parabolic_decompose(w, m._Jset)
            out[m._index[x]] = out[m._index[x]] + cv * c * sign_value(u)
    return out


def action_matrix(m: InducedSignModule, h: FiniteHeckeElement,
                  q0: RatFunc = RF_Q) -> list:
    """Matrix of h acting on m, columns indexed by basis vectors."""
    cols = []
    for n in range(m.dim):
        e = [RF_ZERO] * m.dim
        e[n] = RF_ONE
        cols.append(module_act(h, m, e, q0))
    return [[cols[c][r] for c in range(m.dim)] for r in range(m.dim)]


def hom_to_sign_dim(m: InducedSignModule, q0: RatFunc = RF_Q) -> int:
    """dim of {f linear : f(T_s . v) = -f(v) for all simple s}, over Q(q).

    One block of constraints per simple reflection: with A the action matrix
    of T_s, the functional's coefficient vector f must satisfy
    (A^T + I) f = 0.
    """
    rows = []
    for i in range(1, m.k):
        a = action_matrix(m, FiniteHeckeElement.basis(simple(i, m.k)), q0)
        for x in range(m.dim):
            row = [a[y][x] for y in range(m.dim)]
            row[x] = row[x] + RF_ONE
            rows.append(row)
    if not rows:        # k = 1: no constraints, every functional qualifies
        return m.dim
    return len(kernel_basis(RFMatrix(rows)))
