import random

from ggdim._intmat import (
    hermite_row_basis, hnf_contains, ident, mat_mul, smith_normal_form,
)


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    out = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        out += (-1) ** j * m[0][j] * _det(minor)
    return out


def test_snf_random():
    rng = random.Random(42)
    for _ in range(200):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        u, uinv, d, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == d
        assert mat_mul(u, uinv) == ident(m)
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1
        diag = [d[i][i] for i in range(min(m, n))]
        # off-diagonal zero
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        # nonnegative, divisibility chain, zeros trailing
        assert all(x >= 0 for x in diag)
        for x, y in zip(diag, diag[1:]):
            if x == 0:
                assert y == 0
            else:
                assert y % x == 0


def test_hnf_basis_canonical_and_membership():
    rng = random.Random(7)
    for _ in range(200):
        k = rng.randint(1, 4)
        nrows = rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(nrows)]
        basis = hermite_row_basis(rows)
        # canonical shape: pivots positive, strictly increasing pivot columns,
        # entries above pivots reduced
        pivots = []
        for row in basis:
            c = next(j for j, x in enumerate(row) if x)
            assert row[c] > 0
            pivots.append(c)
        assert pivots == sorted(set(pivots))
        for i, row in enumerate(basis):
            for j, c in enumerate(pivots):
                if j > i:
                    assert 0 <= row[c] < basis[j][c]
        # generators are members; random lattice combos are members
        for r in rows:
            assert hnf_contains(basis, r)
        for _ in range(5):
            combo = [0] * k
            for r in rows:
                f = rng.randint(-3, 3)
                combo = [x + f * y for x, y in zip(combo, r)]
            assert hnf_contains(basis, combo)
        # invariance under generator order
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert hermite_row_basis(shuffled) == basis


def test_hnf_non_membership():
    basis = hermite_row_basis([[2, 0], [0, 2]])
    assert not hnf_contains(basis, (1, 0))
    assert not hnf_contains(basis, (1, 1))
    assert hnf_contains(basis, (2, -4))


def test_snf_known_lattice():
    # Z^3 / <4e1, 4e2, 4e3, (2,2,2)> has invariant factors (2, 4, 4)
    rows = [[4, 0, 0], [0, 4, 0], [0, 0, 4], [2, 2, 2]]
    basis = hermite_row_basis(rows)
    cols = [[basis[j][i] for j in range(3)] for i in range(3)]
    _u, _uinv, d, _v = smith_normal_form(cols)
    assert [d[i][i] for i in range(3)] == [2, 4, 4]
