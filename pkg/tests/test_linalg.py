from fractions import Fraction

import numpy as np
import pytest

from flagalg import _linalg as la


def test_rref_nullspace_roundtrip():
    a = la.mod_mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]], 5)
    assert la.mod_rank(a, 5) == 2
    ns = la.mod_nullspace(a, 5)
    assert ns.shape[0] == 1
    assert not np.any((a @ ns.T) % 5)


def test_solve_and_inverse():
    a = la.mod_mat([[1, 2], [3, 4]], 7)
    x = la.mod_solve(a, [5, 6], 7)
    assert np.array_equal((a @ x) % 7, np.array([5, 6]))
    inv = la.mod_inv_matrix(a, 7)
    assert np.array_equal((a @ inv) % 7, np.eye(2, dtype=np.int64))
    assert la.mod_det(a, 7) == (1 * 4 - 2 * 3) % 7


def test_nullspace_chunked_matches():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 5, size=(300, 12))
    a = np.concatenate([a] * 20, axis=0)  # heavy duplication
    direct = la.mod_nullspace(a, 5)
    chunked = la.mod_nullspace_chunked(a, 5, chunk=128)
    assert direct.shape == chunked.shape
    assert not np.any((a @ chunked.T) % 5)


def test_minpoly_jordan():
    b = la.mod_mat([[2, 1], [0, 2]], 5)
    assert la.mod_minpoly(b, 5) == [4, 1, 1]  # (X - 2)^2


@pytest.mark.parametrize("p", [3, 5, 13])
def test_poly_squarefree_and_roots(p):
    f = la.poly_mul(la.poly_pow([3 % p, 1], 2, p), [1, 1], p)
    parts = la.coprime_power_split(f, p)
    prod = [1]
    for g in parts:
        prod = la.poly_mul(prod, g, p)
    assert la.poly_monic(prod, p) == la.poly_monic(f, p)


def test_radical_small_algebras():
    # F[x]/(x^2): rad = (x)
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    rad = la.algebra_radical(mult, 5)
    assert rad.shape[0] == 1 and rad[0][1] != 0
    # F x F: semisimple
    mult2 = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    assert la.algebra_radical(mult2, 5).shape[0] == 0
    # M_2(F): semisimple
    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]

    def emul(a, b):
        (i, j), (k, l) = a, b
        out = [0] * 4
        if j == k:
            out[idx.index((i, l))] = 1
        return out

    mult3 = [[emul(a, b) for b in idx] for a in idx]
    assert la.algebra_radical(mult3, 5).shape[0] == 0
    # upper triangular 2x2: rad = strictly upper part
    t_idx = [(0, 0), (0, 1), (1, 1)]

    def tmul(a, b):
        (i, j), (k, l) = a, b
        out = [0] * 3
        if j == k and (i, l) in t_idx:
            out[t_idx.index((i, l))] = 1
        return out

    mult4 = [[tmul(a, b) for b in t_idx] for a in t_idx]
    rad4 = la.algebra_radical(mult4, 3)
    assert rad4.shape[0] == 1


def test_lloc_saturation():
    rows = [[Fraction(1), Fraction(0), Fraction(1, 5)],
            [Fraction(0), Fraction(1), Fraction(1, 5)]]
    sat = la.lloc_saturate(rows, 5)
    assert len(sat) == 2
    # (1, -1, 0) lies in the span and must be an l-integral combination
    assert la.lloc_membership([1, -1, 0], sat, 5)
    red = np.array([[la.frac_mod_ell(x, 5) for x in r] for r in sat])
    assert la.mod_rank(red, 5) == 2  # saturated iff full rank mod l


def test_elementary_exponents():
    assert la.lloc_elementary_exponents([[1, 1], [0, 5]], 5) == [0, 1]
    assert la.lloc_elementary_exponents([[2, 0], [0, 3]], 5) == [0, 0]
    with pytest.raises(ValueError):
        la.lloc_elementary_exponents([[Fraction(1, 5)]], 5)


def test_charpoly():
    cp = la.frac_charpoly(la.frac_mat([[1, 0], [0, 6]]))
    assert cp == [Fraction(6), Fraction(-7), Fraction(1)]
