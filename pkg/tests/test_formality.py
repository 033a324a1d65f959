import numpy as np
import pytest

from flagalg import formality as fm


def unit_line(p=5):
    return fm.BigradedDgAlgebra(p, [(0, 0)], {(0, 0): {0: 1}}, {0: 1},
                                np.zeros((1, 1), dtype=np.int64))


def acyclic_pair(p=5, at=(0, 1)):
    i, j = at
    diff = np.zeros((3, 3), dtype=np.int64)
    diff[2, 1] = 1
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
            (0, 2): {2: 1}, (2, 0): {2: 1}}
    return fm.BigradedDgAlgebra(p, [(0, 0), (i, j), (i + 1, j)], mult,
                                {0: 1}, diff)


def test_cohomology_zero_differential():
    R = unit_line()
    h = fm.cohomology(R).algebra
    assert h.dims_by_bidegree() == {(0, 0): 1}


def test_cohomology_acyclic_pair():
    R = acyclic_pair()
    h = fm.cohomology(R).algebra
    assert h.dims_by_bidegree() == {(0, 0): 1}
    assert fm.diagonal_check(R)


def test_euler_characteristic_per_column():
    for seed in range(20):
        R = fm.random_diagonal_instance(seed)
        h = fm.cohomology(R).algebra
        cols = {j for (_, j) in R.bidegrees} | \
            {j for (_, j) in h.bidegrees}
        for j in cols:
            chi_r = sum((-1) ** i * v
                        for (i, jj), v in R.dims_by_bidegree().items()
                        if jj == j)
            chi_h = sum((-1) ** i * v
                        for (i, jj), v in h.dims_by_bidegree().items()
                        if jj == j)
            assert chi_r == chi_h


def test_diagonal_check_failure():
    R = fm.random_nondiagonal_instance(0)
    assert not fm.diagonal_check(R)
    # the witness: a closed basis element at (1, 0) survives
    h = fm.cohomology(R).algebra
    assert (1, 0) in h.dims_by_bidegree()


def test_shear_on_zero_differential_diagonal():
    # d = 0, everything on the diagonal: the shear is everything
    p = 5
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
    R = fm.BigradedDgAlgebra(p, [(0, 0), (1, 1)], mult, {0: 1},
                             np.zeros((2, 2), dtype=np.int64))
    sub, inc, proj, hd = fm.shear_subalgebra(R)
    assert sub.dims_by_bidegree() == R.dims_by_bidegree()
    assert fm.verify_quasi_iso(sub, R, inc)
    assert fm.verify_quasi_iso(sub, hd.algebra, proj)


def test_shear_example_unit_plus_killed_pair():
    # unit; a at (0,0) with d(a) = b at (1,0): shear = unit line
    p = 5
    diff = np.zeros((3, 3), dtype=np.int64)
    diff[2, 1] = 1
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
            (0, 2): {2: 1}, (2, 0): {2: 1}}
    R = fm.BigradedDgAlgebra(p, [(0, 0), (0, 0), (1, 0)], mult, {0: 1},
                             diff)
    sub, inc, proj, hd = fm.shear_subalgebra(R)
    # a is not closed and b sits below the diagonal: only the unit is left
    assert sub.dims_by_bidegree() == {(0, 0): 1}
    assert fm.verify_quasi_iso(sub, R, inc)
    assert fm.verify_quasi_iso(sub, hd.algebra, proj)
    assert hd.algebra.dims_by_bidegree() == {(0, 0): 1}


def test_shear_always_subalgebra():
    for seed in (3, 11, 19):
        R = fm.random_nondiagonal_instance(seed)
        sub, inc, proj, hd = fm.shear_subalgebra(R)
        sub.check()  # dg-subalgebra axioms hold regardless of diagonality


def test_quasi_iso_rejects_non_chain_maps():
    R = acyclic_pair()
    bad = np.zeros((3, 3), dtype=np.int64)
    bad[1, 2] = 1  # wrong direction: not a chain map
    with pytest.raises(ValueError):
        fm.verify_quasi_iso(R, R, bad)
    ident = np.eye(3, dtype=np.int64)
    assert fm.verify_quasi_iso(R, R, ident)
    zero = np.zeros((1, 1), dtype=np.int64)
    U = unit_line()
    assert not fm.verify_quasi_iso(U, U, zero)


def test_seeded_instances_all_pass():
    for seed in range(100):
        R = fm.random_diagonal_instance(seed)
        assert R.dim <= 40
        sub, inc, proj, hd = fm.shear_subalgebra(R)
        assert fm.diagonal_check(R)
        assert fm.verify_quasi_iso(sub, R, inc)
        assert fm.verify_quasi_iso(sub, hd.algebra, proj)


def test_omega_shear_bookkeeping():
    M = fm.BigradedComponents(5, {(0, 0): 1, (2, 1): 3, (3, 1): 2},
                              {(2, 1): np.zeros((2, 3), dtype=np.int64)})
    O = fm.omega_shear(M)
    assert O.dims == {(0, 0): 1, (1, 1): 3, (2, 1): 2}
    assert fm.omega_unshear(O).equal_to(M)
    for n in (-2, 1, 3):
        lhs = fm.omega_shear(M.shift_internal(n))
        rhs = fm.omega_shear(M).shift_cohomological(n).shift_internal(n)
        assert lhs.equal_to(rhs)


def test_omega_shear_random_shift_law():
    rng = np.random.default_rng(5)
    for _ in range(10):
        dims = {}
        for _ in range(6):
            i, j = int(rng.integers(-3, 4)), int(rng.integers(-3, 4))
            dims[(i, j)] = int(rng.integers(1, 4))
        M = fm.BigradedComponents(5, dims)
        n = int(rng.integers(-3, 4))
        lhs = fm.omega_shear(M.shift_internal(n))
        rhs = fm.omega_shear(M).shift_cohomological(n).shift_internal(n)
        assert lhs.equal_to(rhs)
