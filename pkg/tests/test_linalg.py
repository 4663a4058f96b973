import random

import pytest

from catidem.linalg import (
    Mat,
    NonPrimeModulus,
    PrimeField,
    inverse,
    nullspace,
    rank,
    rref,
    solve,
)

N_SAMPLES = 200


def test_prime_field_rejects_composite():
    with pytest.raises(NonPrimeModulus):
        PrimeField(4)
    with pytest.raises(NonPrimeModulus):
        PrimeField(1)
    assert PrimeField(2).p == 2
    assert PrimeField(7).inv(3) == 5


def test_rref_frozen_example_f2():
    # [[1,1],[1,1]] over F_2 has rank 1
    m = Mat(2, [[1, 1], [1, 1]])
    r, pivots, t = rref(m)
    assert pivots == (0,)
    assert r.rows == ((1, 1), (0, 0))
    assert (t @ m) == r


def test_solve_frozen_example_f2():
    # same matrix, rhs (1,1): particular solution (1,0), kernel span (1,1)
    m = Mat(2, [[1, 1], [1, 1]])
    b = Mat.col_vector(2, [1, 1])
    res = solve(m, b)
    assert res is not None
    x0, kb = res
    assert x0.col(0) == (1, 0)
    assert kb.ncols == 1
    assert kb.col(0) == (1, 1)
    assert (m @ x0) == b


def test_solve_inconsistent():
    m = Mat(2, [[1, 1], [1, 1]])
    b = Mat.col_vector(2, [1, 0])
    assert solve(m, b) is None


def _random_mat(rng, p, nr, nc):
    return Mat(p, [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)], ncols=nc)


def test_rank_nullity_and_transform_properties():
    rng = random.Random(20260819)
    for _ in range(N_SAMPLES):
        p = rng.choice([2, 3, 5])
        nr = rng.randrange(0, 7)
        nc = rng.randrange(0, 7)
        m = _random_mat(rng, p, nr, nc)
        r, pivots, t = rref(m)
        # R = T M exactly
        assert (t @ m) == r
        # T invertible
        assert rank(t) == nr
        # rank + nullity = ncols
        kb = nullspace(m)
        assert len(pivots) + kb.ncols == nc
        if kb.ncols:
            assert (m @ kb).is_zero()
        # rref is idempotent
        r2, p2, _ = rref(r)
        assert r2 == r and p2 == pivots


def test_solve_reproduces_rhs():
    rng = random.Random(99)
    for _ in range(N_SAMPLES):
        p = rng.choice([2, 3, 5])
        nr = rng.randrange(1, 6)
        nc = rng.randrange(1, 6)
        m = _random_mat(rng, p, nr, nc)
        x = _random_mat(rng, p, nc, 1)
        b = m @ x
        res = solve(m, b)
        assert res is not None
        x0, kb = res
        assert (m @ x0) == b
        # every kernel column really is killed
        for j in range(kb.ncols):
            v = Mat.from_cols(p, [kb.col(j)])
            assert (m @ v).is_zero()


def test_inverse_and_matmul_agree_modp():
    rng = random.Random(7)
    for _ in range(50):
        p = rng.choice([2, 3, 5, 7])
        n = rng.randrange(1, 5)
        m = _random_mat(rng, p, n, n)
        if rank(m) < n:
            continue
        mi = inverse(m)
        assert (mi @ m) == Mat.identity(p, n)
        assert (m @ mi) == Mat.identity(p, n)


def test_kron_shapes_and_values():
    a = Mat(3, [[1, 2], [0, 1]])
    b = Mat(3, [[2]])
    k = a.kron(b)
    assert k == Mat(3, [[2, 4], [0, 2]])
    # mixed-size sanity
    a = Mat(2, [[1, 0, 1]])
    b = Mat(2, [[1], [1]])
    k = a.kron(b)
    assert k.nrows == 2 and k.ncols == 3
    assert k.rows == ((1, 0, 1), (1, 0, 1))


def test_block_assembly():
    p = 5
    a = Mat.identity(p, 2)
    z = Mat.zero(p, 2, 1)
    c = Mat(p, [[3, 3]])
    d = Mat(p, [[4]])
    m = Mat.block(p, [[a, z], [c, d]])
    assert m.rows == ((1, 0, 0), (0, 1, 0), (3, 3, 4))


def test_large_f2_path():
    # force the packed-bit branch with a bigger random check
    rng = random.Random(5)
    m = _random_mat(rng, 2, 60, 80)
    r, pivots, t = rref(m)
    assert (t @ m) == r
    assert len(pivots) == rank(m)
