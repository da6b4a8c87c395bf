import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from locsym.field import GF
from locsym.linalg import Subspace, charpoly, det, identity, inverse, nullspace, rank, rref, solve

F3 = GF(1)
F9 = GF(2)


def _mat(F, rows, cols):
    return st.lists(st.integers(0, F.order - 1), min_size=rows * cols, max_size=rows * cols).map(
        lambda v: np.array(v, dtype=np.int64).reshape(rows, cols))


def _kernel_size(F, m):
    # brute force: count solutions of m v = 0
    n = m.shape[1]
    count = 0
    for v in itertools.product(range(F.order), repeat=n):
        if not F.matmul(m, np.array(v, dtype=np.int64)).any():
            count += 1
    return count


def test_rref_example():
    red, r = rref(F3, [[1, 2], [2, 1]])
    assert r == 1
    assert red.tolist() == [[1, 2], [0, 0]]


@settings(max_examples=60, deadline=None)
@given(_mat(F9, 3, 3))
def test_rank_matches_kernel_count(m):
    r = rank(F9, m)
    assert F9.order ** (3 - r) == _kernel_size(F9, m)


@settings(max_examples=60, deadline=None)
@given(_mat(F3, 4, 5))
def test_nullspace_is_kernel(m):
    ker = nullspace(F3, m)
    assert ker.dim == 5 - rank(F3, m)
    for v in ker.basis:
        assert not F3.matmul(m, v).any()
    assert 3 ** ker.dim == _kernel_size(F3, m)


@settings(max_examples=60, deadline=None)
@given(_mat(F9, 4, 4))
def test_inverse_and_det(m):
    d = det(F9, m)
    if d == 0:
        assert rank(F9, m) < 4
        return
    inv = inverse(F9, m)
    assert np.array_equal(F9.matmul(m, inv), identity(4))
    assert F9.mul(d, det(F9, inv)) == 1


@settings(max_examples=60, deadline=None)
@given(_mat(F9, 3, 3), _mat(F9, 3, 1))
def test_solve(m, b):
    b = b[:, 0]
    x = solve(F9, m, b)
    if x is None:
        assert rank(F9, np.hstack([m, b[:, None]])) > rank(F9, m)
    else:
        assert np.array_equal(F9.matmul(m, x), b)


@settings(max_examples=50, deadline=None)
@given(_mat(F9, 2, 6), _mat(F9, 3, 6), _mat(F9, 2, 6))
def test_subspace_lattice_laws(a, b, c):
    U, V, W = (Subspace(F9, 6, x) for x in (a, b, c))
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert (U & V) <= U and (U & V) <= V
    assert U <= U + V
    # modular law: W <= U  =>  W + (U & V) = U & (W + V)
    W = W & U
    assert W + (U & V) == U & (W + V)


def test_modular_law_random_pairs():
    rng = np.random.default_rng(5)
    for _ in range(50):
        U = Subspace(F9, 7, rng.integers(0, 9, size=(3, 7)))
        V = Subspace(F9, 7, rng.integers(0, 9, size=(4, 7)))
        W = Subspace(F9, 7, rng.integers(0, 9, size=(2, 7))) & U
        assert W + (U & V) == U & (W + V)


def test_subspace_canonical_and_coordinates():
    U = Subspace(F3, 3, [[1, 1, 0], [0, 1, 1]])
    V = Subspace(F3, 3, [[1, 0, 2], [2, 2, 0]])
    assert U == V
    # RREF basis is (1,0,2), (0,1,1)
    assert U.coordinates([1, 2, 1]).tolist() == [1, 2]
    assert U.coordinates([1, 0, 0]) is None
    assert U.extend_complement(Subspace(F3, 3, [[1, 1, 0]])).shape == (1, 3)


def test_charpoly_matches_determinant():
    rng = np.random.default_rng(2)
    for _ in range(20):
        m = rng.integers(0, 9, size=(4, 4))
        cp = charpoly(F9, m)
        assert cp[-1] == 1
        # constant term is det(-m)
        assert cp[0] == det(F9, F9.neg(m))
        # Cayley-Hamilton
        acc = np.zeros((4, 4), dtype=np.int64)
        p = identity(4)
        for c in cp:
            acc = F9.add(acc, F9.mul(c, p))
            p = F9.matmul(p, m)
        assert not acc.any()
