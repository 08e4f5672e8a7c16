import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from frobcat import _fallback
from frobcat import exactla as la
from frobcat.exactla import Subspace

PRIMES = [2, 3, 5, 7]


@st.composite
def fp_matrices(draw, max_rows=7, max_cols=7):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return m, p


def test_kernel_is_reported():
    assert la.KERNEL in ("compiled", "python")


def test_is_prime():
    assert [n for n in range(20) if la.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rref_small_example():
    m = np.array([[1, 1, 0], [1, 1, 1], [0, 0, 1]], dtype=np.int64)
    red, piv, r = la.rref(m, 2)
    assert r == 2
    assert list(piv) == [0, 2]
    assert red[:r].tolist() == [[1, 1, 0], [0, 0, 1]]


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_compiled_and_fallback_agree(mp):
    m, p = mp
    a = m.copy()
    piv_fb = _fallback.rref_inplace(a, p)
    red, piv, r = la.rref(m, p)
    assert list(piv) == list(piv_fb)
    assert np.array_equal(red, a)
    assert r == len(piv)


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_rref_is_reduced_and_row_equivalent(mp):
    m, p = mp
    red, piv, r = la.rref(m, p)
    for i, c in enumerate(piv):
        col = red[:, c]
        assert col[i] == 1
        assert not np.delete(col, i).any()
    assert not red[r:].any()
    # same row space
    if m.shape[1]:
        assert Subspace.span(m, m.shape[1], p) == Subspace.span(red, m.shape[1], p)


@given(fp_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(mp):
    m, p = mp
    k = la.kernel_basis(m, p)
    cols = m.shape[1]
    assert la.rank(m, p) + k.dim == cols
    for v in k.basis:
        assert not la.mul(m, v.reshape(-1, 1), p).any()


@given(fp_matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_finds_solutions_of_consistent_systems(mp, data):
    m, p = mp
    x = data.draw(arrays(np.int64, (m.shape[1],), elements=st.integers(0, p - 1)))
    rhs = la.mul(m, x.reshape(-1, 1), p)[:, 0]
    sol = la.solve(m, rhs, p)
    assert sol is not None
    assert np.array_equal(la.mul(m, sol.reshape(-1, 1), p)[:, 0], rhs)


def test_solve_reports_inconsistency():
    m = np.array([[1, 0], [1, 0]], dtype=np.int64)
    assert la.solve(m, np.array([0, 1]), 2) is None


@given(fp_matrices(max_rows=5, max_cols=5), fp_matrices(max_rows=5, max_cols=5))
@settings(max_examples=80, deadline=None)
def test_subspace_sum_contains_both(a, b):
    (ma, p), (mb, _) = a, b
    n = min(ma.shape[1], mb.shape[1])
    U = Subspace.span(ma[:, :n] % p, n, p)
    V = Subspace.span(mb[:, :n] % p, n, p)
    W = U.sum(V)
    assert W.contains_all(U.basis) and W.contains_all(V.basis)
    assert W.dim <= U.dim + V.dim


def test_subspace_coordinates_round_trip():
    S = Subspace.span(np.array([[1, 2, 0], [0, 1, 1]]), 3, 5)
    v = (3 * S.basis[0] + 4 * S.basis[1]) % 5
    assert S.contains(v)
    assert np.array_equal((S.coords(v) @ S.basis) % 5, v)
    assert not S.contains(np.array([0, 0, 1]))


def test_zero_dimensional_ambient_space():
    S = Subspace.span(np.zeros((3, 0), dtype=np.int64), 0, 2)
    assert S.dim == 0 and S.ambient_dim == 0


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_of_random_invertible(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        m = rng.integers(0, p, size=(4, 4))
        if not la.is_invertible(m, p):
            continue
        inv = la.inverse(m, p)
        assert np.array_equal(la.mul(m, inv, p), la.identity(4))


def test_one_sided_inverses():
    m = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
    left = la.left_inverse(m, 2)
    assert np.array_equal(la.mul(left, m, 2), la.identity(2))
    right = la.right_inverse(m.T.copy(), 2)
    assert np.array_equal(la.mul(m.T, right, 2), la.identity(2))


def test_quotient_map_splits():
    rel = Subspace.span(np.array([[1, 1, 0]]), 3, 3)
    proj, sec, d = la.quotient_map(3, rel, 3)
    assert d == 2
    assert np.array_equal(la.mul(proj, sec, 3), la.identity(2))
    assert not la.mul(proj, rel.basis.T, 3).any()
