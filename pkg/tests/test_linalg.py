import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from localchan.linalg import DimensionError, eig_hermitian, hermitian, is_hermitian, \
    operator_abs, partial_trace, schatten_norm, tensor_product
from localchan.states import bell_state, ghz_state, random_mixed

from conftest import random_hermitian

I2 = np.eye(2)
SZ = np.diag([1.0, -1.0])
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])


def brute_partial_trace(m, dims, keep):
    """Loop-by-index reference: sum over all discarded multi-indices."""
    n = len(dims)
    kept = [i for i in range(n) if i in keep]
    drop = [i for i in range(n) if i not in keep]
    dk = int(np.prod([dims[i] for i in kept]))
    out = np.zeros((dk, dk), dtype=complex)
    t = m.reshape(dims + dims)
    for row in np.ndindex(*[dims[i] for i in kept]):
        for col in np.ndindex(*[dims[i] for i in kept]):
            acc = 0
            for env in np.ndindex(*[dims[i] for i in drop]):
                r = [0] * n
                c = [0] * n
                for pos, i in enumerate(kept):
                    r[i], c[i] = row[pos], col[pos]
                for pos, i in enumerate(drop):
                    r[i] = c[i] = env[pos]
                acc += t[tuple(r + c)]
            out[np.ravel_multi_index(row, [dims[i] for i in kept]),
                np.ravel_multi_index(col, [dims[i] for i in kept])] = acc
    return out


def test_tensor_examples():
    np.testing.assert_array_equal(tensor_product(I2, I2), np.eye(4))
    np.testing.assert_array_equal(tensor_product(P0, P1), np.diag([0, 1, 0, 0]))
    np.testing.assert_array_equal(tensor_product(SZ, SZ), np.diag([1, -1, -1, 1]))


def test_tensor_index_convention():
    a = np.arange(4).reshape(2, 2)
    b = np.arange(9).reshape(3, 3)
    ab = tensor_product(a, b)
    assert ab[1 * 3 + 2, 0 * 3 + 1] == a[1, 0] * b[2, 1]


def test_tensor_dimension_cap():
    with pytest.raises(DimensionError):
        tensor_product(np.eye(64), np.eye(65))


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(bell_state(), [2, 2], [0]), I2 / 2, atol=1e-15)
    rho1 = random_mixed(2, seed=1)
    rho2 = random_mixed(3, seed=2)
    np.testing.assert_allclose(partial_trace(np.kron(rho1, rho2), [2, 3], [1]), rho2, atol=1e-14)
    # GHZ(3) over qubit 3, by hand: 1/2 (|00><00| + |11><11|)
    expected = np.diag([0.5, 0, 0, 0.5])
    np.testing.assert_allclose(partial_trace(ghz_state(3), [2, 2, 2], [0, 1]), expected,
                               atol=1e-15)


def test_partial_trace_errors():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4), [2, 3], [0])
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), [2, 2], [])


@pytest.mark.parametrize("dims,keep", [([2, 3], [0]), ([2, 3, 2], [1]), ([3, 2, 2], [0, 2]),
                                       ([2, 2, 2, 2], [1, 3])])
def test_partial_trace_matches_brute_force(dims, keep):
    m = random_mixed(int(np.prod(dims)), seed=7)
    fast = partial_trace(m, dims, keep)
    np.testing.assert_allclose(fast, brute_partial_trace(m, dims, keep), atol=1e-14)
    assert abs(np.trace(fast) - np.trace(m)) < 1e-12


def test_partial_trace_order_independent():
    m = random_mixed(12, seed=3)
    dims = [2, 3, 2]
    once = partial_trace(m, dims, [1])
    stepwise = partial_trace(partial_trace(m, dims, [0, 1]), [2, 3], [1])
    other = partial_trace(partial_trace(m, dims, [1, 2]), [3, 2], [0])
    np.testing.assert_allclose(once, stepwise, atol=1e-12)
    np.testing.assert_allclose(once, other, atol=1e-12)


def test_schatten_examples():
    assert schatten_norm(SZ, 1) == pytest.approx(2)
    assert schatten_norm(SZ, 2) == pytest.approx(np.sqrt(2))
    assert schatten_norm(SZ, np.inf) == pytest.approx(1)
    for d in (2, 3, 5):
        for p in (1, 2, 3, 7):
            assert schatten_norm(np.eye(d), p) == pytest.approx(d ** (1 / p))


def test_schatten_rejects_bad_input():
    with pytest.raises(DimensionError):
        schatten_norm(np.ones((2, 3)))
    with pytest.raises(ValueError):
        schatten_norm(np.eye(2), 0.5)


def test_schatten_against_numpy_norms(rng):
    for d in (2, 3, 6):
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        assert schatten_norm(m, 1) == pytest.approx(np.linalg.norm(m, "nuc"), rel=1e-12)
        assert schatten_norm(m, 2) == pytest.approx(np.linalg.norm(m, "fro"), rel=1e-12)
        assert schatten_norm(m, np.inf) == pytest.approx(np.linalg.norm(m, 2), rel=1e-12)


def test_schatten_hermitian_matches_eigenvalues(rng):
    for d in (2, 4, 8):
        h = random_hermitian(rng, d)
        w, _ = eig_hermitian(h)
        assert abs(schatten_norm(h, 1) - np.abs(w).sum()) < 1e-10
        assert abs(schatten_norm(h, 2) ** 2 - np.trace(h @ h).real) < 1e-10


def test_eig_hermitian_examples(rng):
    w, u = eig_hermitian(SZ)
    np.testing.assert_allclose(w, [1, -1])
    w, _ = eig_hermitian(np.eye(4) / 4)
    np.testing.assert_allclose(w, [0.25] * 4)
    h = random_hermitian(rng, 8)
    w, u = eig_hermitian(h)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(h - u @ np.diag(w) @ u.conj().T) < 1e-10
    np.testing.assert_allclose(u.conj().T @ u, np.eye(8), atol=1e-12)


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_hermitian_helper():
    a = np.array([[1, 1 + 1e-14], [1, 2]], dtype=complex)
    assert is_hermitian(a)
    assert is_hermitian(hermitian(a, atol=1e-12), atol=0)
    with pytest.raises(ValueError):
        hermitian(np.array([[0, 1], [0, 0]]), atol=1e-12)


def test_operator_abs(rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = operator_abs(m)
    np.testing.assert_allclose(a @ a, m.conj().T @ m, atol=1e-12)
    assert np.trace(a).real == pytest.approx(schatten_norm(m, 1))


small_complex = hnp.arrays(np.complex128, (2, 2), elements=st.complex_numbers(
    max_magnitude=10, allow_nan=False, allow_infinity=False))
medium_complex = hnp.arrays(np.complex128, (3, 3), elements=st.complex_numbers(
    max_magnitude=10, allow_nan=False, allow_infinity=False))


@settings(max_examples=200, deadline=None)
@given(small_complex, medium_complex)
def test_hs_norm_multiplicative(a, b):
    lhs = schatten_norm(tensor_product(a, b), 2)
    rhs = schatten_norm(a, 2) * schatten_norm(b, 2)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)
