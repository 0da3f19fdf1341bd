import numpy as np
import pytest

from localchan.linalg import partial_trace
from localchan.states import InvalidStateError, bell_state, check_density, from_bloch, \
    gellmann_basis, ghz_state, purity, random_ket, random_mixed, random_pure, \
    random_separable, rng_from, schmidt_decompose, singlet_ket, to_bloch, werner_state
from localchan.witness import PAULI_PAIRS, concurrence

SX = np.array([[0, 1], [1, 0]])
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1, -1])


def test_qubit_basis_is_scaled_paulis():
    g = gellmann_basis(2).generators
    np.testing.assert_allclose(g, np.array([SX, SY, SZ]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(gellmann_basis(2).gram(), np.eye(3), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gram_matrix_is_identity(d):
    g = gellmann_basis(d).generators
    assert g.shape == (d * d - 1, d, d)
    gram = np.array([[np.trace(a @ b) for b in g] for a in g])
    np.testing.assert_allclose(gram, np.eye(d * d - 1), atol=1e-12)
    for a in g:
        np.testing.assert_allclose(a, a.conj().T, atol=0)
        assert abs(np.trace(a)) < 1e-12


def test_gellmann_ordering_d3():
    g = gellmann_basis(3).generators
    # symmetric (0,1),(0,2),(1,2); antisymmetric likewise; two diagonal
    assert g[0][0, 1] == g[0][1, 0] == pytest.approx(1 / np.sqrt(2))
    assert g[2][1, 2] == pytest.approx(1 / np.sqrt(2))
    assert g[3][0, 1] == pytest.approx(-1j / np.sqrt(2))
    np.testing.assert_allclose(np.diag(g[7]).real, np.array([1, 1, -2]) / np.sqrt(6))


def test_gellmann_rejects_small_d():
    with pytest.raises(ValueError):
        gellmann_basis(1)


def test_bloch_examples():
    for d in (2, 3, 4):
        b = gellmann_basis(d)
        np.testing.assert_allclose(to_bloch(np.eye(d) / d, b), 0, atol=1e-15)
        for seed in range(5):
            c = to_bloch(random_pure(d, seed), b)
            assert abs(c @ c - (1 - 1 / d)) < 1e-10
    # Tr(|0><0| sz / sqrt(2)) = 1/sqrt(2)
    np.testing.assert_allclose(to_bloch(np.diag([1, 0]), gellmann_basis(2)),
                               [0, 0, 1 / np.sqrt(2)], atol=1e-15)


def test_bloch_round_trip(rng):
    for d in (2, 3, 4):
        b = gellmann_basis(d)
        for _ in range(20):
            rho = random_mixed(d, int(rng.integers(1, d + 1)), rng)
            np.testing.assert_allclose(from_bloch(to_bloch(rho, b), b), rho, atol=1e-12)


def test_bloch_errors():
    with pytest.raises(ValueError):
        to_bloch(np.eye(3) / 3, gellmann_basis(2))
    with pytest.raises(InvalidStateError):
        from_bloch([1.0, 0, 0], gellmann_basis(2))


def test_bell_state():
    rho = bell_state()
    assert purity(rho) == pytest.approx(1)
    np.testing.assert_allclose(partial_trace(rho, [2, 2], [0]), np.eye(2) / 2, atol=1e-15)
    expansion = (np.eye(4) - PAULI_PAIRS[0, 0] - PAULI_PAIRS[1, 1] - PAULI_PAIRS[2, 2]) / 4
    np.testing.assert_allclose(rho, expansion, atol=1e-15)


def test_ghz_state():
    rho2 = ghz_state(2)
    np.testing.assert_allclose(partial_trace(rho2, [2, 2], [0]), np.eye(2) / 2, atol=1e-15)
    rho3 = ghz_state(3)
    nz = rho3[np.abs(rho3) > 1e-15]
    assert nz.size == 4
    np.testing.assert_allclose(nz, 0.5)
    assert rho3[0, 7] == pytest.approx(0.5) and rho3[7, 0] == pytest.approx(0.5)
    for n in range(1, 9):
        assert purity(ghz_state(n)) == pytest.approx(1)
    for bad in (0, 13):
        with pytest.raises(ValueError):
            ghz_state(bad)


def test_werner_state():
    np.testing.assert_allclose(werner_state(1), bell_state(), atol=1e-15)
    np.testing.assert_allclose(werner_state(0), np.eye(4) / 4, atol=1e-15)
    # Bell basis: singlet weight w + (1-w)/4, triplets (1-w)/4
    w = np.sort(np.linalg.eigvalsh(werner_state(0.5)))[::-1]
    np.testing.assert_allclose(w, [0.625, 0.125, 0.125, 0.125], atol=1e-15)
    for bad in (-0.1, 1.1):
        with pytest.raises(ValueError):
            werner_state(bad)


@pytest.mark.parametrize("w", np.linspace(0, 1, 21))
def test_werner_entangled_iff_above_one_third(w):
    c = concurrence(werner_state(w))
    assert (c > 1e-12) == (w > 1 / 3 + 1e-12)


def test_schmidt_examples():
    sd = schmidt_decompose(singlet_ket(), 2, 2)
    np.testing.assert_allclose(sd.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-15)
    assert sd.rank == 2
    plus = np.array([1, 1]) / np.sqrt(2)
    sd = schmidt_decompose(np.kron([1, 0], plus), 2, 2)
    assert sd.rank == 1
    assert sd.coefficients[0] == pytest.approx(1)


def test_schmidt_random(rng):
    for _ in range(50):
        psi = random_ket(12, rng)
        sd = schmidt_decompose(psi, 3, 4)
        assert sd.rank <= 3
        assert abs(np.sum(sd.coefficients ** 2) - 1) < 1e-10
        assert np.linalg.norm(sd.reconstruct() - psi) < 1e-10
        np.testing.assert_allclose(sd.left_vectors.conj().T @ sd.left_vectors, np.eye(3),
                                   atol=1e-12)
        np.testing.assert_allclose(sd.right_vectors.conj().T @ sd.right_vectors, np.eye(3),
                                   atol=1e-12)


def test_schmidt_rejects_unnormalized():
    with pytest.raises(InvalidStateError):
        schmidt_decompose(np.ones(4), 2, 2)
    with pytest.raises(ValueError):
        schmidt_decompose(np.ones(5) / np.sqrt(5), 2, 2)


def test_random_pure_contract():
    for d in (2, 3, 7):
        rho = random_pure(d, 11)
        assert abs(purity(rho) - 1) < 1e-12
        check_density(rho)
    np.testing.assert_array_equal(random_pure(4, 123), random_pure(4, 123))
    assert not np.array_equal(random_pure(4, 123), random_pure(4, 124))


def test_random_pure_is_unbiased():
    # Haar symmetry: E Tr(rho sz/sqrt2) = 0; per-sample sd is 1/sqrt(6)
    rng = rng_from(99)
    vals = np.array([to_bloch(random_pure(2, rng), gellmann_basis(2))[2]
                     for _ in range(100_000)])
    assert abs(vals.mean()) < 0.007


def test_random_separable():
    rho = random_separable(2, 3, 1, seed=5)
    assert purity(rho) == pytest.approx(1)
    np.testing.assert_allclose(rho, np.kron(partial_trace(rho, [2, 3], [0]),
                                            partial_trace(rho, [2, 3], [1])), atol=1e-12)
    for seed in range(20):
        check_density(random_separable(3, 2, 4, seed))
    with pytest.raises(ValueError):
        random_separable(2, 2, 0)


def test_trial_seeds_independent():
    a = random_pure(3, rng_from(5, 0))
    b = random_pure(3, rng_from(5, 1))
    assert not np.allclose(a, b)
    np.testing.assert_array_equal(a, random_pure(3, rng_from(5, 0)))


def test_check_density_rejects():
    with pytest.raises(InvalidStateError):
        check_density(np.eye(2))
    with pytest.raises(InvalidStateError):
        check_density(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidStateError):
        check_density(np.array([[0.5, 0.5], [0, 0.5]]))
