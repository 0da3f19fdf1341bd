"""Two-qubit entanglement detection with a non-physical linear map.

Uses the unnormalized Pauli convention (``Tr s_j^2 = 2``) throughout, so
``rho = 1/4 [1 + a.s x 1 + 1 x b.s + sum_jk g_jk s_j x s_k]``.
"""
from typing import NamedTuple

import numpy as np

from .linalg import DimensionError, as_matrix, hermitian, hermitian_schatten_norm

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.array([SIGMA_X, SIGMA_Y, SIGMA_Z])
_I2 = np.eye(2, dtype=complex)
# PAULI_PAIRS[j, k] = s_j x s_k
PAULI_PAIRS = np.einsum("jab,kcd->jkacbd", PAULIS, PAULIS).reshape(3, 3, 4, 4)

NEGATIVE_EIG_ATOL = 1e-10

_LOCAL_A = np.array([np.kron(s, _I2) for s in PAULIS])
_LOCAL_B = np.array([np.kron(_I2, s) for s in PAULIS])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


class PauliCoefficients(NamedTuple):
    alpha: np.ndarray  # (3,)
    beta: np.ndarray  # (3,)
    gamma: np.ndarray  # (3, 3)

    def reconstruct(self):
        out = np.eye(4, dtype=complex)
        out += np.einsum("j,jab->ab", self.alpha, _LOCAL_A)
        out += np.einsum("k,kab->ab", self.beta, _LOCAL_B)
        out += np.einsum("jk,jkab->ab", self.gamma, PAULI_PAIRS)
        return out / 4


def _two_qubit(rho):
    a = as_matrix(rho)
    if a.shape != (4, 4):
        raise DimensionError(f"expected a 4x4 two-qubit operator, got {a.shape}")
    return a


def pauli_coefficients(rho):
    """Local and correlation coefficients of a two-qubit operator.

    ``alpha_j = Tr rho s_j x 1``, ``beta_k = Tr rho 1 x s_k`` and
    ``gamma_jk = Tr rho s_j x s_k``.
    """
    a = _two_qubit(rho)
    alpha = np.einsum("jab,ba->j", _LOCAL_A, a).real
    beta = np.einsum("kab,ba->k", _LOCAL_B, a).real
    gamma = np.einsum("jkab,ba->jk", PAULI_PAIRS, a).real
    return PauliCoefficients(alpha, beta, gamma)


def orthonormal_to_pauli(coeffs):
    """Convert qubit Bloch coordinates in the orthonormal basis to Pauli ones.

    ``gellmann_basis(2)`` is ``s/sqrt(2)``, so ``I/2 + c.s/sqrt(2) = (1 + a.s)/2``
    with ``a = sqrt(2) c``.
    """
    return np.sqrt(2) * np.asarray(coeffs, dtype=float)


def pauli_to_orthonormal(alpha):
    return np.asarray(alpha, dtype=float) / np.sqrt(2)


def _perturbation(gamma):
    """``-1 + sum_jk g_jk s_j x s_k``."""
    return -np.eye(4, dtype=complex) + np.einsum("jk,jkab->ab", gamma, PAULI_PAIRS)


def apply_witness_map(rho, epsilon):
    """``rho -> rho + (eps/4)(-1 + sum_jk g_jk s_j x s_k)``.

    The image is Hermitian but neither positive nor trace preserving in
    general: its trace is ``Tr(rho) - eps``.
    """
    a = _two_qubit(rho)
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    gamma = pauli_coefficients(a).gamma
    return hermitian(a + epsilon / 4 * _perturbation(gamma))


def witness_value_explicit(rho, epsilon):
    """``(1/eps) Tr|Lambda12[rho] - rho| - 1`` computed literally at finite ``eps``."""
    a = _two_qubit(rho)
    diff = hermitian(apply_witness_map(a, epsilon) - a)
    return float(hermitian_schatten_norm(diff, 1)) / epsilon - 1.0


def witness_value(rho):
    """``F(rho) = 1/4 Tr|-1 + sum g_jk s_j x s_k| - 1``; ``eps`` cancels exactly."""
    gamma = pauli_coefficients(_two_qubit(rho)).gamma
    return float(hermitian_schatten_norm(_perturbation(gamma), 1)) / 4 - 1.0


def concurrence(rho):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the descending square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``, obtained here as the singular values of
    ``sqrt(rho) (sy x sy) sqrt(rho)*``. This avoids square roots of
    near-zero eigenvalues, which would amplify rounding noise.
    """
    a = hermitian(_two_qubit(rho))
    w, v = np.linalg.eigh(a)
    if w.min() < -NEGATIVE_EIG_ATOL:
        raise ValueError(f"state has eigenvalue {w.min():.3g} < 0")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    lam = np.linalg.svd(root @ _YY @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def detects_entanglement(rho, slack=1e-9):
    """True when ``F(rho)`` exceeds ``slack``, which no separable state can do."""
    return witness_value(rho) > slack
