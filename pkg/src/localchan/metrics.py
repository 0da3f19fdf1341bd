"""Schatten p-distances between density matrices (or any Hermitian operators)."""
import numpy as np

from .linalg import DimensionError, hermitian, hermitian_schatten_norm, schatten_norm


def p_distance(a, b, p=2):
    """``||a - b||_p``.

    ``p = 1`` is the trace distance without the conventional 1/2 factor
    (sum of eigenvalues of ``|a - b|``), ``p = 2`` is the Hilbert-Schmidt
    distance. Non-Hermitian operands fall back to singular values.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    if np.max(np.abs(diff - diff.conj().T), initial=0.0) <= 1e-12:
        return float(hermitian_schatten_norm(hermitian(diff), p))
    return float(schatten_norm(diff, p))


def trace_distance(a, b):
    return p_distance(a, b, 1)


def hs_distance(a, b):
    return p_distance(a, b, 2)
