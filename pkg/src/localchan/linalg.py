"""Dense complex-matrix kernel.

Matrices are plain ``numpy`` arrays. Composite systems use the
subsystem-1-major convention: for dimensions ``(d1, d2, ...)`` the flat
index of ``|i1 i2 ...>`` is ``i1*d2*d3... + i2*d3... + ...``, which is what
``np.kron`` produces.
"""
from functools import reduce

import numpy as np

#: Largest total Hilbert-space dimension accepted by constructors.
MAX_DIM = 4096

#: Absolute tolerance for the Hermiticity check (max entrywise deviation).
HERMITIAN_ATOL = 1e-12


class DimensionError(ValueError):
    """Raised when operand shapes or subsystem dimensions are inconsistent."""


def as_matrix(m):
    """Return ``m`` as a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _require_square(a):
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def is_hermitian(m, atol=HERMITIAN_ATOL):
    a = np.asarray(m)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(
        np.max(np.abs(a - a.conj().T), initial=0.0) <= atol)


def hermitian(m, atol=None):
    """Symmetrize ``m`` to ``(m + m^dagger)/2``.

    With ``atol`` given, first check that ``m`` is Hermitian to that
    tolerance and raise ``ValueError`` otherwise. Use this only when taking
    in approximately Hermitian input; the eigen-solvers below assume exact
    Hermiticity.
    """
    a = as_matrix(m)
    _require_square(a)
    if atol is not None and not is_hermitian(a, atol):
        dev = np.max(np.abs(a - a.conj().T))
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    return 0.5 * (a + a.conj().T)


def tensor_product(*ops, max_dim=MAX_DIM):
    """Kronecker product of one or more matrices, subsystem-1-major."""
    if not ops:
        raise ValueError("need at least one operand")
    mats = [as_matrix(op) for op in ops]
    rows = int(np.prod([m.shape[0] for m in mats]))
    cols = int(np.prod([m.shape[1] for m in mats]))
    if max(rows, cols) > max_dim:
        raise DimensionError(
            f"tensor product dimension {rows}x{cols} exceeds maximum {max_dim}")
    return reduce(np.kron, mats)


def _check_dims(a, dims):
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive: {dims}")
    if int(np.prod(dims)) != a.shape[0]:
        raise DimensionError(
            f"subsystem dimensions {dims} do not match matrix size {a.shape[0]}")
    return dims


def partial_trace(m, dims, keep):
    """Trace out every subsystem not listed in ``keep``.

    ``keep`` is an iterable of subsystem indices (0-based). The kept
    subsystems appear in increasing index order in the result.
    """
    a = as_matrix(m)
    _require_square(a)
    dims = _check_dims(a, dims)
    keep = sorted({int(k) for k in keep})
    if not keep:
        raise ValueError("keep set must be nonempty")
    n = len(dims)
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"subsystem index out of range for {n} subsystems")

    t = a.reshape(dims + dims)
    # trace from the highest index down so remaining axis numbers stay valid
    for i in reversed(range(n)):
        if i not in keep:
            width = t.ndim // 2
            t = np.trace(t, axis1=i, axis2=i + width)
    dk = int(np.prod([dims[k] for k in keep]))
    return t.reshape(dk, dk)


def eig_hermitian(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, u)`` with ``h = u @ diag(w) @ u^dagger``. Input is checked
    against :data:`HERMITIAN_ATOL` and then symmetrized.
    """
    a = hermitian(h, atol=HERMITIAN_ATOL)
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # LAPACK did not converge
        raise np.linalg.LinAlgError(
            f"Hermitian eigensolver failed to converge: {exc}") from exc
    return w[::-1], u[:, ::-1]


def singular_values(m):
    return np.linalg.svd(np.asarray(m), compute_uv=False)


def schatten_norm(m, p=2):
    """Schatten p-norm ``(sum_i s_i**p)**(1/p)`` over singular values.

    ``p`` may be any real number >= 1 or ``np.inf`` (largest singular value).
    Works on stacks of matrices (leading batch axes).
    """
    a = np.asarray(m)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"expected square matrix, got shape {a.shape}")
    if not p >= 1:
        raise ValueError(f"norm order must be >= 1, got {p}")
    s = np.linalg.svd(a, compute_uv=False)
    return _norm_from_values(s, p)


def _norm_from_values(s, p):
    s = np.abs(s)
    if p == np.inf:
        return s.max(axis=-1)
    if p == 1:
        return s.sum(axis=-1)
    if p == 2:
        return np.sqrt(np.sum(s * s, axis=-1))
    top = s.max(axis=-1, keepdims=True)
    # rescale before powering so large p cannot underflow to zero
    safe = np.where(top > 0, top, 1.0)
    return safe[..., 0] * np.sum((s / safe) ** p, axis=-1) ** (1.0 / p)


def hermitian_schatten_norm(h, p=2):
    """Schatten norm of Hermitian matrices via eigenvalues (faster than SVD)."""
    if not p >= 1:
        raise ValueError(f"norm order must be >= 1, got {p}")
    return _norm_from_values(np.linalg.eigvalsh(h), p)


def operator_abs(m):
    """The positive operator ``|m| = sqrt(m^dagger m)``."""
    a = as_matrix(m)
    _require_square(a)
    u, s, vh = np.linalg.svd(a)
    return vh.conj().T @ np.diag(s) @ vh
