"""Density operators, named states, generator bases and random sampling.

States are ``numpy`` arrays. Constructors return matrices that pass
:func:`check_density`; anything coming from outside should be passed
through it once.

Generator ordering
------------------
:func:`gellmann_basis` returns the ``d**2 - 1`` generalized Gell-Mann
matrices normalized to ``Tr(s_a s_b) = delta_ab``, in this fixed order:

1. symmetric ``(|j><k| + |k><j|)/sqrt(2)`` for ``j < k`` (lexicographic),
2. antisymmetric ``-i(|j><k| - |k><j|)/sqrt(2)`` for ``j < k``,
3. diagonal ``(sum_{m<l} |m><m| - l|l><l|)/sqrt(l(l+1))`` for ``l = 1..d-1``.

For ``d = 2`` this is ``(sx, sy, sz)/sqrt(2)``.
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .linalg import MAX_DIM, as_matrix, hermitian, is_hermitian, tensor_product

TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
SCHMIDT_CUTOFF = 1e-12


class InvalidStateError(ValueError):
    pass


def rng_from(seed, *index):
    """Build a generator from ``seed`` and optional trial indices.

    ``seed`` may already be a ``Generator``, in which case it is returned
    unchanged. Otherwise the indices are mixed into the seed sequence so
    ``rng_from(s, i)`` gives independent streams for each trial ``i``.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if index:
        return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, index)]))
    return np.random.default_rng(seed)


def check_density(rho, dims=None):
    """Validate and return ``rho`` as a density matrix.

    Raises :class:`InvalidStateError` when ``rho`` is not Hermitian, does not
    have unit trace, or has an eigenvalue below ``-PSD_ATOL``.
    """
    a = as_matrix(rho)
    if a.shape[0] != a.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got {a.shape}")
    if dims is not None and int(np.prod(dims)) != a.shape[0]:
        raise InvalidStateError(f"dims {list(dims)} do not match size {a.shape[0]}")
    if not is_hermitian(a):
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(a).real
    if abs(tr - 1.0) > TRACE_ATOL:
        raise InvalidStateError(f"trace is {tr!r}, expected 1")
    lo = np.linalg.eigvalsh(a)[0]
    if lo < -PSD_ATOL:
        raise InvalidStateError(f"density matrix has negative eigenvalue {lo:.3g}")
    return a


def is_density(rho):
    try:
        check_density(rho)
    except (InvalidStateError, ValueError):
        return False
    return True


def purity(rho):
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


def projector(psi):
    """``|psi><psi|`` for a (not necessarily normalized) ket."""
    v = np.asarray(psi, dtype=complex).ravel()
    return np.outer(v, v.conj())


def basis_ket(d, i):
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


def maximally_mixed(d):
    return np.eye(d, dtype=complex) / d


# -- generator basis and Bloch coordinates ---------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """Orthonormal traceless Hermitian basis of ``d x d`` operators."""

    dim: int
    generators: np.ndarray  # shape (d*d - 1, d, d)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def gram(self):
        g = self.generators
        return np.einsum("aij,bji->ab", g, g)


_BASIS_CACHE = {}


def gellmann_basis(d):
    """Generalized Gell-Mann generators of SU(d), orthonormal under Tr(AB)."""
    d = int(d)
    if d < 2:
        raise ValueError(f"generator basis needs d >= 2, got {d}")
    if d in _BASIS_CACHE:
        return _BASIS_CACHE[d]

    pairs = list(combinations(range(d), 2))
    gens = []
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1.0
        gens.append(m / np.sqrt(2))
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = -1j
        m[k, j] = 1j
        gens.append(m / np.sqrt(2))
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        gens.append(np.diag(diag).astype(complex) / np.sqrt(l * (l + 1)))

    gens = np.array(gens)
    gens.setflags(write=False)
    basis = GeneratorBasis(d, gens)
    _BASIS_CACHE[d] = basis
    return basis


def to_bloch(rho, basis):
    """Real coordinates ``c_a = Tr(rho s_a)`` in the given basis."""
    rho = as_matrix(rho)
    if rho.shape[0] != basis.dim:
        raise ValueError(f"state dimension {rho.shape[0]} != basis dimension {basis.dim}")
    return np.einsum("ij,aji->a", rho, basis.generators).real


def from_bloch(coeffs, basis):
    """Rebuild ``I/d + sum_a c_a s_a``.

    Rejects coefficient vectors whose squared norm exceeds the pure-state
    ceiling ``1 - 1/d``; vectors under the ceiling may still be unphysical
    for ``d > 2``.
    """
    c = np.asarray(coeffs, dtype=float)
    d = basis.dim
    if c.shape != (d * d - 1,):
        raise ValueError(f"expected {d * d - 1} coefficients, got shape {c.shape}")
    if c @ c > 1 - 1 / d + 1e-10:
        raise InvalidStateError(
            f"Bloch vector norm^2 {c @ c:.6g} exceeds 1 - 1/d = {1 - 1 / d:.6g}")
    return np.eye(d, dtype=complex) / d + np.einsum("a,aij->ij", c, basis.generators)


# -- named states ----------------------------------------------------------

def singlet_ket():
    return np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def bell_state():
    """The singlet ``(|01> - |10>)/sqrt(2)`` as a 4x4 projector."""
    return projector(singlet_ket())


def ghz_state(n):
    """``(|0...0> + |1...1>)/sqrt(2)`` on ``n`` qubits, ``1 <= n <= 12``."""
    n = int(n)
    if not 1 <= n <= 12:
        raise ValueError(f"GHZ state needs 1 <= n <= 12, got {n}")
    dim = 2 ** n
    psi = np.zeros(dim, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return projector(psi)


def werner_state(w):
    """``w * singlet + (1 - w) * I/4`` for ``0 <= w <= 1``."""
    w = float(w)
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"Werner weight must lie in [0, 1], got {w}")
    return w * bell_state() + (1 - w) * np.eye(4, dtype=complex) / 4


# -- Schmidt decomposition ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray  # descending, length min(d1, d2)
    left_vectors: np.ndarray  # columns are orthonormal kets of system 1
    right_vectors: np.ndarray  # columns are orthonormal kets of system 2
    rank: int

    def reconstruct(self):
        return np.einsum("k,ik,jk->ij", self.coefficients, self.left_vectors,
                         self.right_vectors).ravel()


def schmidt_decompose(psi, d1, d2):
    """Schmidt decomposition of a unit bipartite ket via SVD."""
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != d1 * d2:
        raise ValueError(f"ket has length {v.size}, expected {d1}*{d2}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > 1e-10:
        raise InvalidStateError(f"ket is not normalized (norm {nrm!r})")
    u, s, vh = np.linalg.svd(v.reshape(d1, d2), full_matrices=False)
    rank = int(np.count_nonzero(s > SCHMIDT_CUTOFF))
    return SchmidtDecomposition(s, u, vh.T, rank)


# -- random states -----------------------------------------------------------

def random_ket(d, seed=None):
    """Haar-random unit ket from a normalized complex Gaussian vector."""
    rng = rng_from(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_pure(d, seed=None):
    """Haar-random pure state as a density matrix."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return projector(random_ket(d, seed))


def random_mixed(d, rank=None, seed=None):
    """Random mixed state ``G G^dagger / Tr`` from a ``d x rank`` Ginibre matrix.

    ``rank = d`` (the default) samples the Hilbert-Schmidt measure.
    """
    rng = rng_from(seed)
    r = d if rank is None else int(rank)
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    return hermitian(rho / np.trace(rho).real)


def random_separable(d1, d2, terms=1, seed=None):
    """Dirichlet-weighted mixture of ``terms`` random pure product states."""
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    if d1 * d2 > MAX_DIM:
        raise ValueError(f"total dimension {d1 * d2} exceeds {MAX_DIM}")
    rng = rng_from(seed)
    weights = rng.dirichlet(np.ones(terms)) if terms > 1 else np.ones(1)
    rho = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for w in weights:
        rho += w * tensor_product(random_pure(d1, rng), random_pure(d2, rng))
    return rho


def random_unitary(d, seed=None):
    """Haar-random unitary (QR of a Ginibre matrix with phase correction)."""
    rng = rng_from(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
