"""CPTP maps in Kraus form and the sup-distance certificate of a channel.

A channel is stored only through its Kraus operators. Everything else
(superoperator matrix, affine Bloch form, action on dyads) is derived on
demand. The action on non-Hermitian operators such as ``|k><l|`` is the
Kraus sum itself, which is the unique linear extension of the map.
"""
import hashlib
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import minimize

from .linalg import MAX_DIM, DimensionError, as_matrix, hermitian, hermitian_schatten_norm, \
    tensor_product
from .states import basis_ket, check_density, gellmann_basis, projector, random_ket, \
    random_unitary, rng_from

TP_ATOL = 1e-10

CLOSED_FORM = "closed_form"
OPTIMIZED = "optimized"


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Completely positive trace-preserving map ``rho -> sum_i K_i rho K_i^dagger``."""

    kraus: np.ndarray  # shape (m, d, d)
    name: str = field(default="channel", compare=False)

    def __post_init__(self):
        ks = np.asarray(self.kraus, dtype=complex)
        if ks.ndim == 2:
            ks = ks[None]
        if ks.ndim != 3 or ks.shape[1] != ks.shape[2] or ks.shape[0] == 0:
            raise DimensionError(f"Kraus operators must have shape (m, d, d), got {ks.shape}")
        if not np.all(np.isfinite(ks)):
            raise ValueError("Kraus operators have non-finite entries")
        d = ks.shape[1]
        if d > MAX_DIM:
            raise DimensionError(f"channel dimension {d} exceeds {MAX_DIM}")
        tp = np.einsum("mji,mjk->ik", ks.conj(), ks)
        dev = np.max(np.abs(tp - np.eye(d)))
        if dev > TP_ATOL:
            raise ValueError(f"Kraus operators are not trace preserving (deviation {dev:.3g})")
        ks.setflags(write=False)
        object.__setattr__(self, "kraus", ks)

    @property
    def dim(self):
        return self.kraus.shape[1]

    def __call__(self, x):
        """Apply the (linearly extended) map to any ``d x d`` matrix."""
        x = np.asarray(x, dtype=complex)
        if x.shape[-2:] != (self.dim, self.dim):
            raise DimensionError(f"operator shape {x.shape} does not match channel dim {self.dim}")
        return np.einsum("mij,...jk,mlk->...il", self.kraus, x, self.kraus.conj())

    def superoperator(self):
        """Matrix ``S`` with ``vec(Lambda[X]) = S vec(X)`` for row-major ``vec``."""
        return np.einsum("mij,mkl->ikjl", self.kraus, self.kraus.conj()).reshape(
            self.dim ** 2, self.dim ** 2)

    def fingerprint(self):
        """Short opaque id that depends only on the map, not on the Kraus choice."""
        s = np.round(self.superoperator(), 12) + 0.0  # drops negative zeros
        return hashlib.sha1(s.tobytes()).hexdigest()[:12]


def apply(ch, rho):
    """Output state ``Lambda[rho]`` for a valid density matrix ``rho``."""
    rho = check_density(rho)
    if rho.shape[0] != ch.dim:
        raise DimensionError(f"state dimension {rho.shape[0]} != channel dimension {ch.dim}")
    return hermitian(ch(rho))


def apply_local(ch, rho, dims, site):
    """Apply ``ch`` to subsystem ``site`` of a multipartite operator.

    Equivalent to ``(1 x ... x ch x ... x 1)[rho]`` without building the
    product channel.
    """
    dims = [int(d) for d in dims]
    n = len(dims)
    if dims[site] != ch.dim:
        raise DimensionError(f"subsystem {site} has dim {dims[site]}, channel has {ch.dim}")
    rho = np.asarray(rho, dtype=complex)
    t = rho.reshape(dims + dims)
    out = np.zeros_like(t)
    for k in ch.kraus:
        a = np.moveaxis(np.tensordot(k, t, axes=([1], [site])), 0, site)
        a = np.moveaxis(np.tensordot(a, k.conj(), axes=([n + site], [1])), -1, n + site)
        out += a
    return out.reshape(rho.shape)


def apply_product(chs, rho, dims=None):
    """Apply ``chs[0] x chs[1] x ...`` factor by factor.

    ``None`` entries stand for the identity on that subsystem.
    """
    if dims is None:
        dims = [c.dim for c in chs]
    if len(dims) != len(chs):
        raise DimensionError("need one channel (or None) per subsystem")
    out = np.asarray(rho, dtype=complex)
    for site, ch in enumerate(chs):
        if ch is not None:
            out = apply_local(ch, out, dims, site)
    return out


def tensor_channels(chs, max_dim=MAX_DIM):
    """Product channel whose Kraus set is all products of component Kraus operators."""
    chs = list(chs)
    if not chs:
        raise ValueError("need at least one channel")
    total = int(np.prod([c.dim for c in chs]))
    if total > max_dim:
        raise DimensionError(f"product dimension {total} exceeds maximum {max_dim}")
    count = int(np.prod([len(c.kraus) for c in chs]))
    if count * total * total > 2 ** 26:
        raise DimensionError(
            f"{count} Kraus operators of size {total} are too large; use apply_product")
    ks = [tensor_product(*combo) for combo in product(*(c.kraus for c in chs))]
    return QuantumChannel(np.array(ks), name=" x ".join(c.name for c in chs))


# -- named channels ------------------------------------------------------------

def identity_channel(d):
    return QuantumChannel(np.eye(d, dtype=complex)[None], name=f"identity({d})")


def unitary_channel(u):
    u = as_matrix(u)
    return QuantumChannel(u[None], name="unitary")


def _weyl_operators(d):
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            for a in range(d) for b in range(d)]


def depolarizing_contraction(d, k):
    """``rho -> (1 - k) rho + k I/d`` via the d**2 Weyl-operator Kraus set."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"contraction parameter must lie in [0, 1], got {k}")
    ws = _weyl_operators(d)
    weights = [np.sqrt(1 - k * (d * d - 1) / (d * d))] + [np.sqrt(k) / d] * (d * d - 1)
    ks = np.array([w * op for w, op in zip(weights, ws)])
    return QuantumChannel(ks, name=f"contraction(d={d}, k={k:.6g})")


def dephasing(k):
    """Qubit dephasing: diagonal kept, off-diagonal entries scaled by ``1 - k``."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"dephasing parameter must lie in [0, 1], got {k}")
    sz = np.diag([1.0, -1.0]).astype(complex)
    ks = np.array([np.sqrt(1 - k / 2) * np.eye(2), np.sqrt(k / 2) * sz])
    return QuantumChannel(ks, name=f"dephasing(k={k:.6g})")


def mix_with_identity(ch, t):
    """The channel ``(1 - t) id + t ch``."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {t}")
    ks = np.concatenate([np.sqrt(1 - t) * np.eye(ch.dim)[None], np.sqrt(t) * ch.kraus])
    return QuantumChannel(ks, name=f"mix({t:.3g}, {ch.name})")


def random_channel(d, env_dim=1, seed=None):
    """Random channel from a Haar isometry ``C^d -> C^d x C^env_dim``.

    The environment is traced out, leaving ``env_dim`` Kraus operators.
    """
    if env_dim < 1:
        raise ValueError(f"env_dim must be >= 1, got {env_dim}")
    if d * env_dim > MAX_DIM:
        raise DimensionError(f"dilation dimension {d * env_dim} exceeds {MAX_DIM}")
    u = random_unitary(d * env_dim, rng_from(seed))
    v = u[:, :d].reshape(d, env_dim, d)
    return QuantumChannel(np.moveaxis(v, 1, 0), name=f"random(d={d}, env={env_dim})")


def contraction_parameter(ch, atol=1e-12):
    """Return ``k`` if ``ch`` acts as ``(1 - k) rho + k I/d``, else ``None``."""
    d = ch.dim
    s = ch.superoperator()
    k = 1.0 - s[1, 1].real if d > 1 else 0.0
    vec_i = np.eye(d).ravel()
    target = (1 - k) * np.eye(d * d) + k / d * np.outer(vec_i, vec_i)
    if np.max(np.abs(s - target)) > atol or not -atol <= k <= 1 + atol:
        return None
    return min(max(k, 0.0), 1.0)


def contraction_epsilon(d, k, p=2):
    """Sup p-distance of the contraction with parameter ``k``.

    The sup sits on any pure state, where ``rho - I/d`` has eigenvalues
    ``1 - 1/d`` once and ``-1/d`` with multiplicity ``d - 1``.
    """
    if p == np.inf:
        return k * (1 - 1 / d)
    return k * ((1 - 1 / d) ** p + (d - 1) / d ** p) ** (1 / p)


def contraction_for_epsilon(d, epsilon, p=2):
    """Contraction parameter ``k`` whose sup p-distance is exactly ``epsilon``."""
    k = epsilon / contraction_epsilon(d, 1.0, p)
    if k > 1.0:
        raise ValueError(f"epsilon={epsilon} needs k={k:.4g} > 1 for d={d}, p={p}")
    return k


def bloch_affine(ch, basis=None):
    """Affine form ``c -> M c + t`` of the channel in an orthonormal generator basis."""
    basis = gellmann_basis(ch.dim) if basis is None else basis
    g = basis.generators
    out = ch(g)
    m = np.einsum("aij,bji->ab", g, out).real
    t = np.einsum("aij,ji->a", g, ch(np.eye(ch.dim) / ch.dim)).real
    return m, t


# -- sup-distance certificate ------------------------------------------------

@dataclass(frozen=True, eq=False)
class EpsilonCertificate:
    channel_id: str
    p: float
    epsilon: float
    method: str
    state: np.ndarray = field(default=None, repr=False)  # achieving ket
    converged: bool = True


def distance_on_state(ch, rho, p=2):
    """``||Lambda[rho] - rho||_p``."""
    rho = np.asarray(rho, dtype=complex)
    return float(hermitian_schatten_norm(hermitian(ch(rho) - rho), p))


def _norm_gradient(x, p):
    """Gradient (a subgradient for p in {1, inf}) of the Schatten p-norm at Hermitian ``x``.

    Works on stacks ``(R, d, d)``; returns the gradient and the norms.
    """
    w, u = np.linalg.eigh(x)
    a = np.abs(w)
    if p == np.inf:
        top = np.argmax(a, axis=-1)
        coef = np.zeros_like(w)
        rows = np.arange(w.shape[0])
        coef[rows, top] = np.sign(w[rows, top])
        nrm = a[rows, top]
    elif p == 1:
        coef = np.sign(w)
        nrm = a.sum(axis=-1)
    else:
        nrm = np.sum(a ** p, axis=-1) ** (1 / p)
        safe = np.where(nrm > 0, nrm, 1.0)
        coef = np.sign(w) * (a / safe[:, None]) ** (p - 1)
    grad = np.einsum("rik,rk,rjk->rij", u, coef, u.conj())
    return grad, nrm


def _ascent(lmat, d, p, kets, max_iter, tol):
    """Multi-start ascent of ``||L(|psi><psi|)||_p`` over unit kets.

    The objective is convex in the density matrix, so replacing the state by
    the top eigenvector of the adjoint applied to the norm gradient never
    decreases it (a minorize-maximize step). All restarts run as one batch.
    Returns the per-restart values and kets plus a convergence flag.
    """
    n = d * d
    ladj = lmat.conj()

    def evaluate(psi):
        rho = psi[:, :, None] * psi.conj()[:, None, :]
        x = (rho.reshape(-1, n) @ lmat.T).reshape(-1, d, d)
        x = 0.5 * (x + np.conj(np.swapaxes(x, -1, -2)))
        return _norm_gradient(x, p)

    psi = kets
    grad, val = evaluate(psi)
    converged = False
    for _ in range(max_iter):
        y = (grad.reshape(-1, n) @ ladj).reshape(-1, d, d)
        y = 0.5 * (y + np.conj(np.swapaxes(y, -1, -2)))
        _, vecs = np.linalg.eigh(y)
        cand = vecs[:, :, -1]
        cgrad, cval = evaluate(cand)
        better = cval > val
        gain = np.max(np.where(better, cval - val, 0.0))
        psi = np.where(better[:, None], cand, psi)
        grad = np.where(better[:, None, None], cgrad, grad)
        val = np.where(better, cval, val)
        if gain <= tol * float(val.max()):
            converged = True
            break
    return val, psi, converged


def _polish(lmat, d, p, psi, max_iter):
    """BFGS on the real and imaginary parts of an unnormalized ket.

    The MM step converges linearly; a quasi-Newton finish is much faster
    near a smooth maximum.
    """
    n = d * d
    ladj = lmat.conj()

    def negative(x):
        v = x[:d] + 1j * x[d:]
        nn = np.vdot(v, v).real
        rho = np.outer(v, v.conj()) / nn
        y = (rho.reshape(1, n) @ lmat.T).reshape(1, d, d)
        g, val = _norm_gradient(0.5 * (y + np.conj(np.swapaxes(y, -1, -2))), p)
        z = (g.reshape(1, n) @ ladj).reshape(d, d)
        z = 0.5 * (z + z.conj().T)
        zv = z @ v
        dv = zv / nn - np.vdot(v, zv).real * v / nn ** 2
        return -val[0], -2 * np.concatenate([dv.real, dv.imag])

    res = minimize(negative, np.concatenate([psi.real, psi.imag]), jac=True, method="BFGS",
                   options={"gtol": 1e-14, "maxiter": max_iter})
    v = res.x[:d] + 1j * res.x[d:]
    return v / np.linalg.norm(v)


SCREEN_ITERS = 25
KEEP_RESTARTS = 8


def epsilon_of_channel(ch, p=2, budget=64, max_iter=200, seed=0):
    """Certify ``sup_rho ||Lambda[rho] - rho||_p``.

    Recognized contractions get the closed form. Any other channel goes
    through ``budget`` random pure-state restarts (plus the computational
    basis states). Restricting to pure states loses nothing because the
    objective is convex in ``rho``. All restarts take a few MM steps, the
    best :data:`KEEP_RESTARTS` are iterated to convergence, and the leader
    gets a BFGS polish. ``max_iter`` caps each stage; if refinement has not
    converged the certificate is flagged ``converged=False`` and its value
    is only a lower bound. The reported value is recomputed at the stored
    state.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    d = ch.dim
    k = contraction_parameter(ch)
    if k is not None:
        return EpsilonCertificate(ch.fingerprint(), p, float(contraction_epsilon(d, k, p)),
                                  CLOSED_FORM, basis_ket(d, 0))

    lmat = ch.superoperator() - np.eye(d * d)
    if np.max(np.abs(lmat)) < 1e-15:
        return EpsilonCertificate(ch.fingerprint(), p, 0.0, OPTIMIZED, basis_ket(d, 0))
    rng = rng_from(seed)
    kets = np.concatenate([np.eye(d, dtype=complex),
                           np.array([random_ket(d, rng) for _ in range(budget)])])
    val, psi, _ = _ascent(lmat, d, p, kets, min(SCREEN_ITERS, max_iter), 1e-13)
    top = np.argsort(val)[::-1][:KEEP_RESTARTS]
    val, psi, converged = _ascent(lmat, d, p, psi[top], max_iter, 1e-10)
    best = psi[int(np.argmax(val))]
    polished = _polish(lmat, d, p, best, max_iter)
    eps, ket = distance_on_state(ch, projector(best), p), best
    eps_polished = distance_on_state(ch, projector(polished), p)
    if eps_polished > eps:
        eps, ket = eps_polished, polished
        # converged if the polished ket is a fixed point of the MM step
        converged = converged or _ascent(lmat, d, p, ket[None], 1, 1e-10)[2]
    return EpsilonCertificate(ch.fingerprint(), p, eps, OPTIMIZED, ket, converged)


# -- dyad deviations -----------------------------------------------------------

def channel_deviation(ch, ket, bra):
    """``Lambda[|ket><bra|] - |ket><bra|`` (generally not Hermitian)."""
    dyad = np.outer(np.asarray(ket, dtype=complex), np.conj(np.asarray(bra, dtype=complex)))
    return ch(dyad) - dyad


def channel_deviation_on_dyad(ch, k_index, l_index):
    """``V_kl = Lambda[|k><l|] - |k><l|`` for computational basis indices."""
    d = ch.dim
    if not (0 <= k_index < d and 0 <= l_index < d):
        raise IndexError(f"basis indices ({k_index}, {l_index}) out of range for d={d}")
    return channel_deviation(ch, basis_ket(d, k_index), basis_ket(d, l_index))


def state_deviation(ch, psi):
    """``Lambda[|psi><psi|] - |psi><psi|``."""
    rho = projector(psi)
    return ch(rho) - rho
