"""Randomized and structured experiments against the closed-form bounds.

Every trial draws its randomness from ``rng_from(seed, trial, stream)``, so
results do not depend on execution order or on the number of worker
threads (``LOCALCHAN_THREADS``, 0 meaning one per CPU).
"""
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from . import bounds
from .bounds import ENTANGLED, PRODUCT, SEPARABLE, UNKNOWN, classify
from .channels import apply_product, contraction_for_epsilon, depolarizing_contraction, \
    dephasing, epsilon_of_channel, identity_channel, mix_with_identity, random_channel
from .linalg import hermitian_schatten_norm
from .states import bell_state, ghz_state, projector, random_ket, random_mixed, \
    random_separable, rng_from, schmidt_decompose
from .witness import concurrence

CHANNEL_KINDS = ("contraction", "dephasing", "random", "identity")

# stream tags mixed into per-trial seeds
_STATE_STREAM = 0
_CHANNEL_STREAM = 1
_SEARCH_STREAM = 2


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 42
    trials: int = 10_000
    d1: int = 2
    d2: int = 2
    p: float = 2
    epsilon: float = 0.01
    channel: str = "contraction"
    # random channels: dilation size and how many trials share one channel pair
    env_dim: int = 2
    channel_refresh: int = 100
    # violation search
    restarts: int = 8
    search_space: str = "entangled"
    workers: int = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.channel not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.channel!r}")
        if self.d1 < 2 or self.d2 < 2:
            raise ValueError("subsystem dimensions must be >= 2")
        if self.channel == "dephasing" and (self.d1, self.d2) != (2, 2):
            raise ValueError("dephasing channels are defined for qubits only")
        if self.search_space not in ("entangled", "separable"):
            raise ValueError(f"unknown search space {self.search_space!r}")


def worker_count(workers=None):
    if workers is None:
        workers = int(os.environ.get("LOCALCHAN_THREADS", "0") or 0)
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def _map_trials(fn, n, workers=None):
    workers = worker_count(workers)
    if workers == 1 or n < 2 * workers:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n), chunksize=max(1, n // (4 * workers))))


# -- channels with certified epsilon ---------------------------------------

def calibrated_channel(kind, d, epsilon, p=2, seed=0, env_dim=2):
    """A channel on dimension ``d`` with ``sup_rho ||Lambda[rho] - rho||_p = epsilon``.

    Returns ``(channel, certificate)``. Random channels are mixed with the
    identity; since ``(1 - t) id + t Lambda - id = t (Lambda - id)`` the
    certified value scales linearly in ``t``, which fixes ``t``.
    """
    if kind == "identity":
        ch = identity_channel(d)
    elif kind == "contraction":
        ch = depolarizing_contraction(d, contraction_for_epsilon(d, epsilon, p))
    elif kind == "dephasing":
        if d != 2:
            raise ValueError("dephasing channels are defined for qubits only")
        # off-diagonal block of norm |rho_01| 2**(1/p), maximal at |rho_01| = 1/2
        scale = 1.0 if p == math.inf else 2 ** (1 / p)
        ch = dephasing(2 * epsilon / scale)
    elif kind == "random":
        base = random_channel(d, env_dim, seed)
        full = epsilon_of_channel(base, p, seed=seed).epsilon
        if full < epsilon:
            raise ValueError(f"random channel only reaches epsilon={full:.3g}")
        ch = mix_with_identity(base, epsilon / full)
    else:
        raise ValueError(f"unknown channel kind {kind!r}")
    return ch, epsilon_of_channel(ch, p, seed=seed)


def _channel_pair(cfg, trial):
    block = trial // cfg.channel_refresh if cfg.channel == "random" else 0
    rng = rng_from(cfg.seed, block, _CHANNEL_STREAM)
    s1, s2 = (int(x) for x in rng.integers(0, 2 ** 63, size=2))
    ch1, c1 = calibrated_channel(cfg.channel, cfg.d1, cfg.epsilon, cfg.p, s1, cfg.env_dim)
    ch2, c2 = calibrated_channel(cfg.channel, cfg.d2, cfg.epsilon, cfg.p, s2, cfg.env_dim)
    return ch1, ch2, max(c1.epsilon, c2.epsilon)


def measure(ch1, ch2, rho, p=2, dims=None):
    """``||(ch1 x ch2)[rho] - rho||_p``.

    Either channel may be ``None`` (identity), in which case ``dims`` is required.
    """
    if dims is None:
        dims = [ch1.dim, ch2.dim]
    out = apply_product([ch1, ch2], rho, dims)
    diff = out - rho
    return float(hermitian_schatten_norm(0.5 * (diff + diff.conj().T), p))


def _pair_cache(cfg):
    cache = {}

    def get(trial):
        block = trial // cfg.channel_refresh if cfg.channel == "random" else 0
        if block not in cache:
            cache[block] = _channel_pair(cfg, trial)
        return cache[block]
    return get


def summarize(reports):
    """Order-insensitive reduction of a list of reports."""
    dist = [r.measured_distance for r in reports]
    return {
        "trials": len(reports),
        "violations_separable": sum(r.violates_separable for r in reports),
        "violations_entangled": sum(r.violates_entangled for r in reports),
        "proven_bound_violations": sum(bounds.proven_bound_violated(r) for r in reports),
        "max_distance": max(dist) if dist else 0.0,
        "max_separable_ratio": max((r.measured_distance / r.separable_bound
                                    for r in reports if r.separable_bound > 0), default=0.0),
    }


# -- sweeps ----------------------------------------------------------------

def separable_sweep(cfg):
    """Random separable states through a certified channel pair, one report per trial."""
    pair = _pair_cache(cfg)

    def trial(i):
        ch1, ch2, eps = pair(i)
        rng = rng_from(cfg.seed, i, _STATE_STREAM)
        terms = int(rng.integers(1, 5))
        rho = random_separable(cfg.d1, cfg.d2, terms, rng)
        cls = PRODUCT if terms == 1 else SEPARABLE
        return classify(measure(ch1, ch2, rho, cfg.p), cfg.d1, cfg.d2, cfg.p, eps, cls)

    if cfg.channel == "random":
        # build channels up front so threads do not race on the cache
        for b in range(0, cfg.trials, cfg.channel_refresh):
            pair(b)
    return _map_trials(trial, cfg.trials, cfg.workers)


def _classify_state(rho, d1, d2, pure_ket=None):
    if pure_ket is not None:
        return ENTANGLED if schmidt_decompose(pure_ket, d1, d2).rank > 1 else PRODUCT
    if (d1, d2) == (2, 2):
        return ENTANGLED if concurrence(rho) > 1e-12 else SEPARABLE
    return UNKNOWN


def universal_sweep(cfg):
    """Random pure and mixed states (entangled included) through certified channels.

    Even trials use Haar pure states, odd trials Ginibre mixed states of
    random rank.
    """
    pair = _pair_cache(cfg)
    dim = cfg.d1 * cfg.d2

    def trial(i):
        ch1, ch2, eps = pair(i)
        rng = rng_from(cfg.seed, i, _STATE_STREAM)
        if i % 2 == 0:
            psi = random_ket(dim, rng)
            rho = projector(psi)
        else:
            psi = None
            rho = random_mixed(dim, int(rng.integers(1, dim + 1)), rng)
        cls = _classify_state(rho, cfg.d1, cfg.d2, psi)
        return classify(measure(ch1, ch2, rho, cfg.p), cfg.d1, cfg.d2, cfg.p, eps, cls)

    if cfg.channel == "random":
        for b in range(0, cfg.trials, cfg.channel_refresh):
            pair(b)
    return _map_trials(trial, cfg.trials, cfg.workers)


# -- worked examples -------------------------------------------------------

class ExampleResult(NamedTuple):
    """A report together with the exact and first-order values it came from."""
    report: bounds.BoundReport
    exact: float
    closed_form: float
    first_order: float

    def to_dict(self):
        return {"report": self.report.to_dict(), "exact": self.exact,
                "closed_form": self.closed_form, "first_order": self.first_order}


def bell_example(epsilon=0.01):
    """Two qubit contractions with ``k = sqrt(2) eps`` acting on the singlet.

    The exact Hilbert-Schmidt distance is ``(k + k' - k k') sqrt(3)/2``; to
    first order this is ``sqrt(6) eps``, above the separable bound
    ``sqrt(3) eps``.
    """
    if not 0 < epsilon <= 0.1:
        raise ValueError(f"bell example needs 0 < epsilon <= 0.1, got {epsilon}")
    k = math.sqrt(2) * epsilon
    ch = depolarizing_contraction(2, k)
    measured = measure(ch, ch, bell_state(), 2)
    closed = (2 * k - k * k) * math.sqrt(3) / 2
    report = classify(measured, 2, 2, 2, epsilon, ENTANGLED)
    return ExampleResult(report, measured, closed, math.sqrt(6) * epsilon)


class GhzDecay(NamedTuple):
    exact: float
    closed_form: float
    first_order: float

    def to_dict(self):
        return self._asdict()


def ghz_decay(n, epsilon):
    """Hilbert-Schmidt change of an ``n``-qubit GHZ state.

    Each qubit is dephased with ``k = sqrt(2) eps``.
    """
    if not 1 <= n <= 12:
        raise ValueError(f"need 1 <= n <= 12, got {n}")
    k = math.sqrt(2) * epsilon
    if not 0 <= k <= 1:
        raise ValueError(f"sqrt(2) * epsilon must lie in [0, 1], got {k}")
    rho = ghz_state(n)
    out = apply_product([dephasing(k)] * n, rho, [2] * n)
    exact = float(np.linalg.norm(out - rho))
    q = (1 - k) ** n
    closed = math.sqrt(0.5 * (1 + q * q - 2 * q))
    return GhzDecay(exact, closed, n * epsilon)


def saturation_experiment(d1, d2, p, epsilon):
    """Calibrated contractions on ``|00><00|``; saturates the separable bounds to first order."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    ch1 = depolarizing_contraction(d1, bounds.contraction_k(d1, p, epsilon))
    ch2 = depolarizing_contraction(d2, bounds.contraction_k(d2, p, epsilon))
    rho = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    rho[0, 0] = 1.0
    measured = measure(ch1, ch2, rho, p)
    first = bounds.appendix_c_distance(d1, d2, p, epsilon)
    report = classify(measured, d1, d2, p, epsilon, PRODUCT)
    return ExampleResult(report, measured, first, first)


class MultiChannelResult(NamedTuple):
    n: int
    measured: float
    separable_bound: float
    universal_bound: float
    violates_separable: bool

    def to_dict(self):
        return self._asdict()


def bell_product_experiment(n_pairs, epsilon):
    """Singlet pairs under ``2 n_pairs`` local contractions, against the N-channel bounds."""
    if not 1 <= n_pairs <= 6:
        raise ValueError(f"need 1 <= n_pairs <= 6, got {n_pairs}")
    n = 2 * n_pairs
    ch = depolarizing_contraction(2, math.sqrt(2) * epsilon)
    rho = bell_state()
    for _ in range(n_pairs - 1):
        rho = np.kron(rho, bell_state())
    out = apply_product([ch] * n, rho, [2] * n)
    measured = float(np.linalg.norm(out - rho))
    sep = bounds.multi_channel_separable_bound(n, epsilon)
    return MultiChannelResult(n, measured, sep, bounds.multi_channel_bound(n, 2, epsilon),
                              bool(measured > sep + bounds.VIOLATION_SLACK))


# -- violation search --------------------------------------------------------

def _hermitian_from(params, d):
    h = np.zeros((d, d), dtype=complex)
    iu = np.triu_indices(d, 1)
    m = len(iu[0])
    h[iu] = params[:m] + 1j * params[m:2 * m]
    h = h + h.conj().T
    h[np.diag_indices(d)] = params[2 * m:2 * m + d]
    return h


def search_state(params, d1, d2, separable=False):
    """Ket from (Schmidt logits, two local Hermitian generators).

    Squared Schmidt coefficients are the softmax of the logits. With
    ``separable=True`` the Schmidt rank is pinned to one.
    """
    r = min(d1, d2)
    logits, h1, h2 = params[:r], params[r:r + d1 * d1], params[r + d1 * d1:]
    if separable:
        w = np.zeros(r)
        w[0] = 1.0
    else:
        z = np.exp(logits - logits.max())
        w = z / z.sum()
    core = np.zeros((d1, d2), dtype=complex)
    core[np.arange(r), np.arange(r)] = np.sqrt(w)
    u1 = expm(1j * _hermitian_from(h1, d1))
    u2 = expm(1j * _hermitian_from(h2, d2))
    return (u1 @ core @ u2.T).ravel()


class SearchResult(NamedTuple):
    report: bounds.BoundReport
    state: np.ndarray
    schmidt_coefficients: np.ndarray
    converged: bool

    def to_dict(self):
        return {"report": self.report.to_dict(),
                "schmidt_coefficients": self.schmidt_coefficients.tolist(),
                "converged": self.converged}


def violation_search(cfg, ch1=None, ch2=None, max_iter=500):
    """Multi-start maximization of the measured distance over pure states.

    Channels default to the certified pair described by ``cfg``. Returns the
    best report; ``converged`` is False when the best restart hit the
    iteration cap.
    """
    if ch1 is None or ch2 is None:
        c1, c2, eps = _channel_pair(cfg, 0)
        ch1 = c1 if ch1 is None else ch1
        ch2 = c2 if ch2 is None else ch2
    else:
        eps = max(epsilon_of_channel(ch1, cfg.p).epsilon, epsilon_of_channel(ch2, cfg.p).epsilon)
    d1, d2 = ch1.dim, ch2.dim
    separable = cfg.search_space == "separable"
    nparam = min(d1, d2) + d1 * d1 + d2 * d2

    def objective(x):
        psi = search_state(x, d1, d2, separable)
        return -measure(ch1, ch2, projector(psi), cfg.p)

    best = None
    for r in range(cfg.restarts):
        rng = rng_from(cfg.seed, r, _SEARCH_STREAM)
        x0 = rng.normal(scale=1.0, size=nparam)
        res = minimize(objective, x0, method="L-BFGS-B", options={"maxiter": max_iter})
        if best is None or res.fun < best.fun:
            best = res
    psi = search_state(best.x, d1, d2, separable)
    psi = psi / np.linalg.norm(psi)
    sd = schmidt_decompose(psi, d1, d2)
    cls = ENTANGLED if sd.rank > 1 else PRODUCT
    report = classify(-best.fun, d1, d2, cfg.p, eps, cls)
    return SearchResult(report, psi, sd.coefficients, bool(best.success))
