"""Closed-form bounds on the action of products of epsilon-bounded local channels.

All bounds are linear in ``epsilon``, the largest single-channel distance
``sup_rho D(Lambda[rho], rho)``.
"""
import math
from dataclasses import asdict, dataclass

VIOLATION_SLACK = 1e-9

PRODUCT = "product"
SEPARABLE = "separable"
ENTANGLED = "entangled"
UNKNOWN = "unknown"
STATE_CLASSES = (PRODUCT, SEPARABLE, ENTANGLED, UNKNOWN)


def _check(epsilon, *dims):
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    for d in dims:
        if d < 2:
            raise ValueError(f"dimensions must be >= 2, got {d}")


def separable_bound_hs(d1, d2, epsilon):
    """Hilbert-Schmidt bound for separable inputs: ``sqrt(2 + 2 sqrt((1-1/d1)(1-1/d2))) eps``."""
    _check(epsilon, d1, d2)
    return math.sqrt(2 + 2 * math.sqrt((1 - 1 / d1) * (1 - 1 / d2))) * epsilon


def entangled_bound_hs(d, epsilon):
    """Hilbert-Schmidt bound for arbitrary inputs, ``d`` the smaller local dimension."""
    _check(epsilon, d)
    return 2 * math.sqrt(2 - 1 / d) * epsilon


def separable_bound_generic(epsilon):
    """``2 eps``: holds for any jointly convex norm distance on separable inputs."""
    _check(epsilon)
    return 2.0 * epsilon


def multi_channel_bound(n, d, epsilon):
    """``N sqrt(2 - 1/d) eps`` for N local channels of dimension ``d``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    _check(epsilon, d)
    return n * math.sqrt(2 - 1 / d) * epsilon


def multi_channel_separable_bound(n, epsilon):
    """``N eps`` for N local channels acting on a separable input."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    _check(epsilon)
    return n * epsilon


def contraction_k(d, p, epsilon):
    """Contraction parameter calibrated so the single-channel p-distance is ``epsilon``."""
    if math.isinf(p):
        return epsilon / (1 - 1 / d)
    return epsilon / ((1 - 1 / d) ** p + (d - 1) / d ** p) ** (1 / p)


def appendix_c_distance(d1, d2, p, epsilon):
    """First-order p-distance of two calibrated contractions acting on ``|00><00|``.

    Only the ``O(epsilon)`` eigenvalues of the difference are kept: one of
    size ``k1(1-1/d1) + k2(1-1/d2)``, ``d1 - 1`` of size ``k1/d1`` and
    ``d2 - 1`` of size ``k2/d2``.
    """
    _check(epsilon, d1, d2)
    if p < 1:
        raise ValueError(f"norm order must be >= 1, got {p}")
    k1 = contraction_k(d1, p, epsilon)
    k2 = contraction_k(d2, p, epsilon)
    big = k1 * (1 - 1 / d1) + k2 * (1 - 1 / d2)
    if math.isinf(p):
        return big
    return (big ** p + (k1 / d1) ** p * (d1 - 1) + (k2 / d2) ** p * (d2 - 1)) ** (1 / p)


@dataclass(frozen=True)
class BoundReport:
    state_class: str
    p: float
    epsilon: float
    measured_distance: float
    separable_bound: float
    entangled_bound: float
    violates_separable: bool
    violates_entangled: bool

    def to_dict(self):
        """JSON-ready dict; an infinite (unavailable) bound becomes ``None``."""
        out = asdict(self)
        for key in ("p", "separable_bound", "entangled_bound"):
            if math.isinf(out[key]):
                out[key] = None
        return out


def bounds_for(d1, d2, p, epsilon):
    """``(separable, entangled)`` bounds for a bipartite experiment.

    For ``p = 2`` these are the dimension-dependent Hilbert-Schmidt bounds.
    For other ``p`` only the generic ``2 eps`` separable bound is available
    and the entangled bound is reported as infinite.
    """
    if p == 2:
        return separable_bound_hs(d1, d2, epsilon), entangled_bound_hs(min(d1, d2), epsilon)
    return separable_bound_generic(epsilon), math.inf


def classify(measured, d1, d2, p, epsilon, state_class=UNKNOWN):
    """Compare a measured distance with both bounds."""
    if state_class not in STATE_CLASSES:
        raise ValueError(f"unknown state class {state_class!r}")
    if not all(math.isfinite(x) for x in (measured, epsilon)):
        raise ValueError("measured distance and epsilon must be finite")
    sep, ent = bounds_for(d1, d2, p, epsilon)
    return BoundReport(
        state_class=state_class,
        p=p,
        epsilon=float(epsilon),
        measured_distance=float(measured),
        separable_bound=float(sep),
        entangled_bound=float(ent),
        violates_separable=bool(measured > sep + VIOLATION_SLACK),
        violates_entangled=bool(measured > ent + VIOLATION_SLACK),
    )


def proven_bound_violated(report):
    """True when a report contradicts a proven bound (a software defect, not physics)."""
    if report.violates_entangled:
        return True
    return report.violates_separable and report.state_class in (PRODUCT, SEPARABLE)
