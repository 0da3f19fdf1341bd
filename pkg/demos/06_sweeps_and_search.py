"""
Random sweeps and a violation search
====================================

No proven bound should ever fail. The search then shows which states
push past the separable bound.
"""
from localchan import ExperimentConfig, separable_sweep, summarize, universal_sweep, \
    violation_search

cfg = ExperimentConfig(trials=2000, seed=1)
print("separable:", summarize(separable_sweep(cfg)))

cfg = ExperimentConfig(trials=2000, seed=1, d1=3, d2=3, channel="random", channel_refresh=200)
print("universal:", summarize(universal_sweep(cfg)))

## Maximize over pure states for two qubit contractions
res = violation_search(ExperimentConfig(restarts=4, seed=2))
print(res.report)
print("Schmidt coefficients:", res.schmidt_coefficients.round(4))

## Restricted to product states the separable bound holds
res = violation_search(ExperimentConfig(restarts=4, seed=2, search_space="separable"))
print(res.report.measured_distance, "<=", res.report.separable_bound)
