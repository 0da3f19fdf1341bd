"""
Saturating the separable bounds
===============================

Calibrated contractions acting on |00><00| reach the separable bounds to
first order in eps, for both the trace and the Hilbert-Schmidt distance.
"""
from localchan import appendix_c_distance, saturation_experiment, separable_bound_hs

eps = 0.001
print("d1 d2  p=1 measured   2eps      p=2 measured   HS bound")
for d1, d2 in [(2, 2), (2, 3), (3, 3), (4, 4)]:
    tr = saturation_experiment(d1, d2, 1, eps).exact
    hs = saturation_experiment(d1, d2, 2, eps).exact
    bound = separable_bound_hs(d1, d2, eps)
    print(f"{d1}  {d2}   {tr:.8f}   {2 * eps:.6f}  {hs:.8f}     {bound:.8f}")

## Other norm orders get their own calibration
for p in (1.5, 3, 10):
    print(p, saturation_experiment(3, 3, p, eps).exact, appendix_c_distance(3, 3, p, eps))
