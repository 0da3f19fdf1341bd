"""
Two local contractions on the singlet
=====================================

Separable inputs cannot move further than sqrt(3) eps in Hilbert-Schmidt
distance. The singlet does.
"""
import numpy as np

from localchan import bell_example, entangled_bound_hs, separable_bound_hs

for eps in (0.05, 0.01, 0.001):
    res = bell_example(eps)
    print(f"eps={eps:<6} exact={res.exact:.6e} sqrt6*eps={res.first_order:.6e} "
          f"separable bound={separable_bound_hs(2, 2, eps):.6e}")

## The report flags the separable bound but not the universal one
rep = bell_example(0.01).report
print(rep.violates_separable, rep.violates_entangled)
print("universal bound:", entangled_bound_hs(2, 0.01))

## The exact ratio approaches one as eps shrinks
print([round(bell_example(e).exact / bell_example(e).first_order, 8) for e in (1e-2, 1e-4, 1e-6)])
