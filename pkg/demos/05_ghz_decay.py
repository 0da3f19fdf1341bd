"""
Dephasing a GHZ state
=====================

Local dephasing on each of N qubits moves the GHZ state by roughly
N eps, far beyond what N independent qubits would allow.
"""
from localchan import ghz_decay, multi_channel_bound

eps = 0.001
print(" N   exact        closed form  N eps   N-channel bound")
for n in range(1, 11):
    r = ghz_decay(n, eps)
    print(f"{n:2d}  {r.exact:.8f}  {r.closed_form:.8f}  {r.first_order:.3f}   "
          f"{multi_channel_bound(n, 2, eps):.6f}")

## Singlet pairs under contractions exceed the N-channel separable bound
from localchan.explorer import bell_product_experiment
for pairs in (1, 2, 3):
    print(bell_product_experiment(pairs, 0.01))
