"""
An epsilon-free entanglement witness
====================================

F compares a two-qubit state's correlation matrix against a fixed
perturbation. It vanishes on separable states and equals the concurrence
on pure and Werner states.
"""
import numpy as np

from localchan import concurrence, witness_value, werner_state
from localchan.states import bell_state, projector, random_pure, random_separable

## Werner family
for w in (0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0):
    rho = werner_state(w)
    print(f"w={w:.3f} F={witness_value(rho):.4f} C={concurrence(rho):.4f}")

## Pure states
rng = np.random.default_rng(3)
for _ in range(3):
    rho = random_pure(4, rng)
    print(round(witness_value(rho), 10), round(concurrence(rho), 10))

## Separable states give zero
print(max(abs(witness_value(random_separable(2, 2, 3, rng))) for _ in range(100)))

## Not every entangled state is detected
p = 0.3
rho = p * bell_state() + (1 - p) * projector(np.array([1, 0, 0, 0]))
print("F =", round(witness_value(rho), 12), " C =", round(concurrence(rho), 12))
