"""
Channels and their epsilon certificate
======================================

A channel is a list of Kraus operators. Its epsilon is the largest
distance it can move any state.
"""
import numpy as np

from localchan import depolarizing_contraction, epsilon_of_channel, random_channel
from localchan.channels import mix_with_identity
from localchan.states import bell_state, random_mixed

## A qubit contraction shrinks the Bloch vector by 1 - k
ch = depolarizing_contraction(2, 0.1)
rho = random_mixed(2, seed=0)
print("input\n", np.round(rho, 4))
print("output\n", np.round(ch(rho), 4))

## Contractions are recognized and certified in closed form
cert = epsilon_of_channel(ch, p=2)
print(cert.method, cert.epsilon, "= k/sqrt(2) =", 0.1 / np.sqrt(2))

## Anything else goes through the pure-state optimizer
gen = random_channel(3, env_dim=2, seed=1)
cert = epsilon_of_channel(gen, p=2, seed=0)
print(cert.method, round(cert.epsilon, 6), "converged:", cert.converged)

## Mixing with the identity scales epsilon linearly
for t in (0.25, 0.5, 1.0):
    print(t, round(epsilon_of_channel(mix_with_identity(gen, t), 2).epsilon, 6))

## Channels act on one subsystem of a larger state too
from localchan import apply_local
out = apply_local(ch, bell_state(), [2, 2], site=0)
print("trace after local action:", np.trace(out).real)
