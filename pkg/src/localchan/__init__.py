"""Bounds on the action of products of local quantum channels."""
from .bounds import BoundReport, appendix_c_distance, classify, entangled_bound_hs, \
    multi_channel_bound, separable_bound_generic, separable_bound_hs
from .channels import EpsilonCertificate, QuantumChannel, apply, apply_local, apply_product, \
    channel_deviation_on_dyad, dephasing, depolarizing_contraction, epsilon_of_channel, \
    identity_channel, random_channel, tensor_channels
from .explorer import ExperimentConfig, bell_example, ghz_decay, saturation_experiment, \
    separable_sweep, summarize, universal_sweep, violation_search
from .linalg import eig_hermitian, partial_trace, schatten_norm, tensor_product
from .metrics import hs_distance, p_distance, trace_distance
from .states import bell_state, from_bloch, gellmann_basis, ghz_state, random_pure, \
    random_separable, schmidt_decompose, to_bloch, werner_state
from .witness import apply_witness_map, concurrence, pauli_coefficients, witness_value

__version__ = "0.1.0"
