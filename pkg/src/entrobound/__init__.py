"""entrobound: certified brackets for weighted entropic uncertainty bounds.

A measurement pair is a d x d unitary linking two non-degenerate projective
measurements.  The package computes the best constant of the linear relation
lam*H(X) + mu*H(Y) >= c as a certified-lower / witnessed-upper bracket,
exposes the underlying lp->lq norm and bilinear ball machinery, verifies
product-pair additivity and norm multiplicativity at desk scale, and samples
uncertainty regions with their tangent hulls.
"""

from .core import (
    InputError,
    MeasurementPair,
    ParameterError,
    QuantumState,
    ResourceGuardError,
    ground_state,
    hadamard_pair,
    identity_pair,
    load_unitary,
    outcome_distribution,
    random_unitary,
    save_unitary,
    tensor_pair,
    unitarity_defect,
)
from .entropy import Weights, relative_entropy, renyi, shannon, weighted_uncertainty
from .norms import (
    MultiplicativityReport,
    NormEstimate,
    NormParams,
    flip,
    mixed_norm,
    multiplicativity_check,
    omega,
    omega_forms,
    pq_norm,
    vector_norm,
)
from .bounds import (
    AdditivityReport,
    BoundResult,
    RenyiSoundnessReport,
    SoundnessError,
    ThreePauliReport,
    additivity_check,
    alternating_minimization,
    direct_minimization,
    mu_bound,
    n_schedule,
    omega_lower_bound,
    optimal_bound,
    renyi_bound_check,
    three_pauli_counterexample,
    weight_sweep,
)
from .regions import (
    PositiveHull,
    Tangent,
    UncertaintyPoint,
    export_hull_json,
    export_samples_csv,
    minkowski_sum,
    positive_hull,
    sample_region,
    verify_hull_composition,
)
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
