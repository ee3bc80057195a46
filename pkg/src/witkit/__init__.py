"""Entanglement witnesses from Pauli correlations and Gell-Mann correlation matrices."""

from .bases import (
    BlochDecomposition,
    CorrelationClass,
    OperatorBasis,
    bloch_decompose,
    classify_correlation,
    gell_mann_basis,
    pauli_basis,
)
from .certify import WitnessVerdict, block_positivity_min, ppt_min_eigenvalue
from .detection import DetectionResult, detect, family_expectation, gamma_scan, minimize_family, witness_value
from .linalg import hermitian_eigen, partial_trace, partial_transpose, trace_inner
from .states import (
    DensityMatrix,
    FamilyParams,
    MeasurementRecord,
    PureState,
    bell_diagonal,
    bell_state,
    damped_bell,
    exact_record,
    generalized_bell,
    isotropic,
    max_correlated,
    sampled_record,
    theorem1_state,
    theorem2_state,
    werner,
)
from .witnesses import (
    Witness,
    example1_witness,
    example2_witness,
    example3_witness,
    extremal_witness,
    flip_operator,
    mc_witness,
    orthogonal_witness,
    reduction_witness,
)

__version__ = "0.1.0"
