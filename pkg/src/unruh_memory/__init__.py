"""Entanglement of an inertial/accelerated Dirac qubit pair under noise channels with memory."""

from .channels import (
    ChannelKind,
    ChannelSpec,
    KrausSet,
    apply_channel,
    channel_kraus,
    completeness_residual,
    correlated_ad_kraus,
    correlated_pauli_kraus,
    pauli_probability_vector,
    single_qubit_kraus,
    uncorrelated_kraus,
)
from .entanglement import (
    ConcurrenceResult,
    CrosscheckReport,
    concurrence,
    concurrence_closed_form,
    crosscheck_point,
    spin_flip,
)
from .reference import closed_form_lambdas, printed_density_matrix
from .state import (
    AccelerationInput,
    DensityMatrix,
    unruh_density_matrix,
    unruh_param_from_acceleration,
)
from .sweep import PointResult, SweepGrid, emit_figure, errata_report, run_point, run_sweep

__version__ = "0.1.0"
