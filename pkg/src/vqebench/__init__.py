"""vqebench: a benchmarking workbench for variational quantum eigensolver
optimizers under configurable noise.

Subpackages: qsim (density-matrix simulation), ensemble (state-averaged
cost), optimizers (six from-scratch minimizers), stats (multivariate
statistical battery), harness (noise catalog, run execution, CLI).
"""
from .ensemble import EnsembleContext, ReferencePair, reference_energies, resolve_states, sa_cost
from .errors import (
    CapacityError,
    CostEvaluationError,
    DegenerateSampleError,
    DimensionError,
    InvalidChannelError,
    ParameterDomainError,
    VqeBenchError,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CostEvaluationError",
    "DegenerateSampleError",
    "DimensionError",
    "EnsembleContext",
    "InvalidChannelError",
    "ParameterDomainError",
    "ReferencePair",
    "VqeBenchError",
    "__version__",
    "reference_energies",
    "resolve_states",
    "sa_cost",
]
