"""DRESS and Delta^k-DRESS graph fingerprints."""

__version__ = "0.1.0"

from .delta import (
    DeltaConfig,
    DeltaFingerprint,
    compare,
    delta_fingerprint,
    digests,
    escalate,
    histogram,
)
from .dress import ConvergenceError, SolverConfig, dress_converge, extract_fingerprint
from .graph import Graph, complement, induced_delete, permute, srg_parameters

__all__ = [
    "ConvergenceError",
    "DeltaConfig",
    "DeltaFingerprint",
    "Graph",
    "SolverConfig",
    "compare",
    "complement",
    "delta_fingerprint",
    "digests",
    "dress_converge",
    "escalate",
    "extract_fingerprint",
    "histogram",
    "induced_delete",
    "permute",
    "srg_parameters",
]
