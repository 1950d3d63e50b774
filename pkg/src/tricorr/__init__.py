"""Three-qubit entanglement measures, statistical correlators and damping."""
from .core import InvalidStateError, ValidationReport, check_density, partial_trace, purity, validate_density
from .correlators import (
    Bipartition,
    ObservableSpec,
    ProductBasis,
    maccone_sum,
    mi_tripartite,
    mp_tripartite,
    named_basis,
    named_observable,
    pcc_tripartite,
)
from .dynamics import damp_state, esd_time, gmc_damped_closed, gmc_from_pcc, pcc_damped_closed
from .measures import concurrence_fill, gmc, global_measure, measure_report, triangle_edges
from .states import build_state, get_family, make_ghz, make_w, make_x_family, pure_state, to_density

__version__ = "0.1.0"

__all__ = [
    "Bipartition", "InvalidStateError", "ObservableSpec", "ProductBasis", "ValidationReport",
    "build_state", "check_density", "concurrence_fill", "damp_state", "esd_time", "get_family",
    "gmc", "gmc_damped_closed", "gmc_from_pcc", "global_measure", "maccone_sum", "make_ghz",
    "make_w", "make_x_family", "measure_report", "mi_tripartite", "mp_tripartite", "named_basis",
    "named_observable", "partial_trace", "pcc_damped_closed", "pcc_tripartite", "pure_state",
    "purity", "to_density", "triangle_edges", "validate_density",
]
