"""Entanglement, Bell-CHSH and teleportation-fidelity metrics of two-qubit states.

Two independent routes compute every quantity: :mod:`telemix.metrics` works
from a density matrix, :mod:`telemix.closedform` from the analytic
expressions of four state families (Werner, MJWK MEMS, Werner derivative
and the traced GHZ/W mixture). :mod:`telemix.telesim` simulates the
standard teleportation protocol as an operational check.
"""
from .closedform import FamilyClosedForm, closed_form, fidelity_vs_entropy
from .errors import TelemixError
from .metrics import MetricsReport, analyze
from .numerics import DEFAULT_BACKEND, herm_eigen
from .states import (DensityMatrix, Mems, NmemsNew, Werner, WernerDerivative, make_state,
                     validate_density)
from .telesim import average_fidelity_2design, haar_average_fidelity, teleport

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_BACKEND", "DensityMatrix", "FamilyClosedForm", "Mems", "MetricsReport", "NmemsNew",
    "TelemixError", "Werner", "WernerDerivative", "analyze", "average_fidelity_2design",
    "closed_form", "fidelity_vs_entropy", "haar_average_fidelity", "herm_eigen", "make_state",
    "teleport", "validate_density",
]
