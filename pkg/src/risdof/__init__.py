"""Sum-DoF of the active-RIS-assisted two-user MIMO interference channel.

The library computes the achievable sum-DoF for arbitrary antenna
configurations, synthesizes the RIS-cancellation plus zero-forcing plus
interference-decoding scheme numerically, and characterizes when the RIS
yields a DoF gain.
"""

from .model import AntennaConfig, CaseLabel, CoverageError, RisConfig, canonicalize, classify_cases
from .dof_core import (
    CaseResult,
    DofReport,
    ElimMode,
    EliminationPlan,
    achievable_sumdof,
    baseline_sumdof,
    case_sumdof,
    optimal_elimination,
    ris_gain_symmetric,
    ris_help_condition,
)

__all__ = [
    "AntennaConfig",
    "CaseLabel",
    "CaseResult",
    "CoverageError",
    "DofReport",
    "ElimMode",
    "EliminationPlan",
    "RisConfig",
    "achievable_sumdof",
    "baseline_sumdof",
    "canonicalize",
    "case_sumdof",
    "classify_cases",
    "optimal_elimination",
    "ris_gain_symmetric",
    "ris_help_condition",
]

__version__ = "0.1.0"
