"""Helmholtz solver for locally perturbed quasiperiodic media.

The heavy lifting lives in the compiled extension ``quasihelm._core``; this
package re-exports its public surface.
"""

from ._core import (
    HalfLineResult,
    Medium,
    NumericalFailure,
    QhConfigError,
    WholeLineResult,
    convergence_study,
    medium,
    reference_spectral_radius,
    sample_broken_line,
    solve_halfline,
    solve_wholeline,
)

__all__ = [
    "HalfLineResult",
    "Medium",
    "NumericalFailure",
    "QhConfigError",
    "WholeLineResult",
    "convergence_study",
    "medium",
    "reference_spectral_radius",
    "sample_broken_line",
    "solve_halfline",
    "solve_wholeline",
]
