"""Microscopic spatial Moran process on weighted graphs.

Thin Python layer over the C++ core: exact fixation probabilities,
Monte Carlo estimates and the two- and three-vertex closed forms.
Configurations are bitmasks; bit v is set when vertex v holds a mutant.
"""

from ._core import (
    MicsmpError,
    Model,
    classic_moran_check,
    complete_graph_model,
    enumerate_level,
    estimate_fixation,
    fixation_for_initial,
    fixation_probabilities,
    galanis_model,
    galanis_moran_condition,
    galanis_neutral_fixation,
    is_isothermal,
    macro_markov_check,
    martingale_report,
    moran_rho,
    n2_F,
    n2_fixation_closed_form,
    n2_moran_selection,
    p_minus,
    p_plus,
    ratio_constancy,
    stationary_distribution,
    step_distribution,
    sweep_n2,
    transition_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
