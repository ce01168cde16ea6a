"""Rainbow greedy matching on randomly edge-colored sparse random graphs.

Simulation engines for two greedy matching heuristics, the differential
equations that predict their asymptotic matching size, closed forms and
regime-specific root brackets for the stopping time, and a Monte Carlo
harness that cross-checks simulation against all of the above.
"""

from .colored_graph import ColoredGraph, generate, dump_graph, load_graph
from .greedy_engines import (
    MatchingResult,
    VerifyReport,
    run_greedy,
    run_modified_greedy,
    verify_result,
)
from .ode_theory import (
    TheoryParams,
    OdeTrajectory,
    IntegrationFailure,
    ColorDepletionError,
    greedy_rhs,
    integrate_greedy,
    m_closed_half,
    tau0_closed_half,
    f_kappa,
    m_closed_general,
    tau0_general,
    modified_rhs,
    m_from_n,
    q_fraction,
    integrate_modified,
    integrate_modified_full,
    modified_upper_bound,
    theory_summary,
    trajectory_csv,
)
from .asymptotics import (
    Bracket,
    RegimeError,
    RegimePrediction,
    near_half_alpha,
    near_half_alpha_series,
    tau0_near_half,
    tau0_large_kappa,
    tau0_small_kappa_bounds,
    epsilon_kappa,
    large_kappa_leading_estimate,
    predict_greedy_tau0,
)
from .experiment_harness import (
    ExperimentConfig,
    AggregateRow,
    RunRecord,
    run_monte_carlo,
    rows_to_csv,
    rows_to_json,
    reproduce_reference_table,
    check_conjecture,
    theory_report,
    asymptotics_report,
    REFERENCE_TABLE,
)

__version__ = "0.1.0"
