"""Monte Carlo sweeps, theory cross-checks, and report generation.

A sweep is a grid over (c, kappa, n, algorithm) cells; each cell runs `reps`
independent simulations. Seeds are derived per (cell, rep) with rng.mix, so
results are reproducible bit for bit from the master seed alone, cells can
be reordered without changing any draw, and reps never share streams.

Reported densities use the m = round(c n / 2) convention, i.e. c is the
average initial degree. The tabulated reference values' greedy column
follows the m = c n / 4 convention instead; reproduce_reference_table
reports deltas against both so the two never get conflated.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, asdict, field
from statistics import fmean, stdev

from .colored_graph import generate
from .greedy_engines import run_greedy, run_modified_greedy
from .ode_theory import (
    TheoryParams,
    IntegrationFailure,
    integrate_greedy,
    integrate_modified,
    modified_upper_bound,
    tau0_general,
)
from .asymptotics import (
    RegimeError,
    tau0_near_half,
    tau0_large_kappa,
    tau0_small_kappa_bounds,
)
from .rng import mix

AGGREGATE_HEADER = ("c,kappa,n,algorithm,reps,mean_mu_over_n,stderr,"
                    "theory_mu_over_n,abs_deviation")
ASYMPTOTICS_HEADER = "c,kappa,regime,lower,estimate,upper,tau0_exact,contained"
TABLE_HEADER = ("c,reference_greedy,theory_sqrt_c1,delta_sqrt_c1,"
                "theory_sqrt_2c1,delta_sqrt_2c1,reference_modified,"
                "theory_modified,delta_modified")

# Matching fractions at kappa = 1/2 used as a cross-check target,
# keyed by c: (greedy column, modified column).
REFERENCE_TABLE = {
    0.5: (0.092, 0.148),
    1.0: (0.146, 0.216),
    1.5: (0.184, 0.257),
    2.0: (0.211, 0.285),
    2.5: (0.233, 0.316),
    3.0: (0.250, 0.322),
    3.5: (0.264, 0.334),
    4.0: (0.276, 0.345),
    4.5: (0.287, 0.355),
    5.0: (0.296, 0.361),
}

_ALGORITHMS = ("greedy", "modified")


@dataclass
class ExperimentConfig:
    c_values: tuple[float, ...] = (1.0,)
    kappa_values: tuple[float, ...] = (0.5,)
    n_values: tuple[int, ...] = (100_000,)
    algorithms: tuple[str, ...] = _ALGORITHMS
    reps: int = 20
    master_seed: int = 20250819
    ode_step: float = 1e-5
    sample_stride: int | None = None
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if not self.c_values or any(c <= 0 for c in self.c_values):
            raise ValueError(f"c_values must be positive, got {self.c_values}")
        if not self.kappa_values or any(k <= 0 for k in self.kappa_values):
            raise ValueError(f"kappa_values must be positive, got {self.kappa_values}")
        if not self.n_values or any(n < 100 for n in self.n_values):
            raise ValueError(f"n_values must be >= 100, got {self.n_values}")
        if not self.algorithms or any(a not in _ALGORITHMS for a in self.algorithms):
            raise ValueError(f"algorithms must be drawn from {_ALGORITHMS}")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output_format must be csv or json")

    def cells(self) -> list[tuple[float, float, int, str]]:
        return [(c, k, n, a)
                for c in self.c_values
                for k in self.kappa_values
                for n in self.n_values
                for a in self.algorithms]


@dataclass
class RunRecord:
    c: float
    kappa: float
    n: int
    algorithm: str
    rep: int
    graph_seed: int
    run_seed: int
    mu: int
    mu_over_n: float
    steps_total: int
    isolated_deletions: int
    runtime_seconds: float


@dataclass
class AggregateRow:
    c: float
    kappa: float
    n: int
    algorithm: str
    reps: int
    mean_mu_over_n: float
    stderr: float
    theory_mu_over_n: float   # nan when no prediction applies
    abs_deviation: float      # nan when no prediction applies
    runtime_seconds: float

    def csv_line(self) -> str:
        return (f"{self.c!r},{self.kappa!r},{self.n},{self.algorithm},"
                f"{self.reps},{self.mean_mu_over_n!r},{self.stderr!r},"
                f"{self.theory_mu_over_n!r},{self.abs_deviation!r}")


_theory_cache: dict[tuple[float, float, str, float], float] = {}


def theory_mu_over_n(c: float, kappa: float, algorithm: str,
                     step: float = 1e-5) -> float:
    """Predicted matching density for one cell; nan when the prediction
    does not apply (e.g. color depletion for the modified process)."""
    key = (c, kappa, algorithm, step)
    if key in _theory_cache:
        return _theory_cache[key]
    if algorithm == "greedy":
        val = tau0_general(TheoryParams(c, kappa))
    else:
        try:
            val = integrate_modified(TheoryParams(c, kappa), step=step).mu_over_n
        except IntegrationFailure:
            val = math.nan
    _theory_cache[key] = val
    return val


def run_monte_carlo(cfg: ExperimentConfig
                    ) -> tuple[list[AggregateRow], list[RunRecord]]:
    """Run the full sweep; returns (aggregate rows, per-rep records).

    When cfg.output_path is set, rows are flushed to it as they complete
    (CSV row per cell; for JSON the partial array is dumped on interrupt),
    so long sweeps that die keep what they finished.
    """
    rows: list[AggregateRow] = []
    records: list[RunRecord] = []
    sink = None
    if cfg.output_path and cfg.output_format == "csv":
        sink = open(cfg.output_path, "w")
        sink.write(AGGREGATE_HEADER + "\n")
        sink.flush()
    try:
        for cell_index, (c, kappa, n, algo) in enumerate(cfg.cells()):
            theory = theory_mu_over_n(c, kappa, algo, cfg.ode_step)
            m = round(c * n / 2)
            q = round(kappa * n)
            runner = run_greedy if algo == "greedy" else run_modified_greedy
            mus = []
            cell_time = 0.0
            for rep in range(cfg.reps):
                graph_seed = mix(cfg.master_seed, cell_index, rep, 0)
                run_seed = mix(cfg.master_seed, cell_index, rep, 1)
                tic = time.perf_counter()
                g = generate(n, m, q, graph_seed)
                result = runner(g, run_seed, sample_stride=cfg.sample_stride)
                elapsed = time.perf_counter() - tic
                cell_time += elapsed
                mu_over_n = result.mu / n
                mus.append(mu_over_n)
                records.append(RunRecord(
                    c=c, kappa=kappa, n=n, algorithm=algo, rep=rep,
                    graph_seed=graph_seed, run_seed=run_seed, mu=result.mu,
                    mu_over_n=mu_over_n, steps_total=result.steps_total,
                    isolated_deletions=result.isolated_deletions,
                    runtime_seconds=elapsed))
            mean = fmean(mus)
            se = stdev(mus) / math.sqrt(cfg.reps) if cfg.reps > 1 else 0.0
            dev = abs(mean - theory) if not math.isnan(theory) else math.nan
            row = AggregateRow(c=c, kappa=kappa, n=n, algorithm=algo,
                               reps=cfg.reps, mean_mu_over_n=mean, stderr=se,
                               theory_mu_over_n=theory, abs_deviation=dev,
                               runtime_seconds=cell_time)
            rows.append(row)
            if sink is not None:
                sink.write(row.csv_line() + "\n")
                sink.flush()
    finally:
        if sink is not None:
            sink.close()
        if cfg.output_path and cfg.output_format == "json":
            with open(cfg.output_path, "w") as fh:
                fh.write(rows_to_json(rows))
    return rows, records


def rows_to_csv(rows: list[AggregateRow]) -> str:
    lines = [AGGREGATE_HEADER]
    lines.extend(row.csv_line() for row in rows)
    return "\n".join(lines) + "\n"


def _de_nan(obj: dict) -> dict:
    return {k: (None if isinstance(v, float) and math.isnan(v) else v)
            for k, v in obj.items()}


def rows_to_json(rows: list[AggregateRow]) -> str:
    return json.dumps([_de_nan(asdict(r)) for r in rows], indent=2,
                      allow_nan=False) + "\n"


def greedy_convention_statement(rows: list[AggregateRow]) -> str:
    """One-line resolution of the two degree conventions, from greedy rows
    at kappa = 1/2: which closed form the simulated means actually track
    under m = round(c n / 2)."""
    cells = [(r.c, r.mean_mu_over_n) for r in rows
             if r.algorithm == "greedy" and r.kappa == 0.5]
    if not cells:
        return "no greedy cells at kappa=1/2; convention not assessed"
    near_2c1 = sum(1 for c, mu in cells
                   if abs(mu - 0.5 * (1 - 1 / math.sqrt(2 * c + 1))) <= 0.01)
    near_c1 = sum(1 for c, mu in cells
                  if abs(mu - 0.5 * (1 - 1 / math.sqrt(c + 1))) <= 0.01)
    total = len(cells)
    return (f"with m = round(c n / 2), simulated greedy means match "
            f"tau0 = (1 - 1/sqrt(2c+1))/2 in {near_2c1}/{total} cells and "
            f"(1 - 1/sqrt(c+1))/2 in {near_c1}/{total}; the sqrt(2c+1) form "
            f"is the one this convention realizes")


# -- reference table -----------------------------------------------------------

@dataclass
class TableComparison:
    rows: list[dict]
    greedy_convention: str
    modified_outliers: list[tuple[float, float]]   # (c, delta) beyond 0.01

    def csv(self) -> str:
        lines = [TABLE_HEADER]
        for r in self.rows:
            lines.append(",".join(repr(r[k]) if isinstance(r[k], float) else str(r[k])
                                  for k in TABLE_HEADER.split(",")))
        return "\n".join(lines) + "\n"


def reproduce_reference_table(step: float = 1e-5) -> TableComparison:
    """Recompute both columns of the kappa = 1/2 reference table.

    The greedy column is compared against the closed forms under both
    degree conventions; the modified column against the integrated ODE at
    the given c. Cells whose modified delta exceeds 0.01 are listed as
    outliers (c = 2.5 is a known one: the recomputed value is ~0.3057,
    see the README note on reference-table consistency).
    """
    rows = []
    outliers = []
    all_c1 = True
    all_2c1 = True
    for c, (ref_g, ref_m) in sorted(REFERENCE_TABLE.items()):
        t_c1 = 0.5 * (1.0 - 1.0 / math.sqrt(c + 1.0))
        t_2c1 = 0.5 * (1.0 - 1.0 / math.sqrt(2.0 * c + 1.0))
        t_mod = integrate_modified(TheoryParams(c, 0.5), step=step).mu_over_n
        d_c1 = ref_g - t_c1
        d_2c1 = ref_g - t_2c1
        d_mod = ref_m - t_mod
        rows.append({
            "c": c,
            "reference_greedy": ref_g,
            "theory_sqrt_c1": t_c1,
            "delta_sqrt_c1": d_c1,
            "theory_sqrt_2c1": t_2c1,
            "delta_sqrt_2c1": d_2c1,
            "reference_modified": ref_m,
            "theory_modified": t_mod,
            "delta_modified": d_mod,
        })
        all_c1 &= abs(d_c1) <= 0.005
        all_2c1 &= abs(d_2c1) <= 0.005
        if abs(d_mod) > 0.01:
            outliers.append((c, d_mod))
    if all_c1 and not all_2c1:
        convention = "sqrt(c+1)"
    elif all_2c1 and not all_c1:
        convention = "sqrt(2c+1)"
    elif all_c1 and all_2c1:
        convention = "both"
    else:
        convention = "mixed"
    return TableComparison(rows=rows, greedy_convention=convention,
                           modified_outliers=outliers)


# -- conjecture check ----------------------------------------------------------

@dataclass
class ConjectureRow:
    c: float
    kappa: float
    n: int
    mean_greedy: float
    mean_modified: float
    diff: float     # modified minus greedy
    margin: float   # 3 * pooled standard error
    status: str     # "consistent with conjecture" | "inconclusive (margin)" | "violation"


@dataclass
class ConjectureReport:
    rows: list[ConjectureRow]
    violations: list[ConjectureRow] = field(default_factory=list)


def check_conjecture(cfg: ExperimentConfig,
                     rows: list[AggregateRow] | None = None) -> ConjectureReport:
    """Test whether the modified process matches at least as much as the
    plain greedy on every configured cell.

    Uses precomputed aggregate rows when given (they must cover both
    algorithms), otherwise runs the sweep. A cell is a violation only when
    greedy beats modified by more than 3 pooled standard errors.
    """
    if rows is None:
        if set(cfg.algorithms) != set(_ALGORITHMS):
            raise ValueError("check_conjecture needs both algorithms enabled")
        rows, _ = run_monte_carlo(cfg)
    by_cell: dict[tuple[float, float, int], dict[str, AggregateRow]] = {}
    for r in rows:
        by_cell.setdefault((r.c, r.kappa, r.n), {})[r.algorithm] = r
    out = []
    violations = []
    for (c, kappa, n), pair in sorted(by_cell.items()):
        if "greedy" not in pair or "modified" not in pair:
            continue
        g, mg = pair["greedy"], pair["modified"]
        diff = mg.mean_mu_over_n - g.mean_mu_over_n
        margin = 3.0 * math.hypot(g.stderr, mg.stderr)
        if diff < -margin:
            status = "violation"
        elif diff > margin:
            status = "consistent with conjecture"
        else:
            status = "inconclusive (margin)"
        row = ConjectureRow(c=c, kappa=kappa, n=n,
                            mean_greedy=g.mean_mu_over_n,
                            mean_modified=mg.mean_mu_over_n,
                            diff=diff, margin=margin, status=status)
        out.append(row)
        if status == "violation":
            violations.append(row)
    return ConjectureReport(rows=out, violations=violations)


# -- theory and asymptotics reports --------------------------------------------

def theory_report(c_values, kappa_values, step: float = 1e-5) -> list[dict]:
    """Point predictions per (c, kappa): stopping times from the closed form
    and from direct integration, matching densities, and the modified
    ceiling. Entries are None where a prediction does not apply."""
    out = []
    for c in c_values:
        for kappa in kappa_values:
            p = TheoryParams(c, kappa)
            row: dict = {"c": c, "kappa": kappa}
            row["tau0_greedy"] = tau0_general(p)
            try:
                row["tau0_greedy_numeric"] = integrate_greedy(p, step=step).tau0
            except IntegrationFailure:
                row["tau0_greedy_numeric"] = None
            try:
                traj = integrate_modified(p, step=step)
                row["tau0_modified"] = traj.tau0
                row["mu_modified"] = traj.mu_over_n
            except IntegrationFailure:
                row["tau0_modified"] = None
                row["mu_modified"] = None
            row["mu_greedy"] = row["tau0_greedy"]
            row["upper_bound"] = modified_upper_bound(c)
            out.append(row)
    return out


def asymptotics_report(c_values, kappa_values) -> list[dict]:
    """Bracket every applicable regime against the exact numeric root.

    One row per (c, kappa, regime) that accepts the parameters; parameters
    rejected by every regime contribute no rows.
    """
    regimes = (tau0_near_half, tau0_large_kappa, tau0_small_kappa_bounds)
    out = []
    for c in c_values:
        for kappa in kappa_values:
            p = TheoryParams(c, kappa)
            exact = tau0_general(p)
            for op in regimes:
                try:
                    b = op(p)
                except RegimeError:
                    continue
                out.append({
                    "c": c, "kappa": kappa, "regime": b.regime,
                    "lower": b.lower, "estimate": b.estimate,
                    "upper": b.upper, "tau0_exact": exact,
                    "contained": b.contains(exact),
                })
    return out


def asymptotics_csv(rows: list[dict]) -> str:
    lines = [ASYMPTOTICS_HEADER]
    for r in rows:
        lines.append(f"{r['c']!r},{r['kappa']!r},{r['regime']},{r['lower']!r},"
                     f"{r['estimate']!r},{r['upper']!r},{r['tau0_exact']!r},"
                     f"{r['contained']}")
    return "\n".join(lines) + "\n"
