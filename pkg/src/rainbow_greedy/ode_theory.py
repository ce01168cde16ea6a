"""Differential-equation predictions for both greedy processes.

All quantities are densities against n: time tau = t/n, alive edges
M(tau) = mu_edges/n, alive vertices N(tau) = nu/n, colors kappa = q/n,
average initial degree c = 2m/n.

Edge greedy:
    M' = -1 - 4M/(1 - 2 tau) - M/(kappa - tau),  M(0) = c/2.
The process dies at tau0, the first zero of M, and matches tau0 * n + o(n)
edges. At kappa = 1/2 the solution is the cubic in m_closed_half; away from
1/2 it factors as m_closed_general = prefactor * f_kappa where the sign
lives entirely in f_kappa.

Vertex greedy (modified): with lambda = 2M/N the pair (M, N) evolves as
    M' = lambda (e^-lambda - 2) - M (1 - e^-lambda) / (N + tau + kappa - 1)
    N' = e^-lambda - 2
but on the trajectory M = (c / (2 kappa)) N^2 (N + tau + kappa - 1), which
collapses everything into the single reduced equation in modified_rhs.
N hits zero at tau0 in [1/2, 1] and the matching density is 1 - tau0.
The color budget Q = N + tau + kappa - 1 must stay positive; when colors
run out first (small kappa) the integrator raises ColorDepletionError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class IntegrationFailure(RuntimeError):
    """The integrator could not produce a trusted trajectory."""


class ColorDepletionError(IntegrationFailure):
    """The color budget hit zero while vertices remained."""


@dataclass(frozen=True)
class TheoryParams:
    """Average degree c = 2m/n and color density kappa = q/n."""
    c: float
    kappa: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")


@dataclass(eq=False)
class OdeTrajectory:
    kind: str                # "greedy" or "modified"
    taus: np.ndarray
    values: np.ndarray       # M for greedy, N for modified
    tau0: float
    step: float
    mu_over_n: float         # tau0 for greedy, 1 - tau0 for modified


# Crossover width around kappa = 1/2 inside which the general closed form is
# ill-conditioned (it divides by (2 kappa - 1)^2) and the half-density cubic
# is used instead.
HALF_CROSSOVER = 1e-4

_ROOT_TOL = 1e-10


def _validate_step(step: float) -> None:
    if not 0 < step <= 0.01:
        raise ValueError(f"step must be in (0, 0.01], got {step}")


# -- edge greedy ------------------------------------------------------------

def greedy_rhs(tau: float, m: float, c: float, kappa: float) -> float:
    """Slope of the alive-edge density M at (tau, m).

    c only fixes the initial condition M(0) = c/2; it is accepted here so
    all right-hand sides share a signature.
    """
    if not 0 <= tau < min(0.5, kappa):
        raise ValueError(f"tau={tau} outside [0, min(1/2, kappa))")
    return -1.0 - 4.0 * m / (1.0 - 2.0 * tau) - m / (kappa - tau)


def integrate_greedy(params: TheoryParams, step: float = 1e-5) -> OdeTrajectory:
    """Fixed-step RK4 for the edge-greedy ODE up to the first zero of M.

    The final partial step is bisected until |M| < 1e-10, so tau0 is far
    more accurate than the step size. Raises IntegrationFailure if M never
    crosses zero before the domain boundary min(1/2, kappa); that happens
    only in extreme corners (very small kappa) where the zero sits closer
    to the boundary than one step.
    """
    _validate_step(step)
    c, kap = params.c, params.kappa
    guard = min(0.5, kap) - 1e-9

    def rhs(t, y):
        return -1.0 - 4.0 * y / (1.0 - 2.0 * t) - y / (kap - t)

    def rk4(t, y, h):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h * k1 / 2)
        k3 = rhs(t + h / 2, y + h * k2 / 2)
        k4 = rhs(t + h, y + h * k3)
        return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    taus = [0.0]
    vals = [c / 2.0]
    tau, m = 0.0, c / 2.0
    while True:
        if tau + step > guard:
            raise IntegrationFailure(
                f"M did not cross zero before the domain boundary "
                f"{min(0.5, kap)} (c={c}, kappa={kap}); the root is closer "
                f"to the boundary than one step")
        nxt = rk4(tau, m, step)
        if nxt <= 0.0:
            break
        tau += step
        m = nxt
        taus.append(tau)
        vals.append(m)

    s_lo, s_hi = 0.0, step
    tau0, m0 = tau + step, nxt
    for _ in range(200):
        s_mid = (s_lo + s_hi) / 2
        if s_mid <= s_lo or s_mid >= s_hi:
            break
        m_mid = rk4(tau, m, s_mid)
        if abs(m_mid) < _ROOT_TOL:
            tau0, m0 = tau + s_mid, m_mid
            break
        if m_mid > 0:
            s_lo = s_mid
        else:
            s_hi = s_mid
            tau0, m0 = tau + s_mid, m_mid
    taus.append(tau0)
    vals.append(m0)

    return OdeTrajectory(kind="greedy", taus=np.asarray(taus),
                         values=np.asarray(vals), tau0=tau0, step=step,
                         mu_over_n=tau0)


def m_closed_half(tau: float, c: float) -> float:
    """Closed-form M(tau) at color density kappa = 1/2."""
    s = 1.0 - 2.0 * tau
    return ((2.0 * c + 1.0) * s ** 3 - s) / 4.0


def tau0_closed_half(c: float) -> float:
    """First zero of m_closed_half: (1 - 1/sqrt(2c + 1)) / 2."""
    if c < 0:
        raise ValueError(f"c must be nonnegative, got {c}")
    return 0.5 * (1.0 - 1.0 / math.sqrt(2.0 * c + 1.0))


def f_kappa(tau: float, c: float, kappa: float) -> float:
    """Sign-carrying factor of the general closed form for M.

    m_closed_general(tau) = (kappa - tau)(1 - 2 tau)^2 / (2 kappa - 1)^2
                            * f_kappa(tau),
    so M and f_kappa vanish together; the root scan works on f_kappa
    because it stays well-scaled where the prefactor crushes M to zero.
    """
    if abs(2.0 * kappa - 1.0) < HALF_CROSSOVER:
        raise ValueError("kappa is inside the half-density crossover; use "
                         "m_closed_half")
    if not 0 <= tau < min(0.5, kappa):
        raise ValueError(f"tau={tau} outside [0, min(1/2, kappa))")
    e = 2.0 * kappa - 1.0
    return (c * e * e / (2.0 * kappa)
            + math.log((kappa - tau) / (kappa * (1.0 - 2.0 * tau)))
            - 2.0 * e * tau / (1.0 - 2.0 * tau))


def m_closed_general(tau: float, c: float, kappa: float) -> float:
    """Closed-form M(tau) for kappa away from 1/2."""
    e = 2.0 * kappa - 1.0
    pref = (kappa - tau) * (1.0 - 2.0 * tau) ** 2 / (e * e)
    return pref * f_kappa(tau, c, kappa)


def tau0_general(params: TheoryParams) -> float:
    """First positive zero of M via the closed form, to full float precision.

    Scans f_kappa on a 10^4-point grid over [0, min(1/2, kappa)] for the
    first sign change (the boundary itself counts as negative since M -> 0
    from above there only in degenerate corners), then bisects. Near
    kappa = 1/2 this delegates to the exact half-density formula.
    """
    c, kap = params.c, params.kappa
    if abs(2.0 * kap - 1.0) < HALF_CROSSOVER:
        return tau0_closed_half(c)
    T = min(0.5, kap)

    def signed(t: float) -> float:
        if t <= 0.0:
            t = 0.0
        if kap - t <= 0.0 or 1.0 - 2.0 * t <= 0.0:
            return -math.inf
        e = 2.0 * kap - 1.0
        return (c * e * e / (2.0 * kap)
                + math.log((kap - t) / (kap * (1.0 - 2.0 * t)))
                - 2.0 * e * t / (1.0 - 2.0 * t))

    if signed(0.0) <= 0.0:
        raise IntegrationFailure(f"no alive edges at tau=0 for params {params}")

    grid = 10_000
    lo, hi = 0.0, None
    for i in range(1, grid + 1):
        t = T * i / grid
        if signed(t) <= 0.0:
            hi = t
            break
        lo = t
    if hi is None:   # unreachable: signed(T) is -inf
        raise IntegrationFailure(f"no sign change located for params {params}")

    for _ in range(200):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if signed(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return hi


# -- vertex greedy (modified) ------------------------------------------------

def modified_rhs(tau: float, n_density: float, c: float, kappa: float) -> float:
    """Slope of the alive-vertex density N in the reduced one-equation form.

    Uses the on-trajectory identity lambda = (c/kappa) N (N + tau + kappa - 1)
    to eliminate M; always lies in [-2, -1] for nonnegative arguments.
    """
    lam = (c / kappa) * n_density * (n_density + tau + kappa - 1.0)
    return math.exp(-lam) - 2.0


def m_from_n(tau: float, n_density: float, params: TheoryParams) -> float:
    """Alive-edge density implied by N on the modified trajectory."""
    return (params.c / (2.0 * params.kappa)) * n_density ** 2 \
        * (n_density + tau + params.kappa - 1.0)


def q_fraction(tau: float, n_density: float, kappa: float) -> float:
    """Unconsumed color density Q = N + tau + kappa - 1 (Q(0) = kappa)."""
    return n_density + tau + kappa - 1.0


def integrate_modified(params: TheoryParams, step: float = 1e-5) -> OdeTrajectory:
    """Fixed-step RK4 for the reduced modified-greedy ODE, N(0) = 1.

    Stops at the first zero of N (refined by bisection to |N| < 1e-10) and
    reports mu_over_n = 1 - tau0. Two self-checks run on every call:

    * ColorDepletionError if the color budget Q = N + tau + kappa - 1
      reaches zero while vertices remain (low color density regime; the
      prediction is not valid there).
    * IntegrationFailure if the trajectory drifts from the equivalent
      integral form N = 1 - 2 tau + integral of e^-lambda by more than
      10 * step, or if tau0 leaves [1/2, 1].
    """
    _validate_step(step)
    c, kap = params.c, params.kappa
    ratio = c / kap

    def rhs(t, y):
        return math.exp(-ratio * y * (y + t + kap - 1.0)) - 2.0

    def rk4(t, y, h):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h * k1 / 2)
        k3 = rhs(t + h / 2, y + h * k2 / 2)
        k4 = rhs(t + h, y + h * k3)
        return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    taus = [0.0]
    vals = [1.0]
    tau, nv = 0.0, 1.0
    while True:
        if tau > 1.2:   # N' <= -1 forces a zero by tau = 1
            raise IntegrationFailure(f"runaway integration for params {params}")
        nxt = rk4(tau, nv, step)
        if nxt <= 0.0:
            break
        tau += step
        nv = nxt
        if nv + tau + kap - 1.0 <= 0.0:
            raise ColorDepletionError(
                f"color budget exhausted at tau={tau:.4f} with N={nv:.4f} "
                f"still positive (c={c}, kappa={kap}); the prediction needs "
                f"a larger color density")
        taus.append(tau)
        vals.append(nv)

    s_lo, s_hi = 0.0, step
    tau0, n0 = tau + step, nxt
    for _ in range(200):
        s_mid = (s_lo + s_hi) / 2
        if s_mid <= s_lo or s_mid >= s_hi:
            break
        n_mid = rk4(tau, nv, s_mid)
        if abs(n_mid) < _ROOT_TOL:
            tau0, n0 = tau + s_mid, n_mid
            break
        if n_mid > 0:
            s_lo = s_mid
        else:
            s_hi = s_mid
            tau0, n0 = tau + s_mid, n_mid
    taus.append(tau0)
    vals.append(n0)

    t_arr = np.asarray(taus)
    n_arr = np.asarray(vals)
    g = np.exp(-ratio * n_arr * (n_arr + t_arr + kap - 1.0))
    increments = 0.5 * (g[1:] + g[:-1]) * np.diff(t_arr)
    integral = np.concatenate(([0.0], np.cumsum(increments)))
    resid = float(np.max(np.abs(n_arr - (1.0 - 2.0 * t_arr + integral))))
    if resid > 10.0 * step:
        raise IntegrationFailure(
            f"integral-form residual {resid:.3e} exceeds {10 * step:.1e} "
            f"for params {params}")
    if not 0.5 - 1e-6 <= tau0 <= 1.0 + 1e-6:
        raise IntegrationFailure(f"tau0={tau0} outside [1/2, 1] for {params}")

    return OdeTrajectory(kind="modified", taus=t_arr, values=n_arr,
                         tau0=tau0, step=step, mu_over_n=1.0 - tau0)


def integrate_modified_full(params: TheoryParams, step: float = 1e-5,
                            n_floor: float | None = None):
    """RK4 for the coupled (M, N) system, for cross-checking the reduced form.

    Integrates until N <= n_floor (default max(10 * step, 1e-3)); the floor
    keeps lambda = 2M/N away from 0/0 at the very end. Returns
    (taus, m_values, n_values) as arrays.
    """
    _validate_step(step)
    c, kap = params.c, params.kappa
    floor = max(10.0 * step, 1e-3) if n_floor is None else n_floor

    def rhs(t, m, nv):
        q = nv + t + kap - 1.0
        if q <= 0.0:
            raise ColorDepletionError(
                f"color budget exhausted at tau={t:.4f} (c={c}, kappa={kap})")
        lam = 2.0 * m / nv
        e = math.exp(-lam)
        return lam * (e - 2.0) - m * (1.0 - e) / q, e - 2.0

    taus = [0.0]
    ms = [c / 2.0]
    ns = [1.0]
    tau, m, nv = 0.0, c / 2.0, 1.0
    while nv > floor:
        k1m, k1n = rhs(tau, m, nv)
        k2m, k2n = rhs(tau + step / 2, m + step * k1m / 2, nv + step * k1n / 2)
        k3m, k3n = rhs(tau + step / 2, m + step * k2m / 2, nv + step * k2n / 2)
        k4m, k4n = rhs(tau + step, m + step * k3m, nv + step * k3n)
        m += step / 6 * (k1m + 2 * k2m + 2 * k3m + k4m)
        nv += step / 6 * (k1n + 2 * k2n + 2 * k3n + k4n)
        tau += step
        if nv <= floor:
            break
        taus.append(tau)
        ms.append(m)
        ns.append(nv)
    return np.asarray(taus), np.asarray(ms), np.asarray(ns)


def modified_upper_bound(c: float) -> float:
    """Ceiling on the modified-greedy matching density for any kappa:
    (c - 1 + e^-c) / (2c - 1 + e^-c)."""
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    e = math.exp(-c)
    return (c - 1.0 + e) / (2.0 * c - 1.0 + e)


def convexity_second_differences(traj: OdeTrajectory, kappa: float,
                                 samples: int = 500) -> np.ndarray:
    """Raw second differences of F = N * Q along a modified trajectory.

    Subsamples the uniform part of the grid (the refined final point is
    dropped) so the differences are taken at equal tau spacing. F convex
    means these are nonnegative up to discretization noise.
    """
    taus = traj.taus[:-1]
    nvals = traj.values[:-1]
    if len(taus) < 3:
        return np.empty(0)
    stride = max(1, len(taus) // samples)   # uniform spacing, or the second
    idx = np.arange(0, len(taus), stride)   # differences pick up slope terms
    t = taus[idx]
    nv = nvals[idx]
    f = nv * (nv + t + kappa - 1.0)
    return f[2:] - 2.0 * f[1:-1] + f[:-2]


# -- summaries and export -----------------------------------------------------

def theory_summary(params: TheoryParams, step: float = 1e-5) -> dict:
    """All point predictions for one (c, kappa): stopping times, matching
    densities for both algorithms, and the modified-greedy ceiling.

    Modified entries are None when the integrator rejects the regime.
    """
    tau0_g = tau0_general(params)
    try:
        traj = integrate_modified(params, step=step)
        tau0_m: float | None = traj.tau0
        mu_m: float | None = traj.mu_over_n
    except IntegrationFailure:
        tau0_m = None
        mu_m = None
    return {
        "tau0_greedy": tau0_g,
        "tau0_modified": tau0_m,
        "mu_greedy": tau0_g,
        "mu_modified": mu_m,
        "upper_bound": modified_upper_bound(params.c),
    }


def trajectory_csv(traj: OdeTrajectory) -> str:
    lines = ["tau,value"]
    lines.extend(f"{float(t)!r},{float(v)!r}" for t, v in zip(traj.taus, traj.values))
    return "\n".join(lines) + "\n"
