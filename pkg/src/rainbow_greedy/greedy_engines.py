"""The two greedy rainbow-matching heuristics.

run_greedy picks a uniform alive edge each step. run_modified_greedy picks a
uniform alive vertex; an isolated vertex is simply discarded (that still
counts as a step), otherwise the vertex is matched along a uniform incident
edge. In both cases matching an edge deletes both endpoints and the whole
color class of the matched edge, so the matching is rainbow by construction.
That property is still verified at the end of every run rather than assumed.

Trajectories are sampled every `sample_stride` steps as rows
(t, nu, mu_edges, q_remaining): step count, alive vertices, alive edges,
unconsumed colors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .colored_graph import ColoredGraph

TRAJECTORY_HEADER = "t,nu,mu_edges,q_remaining"


@dataclass
class MatchingResult:
    algorithm: str
    n: int
    m: int
    q: int
    graph_seed: int | None
    run_seed: int | None
    sample_stride: int
    matching: list[tuple[int, int, int]]
    mu: int
    steps_total: int
    isolated_deletions: int
    trajectory: list[tuple[int, int, int, int]] = field(repr=False)

    def trajectory_csv(self) -> str:
        lines = [TRAJECTORY_HEADER]
        lines.extend(f"{t},{nu},{mu},{qr}" for (t, nu, mu, qr) in self.trajectory)
        return "\n".join(lines) + "\n"


@dataclass
class VerifyReport:
    ok: bool
    failure: str | None = None


def _resolve_rng(rng: random.Random | int) -> tuple[random.Random, int | None]:
    if isinstance(rng, random.Random):
        return rng, None
    return random.Random(rng), rng


def _default_stride(n: int) -> int:
    return max(1, round(n / 1000))


def _check_rainbow(matching: list[tuple[int, int, int]]) -> None:
    verts: set[int] = set()
    colors: set[int] = set()
    for (u, v, c) in matching:
        if u in verts or v in verts:
            raise RuntimeError("engine produced a non-matching edge set")
        verts.add(u)
        verts.add(v)
        if c in colors:
            raise RuntimeError("engine produced a repeated color")
        colors.add(c)


def run_greedy(g: ColoredGraph, rng: random.Random | int,
               sample_stride: int | None = None) -> MatchingResult:
    """Match a uniform alive edge per step until no edges remain.

    Requires a fresh graph. Each step records the drawn edge, deletes both
    endpoints and then the drawn edge's color class.
    """
    if not g.is_fresh():
        raise ValueError("run_greedy needs a fresh graph")
    rng, run_seed = _resolve_rng(rng)
    stride = _default_stride(g.n_initial) if sample_stride is None else sample_stride
    if stride < 1:
        raise ValueError(f"sample_stride must be >= 1, got {stride}")

    matching: list[tuple[int, int, int]] = []
    trajectory = [(0, g.nu, g.mu_edges, g.q_remaining)]
    t = 0
    while True:
        eid = g.random_alive_edge(rng)
        if eid is None:
            break
        u, v, color = g.edges[eid]
        matching.append((u, v, color))
        g.delete_vertex(u)
        g.delete_vertex(v)
        g.delete_color_class(color)
        t += 1
        if t % stride == 0:
            trajectory.append((t, g.nu, g.mu_edges, g.q_remaining))
    if trajectory[-1][0] != t:
        trajectory.append((t, g.nu, g.mu_edges, g.q_remaining))

    _check_rainbow(matching)
    return MatchingResult(
        algorithm="greedy", n=g.n_initial, m=g.m_initial, q=g.q_total,
        graph_seed=g.seed, run_seed=run_seed, sample_stride=stride,
        matching=matching, mu=len(matching), steps_total=t,
        isolated_deletions=0, trajectory=trajectory,
    )


def run_modified_greedy(g: ColoredGraph, rng: random.Random | int,
                        sample_stride: int | None = None) -> MatchingResult:
    """Match from a uniform alive vertex per step while edges remain.

    A degree-0 draw deletes the vertex and counts as a step. Otherwise the
    vertex is matched along a uniform alive incident edge, both endpoints
    and the color class are deleted. Leftover isolated vertices once the
    edges run out are not processed.
    """
    if not g.is_fresh():
        raise ValueError("run_modified_greedy needs a fresh graph")
    rng, run_seed = _resolve_rng(rng)
    stride = _default_stride(g.n_initial) if sample_stride is None else sample_stride
    if stride < 1:
        raise ValueError(f"sample_stride must be >= 1, got {stride}")

    matching: list[tuple[int, int, int]] = []
    trajectory = [(0, g.nu, g.mu_edges, g.q_remaining)]
    t = 0
    isolated = 0
    while g.mu_edges > 0:
        v = g.random_alive_vertex(rng)
        hit = g.random_neighbor(v, rng)
        if hit is None:
            g.delete_vertex(v)
            isolated += 1
        else:
            u, eid = hit
            edge = g.edges[eid]
            matching.append(edge)
            g.delete_vertex(v)
            g.delete_vertex(u)
            g.delete_color_class(edge[2])
        t += 1
        if t % stride == 0:
            trajectory.append((t, g.nu, g.mu_edges, g.q_remaining))
    if trajectory[-1][0] != t:
        trajectory.append((t, g.nu, g.mu_edges, g.q_remaining))

    _check_rainbow(matching)
    return MatchingResult(
        algorithm="modified", n=g.n_initial, m=g.m_initial, q=g.q_total,
        graph_seed=g.seed, run_seed=run_seed, sample_stride=stride,
        matching=matching, mu=len(matching), steps_total=t,
        isolated_deletions=isolated, trajectory=trajectory,
    )


def verify_result(g0: ColoredGraph, result: MatchingResult) -> VerifyReport:
    """Check a result against the original graph it was produced from.

    Confirms every matched edge existed with its claimed color, endpoints
    are pairwise disjoint, colors are pairwise distinct, and the counters
    are mutually consistent. Reports the first violation found.
    """
    if result.mu != len(result.matching):
        return VerifyReport(False, f"mu={result.mu} but matching has "
                                   f"{len(result.matching)} edges")
    if result.steps_total != result.isolated_deletions + result.mu:
        return VerifyReport(False, "steps_total != isolated_deletions + mu")

    by_pair = {}
    for (u, v, c) in g0.edges:
        by_pair[(u, v) if u < v else (v, u)] = c
    verts: set[int] = set()
    colors: set[int] = set()
    for (u, v, c) in result.matching:
        key = (u, v) if u < v else (v, u)
        got = by_pair.get(key)
        if got is None:
            return VerifyReport(False, f"edge {key} not in the original graph")
        if got != c:
            return VerifyReport(False, f"edge {key} has color {got}, result "
                                       f"claims {c}")
        if u in verts or v in verts:
            return VerifyReport(False, f"not a matching: edge {key} reuses a vertex")
        verts.add(u)
        verts.add(v)
        if c in colors:
            return VerifyReport(False, f"not rainbow: color {c} repeated")
        colors.add(c)
    return VerifyReport(True)
