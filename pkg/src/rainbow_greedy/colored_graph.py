"""Randomly edge-colored graphs with O(1) deletion and uniform sampling.

The greedy engines repeatedly (a) draw a uniform alive edge or vertex,
(b) delete vertices together with their incident edges, and (c) delete an
entire color class. Everything here is organized so each of those is O(1)
expected time: alive edges and vertices live in dense arrays with
swap-removal, and every edge knows its position inside both endpoint
incidence lists so unlinking never scans.

Vertices are 0-based ids, colors are 1-based, edge ids index ColoredGraph.edges.
"""

from __future__ import annotations

import random


class ColoredGraph:
    """Mutable colored graph tracking alive vertices, edges and colors.

    Counters:
      nu           alive vertex count
      mu_edges     alive edge count
      q_remaining  colors not yet consumed by delete_color_class
    """

    __slots__ = (
        "n_initial", "m_initial", "q_total", "seed", "edges", "q_remaining",
        "_inc", "_pos_u", "_pos_v", "_alive_edges", "_edge_slot",
        "_alive_verts", "_vert_slot", "_color_edges", "_consumed",
    )

    def __init__(self, n: int, q: int, edges: list[tuple[int, int, int]],
                 seed: int | None = None):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        if q < 0:
            raise ValueError(f"negative color count q={q}")
        if edges and q < 1:
            raise ValueError("q=0 with a nonempty edge set")
        self.n_initial = n
        self.m_initial = len(edges)
        self.q_total = q
        self.seed = seed
        self.edges = edges
        self.q_remaining = q

        self._inc: list[list[int]] = [[] for _ in range(n)]
        self._pos_u = [0] * len(edges)
        self._pos_v = [0] * len(edges)
        self._color_edges: list[list[int]] = [[] for _ in range(q + 1)]
        seen: set[tuple[int, int]] = set()
        for eid, (u, v, color) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid}: endpoint out of range")
            if u == v:
                raise ValueError(f"edge {eid}: self loop at {u}")
            if not 1 <= color <= q:
                raise ValueError(f"edge {eid}: color {color} outside 1..{q}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            self._pos_u[eid] = len(self._inc[u])
            self._inc[u].append(eid)
            self._pos_v[eid] = len(self._inc[v])
            self._inc[v].append(eid)
            self._color_edges[color].append(eid)

        self._alive_edges = list(range(len(edges)))
        self._edge_slot = list(range(len(edges)))
        self._alive_verts = list(range(n))
        self._vert_slot = list(range(n))
        self._consumed = bytearray(q + 1)

    # -- counters ----------------------------------------------------------

    @property
    def nu(self) -> int:
        return len(self._alive_verts)

    @property
    def mu_edges(self) -> int:
        return len(self._alive_edges)

    def is_fresh(self) -> bool:
        """True if nothing has been deleted yet."""
        return (self.nu == self.n_initial
                and self.mu_edges == self.m_initial
                and self.q_remaining == self.q_total)

    # -- sampling ----------------------------------------------------------

    def random_alive_edge(self, rng: random.Random) -> int | None:
        """Uniform alive edge id, or None if no edges remain."""
        k = len(self._alive_edges)
        if k == 0:
            return None
        return self._alive_edges[rng.randrange(k)]

    def random_alive_vertex(self, rng: random.Random) -> int | None:
        """Uniform alive vertex, or None if no vertices remain."""
        k = len(self._alive_verts)
        if k == 0:
            return None
        return self._alive_verts[rng.randrange(k)]

    def random_neighbor(self, v: int, rng: random.Random) -> tuple[int, int] | None:
        """Uniform alive edge at v, returned as (other endpoint, edge id).

        None if v is isolated. With simple graphs this is also a uniform
        draw over the alive neighbors of v.
        """
        self._check_alive(v)
        inc = self._inc[v]
        if not inc:
            return None
        eid = inc[rng.randrange(len(inc))]
        u, w, _ = self.edges[eid]
        return (w if u == v else u, eid)

    def degree(self, v: int) -> int:
        """Alive degree of an alive vertex."""
        self._check_alive(v)
        return len(self._inc[v])

    def alive_edge_ids(self) -> list[int]:
        return list(self._alive_edges)

    def alive_vertex_ids(self) -> list[int]:
        return list(self._alive_verts)

    # -- deletion ----------------------------------------------------------

    def delete_vertex(self, v: int) -> int:
        """Delete an alive vertex and its incident edges; return prior degree.

        Deleting a vertex twice is a contract violation and raises.
        """
        self._check_alive(v)
        inc = self._inc[v]
        deg = len(inc)
        while inc:
            self._kill_edge(inc[-1])
        slot = self._vert_slot[v]
        last = self._alive_verts[-1]
        self._alive_verts[slot] = last
        self._vert_slot[last] = slot
        self._alive_verts.pop()
        self._vert_slot[v] = -1
        return deg

    def delete_color_class(self, color: int) -> int:
        """Delete every alive edge of this color; return how many were removed.

        The first call for a color marks it consumed and decrements
        q_remaining, even when no alive edges remained to remove (the class
        may have been emptied by earlier vertex deletions). Later calls for
        the same color remove nothing and leave q_remaining alone.
        """
        if not 1 <= color <= self.q_total:
            raise ValueError(f"color {color} outside 1..{self.q_total}")
        removed = 0
        slot = self._edge_slot
        for eid in self._color_edges[color]:
            if slot[eid] != -1:
                self._kill_edge(eid)
                removed += 1
        if not self._consumed[color]:
            self._consumed[color] = 1
            self.q_remaining -= 1
        return removed

    # -- internals ---------------------------------------------------------

    def _check_alive(self, v: int) -> None:
        if not 0 <= v < self.n_initial or self._vert_slot[v] == -1:
            raise ValueError(f"vertex {v} is not alive")

    def _kill_edge(self, eid: int) -> None:
        slot = self._edge_slot[eid]
        if slot == -1:
            return
        last = self._alive_edges[-1]
        self._alive_edges[slot] = last
        self._edge_slot[last] = slot
        self._alive_edges.pop()
        self._edge_slot[eid] = -1
        u, v, _ = self.edges[eid]
        self._unlink(eid, u, self._pos_u[eid])
        self._unlink(eid, v, self._pos_v[eid])

    def _unlink(self, eid: int, w: int, pos: int) -> None:
        inc = self._inc[w]
        moved = inc[-1]
        inc[pos] = moved
        if self.edges[moved][0] == w:
            self._pos_u[moved] = pos
        else:
            self._pos_v[moved] = pos
        inc.pop()


def generate(n: int, m: int, q: int, seed: int) -> ColoredGraph:
    """Uniform simple graph on n vertices with m edges, colors iid in 1..q.

    The edge set is a uniform m-subset of vertex pairs; each edge gets an
    independent uniform color. Deterministic in seed.
    """
    if n < 1:
        raise ValueError(f"need at least one vertex, got n={n}")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise ValueError(f"m={m} outside 0..{max_m} for n={n}")
    if m > 0 and q < 1:
        raise ValueError("q must be >= 1 when m > 0")
    if q < 0:
        raise ValueError(f"negative color count q={q}")

    rng = random.Random(seed)
    pairs: list[tuple[int, int]]
    if m * 3 > max_m and max_m <= 4_000_000:
        # dense enough that rejection would churn; a uniform m-subset of the
        # enumerated pairs has the same law
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        pairs = rng.sample(all_pairs, m)
    else:
        seen: set[tuple[int, int]] = set()
        pairs = []
        while len(pairs) < m:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            pairs.append(key)
    edges = [(u, v, rng.randint(1, q)) for (u, v) in pairs]
    return ColoredGraph(n, q, edges, seed=seed)


def dump_graph(g: ColoredGraph) -> str:
    """Serialize the original instance: 'n m q' then one 'u v color' per edge."""
    lines = [f"{g.n_initial} {g.m_initial} {g.q_total}"]
    lines.extend(f"{u} {v} {c}" for (u, v, c) in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> ColoredGraph:
    """Inverse of dump_graph. The loaded graph is fresh (no deletions)."""
    lines = text.strip("\n").split("\n")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError("header must be 'n m q'")
    n, m, q = (int(x) for x in head)
    if len(lines) - 1 != m:
        raise ValueError(f"header says m={m} but {len(lines) - 1} edge lines follow")
    edges = []
    for line in lines[1:]:
        u, v, c = (int(x) for x in line.split())
        edges.append((u, v, c))
    return ColoredGraph(n, q, edges, seed=None)
