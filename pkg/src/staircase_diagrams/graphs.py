"""Base graphs (paths, stars, Dynkin A/D/E) and their connected vertex subsets.

Vertices are dense integers ``0..n-1``.  Vertex subsets are encoded as
bitmasks (bit ``s`` set means vertex ``s`` is a member), which keeps the
set algebra in the enumeration hot loops down to single integer ops.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Graph:
    """A finite simple graph with an optional designated branching vertex.

    ``adj[s]`` is the bitmask of neighbours of vertex ``s``.  The adjacency
    is symmetric and irreflexive by construction.
    """

    vertex_count: int
    adj: tuple[int, ...]
    branch_vertex: int | None = None

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for s in range(self.vertex_count):
            m = self.adj[s]
            while m:
                t = (m & -m).bit_length() - 1
                if s < t:
                    out.append((s, t))
                m &= m - 1
        return out

    def neighbors_mask(self, mask: int) -> int:
        """Union of neighbourhoods of ``mask``, excluding ``mask`` itself."""
        out = 0
        m = mask
        while m:
            s = (m & -m).bit_length() - 1
            out |= self.adj[s]
            m &= m - 1
        return out & ~mask


def _graph_from_edges(n: int, edges: list[tuple[int, int]],
                      branch_vertex: int | None = None) -> Graph:
    adj = [0] * n
    for s, t in edges:
        if s == t or not (0 <= s < n and 0 <= t < n):
            raise ValueError(f"bad edge ({s}, {t}) for {n} vertices")
        adj[s] |= 1 << t
        adj[t] |= 1 << s
    return Graph(n, tuple(adj), branch_vertex)


def make_path(n: int) -> Graph:
    """Path graph on vertices ``0..n-1`` with edges ``{i, i+1}``."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return _graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_star(branch_lengths: list[int]) -> Graph:
    """Star graph: one centre plus a path of each given length attached to it.

    The centre receives the highest index.  Branch vertices are numbered
    consecutively starting from the centre outwards, main branch (the first
    entry) first.  Total vertices: ``1 + sum(branch_lengths)``.
    """
    lengths = list(branch_lengths)
    if not lengths:
        raise ValueError("at least one branch length required")
    if any(a < 0 for a in lengths):
        raise ValueError("branch lengths must be nonnegative")
    n = 1 + sum(lengths)
    center = n - 1
    edges = []
    offset = 0
    for a in lengths:
        if a > 0:
            edges.append((center, offset))
            for i in range(a - 1):
                edges.append((offset + i, offset + i + 1))
        offset += a
    return _graph_from_edges(n, edges, branch_vertex=center)


def make_type_d(n: int) -> Graph:
    """Dynkin diagram of type D_n as the star Γ(n−3, 1, 1)."""
    if n < 4:
        raise ValueError("type D needs n >= 4")
    return make_star([n - 3, 1, 1])


def make_type_e(n: int) -> Graph:
    """Classically finite type E_n as the star Γ(n−4, 2, 1)."""
    if n < 6:
        raise ValueError("type E needs n >= 6")
    return make_star([n - 4, 2, 1])


def star_branches(g: Graph) -> list[tuple[int, ...]]:
    """Branches of a star graph as vertex tuples ordered centre-outwards.

    Each branch excludes the centre.  Branches are returned in the original
    construction order (main branch first) for graphs built by
    :func:`make_star`; for other graphs with a designated branch vertex the
    order follows increasing first-vertex index.
    """
    if g.branch_vertex is None:
        raise ValueError("graph has no designated branch vertex")
    c = g.branch_vertex
    branches = []
    seen = 1 << c
    m = g.adj[c]
    starts = []
    while m:
        starts.append((m & -m).bit_length() - 1)
        m &= m - 1
    for start in sorted(starts):
        branch = [start]
        seen |= 1 << start
        cur = start
        while True:
            nxt = g.adj[cur] & ~seen
            if not nxt:
                break
            cur = (nxt & -nxt).bit_length() - 1
            branch.append(cur)
            seen |= 1 << cur
        branches.append(tuple(branch))
    return branches


def is_connected_subset(g: Graph, mask: int) -> bool:
    """True iff the induced subgraph on ``mask`` is connected and nonempty."""
    if mask & ~g.full_mask:
        raise ValueError("subset contains vertices outside the graph")
    if mask == 0:
        return False
    start = mask & -mask
    visited = start
    frontier = start
    while frontier:
        nxt = 0
        m = frontier
        while m:
            s = (m & -m).bit_length() - 1
            nxt |= g.adj[s]
            m &= m - 1
        frontier = nxt & mask & ~visited
        visited |= frontier
    return visited == mask


def connected_subsets(g: Graph) -> list[int]:
    """All nonempty connected vertex subsets, each exactly once.

    Canonical order: ascending by size, then lexicographic on the sorted
    member lists.
    """
    found: set[int] = set()
    frontier = [1 << s for s in range(g.vertex_count)]
    found.update(frontier)
    while frontier:
        nxt = []
        for mask in frontier:
            growth = g.neighbors_mask(mask)
            while growth:
                bit = growth & -growth
                new = mask | bit
                if new not in found:
                    found.add(new)
                    nxt.append(new)
                growth &= growth - 1
        frontier = nxt
    return sorted(found, key=lambda m: (bin(m).count("1"), mask_to_vertices(m)))


def mask_to_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def vertices_to_mask(vertices) -> int:
    mask = 0
    for s in vertices:
        mask |= 1 << s
    return mask


def graph_to_json(g: Graph) -> str:
    return json.dumps({
        "n": g.vertex_count,
        "edges": [list(e) for e in g.edges()],
        "branch_vertex": g.branch_vertex,
    }, separators=(",", ":"))


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return _graph_from_edges(data["n"], [tuple(e) for e in data["edges"]],
                             data.get("branch_vertex"))
