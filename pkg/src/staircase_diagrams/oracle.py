"""Brute-force enumeration of staircase diagrams, towers, and Dyck paths.

The enumerator grows diagrams one block at a time, always inserting the new
block as a maximal element of the order (covering a chosen antichain).  Any
insertion sequence is a linear extension of the final order; accepting only
the greedy lexicographically-minimal extension makes every (blocks, order)
pair appear exactly once, so no dedup pass is needed.

Incremental pruning enforces, at each insertion:
  * axiom 1 for the new covering pairs (connected unions),
  * the axiom 2/3 chain conditions (every block sharing or adjacent to the
    new block's vertices must lie below it),
  * axiom 3 saturation for pairs whose top is the new block,
  * when searching full diagrams: the new block has a min-witness, and no
    earlier block's max-witness set is wiped out (neither can ever recover,
    since later blocks only stack on top).

With the witness pruning active every search node is itself a valid
staircase diagram, so the node set *is* the answer set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator

from .diagram import Diagram, canonicalize
from .graphs import Graph, connected_subsets, is_connected_subset, make_path

DEFAULT_VERTEX_LIMIT = 10


class LimitExceeded(Exception):
    def __init__(self, vertices: int, limit: int):
        super().__init__(
            f"graph has {vertices} vertices, enumeration limit is {limit} "
            f"(override with STAIRCASE_MAX_VERTICES or the limit argument)")
        self.vertices = vertices
        self.limit = limit


def vertex_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("STAIRCASE_MAX_VERTICES")
    return int(env) if env else DEFAULT_VERTEX_LIMIT


@dataclass(frozen=True)
class EnumFilter:
    connected: bool = False
    fully_supported: bool = False

    @staticmethod
    def parse(name: str) -> "EnumFilter":
        table = {
            "all": EnumFilter(False, False),
            "connected": EnumFilter(True, False),
            "full": EnumFilter(False, True),
            "connected-full": EnumFilter(True, True),
        }
        if name not in table:
            raise ValueError(f"unknown filter {name!r}; choose from {sorted(table)}")
        return table[name]


def search_diagrams(g: Graph, catalog: list[int], visit: Callable,
                    *, prune_axiom4: bool = True,
                    max_blocks: int | None = None) -> None:
    """Depth-first exactly-once walk over axiom-compatible states.

    ``visit(blocks, below, wit)`` fires on every state, the empty one first.
    ``blocks``/``below`` are in insertion order (below masks index blocks),
    ``wit[i]`` is the mask of vertices where block i is currently topmost.
    Lists are reused between calls; copy before storing.
    """
    catalog = sorted(catalog)
    nbhd = {b: b | g.neighbors_mask(b) for b in catalog}
    edges_from: dict[int, tuple] = {}
    for b in catalog:
        ev = []
        m = b
        while m:
            s = (m & -m).bit_length() - 1
            am = g.adj[s]
            while am:
                ev.append((s, (am & -am).bit_length() - 1))
                am &= am - 1
            m &= m - 1
        edges_from[b] = tuple(ev)
    conn_union = {}
    for i, b1 in enumerate(catalog):
        for b2 in catalog[i:]:
            conn_union[(b1, b2)] = is_connected_subset(g, b1 | b2)

    def conn(b1: int, b2: int) -> bool:
        return conn_union[(b1, b2)] if b1 <= b2 else conn_union[(b2, b1)]

    blocks: list[int] = []
    below: list[int] = []
    wit: list[int] = []
    over = [0] * g.vertex_count

    def antichains() -> list[tuple[int, int, int]]:
        """All antichains as (downset index mask, downset union, k)."""
        h = len(blocks)
        out = [(0, 0, 0)]

        def extend(members: int, start: int, ds: int):
            for i in range(start, h):
                ok = True
                m = members
                while m:
                    j = (m & -m).bit_length() - 1
                    if (below[i] >> j) & 1 or (below[j] >> i) & 1:
                        ok = False
                        break
                    m &= m - 1
                if not ok:
                    continue
                nds = ds | below[i] | (1 << i)
                union = 0
                m = nds
                while m:
                    t = (m & -m).bit_length() - 1
                    union |= blocks[t]
                    m &= m - 1
                out.append((nds, union, i + 1))
                extend(members | (1 << i), i + 1, nds)

        extend(0, 0, 0)
        return out

    def saturation_ok(b: int, ds: int) -> bool:
        # reject if some z < new with z in D_t \ D_s sits above a D_s block
        for s, t in edges_from[b]:
            d_s = over[s]
            z_cands = over[t] & ~d_s & ds
            while z_cands:
                z = (z_cands & -z_cands).bit_length() - 1
                if below[z] & d_s:
                    return False
                z_cands &= z_cands - 1
        return True

    def recurse():
        visit(blocks, below, wit)
        if max_blocks is not None and len(blocks) >= max_blocks:
            return
        h = len(blocks)
        sm = [0] * (h + 1)
        for i in range(h - 1, -1, -1):
            sm[i] = max(sm[i + 1], blocks[i])
        chains = antichains()
        used = set(blocks)
        for b in catalog:
            if b in used:
                continue
            required = 0
            nb = nbhd[b]
            for i in range(h):
                if blocks[i] & nb:
                    required |= 1 << i
            for ds, ds_union, k in chains:
                if b <= sm[k]:
                    continue
                if required & ~ds:
                    continue
                if prune_axiom4 and not (b & ~ds_union):
                    continue
                # covers of b are the maxima of its downset: their unions
                # with b must be connected (axiom 1)
                ok = True
                m = _maxima(ds, below)
                while m:
                    i = (m & -m).bit_length() - 1
                    if not conn(b, blocks[i]):
                        ok = False
                        break
                    m &= m - 1
                if not ok:
                    continue
                if not saturation_ok(b, ds):
                    continue
                if prune_axiom4:
                    dead = False
                    m = ds
                    while m:
                        i = (m & -m).bit_length() - 1
                        if not (wit[i] & ~b):
                            dead = True
                            break
                        m &= m - 1
                    if dead:
                        continue
                touched = []
                m = ds
                while m:
                    i = (m & -m).bit_length() - 1
                    touched.append((i, wit[i]))
                    wit[i] &= ~b
                    m &= m - 1
                blocks.append(b)
                below.append(ds)
                wit.append(b)
                mb = b
                while mb:
                    s = (mb & -mb).bit_length() - 1
                    over[s] |= 1 << h
                    mb &= mb - 1
                recurse()
                mb = b
                while mb:
                    s = (mb & -mb).bit_length() - 1
                    over[s] &= ~(1 << h)
                    mb &= mb - 1
                blocks.pop()
                below.pop()
                wit.pop()
                for i, w in touched:
                    wit[i] = w

    recurse()


def _maxima(ds: int, below: list[int]) -> int:
    out = 0
    m = ds
    while m:
        i = (m & -m).bit_length() - 1
        covered_by_other = False
        mm = ds & ~(1 << i)
        while mm:
            j = (mm & -mm).bit_length() - 1
            if (below[j] >> i) & 1:
                covered_by_other = True
                break
            mm &= mm - 1
        if not covered_by_other:
            out |= 1 << i
        m &= m - 1
    return out


def iter_diagrams(g: Graph, f: EnumFilter = EnumFilter(), *,
                  limit: int | None = None,
                  catalog: list[int] | None = None) -> Iterator[Diagram]:
    """All staircase diagrams over g matching the filter, each exactly once.

    Deterministic depth-first order.  The empty diagram is produced iff both
    filter flags are false.
    """
    lim = vertex_limit(limit)
    if g.vertex_count > lim:
        raise LimitExceeded(g.vertex_count, lim)
    if catalog is None:
        catalog = connected_subsets(g)
    results: list[Diagram] = []
    full = g.full_mask

    def visit(blocks, below, wit):
        supp = 0
        for b in blocks:
            supp |= b
        if f.fully_supported and supp != full:
            return
        if f.connected and not (supp and is_connected_subset(g, supp)):
            return
        results.append(canonicalize(Diagram(tuple(blocks), tuple(below))))

    search_diagrams(g, catalog, visit, prune_axiom4=True)
    return iter(results)


def count_diagrams(g: Graph, f: EnumFilter = EnumFilter(), *,
                   limit: int | None = None) -> int:
    lim = vertex_limit(limit)
    if g.vertex_count > lim:
        raise LimitExceeded(g.vertex_count, lim)
    catalog = connected_subsets(g)
    full = g.full_mask
    count = 0

    if not f.connected and not f.fully_supported:
        def visit(blocks, below, wit):
            nonlocal count
            count += 1
    else:
        def visit(blocks, below, wit):
            nonlocal count
            supp = 0
            for b in blocks:
                supp |= b
            if f.fully_supported and supp != full:
                return
            if f.connected and not (supp and is_connected_subset(g, supp)):
                return
            count += 1

    search_diagrams(g, catalog, visit, prune_axiom4=True)
    return count


def enumerate_towers(branch_len: int, max_blocks: int | None = None) -> list[Diagram]:
    """Distinct-set restricted broken towers over a centre-plus-path.

    The carrier is a path with the centre at vertex 0 and ``branch_len``
    further vertices; blocks are the intervals anchored at the centre.
    Axioms 1-3 only (axiom 4 is not required of towers).  Includes the
    empty tower.
    """
    if branch_len > 8:
        raise LimitExceeded(branch_len + 1, 9)
    g = make_path(branch_len + 1)
    catalog = [(1 << (j + 1)) - 1 for j in range(branch_len + 1)]
    results: list[Diagram] = []

    def visit(blocks, below, wit):
        results.append(canonicalize(Diagram(tuple(blocks), tuple(below))))

    search_diagrams(g, catalog, visit, prune_axiom4=False, max_blocks=max_blocks)
    return results


def continuation_count(shape: tuple[int, ...],
                       minor_lengths: tuple[int, ...] = (2, 1),
                       *, limit: int | None = None) -> int:
    """Completions of a main-branch tower on the minor branches.

    Builds the star whose main branch the peak exactly covers, enumerates
    fully supported diagrams, and counts those whose centre chain cuts the
    given length sequence out of the main branch with no further blocks on
    it.  By the sight-set transfer property the count depends only on the
    tower's sight-set, which the verify suite asserts.
    """
    from .graphs import make_star, star_branches, vertices_to_mask
    shape = tuple(shape)
    k = max(shape)
    g = make_star([k - 1] + list(minor_lengths))
    lim = vertex_limit(limit)
    if g.vertex_count > lim:
        raise LimitExceeded(g.vertex_count, lim)
    c = g.branch_vertex
    branches = star_branches(g)
    main_mask = (vertices_to_mask(branches[0]) if k > 1 else 0) | (1 << c)
    # blocks living only on the main branch can never appear in a counted
    # completion, so drop them from the catalog up front
    catalog = [b for b in connected_subsets(g)
               if (b >> c) & 1 or not (b & main_mask)]
    full = g.full_mask
    count = 0

    def visit(blocks, below, wit):
        nonlocal count
        supp = 0
        for b in blocks:
            supp |= b
        if supp != full:
            return
        chain = sorted((i for i, b in enumerate(blocks) if (b >> c) & 1),
                       key=lambda i: bin(below[i]).count("1"))
        if len(chain) != len(shape):
            return
        if tuple(bin(blocks[i] & main_mask).count("1") for i in chain) == shape:
            count += 1

    search_diagrams(g, catalog, visit, prune_axiom4=True)
    return count


def representative_shape(family: str, scale: int = 0) -> tuple[int, ...]:
    """A concrete tower of the given family; ``scale`` enlarges it."""
    base = {
        "k": (1,), "kk": (1, 1), "ak": (1, 2), "akb": (1, 2, 1),
        "abk": (1, 2, 3), "aak": (1, 1, 2), "akk": (1, 2, 2),
        "abck": (1, 2, 3, 4), "abbk": (1, 2, 2, 3), "aabk": (1, 1, 2, 3),
        "abkc": (1, 2, 3, 1),
    }
    if family not in base:
        raise ValueError(f"unknown tower family {family!r}")
    shape = base[family]
    if scale:
        peak = max(shape)
        shape = tuple(v + scale if v == peak else v for v in shape)
        # keep interior strictly between: bump repeated peaks consistently
    return shape


def cont(sight: str, minor_lengths: tuple[int, ...] = (2, 1)) -> int:
    """Continuation count for a gluing datum given as a sight-set string."""
    from .towers import sight_set, _mirror
    from .series import load_continuation_rows
    for row in load_continuation_rows():
        if row["sight"] in (sight, _mirror(sight)):
            shape = representative_shape(row["family"])
            return continuation_count(shape, minor_lengths)
    raise ValueError(f"no continuation row with sight-set {sight!r}")


@dataclass(frozen=True)
class DyckPath:
    """Run-length encoding: alternating horizontal/vertical run lengths."""
    steps: tuple[int, ...]

    @property
    def start_k(self) -> int:
        return self.steps[0]

    @property
    def size(self) -> int:
        return sum(self.steps[0::2])


def dyck_paths(n: int, k: int) -> list[DyckPath]:
    """All Dyck paths from (k, 1) to (n, n) in run-length encoding.

    A path is a sequence of positive runs r1, r2, ... alternating between
    the two step directions, with r1 = k, both run-sums equal to n, and
    every even prefix sum bounded by the preceding odd prefix sum.
    """
    if not (1 <= k <= n):
        raise ValueError("need 1 <= k <= n")
    out: list[DyckPath] = []

    def extend(steps: list[int], odd_sum: int, even_sum: int):
        if odd_sum == n and even_sum == n:
            out.append(DyckPath(tuple(steps)))
            return
        if len(steps) % 2 == 1:
            for r in range(1, min(n - even_sum, odd_sum - even_sum) + 1):
                steps.append(r)
                extend(steps, odd_sum, even_sum + r)
                steps.pop()
        else:
            for r in range(1, n - odd_sum + 1):
                steps.append(r)
                extend(steps, odd_sum + r, even_sum)
                steps.pop()

    extend([k], k, 0)
    return out


def dyck_to_diagram(p: DyckPath) -> Diagram:
    """Increasing connected diagram over a path, per the run-length map.

    Block i spans vertices ``sum(even runs < i)`` .. ``sum(odd runs <= i)-1``
    (0-based) and the order is the chain B1 < B2 < ...
    """
    steps = p.steps
    if not steps or len(steps) % 2:
        raise ValueError("run sequence must alternate and end on a vertical run")
    if any(r < 1 for r in steps):
        raise ValueError("runs must be positive")
    n = sum(steps[0::2])
    if sum(steps[1::2]) != n:
        raise ValueError("run sums must agree")
    blocks = []
    end = 0
    start = 1
    for i in range(0, len(steps), 2):
        end += steps[i]
        if i:
            start += steps[i - 1]
        if start > end:
            raise ValueError("prefix dominance violated")
        blocks.append(((1 << end) - 1) & ~((1 << (start - 1)) - 1))
    below = tuple((1 << i) - 1 for i in range(len(blocks)))
    return Diagram(tuple(blocks), below)


def diagram_to_dyck(d: Diagram) -> DyckPath:
    """Inverse of :func:`dyck_to_diagram` for increasing connected diagrams."""
    m = len(d.blocks)
    if m == 0:
        raise ValueError("empty diagram has no Dyck encoding")
    order = sorted(range(m), key=lambda i: bin(d.below[i]).count("1"))
    for pos, i in enumerate(order):
        if bin(d.below[i]).count("1") != pos:
            raise ValueError("diagram is not a chain")
    spans = []
    for i in order:
        vs = d.blocks[i]
        lo = (vs & -vs).bit_length()
        hi = vs.bit_length()
        if vs != ((1 << hi) - 1) & ~((1 << (lo - 1)) - 1):
            raise ValueError("blocks must be intervals of the path")
        spans.append((lo, hi))
    if spans[0][0] != 1:
        raise ValueError("first block must start at the first vertex")
    n = spans[-1][1]
    prev_lo, prev_hi = 0, 0
    for lo, hi in spans:
        if lo <= prev_lo or hi <= prev_hi or lo > prev_hi + 1:
            raise ValueError("diagram is not increasing-connected")
        prev_lo, prev_hi = lo, hi
    steps = []
    for idx, (lo, hi) in enumerate(spans):
        steps.append(hi - (spans[idx - 1][1] if idx else 0))
        nxt_start = spans[idx + 1][0] if idx + 1 < len(spans) else n + 1
        steps.append(nxt_start - lo)
    return DyckPath(tuple(steps))
