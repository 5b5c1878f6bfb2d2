"""Staircase diagrams: blocks with a strict partial order and the four axioms.

A diagram is stored as a tuple of distinct block bitmasks together with the
transitive closure of its strict order, encoded per block as a bitmask over
block *indices* (``below[i]`` has bit ``j`` set iff ``block_j < block_i``).
Keeping the closure makes chain and saturation checks single mask ops; the
transitive reduction is recomputed on demand for serialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, is_connected_subset, mask_to_vertices, vertices_to_mask


@dataclass(frozen=True)
class Diagram:
    blocks: tuple[int, ...]
    below: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.blocks)) != len(self.blocks):
            raise ValueError("blocks must be pairwise distinct sets")
        if any(b == 0 for b in self.blocks):
            raise ValueError("blocks must be nonempty")
        for i, m in enumerate(self.below):
            if m >> len(self.blocks) or (m >> i) & 1:
                raise ValueError("order must be an irreflexive relation on block indices")

    def __len__(self) -> int:
        return len(self.blocks)

    def less(self, i: int, j: int) -> bool:
        """True iff block i strictly precedes block j."""
        return bool((self.below[j] >> i) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j) or self.less(j, i)

    def covers(self) -> list[tuple[int, int]]:
        """Transitive reduction as (lower, upper) index pairs, sorted."""
        out = []
        for j in range(len(self.blocks)):
            mj = self.below[j]
            m = mj
            while m:
                i = (m & -m).bit_length() - 1
                # i is covered by j unless something sits strictly between
                between = mj & ~self.below[i] & ~(1 << i)
                strict = False
                b = between
                while b:
                    k = (b & -b).bit_length() - 1
                    if (self.below[k] >> i) & 1:
                        strict = True
                        break
                    b &= b - 1
                if not strict:
                    out.append((i, j))
                m &= m - 1
        return sorted(out)


def diagram_from_covers(blocks, covers) -> Diagram:
    """Build a diagram from block masks and covering pairs (lower, upper).

    The strict order is the transitive closure of the given pairs.  Raises
    if the closure is cyclic.
    """
    blocks = tuple(blocks)
    n = len(blocks)
    below = [0] * n
    for i, j in covers:
        below[j] |= (1 << i)
    for _ in range(n):
        changed = False
        for j in range(n):
            m = below[j]
            acc = m
            while m:
                i = (m & -m).bit_length() - 1
                acc |= below[i]
                m &= m - 1
            if acc != below[j]:
                below[j] = acc
                changed = True
        if not changed:
            break
    for j in range(n):
        if (below[j] >> j) & 1:
            raise ValueError("order relation contains a cycle")
    return Diagram(blocks, tuple(below))


def empty_diagram() -> Diagram:
    return Diagram((), ())


@dataclass(frozen=True)
class AxiomViolation:
    axiom: int
    witness: tuple

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return False


def _order_key(d: Diagram) -> list[int]:
    return sorted(range(len(d.blocks)), key=lambda i: d.blocks[i])


def canonicalize(d: Diagram) -> Diagram:
    """Relabel block storage so equal diagrams compare equal."""
    perm = _order_key(d)
    inv = {old: new for new, old in enumerate(perm)}
    blocks = tuple(d.blocks[i] for i in perm)
    below = []
    for i in perm:
        m = d.below[i]
        nm = 0
        while m:
            j = (m & -m).bit_length() - 1
            nm |= 1 << inv[j]
            m &= m - 1
        below.append(nm)
    return Diagram(blocks, tuple(below))


def canonical_key(d: Diagram) -> bytes:
    """Deterministic byte string, injective on (block set, order) pairs."""
    c = canonicalize(d)
    parts = [len(c.blocks)]
    parts.extend(c.blocks)
    for i, j in c.covers():
        parts.append(i)
        parts.append(j)
    return json.dumps(parts, separators=(",", ":")).encode()


def support(d: Diagram) -> int:
    mask = 0
    for b in d.blocks:
        mask |= b
    return mask


def chain_at(d: Diagram, s: int) -> list[int]:
    """Indices of blocks containing vertex s, ascending in the order."""
    idxs = [i for i, b in enumerate(d.blocks) if (b >> s) & 1]
    for i, j in combinations(idxs, 2):
        if not d.comparable(i, j):
            raise ValueError(f"blocks over vertex {s} do not form a chain")
    return sorted(idxs, key=lambda i: bin(d.below[i]).count("1"))


def predicates(g: Graph, d: Diagram) -> dict:
    supp = support(d)
    return {
        "connected": is_connected_subset(g, supp) if supp else False,
        "fully_supported": supp == g.full_mask,
    }


def critical_points(d: Diagram) -> int:
    """Vertices lying in exactly one block, as a mask (path diagrams)."""
    once = 0
    twice = 0
    for b in d.blocks:
        twice |= once & b
        once |= b
    return once & ~twice


def validate(g: Graph, d: Diagram, level: str = "full"):
    """Check the staircase axioms; returns None if OK, else the first failure.

    ``level`` is "full" (axioms 1-4) or "axioms123".  Failures are reported
    in axiom order with deterministic tie-break by block index.
    """
    if level not in ("full", "axioms123"):
        raise ValueError(f"unknown level {level!r}")
    n = len(d.blocks)
    full = g.full_mask
    for b in d.blocks:
        if b & ~full:
            raise ValueError("block contains vertices outside the graph")

    # axiom 1: connected blocks, connected cover unions
    for i, b in enumerate(d.blocks):
        if not is_connected_subset(g, b):
            return AxiomViolation(1, (i,))
    for i, j in d.covers():
        if not is_connected_subset(g, d.blocks[i] | d.blocks[j]):
            return AxiomViolation(1, (i, j))

    # D_s as index masks, one per vertex
    over = [0] * g.vertex_count
    for i, b in enumerate(d.blocks):
        m = b
        while m:
            s = (m & -m).bit_length() - 1
            over[s] |= 1 << i
            m &= m - 1

    def is_chain(mask: int) -> tuple[int, int] | None:
        idxs = []
        m = mask
        while m:
            idxs.append((m & -m).bit_length() - 1)
            m &= m - 1
        for a, b in combinations(idxs, 2):
            if not d.comparable(a, b):
                return (a, b)
        return None

    # axiom 2: each D_s is a chain
    for s in range(g.vertex_count):
        bad = is_chain(over[s])
        if bad is not None:
            return AxiomViolation(2, (s,) + bad)

    # axiom 3: for s adj t, D_s ∪ D_t is a chain and both are saturated in it
    for s, t in g.edges():
        union = over[s] | over[t]
        bad = is_chain(union)
        if bad is not None:
            return AxiomViolation(3, (s, t) + bad)
        for own, other in ((s, t), (t, s)):
            inside = over[own]
            outside = union & ~inside
            m = outside
            while m:
                z = (m & -m).bit_length() - 1
                lower = d.below[z] & inside
                if lower:
                    upper = inside & _above_mask(d, z)
                    if upper:
                        return AxiomViolation(3, (own, other, z))
                m &= m - 1

    if level == "axioms123":
        return None

    # axiom 4: every block is min of some D_s and max of some D_s'
    for i in range(n):
        above_union = 0
        below_union = 0
        for j in range(n):
            if d.less(i, j):
                above_union |= d.blocks[j]
            elif d.less(j, i):
                below_union |= d.blocks[j]
        if not d.blocks[i] & ~below_union:
            return AxiomViolation(4, (i, "min"))
        if not d.blocks[i] & ~above_union:
            return AxiomViolation(4, (i, "max"))
    return None


def _above_mask(d: Diagram, i: int) -> int:
    out = 0
    for j in range(len(d.blocks)):
        if d.less(i, j):
            out |= 1 << j
    return out


def naive_validate(g: Graph, d: Diagram, level: str = "full"):
    """Independent re-check of the axioms by exhaustive quantification.

    Deliberately written over plain Python sets, without the incremental
    index tricks of :func:`validate`; returns the same verdict shape.
    """
    blocks = [set(mask_to_vertices(b)) for b in d.blocks]
    n = len(blocks)
    less = {(i, j) for j in range(n) for i in range(n) if d.less(i, j)}

    def covers(i, j):
        return (i, j) in less and not any(
            (i, k) in less and (k, j) in less for k in range(n))

    def connected(vs):
        return is_connected_subset(g, vertices_to_mask(vs))

    for i in range(n):
        if not connected(blocks[i]):
            return AxiomViolation(1, (i,))
    for j in range(n):
        for i in range(n):
            if covers(i, j) and not connected(blocks[i] | blocks[j]):
                return AxiomViolation(1, (i, j))

    def d_s(s):
        return [i for i in range(n) if s in blocks[i]]

    def chain(idxs):
        return all((a, b) in less or (b, a) in less
                   for a, b in combinations(idxs, 2))

    for s in range(g.vertex_count):
        if not chain(d_s(s)):
            return AxiomViolation(2, (s,))

    for s, t in g.edges():
        union = sorted(set(d_s(s)) | set(d_s(t)))
        if not chain(union):
            return AxiomViolation(3, (s, t))
        for own in (s, t):
            members = d_s(own)
            for a in members:
                for b in members:
                    for z in union:
                        if z not in members and (a, z) in less and (z, b) in less:
                            return AxiomViolation(3, (own, z))

    if level == "axioms123":
        return None

    for i in range(n):
        is_min = any(all((i, j) in less or i == j for j in d_s(s))
                     for s in blocks[i])
        is_max = any(all((j, i) in less or i == j for j in d_s(s))
                     for s in blocks[i])
        if not is_min:
            return AxiomViolation(4, (i, "min"))
        if not is_max:
            return AxiomViolation(4, (i, "max"))
    return None


def restrict(d: Diagram, h_mask: int) -> Diagram:
    """Restriction to a vertex subset: intersect blocks, merge duplicates.

    The induced order between merged classes keeps a pair only when it is
    not contradicted (two classes related in both directions collapse to
    incomparable); the decomposition machinery works with the duplicate-
    preserving per-branch sequences instead, see towers.tower_restriction.
    """
    reps: list[int] = []
    members: list[list[int]] = []
    for i, b in enumerate(d.blocks):
        cut = b & h_mask
        if not cut:
            continue
        if cut in reps:
            members[reps.index(cut)].append(i)
        else:
            reps.append(cut)
            members.append([i])
    m = len(reps)
    rel = [[False] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a != b and any(d.less(i, j) for i in members[a] for j in members[b]):
                rel[a][b] = True
    for a in range(m):
        for b in range(m):
            if rel[a][b] and rel[b][a]:
                rel[a][b] = rel[b][a] = False
    below = [0] * m
    for b in range(m):
        for a in range(m):
            if rel[a][b]:
                below[b] |= 1 << a
    try:
        return diagram_from_covers(tuple(reps),
                                   [(a, b) for b in range(m) for a in range(m)
                                    if (below[b] >> a) & 1])
    except ValueError:
        # relation had a longer cycle; keep only the acyclic core
        return Diagram(tuple(reps), tuple(0 for _ in reps))


def diagram_to_json(d: Diagram) -> str:
    c = canonicalize(d)
    return json.dumps({
        "blocks": [list(mask_to_vertices(b)) for b in c.blocks],
        "covers": [list(p) for p in c.covers()],
    }, separators=(",", ":"))


def diagram_from_json(text: str) -> Diagram:
    data = json.loads(text)
    blocks = [vertices_to_mask(vs) for vs in data["blocks"]]
    return diagram_from_covers(blocks, [tuple(p) for p in data["covers"]])
