"""Broken towers, sight-sets, gluing data, and the branch decomposition.

A restriction of the centre chain D_c to a branch is a *multichain* of
centre-anchored intervals: distinct blocks of the diagram can cut the same
interval out of one branch, so duplicates are kept, aligned by chain slot.
Keeping the slots is what makes the decomposition and its inverse exact;
the merged-set view required by :func:`staircase_diagrams.diagram.restrict`
loses the alignment and is only used for reporting.

Branch-local coordinates put the centre at vertex 0 and the branch vertices
at 1..len outward, matching the tower carrier used by the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .diagram import Diagram, canonical_key, diagram_from_covers, validate
from .graphs import Graph, make_path, mask_to_vertices, star_branches

Arrow = Literal["up", "down"]

SIGHT_UP = "u"
SIGHT_DOWN = "d"
SIGHT_BOTH = "x"
SIGHT_NONE = "e"


@dataclass(frozen=True)
class Tower:
    """A restricted broken tower as block lengths in chain order (bottom up).

    Lengths count vertices including the centre, so they are >= 1; equal
    neighbours are legitimate (two blocks cutting the same interval).
    """

    lengths: tuple[int, ...]

    def __post_init__(self):
        if any(v < 1 for v in self.lengths):
            raise ValueError("tower block lengths must be positive")
        if not is_unimodal(self.lengths):
            raise ValueError("tower lengths must rise then fall")

    def __len__(self) -> int:
        return len(self.lengths)

    @property
    def peak(self) -> int:
        return max(self.lengths)


def is_unimodal(lengths: tuple[int, ...]) -> bool:
    rising = True
    for a, b in zip(lengths, lengths[1:]):
        if rising and b < a:
            rising = False
        elif not rising and b > a:
            return False
    return True


def sight_set(lengths) -> str:
    """Sight symbols of a tower, listed greatest-to-least (top first).

    A block sees up (``u``) when it is strictly longer than every block
    above it in the chain, down (``d``) when strictly longer than every
    block below; ``x`` is both, ``e`` neither.
    """
    if isinstance(lengths, Tower):
        lengths = lengths.lengths
    lengths = tuple(lengths)
    out = []
    for p in range(len(lengths) - 1, -1, -1):
        up = lengths[p] > max(lengths[p + 1:], default=0)
        down = lengths[p] > max(lengths[:p], default=0)
        out.append(SIGHT_BOTH if up and down else
                   SIGHT_UP if up else SIGHT_DOWN if down else SIGHT_NONE)
    return "".join(out)


GLUING_FAMILIES = (
    ("up-run-peak-down-run", "u", "ue", "x", "de", "d"),
    ("up-run-down-run", "u", "ue", "", "de", "d"),
    ("peak-down-run", "x", "", "", "de", "d"),
    ("up-run-peak", "u", "ue", "x", "", ""),
    ("peak", "x", "", "", "", ""),
)


def _match_family(symbols: str, head: str, run1: str, mid: str,
                  run2: str, tail: str) -> bool:
    s = symbols
    if not s.startswith(head):
        return False
    s = s[len(head):]
    if not s.endswith(tail):
        return False
    s = s[:len(s) - len(tail)] if tail else s
    if mid:
        parts = s.split(mid)
        if len(parts) != 2:
            return False
        left, right = parts
    else:
        # greedy split: run1 symbols then run2 symbols
        i = 0
        while i < len(s) and s[i] in run1:
            i += 1
        left, right = s[:i], s[i:]
    return all(ch in run1 for ch in left) and all(ch in run2 for ch in right)


@dataclass(frozen=True)
class GluingData:
    family: str
    symbols: str


def classify_gluing_data(symbols) -> GluingData:
    """The unique sight-set family of Corollary form; raises if none match.

    Accepts the greatest-to-least reading; if nothing matches, the reversed
    string with u and d swapped is tried before giving up.
    """
    if isinstance(symbols, (tuple, list)):
        symbols = "".join(symbols)
    for reading in (symbols, _mirror(symbols)):
        for name, *pattern in GLUING_FAMILIES:
            if _match_family(reading, *pattern):
                return GluingData(name, reading)
    raise ValueError(f"sight-set {symbols!r} matches no gluing family")


def _mirror(symbols: str) -> str:
    swap = {"u": "d", "d": "u", "x": "x", "e": "e"}
    return "".join(swap[ch] for ch in reversed(symbols))


def peak_attachments(lengths: tuple[int, ...]) -> tuple[int, int, int]:
    """(k, x1, x2): the peak length and the lengths of the next strictly
    shorter blocks above and below the peak run (0 when absent)."""
    k = max(lengths)
    top = max(i for i, v in enumerate(lengths) if v == k)
    bot = min(i for i, v in enumerate(lengths) if v == k)
    x1 = lengths[top + 1] if top + 1 < len(lengths) else 0
    x2 = lengths[bot - 1] if bot > 0 else 0
    return k, x1, x2


# --- extracting towers and regular parts from diagrams --------------------


def center_chain(d: Diagram, center: int) -> list[int]:
    """Indices of blocks containing the centre, bottom of the chain first."""
    idxs = [i for i, b in enumerate(d.blocks) if (b >> center) & 1]
    for i, j in combinations(idxs, 2):
        if not d.comparable(i, j):
            raise ValueError("blocks over the centre do not form a chain")
    return sorted(idxs, key=lambda i: bin(d.below[i] &
                                          sum(1 << j for j in idxs)).count("1"))


def broken_tower(d: Diagram, v: int) -> list[int]:
    """The chain D_v as block indices in ascending order."""
    return center_chain(d, v)


def tower_lengths(d: Diagram, g: Graph, branch: tuple[int, ...]) -> Tower:
    """Slot-aligned restriction of D_c to a branch, duplicates kept."""
    c = g.branch_vertex
    bmask = (1 << c)
    for s in branch:
        bmask |= 1 << s
    chain = center_chain(d, c)
    return Tower(tuple(bin(d.blocks[i] & bmask).count("1") for i in chain))


def tower_restriction(d: Diagram, g: Graph, branch: tuple[int, ...]) -> Diagram:
    """Merged-set restriction of D_c to a branch (the reporting view).

    Duplicate intersections collapse to one block ordered by first
    occurrence along the chain; the slot-aligned :func:`tower_lengths` is
    the faithful decomposition datum.
    """
    c = g.branch_vertex
    bmask = (1 << c)
    for s in branch:
        bmask |= 1 << s
    chain = center_chain(d, c)
    seen: list[int] = []
    for i in chain:
        cut = d.blocks[i] & bmask
        if cut not in seen:
            seen.append(cut)
    covers = [(i, i + 1) for i in range(len(seen) - 1)]
    return diagram_from_covers(tuple(seen), covers)


@dataclass(frozen=True)
class BranchPart:
    """One branch of a star decomposition.

    ``tower`` is slot-aligned to the centre chain.  ``regular`` is a diagram
    over the branch-local path (centre = 0) whose first block is the exposed
    part of the peak; it is empty when the tower alone covers the branch
    part of the diagram.  ``arrow`` records whether the continuation sits
    above or below the peak.
    """

    tower: Tower
    regular: Diagram
    arrow: Arrow | None


@dataclass(frozen=True)
class StarDecomposition:
    slots: int
    parts: tuple[BranchPart, ...]


def _localize(mask: int, c: int, branch: tuple[int, ...]) -> int:
    out = 0
    if (mask >> c) & 1:
        out |= 1
    for pos, s in enumerate(branch):
        if (mask >> s) & 1:
            out |= 1 << (pos + 1)
    return out


def _globalize(local: int, c: int, branch: tuple[int, ...]) -> int:
    out = 0
    if local & 1:
        out |= 1 << c
    for pos, s in enumerate(branch):
        if (local >> (pos + 1)) & 1:
            out |= 1 << s
    return out


def _interval_mask(length: int) -> int:
    return (1 << length) - 1


def decompose_star(d: Diagram, g: Graph) -> StarDecomposition:
    """Split a connected diagram over a star into per-branch parts."""
    c = g.branch_vertex
    if c is None:
        raise ValueError("graph has no designated branch vertex")
    branches = star_branches(g)
    chain = center_chain(d, c)
    if not chain:
        # connected support avoiding the centre lives inside one branch;
        # the decomposition degenerates to a single pure regular part
        parts = []
        for branch in branches:
            bmask = 0
            for s in branch:
                bmask |= 1 << s
            idxs = [i for i, b in enumerate(d.blocks) if b & bmask]
            blocks = tuple(_localize(d.blocks[i], c, branch) for i in idxs)
            covers = [(a, b) for a, i in enumerate(idxs)
                      for b, j in enumerate(idxs) if d.less(i, j)]
            parts.append(BranchPart(Tower(()), diagram_from_covers(blocks, covers),
                                    None))
        return StarDecomposition(0, tuple(parts))
    parts = []
    for branch in branches:
        bmask = 0
        for s in branch:
            bmask |= 1 << s
        lengths = tuple(bin(d.blocks[i] & (bmask | (1 << c))).count("1")
                        for i in chain)
        tower = Tower(lengths)
        beyond = [i for i, b in enumerate(d.blocks)
                  if b and not ((b >> c) & 1) and (b & bmask)]
        if not beyond:
            parts.append(BranchPart(tower, Diagram((), ()), None))
            continue
        k, x1, x2 = peak_attachments(lengths)
        peak_top = chain[max(i for i, v in enumerate(lengths) if v == k)]
        peak_bot = chain[min(i for i, v in enumerate(lengths) if v == k)]
        def branch_start(i: int) -> int:
            return min(branch.index(s) for s in mask_to_vertices(d.blocks[i]))

        first = min(beyond, key=branch_start)
        if d.less(peak_top, first):
            arrow: Arrow = "up"
            residual_local = _interval_mask(k) & ~_interval_mask(x1)
        elif d.less(first, peak_bot):
            arrow = "down"
            residual_local = _interval_mask(k) & ~_interval_mask(x2)
        else:
            raise ValueError("continuation block is not attached to the peak")
        # regular part: residual + the branch-only blocks, in local coords
        blocks = [residual_local] + [_localize(d.blocks[i], c, branch)
                                     for i in beyond]
        covers = []
        for a_pos, i in enumerate(beyond):
            for b_pos, j in enumerate(beyond):
                if d.less(i, j):
                    covers.append((a_pos + 1, b_pos + 1))
            if d.less(peak_top, i):
                covers.append((0, a_pos + 1))
            elif d.less(i, peak_bot):
                covers.append((a_pos + 1, 0))
        regular = diagram_from_covers(tuple(blocks), covers)
        parts.append(BranchPart(tower, regular, arrow))
    return StarDecomposition(len(chain), tuple(parts))


class CompositionInvalid(ValueError):
    pass


def compose_star(g: Graph, deco: StarDecomposition) -> Diagram:
    """Rebuild the diagram from slot-aligned branch parts; inverse of
    :func:`decompose_star` on valid decompositions."""
    c = g.branch_vertex
    branches = star_branches(g)
    if len(deco.parts) != len(branches):
        raise CompositionInvalid("one part per branch required")
    h = deco.slots
    for part in deco.parts:
        if len(part.tower) != h:
            raise CompositionInvalid("tower heights must match the slot count")
    if h == 0:
        blocks: list[int] = []
        covers = []
        for part, branch in zip(deco.parts, branches):
            base = len(blocks)
            for b in part.regular.blocks:
                blocks.append(_globalize(b, c, branch))
            for j in range(len(part.regular)):
                for i in range(len(part.regular)):
                    if part.regular.less(i, j):
                        covers.append((base + i, base + j))
        result = diagram_from_covers(tuple(blocks), covers)
        bad = validate(g, result, level="full")
        if bad is not None:
            raise CompositionInvalid(f"composition violates axiom {bad.axiom}")
        return result
    slot_blocks = []
    for s in range(h):
        m = 1 << c
        for part, branch in zip(deco.parts, branches):
            length = part.tower.lengths[s]
            if length - 1 > len(branch):
                raise CompositionInvalid("tower block exceeds branch length")
            for pos in range(length - 1):
                m |= 1 << branch[pos]
        slot_blocks.append(m)
    blocks = list(slot_blocks)
    covers = [(s, s + 1) for s in range(h - 1)]
    for part, branch in zip(deco.parts, branches):
        if len(part.regular) == 0:
            continue
        if part.arrow is None:
            raise CompositionInvalid("regular part needs an arrow")
        k, x1, x2 = peak_attachments(part.tower.lengths)
        peak_top = max(i for i, v in enumerate(part.tower.lengths) if v == k)
        peak_bot = min(i for i, v in enumerate(part.tower.lengths) if v == k)
        shift = x1 if part.arrow == "up" else x2
        residual_local = _interval_mask(k) & ~_interval_mask(shift)
        reg = part.regular
        res_idx = None
        for i, b in enumerate(reg.blocks):
            if b == residual_local:
                res_idx = i
                break
        if res_idx is None:
            raise CompositionInvalid("regular part does not start with the "
                                     "exposed part of the peak")
        beyond = [i for i in range(len(reg.blocks)) if i != res_idx]
        if not beyond:
            raise CompositionInvalid("a bare exposed part is the empty "
                                     "regular; drop it and clear the arrow")
        first_beyond = min(beyond,
                           key=lambda i: (reg.blocks[i] & -reg.blocks[i]))
        if reg.less(res_idx, first_beyond):
            implied: Arrow = "up"
        elif reg.less(first_beyond, res_idx):
            implied = "down"
        else:
            raise CompositionInvalid("first continuation block must attach "
                                     "to the exposed part")
        if implied != part.arrow:
            raise CompositionInvalid("arrow contradicts the regular part's "
                                     "internal order")
        base = len(blocks)
        index_of = {}
        for i, b in enumerate(reg.blocks):
            if i == res_idx:
                continue
            index_of[i] = len(blocks)
            blocks.append(_globalize(b, c, branch))
        for j in range(len(reg.blocks)):
            for i in range(len(reg.blocks)):
                if not reg.less(i, j):
                    continue
                if i == res_idx:
                    # relations above the residual anchor at the top copy
                    covers.append((peak_top, index_of[j]))
                elif j == res_idx:
                    covers.append((index_of[i], peak_bot))
                else:
                    covers.append((index_of[i], index_of[j]))
        del base
    try:
        result = diagram_from_covers(tuple(blocks), covers)
    except ValueError as exc:
        raise CompositionInvalid(str(exc)) from exc
    bad = validate(g, result, level="full")
    if bad is not None:
        raise CompositionInvalid(f"composition violates axiom {bad.axiom}")
    return result


def regular_part(d: Diagram, g: Graph, branch: tuple[int, ...]) -> Diagram:
    """The regular part of one branch, as a diagram in branch-local
    coordinates (empty when the tower covers everything)."""
    deco_branches = star_branches(g)
    idx = deco_branches.index(tuple(branch))
    return decompose_star(d, g).parts[idx].regular


# --- join and glue over a single branch path ------------------------------


@dataclass(frozen=True)
class JoinInvalid:
    reason: str

    def __bool__(self) -> bool:
        return False


def join(tower: Tower, regular: Diagram, arrow: Arrow | None,
         branch_len: int, *, condition_flag: str = "first-block") -> Diagram | JoinInvalid:
    """Join a tower with a regular part over a branch-local path.

    The tower occupies centre-anchored intervals; the regular part is a
    diagram over the same local path whose first block must equal the
    exposed part of the peak on the side selected by the arrow.  Checks the
    three validity conditions and returns the joined diagram (over the
    local path graph) or a reason.

    ``condition_flag`` picks which block the second condition removes from
    the regular support: "first-block" (the reading under which the
    decomposition round-trips) or "second-block" (the verbatim reading).
    """
    g = make_path(branch_len + 1)
    h = len(tower)
    slot_blocks = [_interval_mask(v) for v in tower.lengths]
    if len(regular) == 0:
        covers = [(s, s + 1) for s in range(h - 1)]
        return diagram_from_covers(tuple(slot_blocks), covers)
    if arrow is None:
        return JoinInvalid("arrow required with a nonempty regular part")
    k, x1, x2 = peak_attachments(tower.lengths)
    starts = [(b & -b).bit_length() for b in regular.blocks]
    first = min(range(len(regular)), key=lambda i: starts[i])
    # the exposed part of the peak may be taken on either side of the chain
    candidates = {_interval_mask(k) & ~_interval_mask(s) for s in (x1, x2)}
    if regular.blocks[first] not in candidates:
        return JoinInvalid("first-block")
    residual = regular.blocks[first]
    support_reg = 0
    for i, b in enumerate(regular.blocks):
        if i != first:
            support_reg |= b
    order = sorted(range(len(regular)),
                   key=lambda i: (starts[i], bin(regular.below[i]).count("1")))
    second = order[1] if len(order) > 1 else None
    if condition_flag == "second-block":
        removed = second
    else:
        removed = first
    leftover = 0
    for i, b in enumerate(regular.blocks):
        if i != removed:
            leftover |= b
    if not residual & ~leftover:
        return JoinInvalid("exposed-part-covered")
    support_tower = _interval_mask(k)
    if support_tower & support_reg & ~residual:
        return JoinInvalid("support-overlap")
    peak_top = max(i for i, v in enumerate(tower.lengths) if v == k)
    peak_bot = min(i for i, v in enumerate(tower.lengths) if v == k)
    blocks = list(slot_blocks)
    covers = [(s, s + 1) for s in range(h - 1)]
    index_of = {}
    for i, b in enumerate(regular.blocks):
        if i != first:
            index_of[i] = len(blocks)
            blocks.append(b)
    for j in range(len(regular)):
        for i in range(len(regular)):
            if not regular.less(i, j):
                continue
            if i == first:
                covers.append((peak_top, index_of[j]))
            elif j == first:
                covers.append((index_of[i], peak_bot))
            else:
                covers.append((index_of[i], index_of[j]))
    try:
        result = diagram_from_covers(tuple(blocks), covers)
    except ValueError:
        return JoinInvalid("order-cycle")
    if validate(g, result, level="axioms123") is not None:
        return JoinInvalid("axioms")
    return result


class GlueInvalid(ValueError):
    pass


def glue(g: Graph, d1: Diagram, d2: Diagram, offset: int) -> Diagram:
    """Glue two diagrams over subtrees meeting only at the branch vertex.

    The centre chains are aligned slot-by-slot after shifting d2 by
    ``offset``; unmatched slots pad with the other side's block alone.
    Raises GlueInvalid when the result breaks axioms 1-3.
    """
    c = g.branch_vertex
    chain1 = center_chain(d1, c)
    chain2 = center_chain(d2, c)
    s1 = 0
    for b in d1.blocks:
        s1 |= b
    s2 = 0
    for b in d2.blocks:
        s2 |= b
    if s1 & s2 & ~(1 << c):
        raise GlueInvalid("supports overlap away from the centre")
    n, m = len(chain1), len(chain2)
    if not (-m <= offset <= n):
        raise GlueInvalid("offset out of range")
    lo = min(0, offset)
    hi = max(n, m + offset)
    merged = []
    origin: list[tuple[int | None, int | None]] = []
    for pos in range(lo, hi):
        b1 = d1.blocks[chain1[pos]] if 0 <= pos < n else 0
        j = pos - offset
        b2 = d2.blocks[chain2[j]] if 0 <= j < m else 0
        if b1 == 0 and b2 == 0:
            continue
        merged.append((b1 | b2) | (1 << c))
        origin.append((chain1[pos] if 0 <= pos < n else None,
                       chain2[j] if 0 <= j < m else None))
    blocks = list(merged)
    covers = [(i, i + 1) for i in range(len(merged) - 1)]
    slot_of_1 = {o1: i for i, (o1, _) in enumerate(origin) if o1 is not None}
    slot_of_2 = {o2: i for i, (_, o2) in enumerate(origin) if o2 is not None}
    index_of: dict[tuple[int, int], int] = {}
    for which, (d, chain, slot_of) in enumerate(
            ((d1, chain1, slot_of_1), (d2, chain2, slot_of_2))):
        for i, b in enumerate(d.blocks):
            if i in chain:
                continue
            index_of[(which, i)] = len(blocks)
            blocks.append(b)
        for i in range(len(d.blocks)):
            for j in range(len(d.blocks)):
                if not d.less(i, j):
                    continue
                a = slot_of[i] if i in slot_of else index_of[(which, i)]
                b_ = slot_of[j] if j in slot_of else index_of[(which, j)]
                covers.append((a, b_))
    if len(set(blocks)) != len(blocks):
        raise GlueInvalid("glued blocks coincide")
    try:
        result = diagram_from_covers(tuple(blocks), covers)
    except ValueError as exc:
        raise GlueInvalid(str(exc)) from exc
    if validate(g, result, level="axioms123") is not None:
        raise GlueInvalid("glued structure breaks axioms 1-3")
    return result


def glue_candidates(g: Graph, d1: Diagram, d2: Diagram) -> list[Diagram]:
    """All valid glue results over the legal offset range, deduplicated."""
    c = g.branch_vertex
    n = len(center_chain(d1, c))
    m = len(center_chain(d2, c))
    seen = {}
    for offset in range(-m, n + 1):
        try:
            result = glue(g, d1, d2, offset)
        except GlueInvalid:
            continue
        seen[canonical_key(result)] = result
    return [seen[k] for k in sorted(seen)]


def glue_all(g: Graph, parts: list[Diagram], offsets: list[int]) -> Diagram:
    """Left fold of glue with explicit offsets (one fewer than parts)."""
    if not parts:
        raise ValueError("at least one part required")
    if len(offsets) != len(parts) - 1:
        raise ValueError("need one offset per glue step")
    acc = parts[0]
    for part, off in zip(parts[1:], offsets):
        acc = glue(g, acc, part, off)
    return acc
