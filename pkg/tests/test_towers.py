from itertools import product

import pytest

from staircase_diagrams.diagram import (Diagram, canonical_key,
                                        diagram_from_covers, validate)
from staircase_diagrams.graphs import (make_path, make_star, star_branches,
                                       vertices_to_mask as vm)
from staircase_diagrams.oracle import EnumFilter, iter_diagrams
from staircase_diagrams.towers import (
    BranchPart,
    CompositionInvalid,
    GlueInvalid,
    JoinInvalid,
    StarDecomposition,
    Tower,
    broken_tower,
    classify_gluing_data,
    compose_star,
    decompose_star,
    glue,
    glue_all,
    glue_candidates,
    is_unimodal,
    join,
    peak_attachments,
    regular_part,
    sight_set,
    tower_lengths,
    tower_restriction,
)


def D(blocks, covers=()):
    return diagram_from_covers(tuple(vm(b) for b in blocks), covers)


def test_tower_requires_unimodal():
    Tower((1, 3, 2))
    with pytest.raises(ValueError):
        Tower((2, 1, 2))
    with pytest.raises(ValueError):
        Tower((1, 0))


def test_is_unimodal():
    assert is_unimodal((1, 2, 2, 1))
    assert not is_unimodal((2, 1, 2))


def test_peak_attachments():
    assert peak_attachments((1, 2)) == (2, 0, 1)
    assert peak_attachments((2, 1)) == (2, 1, 0)
    assert peak_attachments((1, 3, 2)) == (3, 2, 1)
    assert peak_attachments((2, 2)) == (2, 0, 0)
    assert peak_attachments((1, 2, 2)) == (2, 0, 1)


def test_sight_set_examples():
    assert sight_set((3,)) == "x"
    assert sight_set((1, 2, 3, 4)) == "xddd"
    assert sight_set((1, 2, 3)) == "xdd"
    assert sight_set((1, 1)) == "ud"
    assert sight_set((1, 1, 2)) == "xed"
    assert sight_set((1, 2, 1)) == "uxd"


def test_classify_gluing_data():
    assert classify_gluing_data("x").family == "peak"
    assert classify_gluing_data("ud").family == "up-run-down-run"
    assert classify_gluing_data("xd").family == "peak-down-run"
    assert classify_gluing_data("uxd").family == "up-run-peak-down-run"
    assert classify_gluing_data("ux").family == "up-run-peak"
    assert classify_gluing_data("xed").family == "peak-down-run"
    assert classify_gluing_data("uuxdd").family == "up-run-peak-down-run"


def test_classify_accepts_mirrored_reading():
    # bottom-to-top reading of a peak-down tower mirrors to the canonical one
    got = classify_gluing_data("du")
    assert got.family == "up-run-down-run"
    assert got.symbols == "ud"


def test_classify_rejects_garbage():
    with pytest.raises(ValueError):
        classify_gluing_data("dxu")


def test_classification_exhaustive_on_towers():
    # every unimodal multichain of height <= 4 classifies into one family
    for h in range(1, 5):
        for lengths in product(range(1, 5), repeat=h):
            if not is_unimodal(lengths):
                continue
            classify_gluing_data(sight_set(lengths))


def test_broken_tower():
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    d = D([[c, 0]])
    assert broken_tower(d, c) == [0]
    assert broken_tower(d, 0) == [0]
    assert broken_tower(d, 1) == []


def test_tower_lengths_with_duplicates():
    # two blocks cutting the same interval from the main branch
    g = make_star([2, 1, 1])
    c = g.branch_vertex
    # chain: {c,0,1} < {c,2} < {c,3} restricted to the main branch (0,1)
    d = D([[c, 0, 1], [c, 2], [c, 3]], [(0, 1), (1, 2)])
    assert validate(g, d) is None
    main = star_branches(g)[0]
    t = tower_lengths(d, g, main)
    assert t.lengths == (3, 1, 1)


def test_tower_restriction_merges():
    g = make_star([2, 1, 1])
    c = g.branch_vertex
    d = D([[c, 0, 1], [c, 2], [c, 3]], [(0, 1), (1, 2)])
    main = star_branches(g)[0]
    merged = tower_restriction(d, g, main)
    assert merged.blocks == (vm([c, 0, 1]), vm([c]))
    assert merged.less(0, 1)


def test_regular_part_empty_for_single_block():
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    d = D([[c, 0, 1, 2]])
    for br in star_branches(g):
        assert len(regular_part(d, g, br)) == 0


def test_regular_part_contains_residual():
    g = make_star([3, 1, 1])
    c = g.branch_vertex
    # tower {c,0} with a separate block {1,2} above it on the main branch
    d = D([[c, 0], [1, 2]], [(0, 1)])
    assert validate(g, d) is None
    main = star_branches(g)[0]
    reg = regular_part(d, g, main)
    # local coordinates: centre = 0, branch = 1,2,3
    assert set(reg.blocks) == {vm([0, 1]), vm([2, 3])}
    assert len(reg) == 2


def test_join_spec_example():
    t = Tower((1, 2))
    r = diagram_from_covers((vm([1]), vm([2, 3])), [(0, 1)])
    result = join(t, r, "up", 3)
    want = D([[0], [0, 1], [2, 3]], [(0, 1), (1, 2)])
    assert canonical_key(result) == canonical_key(want)


def test_join_rejects_wrong_first_block():
    t = Tower((1, 2))
    r = diagram_from_covers((vm([2]),), [])
    out = join(t, r, "up", 3)
    assert isinstance(out, JoinInvalid)
    assert out.reason == "first-block"


def test_join_rejects_support_overlap():
    # regular overlapping the tower below the exposed part
    t = Tower((2, 3))
    r = diagram_from_covers((vm([2]), vm([1, 3])), [(0, 1)])
    out = join(t, r, "up", 4)
    assert isinstance(out, JoinInvalid)


def test_join_empty_regular_returns_tower():
    t = Tower((1, 2))
    result = join(t, Diagram((), ()), None, 3)
    assert result.blocks == (vm([0]), vm([0, 1]))


def test_join_condition_flag_second_block_reading():
    # under the verbatim reading the removed support always covers the
    # exposed part, so every nonempty attachment is rejected
    t = Tower((1, 2))
    r = diagram_from_covers((vm([1]), vm([2, 3])), [(0, 1)])
    ok = join(t, r, "up", 3)
    assert not isinstance(ok, JoinInvalid)
    bad = join(t, r, "up", 3, condition_flag="second-block")
    assert isinstance(bad, JoinInvalid)


def test_glue_aligning_single_blocks():
    g = make_star([1, 1])
    # two single-block towers over different branches of a common centre
    c = g.branch_vertex
    d1 = D([[c, 0]])
    d2 = D([[c, 1]])
    merged = glue(g, d1, d2, 0)
    assert merged.blocks == (vm([0, c, 1]),)


def test_glue_staggered():
    g = make_star([1, 1])
    c = g.branch_vertex
    d1 = D([[c, 0]])
    d2 = D([[c, 1]])
    staggered = glue(g, d1, d2, 1)
    assert set(staggered.blocks) == {vm([c, 0]), vm([c, 1])}
    assert len(staggered.covers()) == 1
    assert validate(g, staggered) is None


def test_glue_candidates_dedupe():
    g = make_star([1, 1])
    c = g.branch_vertex
    outs = glue_candidates(g, D([[c, 0]]), D([[c, 1]]))
    keys = {canonical_key(o) for o in outs}
    assert len(keys) == len(outs) == 3  # aligned, and two staggerings


def test_glue_rejects_overlap():
    g = make_star([1, 1])
    c = g.branch_vertex
    with pytest.raises(GlueInvalid):
        glue(g, D([[c, 0, 1]]), D([[c, 1]]), 0)


def test_glue_all_associative_on_small_cases():
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    parts = [D([[c, 0]]), D([[c, 1]]), D([[c, 2]])]

    def keys(diagrams):
        return sorted(canonical_key(x) for x in diagrams)

    left = []
    for ab in glue_candidates(g, parts[0], parts[1]):
        left.extend(glue_candidates(g, ab, parts[2]))
    right = []
    for bc in glue_candidates(g, parts[1], parts[2]):
        right.extend(glue_candidates(g, parts[0], bc))
    dedup_left = sorted(set(keys(left)))
    dedup_right = sorted(set(keys(right)))
    assert dedup_left == dedup_right


def test_glue_all_single_part_identity():
    g = make_star([1, 1])
    c = g.branch_vertex
    d = D([[c, 0]])
    assert glue_all(g, [d], []) is d


def test_glue_all_three_aligned():
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    parts = [D([[c, 0]]), D([[c, 1]]), D([[c, 2]])]
    out = glue_all(g, parts, [0, 0])
    assert out.blocks == (vm([0, 1, 2, c]),)


def test_decompose_single_spanning_block():
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    d = D([[c, 0, 1, 2]])
    deco = decompose_star(d, g)
    assert deco.slots == 1
    for part in deco.parts:
        assert part.tower.lengths == (2,)
        assert len(part.regular) == 0
    assert canonical_key(compose_star(g, deco)) == canonical_key(d)


def test_round_trip_small_stars():
    for lengths in ([1, 1, 1], [2, 1, 1]):
        g = make_star(lengths)
        for d in iter_diagrams(g, EnumFilter(True, False)):
            deco = decompose_star(d, g)
            assert canonical_key(compose_star(g, deco)) == canonical_key(d)


def test_plateau_ambiguity_round_trip():
    # two centre blocks cutting identical intervals out of one branch,
    # with the chain order only recoverable from the slot alignment
    g = make_star([2, 1, 1])
    c = g.branch_vertex
    d = D([[c, 0, 1], [c, 2], [c, 3]], [(0, 1), (1, 2)])
    assert validate(g, d) is None
    deco = decompose_star(d, g)
    assert canonical_key(compose_star(g, deco)) == canonical_key(d)


def _local_regular_options(tower: Tower, branch_len: int):
    """All (regular, arrow) pairs attachable to the tower over one branch
    of the given length, among diagrams with at most one beyond block."""
    yield Diagram((), ()), None
    k, x1, x2 = peak_attachments(tower.lengths)
    beyond_candidates = []
    for lo in range(1, branch_len + 1):
        for hi in range(lo, branch_len + 1):
            beyond_candidates.append(
                sum(1 << v for v in range(lo, hi + 1)))
    for arrow, shift in (("up", x1), ("down", x2)):
        residual = ((1 << k) - 1) & ~((1 << shift) - 1)
        for extra in beyond_candidates:
            if extra == residual:
                continue
            for rel in ((0, 1), (1, 0)):
                reg = diagram_from_covers((residual, extra), [rel])
                yield reg, arrow
        yield diagram_from_covers((residual,), []), arrow


def test_triple_space_matches_diagrams_on_d4():
    """Every valid triple composes to a distinct diagram and decomposing
    returns the same triple; the composites exhaust the centred connected
    diagrams of the smallest star."""
    g = make_star([1, 1, 1])
    c = g.branch_vertex
    want = set()
    for d in iter_diagrams(g, EnumFilter(True, False)):
        if any((b >> c) & 1 for b in d.blocks):
            want.add(canonical_key(d))

    produced = {}
    for h in range(1, 5):
        towers_per_branch = [
            [Tower(seq) for seq in product((1, 2), repeat=h)
             if is_unimodal(seq)]
            for _ in range(3)
        ]
        for combo in product(*towers_per_branch):
            slot_tuples = list(zip(*(t.lengths for t in combo)))
            if len(set(slot_tuples)) != h:
                continue  # two slots would carry identical blocks
            options = [list(_local_regular_options(t, 1)) for t in combo]
            for regs in product(*options):
                parts = tuple(BranchPart(t, r, a)
                              for t, (r, a) in zip(combo, regs))
                try:
                    out = compose_star(g, StarDecomposition(h, parts))
                except CompositionInvalid:
                    continue
                key = canonical_key(out)
                deco = decompose_star(out, g)
                assert deco == StarDecomposition(h, parts), \
                    "decompose must invert compose"
                assert key not in produced, "composition must be injective"
                produced[key] = True
    assert set(produced) == want
