import os

import pytest

from staircase_diagrams.diagram import canonical_key, diagram_from_covers, validate
from staircase_diagrams.graphs import make_path, make_star, make_type_e, vertices_to_mask as vm
from staircase_diagrams.oracle import (
    DyckPath,
    EnumFilter,
    LimitExceeded,
    cont,
    continuation_count,
    count_diagrams,
    diagram_to_dyck,
    dyck_paths,
    dyck_to_diagram,
    enumerate_towers,
    iter_diagrams,
    representative_shape,
    vertex_limit,
)
from staircase_diagrams.series import ballot_count, load_continuation_rows
from staircase_diagrams.towers import Tower, sight_set


def test_path1_counts():
    assert count_diagrams(make_path(1)) == 2


def test_path2_exact_diagram_set():
    diagrams = list(iter_diagrams(make_path(2)))
    assert len(diagrams) == 6
    keys = {canonical_key(d) for d in diagrams}
    want = [
        diagram_from_covers((), ()),
        diagram_from_covers((vm([0]),), ()),
        diagram_from_covers((vm([1]),), ()),
        diagram_from_covers((vm([0, 1]),), ()),
        diagram_from_covers((vm([0]), vm([1])), [(0, 1)]),
        diagram_from_covers((vm([0]), vm([1])), [(1, 0)]),
    ]
    assert keys == {canonical_key(d) for d in want}


def test_path2_connected_full():
    assert count_diagrams(make_path(2), EnumFilter(True, True)) == 3


def test_type_a_calibration():
    want = [2, 6, 22, 88, 366, 1552]
    got = [count_diagrams(make_path(n)) for n in range(1, 7)]
    assert got == want


def test_empty_diagram_only_with_both_filters_false():
    g = make_path(2)
    assert any(len(d) == 0 for d in iter_diagrams(g))
    assert not any(len(d) == 0 for d in iter_diagrams(g, EnumFilter(True, False)))
    assert not any(len(d) == 0 for d in iter_diagrams(g, EnumFilter(False, True)))


def test_enumeration_results_are_valid_and_distinct():
    g = make_star([2, 1, 1])
    diagrams = list(iter_diagrams(g))
    keys = {canonical_key(d) for d in diagrams}
    assert len(keys) == len(diagrams)
    for d in diagrams:
        assert validate(g, d) is None


def test_automorphism_invariance():
    # permuting equal-length branches leaves every count unchanged
    for f in (EnumFilter(), EnumFilter(True, False), EnumFilter(True, True)):
        a = count_diagrams(make_star([1, 2, 2]), f)
        b = count_diagrams(make_star([2, 2, 1]), f)
        c = count_diagrams(make_star([2, 1, 2]), f)
        assert a == b == c


def test_vertex_limit_guard():
    with pytest.raises(LimitExceeded):
        count_diagrams(make_path(11))


def test_vertex_limit_env(monkeypatch):
    monkeypatch.setenv("STAIRCASE_MAX_VERTICES", "4")
    assert vertex_limit() == 4
    with pytest.raises(LimitExceeded):
        count_diagrams(make_path(5))


def test_towers_branch_len_zero():
    towers = enumerate_towers(0)
    assert len(towers) == 2  # empty tower and the centre block alone


def test_towers_branch_len_one():
    towers = enumerate_towers(1, max_blocks=2)
    keys = {canonical_key(t) for t in towers}
    c, cs = vm([0]), vm([0, 1])
    want = [
        diagram_from_covers((), ()),
        diagram_from_covers((c,), ()),
        diagram_from_covers((cs,), ()),
        diagram_from_covers((c, cs), [(0, 1)]),
        diagram_from_covers((c, cs), [(1, 0)]),
    ]
    assert keys == {canonical_key(t) for t in want}


def test_towers_unimodal():
    for t in enumerate_towers(4, max_blocks=4):
        chain = sorted(range(len(t.blocks)),
                       key=lambda i: bin(t.below[i]).count("1"))
        Tower(tuple(bin(t.blocks[i]).count("1") for i in chain))  # raises if not


def test_dyck_counts_small():
    assert len(dyck_paths(1, 1)) == 1
    assert len(dyck_paths(3, 1)) == 2
    assert len(dyck_paths(4, 2)) == 5


def test_dyck_matches_ballot():
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert len(dyck_paths(n, k)) == ballot_count(n, k)


def test_dyck_single_block():
    p = DyckPath((4, 4))
    d = dyck_to_diagram(p)
    assert d.blocks == (vm([0, 1, 2, 3]),)


def test_dyck_two_vertex_path():
    paths = dyck_paths(2, 1)
    assert len(paths) == 1
    d = dyck_to_diagram(paths[0])
    assert d.blocks == (vm([0]), vm([1]))
    assert d.less(0, 1)


def test_dyck_round_trip():
    for n in range(1, 9):
        for k in range(1, n + 1):
            for p in dyck_paths(n, k):
                assert diagram_to_dyck(dyck_to_diagram(p)) == p


def test_dyck_images_valid_increasing():
    for p in dyck_paths(6, 2):
        d = dyck_to_diagram(p)
        assert validate(make_path(6), d) is None
        order = sorted(range(len(d.blocks)),
                       key=lambda i: bin(d.below[i]).count("1"))
        for a, b in zip(order, order[1:]):
            assert d.less(a, b)


def test_diagram_to_dyck_rejects_non_increasing():
    d = diagram_from_covers((vm([0]), vm([1])), [(1, 0)])
    with pytest.raises(ValueError):
        diagram_to_dyck(d)


def test_continuation_representatives_match_fixture():
    for row in load_continuation_rows():
        shape = representative_shape(row["family"])
        assert continuation_count(shape) == row["count"]


def test_continuation_against_paper_values():
    assert cont("x") == 33
    assert cont("ud") == 10
    assert cont("uxd") == 12


def test_continuation_representative_independence():
    for family in ("k", "ak", "kk"):
        a = continuation_count(representative_shape(family))
        b = continuation_count(representative_shape(family, scale=1))
        assert a == b


def test_continuation_mirror_invariance():
    assert continuation_count((1, 2)) == continuation_count((2, 1))
    assert continuation_count((1, 2, 3)) == continuation_count((3, 2, 1))


def test_sight_set_of_representatives():
    for row in load_continuation_rows():
        shape = representative_shape(row["family"])
        assert sight_set(shape) == row["sight"]
