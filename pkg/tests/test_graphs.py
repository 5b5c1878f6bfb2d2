from staircase_diagrams.graphs import (
    Graph,
    connected_subsets,
    graph_from_json,
    graph_to_json,
    is_connected_subset,
    make_path,
    make_star,
    make_type_d,
    make_type_e,
    mask_to_vertices,
    star_branches,
    vertices_to_mask,
)

import pytest


def degrees(g: Graph) -> list[int]:
    return [bin(a).count("1") for a in g.adj]


def test_path_degenerate():
    g = make_path(1)
    assert g.vertex_count == 1
    assert g.edges() == []


def test_path_three():
    assert make_path(3).edges() == [(0, 1), (1, 2)]


def test_path_degree_sequence():
    assert degrees(make_path(5)) == [1, 2, 2, 2, 1]


def test_path_rejects_zero():
    with pytest.raises(ValueError):
        make_path(0)


def test_star_example():
    g = make_star([6, 4, 2])
    assert g.vertex_count == 13
    assert bin(g.adj[g.branch_vertex]).count("1") == 3


def test_star_d4_shape():
    g = make_star([1, 1, 1])
    assert g.vertex_count == 4
    assert sorted(degrees(g)) == [1, 1, 1, 3]


def test_star_single_vertex():
    g = make_star([0])
    assert g.vertex_count == 1
    assert g.branch_vertex == 0


def test_type_d():
    assert make_type_d(4).vertex_count == 4
    g = make_type_d(5)
    assert g.vertex_count == 5
    assert degrees(make_type_d(8)).count(3) == 1
    with pytest.raises(ValueError):
        make_type_d(3)


def test_type_e():
    g = make_type_e(6)
    assert sorted(degrees(g)) == [1, 1, 1, 2, 2, 3]
    assert make_type_e(8).vertex_count == 8
    assert len(star_branches(make_type_e(10))[0]) == 6
    with pytest.raises(ValueError):
        make_type_e(5)


def test_connected_subsets_path2():
    subs = connected_subsets(make_path(2))
    assert [mask_to_vertices(m) for m in subs] == [(0,), (1,), (0, 1)]


def test_connected_subsets_path3_excludes_gap():
    subs = connected_subsets(make_path(3))
    assert len(subs) == 6
    assert vertices_to_mask([0, 2]) not in subs


def test_connected_subsets_d4():
    assert len(connected_subsets(make_star([1, 1, 1]))) == 11


def test_connected_subsets_interval_count():
    for n in range(1, 13):
        assert len(connected_subsets(make_path(n))) == n * (n + 1) // 2


def test_is_connected_subset():
    g = make_path(3)
    assert not is_connected_subset(g, vertices_to_mask([0, 2]))
    assert is_connected_subset(g, vertices_to_mask([0, 1, 2]))
    assert not is_connected_subset(g, 0)
    star = make_star([1, 1, 1])
    leaves = vertices_to_mask([0, 1])
    assert not is_connected_subset(star, leaves)
    with pytest.raises(ValueError):
        is_connected_subset(g, 1 << 5)


def test_adjacency_symmetric_irreflexive():
    for g in (make_path(6), make_star([3, 2, 1]), make_type_d(7)):
        for s in range(g.vertex_count):
            assert not (g.adj[s] >> s) & 1
            m = g.adj[s]
            while m:
                t = (m & -m).bit_length() - 1
                assert (g.adj[t] >> s) & 1
                m &= m - 1


def test_graph_json_round_trip():
    g = make_star([2, 1, 1])
    back = graph_from_json(graph_to_json(g))
    assert back == g


def test_star_branches_order():
    g = make_star([3, 2, 1])
    branches = star_branches(g)
    assert [len(b) for b in branches] == [3, 2, 1]
    # branches run centre-outwards
    c = g.branch_vertex
    for br in branches:
        assert (g.adj[c] >> br[0]) & 1
