from staircase_diagrams.diagram import (
    AxiomViolation,
    Diagram,
    canonical_key,
    canonicalize,
    chain_at,
    critical_points,
    diagram_from_covers,
    diagram_from_json,
    diagram_to_json,
    empty_diagram,
    naive_validate,
    predicates,
    restrict,
    support,
    validate,
)
from staircase_diagrams.graphs import make_path, make_star, vertices_to_mask as vm
from staircase_diagrams.oracle import EnumFilter, iter_diagrams

import pytest


def D(blocks, covers=()):
    return diagram_from_covers(tuple(vm(b) for b in blocks), covers)


def test_valid_two_singletons():
    g = make_path(2)
    assert validate(g, D([[0], [1]], [(0, 1)])) is None


def test_axiom4_violation_nested():
    g = make_path(2)
    bad = validate(g, D([[0], [0, 1]], [(0, 1)]))
    assert isinstance(bad, AxiomViolation)
    assert bad.axiom == 4
    assert bad.witness[0] == 0  # the {0} block has no max witness


def test_axiom1_disconnected_block():
    g = make_path(3)
    bad = validate(g, D([[0, 2]]))
    assert bad.axiom == 1


def test_axiom2_incomparable_over_vertex():
    g = make_path(2)
    bad = validate(g, D([[0], [0, 1]]))  # both contain 0, incomparable
    assert bad.axiom == 2


def test_axiom3_chain_required_across_edge():
    g = make_path(2)
    bad = validate(g, D([[0], [1]]))  # incomparable over adjacent vertices
    assert bad.axiom == 3


def test_axiom3_saturation():
    # {0} < {1,2} < {0,1}: the middle block interleaves the chain over 0/1
    g = make_path(3)
    bad = validate(g, D([[0], [1, 2], [0, 1]], [(0, 1), (1, 2)]))
    assert bad is not None and bad.axiom == 3


def test_validate_levels():
    g = make_path(2)
    d = D([[0], [0, 1]], [(0, 1)])
    assert validate(g, d, "axioms123") is None
    assert validate(g, d, "full").axiom == 4
    with pytest.raises(ValueError):
        validate(g, d, "bogus")


def test_support():
    assert support(empty_diagram()) == 0
    assert support(D([[0], [1]])) == vm([0, 1])
    assert support(D([[0, 1], [1, 2]], [(0, 1)])) == vm([0, 1, 2])


def test_predicates():
    g3 = make_path(3)
    assert predicates(g3, D([[0], [2]])) == {
        "connected": False, "fully_supported": False}
    g2 = make_path(2)
    assert predicates(g2, D([[0, 1]])) == {
        "connected": True, "fully_supported": True}
    assert predicates(g3, D([[0, 1]])) == {
        "connected": True, "fully_supported": False}


def test_chain_at():
    d = D([[0, 1]])
    assert chain_at(d, 0) == [0]
    d2 = D([[0], [0, 1]], [(1, 0)])  # {0,1} below {0}
    assert chain_at(d2, 0) == [1, 0]
    d3 = D([[0], [1]], [(0, 1)])
    assert chain_at(d3, 1) == [1]


def test_restrict_merges_duplicates():
    d = D([[0, 1], [1, 2]], [(0, 1)])
    r = restrict(d, vm([1]))
    assert r.blocks == (vm([1]),)


def test_restrict_identity():
    d = D([[0], [1]], [(0, 1)])
    r = restrict(d, support(d))
    assert canonical_key(r) == canonical_key(d)


def test_restrict_empty():
    d = D([[0], [1]], [(0, 1)])
    assert len(restrict(d, 0)) == 0


def test_critical_points():
    assert critical_points(D([[0, 1]])) == vm([0, 1])
    assert critical_points(D([[0, 1], [1, 2]], [(0, 1)])) == vm([0, 2])


def test_critical_points_ten_vertex():
    # rising to a peak block, descending, rising again: critical points at
    # the 1st, 5th, 8th and 10th vertices
    blocks = [[0, 1], [1, 2], [2, 3], [3, 4, 5], [5, 6], [6, 7, 8], [8, 9]]
    covers = [(0, 1), (1, 2), (2, 3), (4, 3), (5, 4), (5, 6)]
    d = D(blocks, covers)
    g = make_path(10)
    assert validate(g, d) is None
    assert critical_points(d) == vm([0, 4, 7, 9])


def test_canonical_key_permutation_invariant():
    a = diagram_from_covers((vm([0]), vm([1])), [(0, 1)])
    b = diagram_from_covers((vm([1]), vm([0])), [(1, 0)])
    assert canonical_key(a) == canonical_key(b)


def test_canonical_key_orders_differ():
    up = D([[0], [1]], [(0, 1)])
    down = D([[0], [1]], [(1, 0)])
    none = D([[0], [1]])
    keys = {canonical_key(up), canonical_key(down), canonical_key(none)}
    assert len(keys) == 3


def test_canonicalize_preserves_relation():
    d = diagram_from_covers((vm([1]), vm([0])), [(1, 0)])
    c = canonicalize(d)
    assert c.blocks == (vm([0]), vm([1]))
    assert c.less(0, 1)


def test_distinct_blocks_required():
    with pytest.raises(ValueError):
        Diagram((vm([0]), vm([0])), (0, 0))


def test_cycle_rejected():
    with pytest.raises(ValueError):
        diagram_from_covers((vm([0]), vm([1])), [(0, 1), (1, 0)])


def test_json_round_trip():
    d = D([[0, 1], [1, 2], [3]], [(0, 1)])
    back = diagram_from_json(diagram_to_json(d))
    assert canonical_key(back) == canonical_key(d)
    assert diagram_to_json(back) == diagram_to_json(d)


def test_validators_agree_on_enumerated_diagrams():
    for g in (make_path(4), make_star([1, 1, 1])):
        for d in iter_diagrams(g):
            assert validate(g, d) is None
            assert naive_validate(g, d) is None


def test_validators_agree_on_invalid_inputs():
    g = make_path(3)
    cases = [
        D([[0, 2]]),
        D([[0], [1]]),
        D([[0], [0, 1]], [(0, 1)]),
        D([[0], [1, 2], [0, 1]], [(0, 1), (1, 2)]),
        D([[0, 1], [1, 2]]),
    ]
    for d in cases:
        a = validate(g, d)
        b = naive_validate(g, d)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.axiom == b.axiom
