import pytest

from cospanlab.colimits import enumerate_complements, pushout_complement
from cospanlab.language import enumerate_hosts
from cospanlab.presheaf import (
    Morphism,
    canonical_key,
    check_morphism,
    graph,
    identity,
)
from cospanlab.rewriting import (
    GluingViolation,
    Rule,
    apply_rule,
    concat_derivations,
    derivation_search,
    find_matches,
    one_step,
)


def test_drop_loop_basic_step(loops):
    host = graph(3, [(0, 0), (0, 1), (1, 2)])
    rule = loops.rule("drop-loop")
    matches = find_matches(rule, host)
    assert len(matches) == 1
    st = apply_rule(rule, matches[0])
    assert st.result.size("n") == 3
    assert st.result.size("e") == 2
    assert st.verify()


def test_match_count_counts_loops(loops):
    host = graph(2, [(0, 0), (0, 0), (1, 1)])
    assert len(find_matches(loops.rule("drop-loop"), host)) == 3


def test_no_match_without_loop(loops):
    host = graph(3, [(0, 1), (1, 2)])
    assert find_matches(loops.rule("drop-loop"), host) == []


def test_dangling_edge_blocks_deletion(iface):
    # deleting a whole node (empty waist) fails when an edge still needs it
    point = graph(1, [])
    nothing = graph(0, [])
    bang = check_morphism(Morphism(nothing, point, {"n": (), "e": ()}))
    rule = Rule("drop-node", point, nothing, nothing, bang, identity(nothing))
    host = graph(2, [(0, 1)])
    m = check_morphism(Morphism(point, host, {"n": (0,), "e": ()}))
    assert pushout_complement(rule.leg_l, m) is None
    with pytest.raises(GluingViolation):
        apply_rule(rule, m)
    assert find_matches(rule, host) == []


def test_collapse_edge_merges_endpoints(edges):
    host = graph(3, [(0, 1), (1, 2)])
    rule = edges.rule("collapse-edge")
    steps = [apply_rule(rule, m) for m in find_matches(rule, host)]
    assert steps
    for st in steps:
        assert st.result.size("n") == 2
        assert st.result.size("e") == 1
        assert st.verify()


def test_bold_rule_identifies_parallel_edges(edges):
    host = graph(2, [(0, 1), (0, 1)])
    rule = edges.rule("collapse-edge")
    st = apply_rule(rule, find_matches(rule, host)[0])
    # the surviving edge becomes a loop on the merged node
    assert st.result.size("n") == 1 and st.result.size("e") == 1
    assert st.result.apply("s", 0) == st.result.apply("t", 0)


def test_non_monic_leg_complement_enumeration():
    # a non-monic left leg folding two nodes onto one; complements are
    # searched among subobjects of the host and come out unique
    two = graph(2, [])
    point = graph(1, [])
    fold = check_morphism(Morphism(two, point, {"n": (0, 0), "e": ()}))
    rule = Rule("unfold", point, two, two, fold, identity(two), kind="bold")
    host = graph(1, [(0, 0)])
    m = check_morphism(Morphism(point, host, {"n": (0,), "e": ()}))
    with pytest.raises(Exception):
        pushout_complement(rule.leg_l, m)
    comps = enumerate_complements(rule.leg_l, m)
    assert len(comps) == 1
    st = apply_rule(rule, m, comps[0])
    assert st.verify()
    st2 = apply_rule(rule, m)
    assert canonical_key(st2.result) == canonical_key(st.result)


def test_one_step_dedupes_iso_classes(loops):
    host = graph(2, [(0, 0), (1, 1)])
    # two loop matches but a single successor class
    assert len(find_matches(loops.rule("drop-loop"), host)) == 2
    assert len(one_step(loops, host)) == 1


def test_derivation_search_shortest(loops):
    start = graph(1, [(0, 0), (0, 0)])
    goal = graph(1, [])
    d = derivation_search(loops, start, goal, max_depth=5)
    assert d is not None and len(d.steps) == 2
    assert d.verify()


def test_derivation_search_respects_depth(loops):
    start = graph(1, [(0, 0), (0, 0), (0, 0)])
    goal = graph(1, [])
    assert derivation_search(loops, start, goal, max_depth=2) is None
    assert derivation_search(loops, start, goal, max_depth=3) is not None


def test_concat_derivations_additive(loops):
    a = graph(1, [(0, 0)])
    b = graph(2, [(0, 0), (1, 1)])
    point = graph(1, [])
    flat2 = graph(2, [])
    d1 = derivation_search(loops, a, point, 3)
    d2 = derivation_search(loops, b, flat2, 3)
    d = concat_derivations(d1, d2)
    assert len(d.steps) == len(d1.steps) + len(d2.steps)
    assert d.verify()
    assert d.end.size("n") == 3 and d.end.size("e") == 0


@pytest.mark.parametrize("grammar_name", ["loops", "edges"])
def test_complement_uniqueness_small_hosts(grammar_name, request):
    """For every match on a small host, either zero or one complement class."""
    grammar = request.getfixturevalue(grammar_name)
    rule = grammar.rules[0]
    for host in enumerate_hosts(grammar.interface, {"n": 4, "e": 2}):
        for m in find_matches(rule, host, monic_matches=True):
            comps = enumerate_complements(rule.leg_l, m)
            assert len(comps) == 1
            if rule.leg_l.is_mono():
                direct = pushout_complement(rule.leg_l, m)
                assert direct is not None
                assert canonical_key(direct.d) == canonical_key(comps[0].d)


def test_rule_inverse_round_trip(loops):
    rule = loops.rule("drop-loop")
    inv = rule.inverse()
    host = graph(1, [(0, 0)])
    st = apply_rule(rule, find_matches(rule, host)[0])
    back = apply_rule(inv, find_matches(inv, st.result)[0])
    assert canonical_key(back.result) == canonical_key(host)


def test_fine_rule_rejects_non_monic_legs():
    two = graph(2, [])
    point = graph(1, [])
    fold = check_morphism(Morphism(two, point, {"n": (0, 0), "e": ()}))
    with pytest.raises(ValueError):
        Rule("bad", point, two, two, fold, identity(two), kind="fine")
