"""Colimit machinery: pushouts, pullbacks, complements, subobjects."""

import pytest

from cospanlab import (
    Morphism,
    check_morphism,
    coproduct,
    enumerate_complements,
    graph,
    hom_enumerate,
    identity,
    iso_search,
    pullback,
    pushout,
    pushout_complement,
    sub_enumerate,
    sub_join,
    sub_meet,
)
from cospanlab.colimits import full_subobject, initial
from cospanlab.laws import pushout_oracle_suite


def hom(x, y, nodes, edges=()):
    return check_morphism(Morphism(x, y, {"n": tuple(nodes), "e": tuple(edges)}))


def test_coproduct_sizes_add():
    a, _, _ = coproduct(graph(3, [(0, 1), (1, 2), (2, 0)]), graph(2, [(0, 1)]))
    assert a.carriers == {"n": 5, "e": 4}


def test_pushout_over_initial_is_coproduct():
    x, y = graph(2, [(0, 1)]), graph(1, [(0, 0)])
    z = initial(x)
    po = pushout(hom(z, x, []), hom(z, y, []))
    assert po.apex.carriers == {"n": 3, "e": 2}


def test_pushout_glues_both_endpoints_to_parallel_edges():
    ends = graph(2, [])
    edge = graph(2, [(0, 1)])
    f = hom(ends, edge, (0, 1))
    po = pushout(f, f)
    assert po.apex.carriers == {"n": 2, "e": 2}
    assert po.apex.action["s"] == (0, 0) and po.apex.action["t"] == (1, 1)


def test_pullback_of_identities():
    x = graph(2, [(0, 1)])
    pb = pullback(identity(x), identity(x))
    assert iso_search(pb.apex, x) is not None


def test_kernel_pair_of_collapse():
    two = graph(2, [])
    one = graph(1, [])
    c = hom(two, one, (0, 0))
    pb = pullback(c, c)
    assert pb.apex.size("n") == 4


def test_pullback_of_subobject_inclusions_is_intersection():
    x = graph(3, [(0, 1), (1, 2)])
    subs = {s.key: s for s in sub_enumerate(x)}
    s1 = [s for s in subs.values() if s.members["e"] == (0,)][0]
    s2 = [s for s in subs.values() if s.members["e"] == (1,)][0]
    pb = pullback(s1.inclusion(), s2.inclusion())
    meet = sub_meet(s1, s2)
    assert iso_search(pb.apex, meet.domain()) is not None


def test_pushout_complement_loop_example():
    point = graph(1, [])
    looped = graph(1, [(0, 0)])
    host = graph(3, [(0, 2), (1, 2), (2, 2)])
    leg = hom(point, looped, (0,))
    match = hom(looped, host, (2,), (2,))
    comp = pushout_complement(leg, match)
    assert comp is not None
    assert comp.d.carriers == {"n": 3, "e": 2}


def test_pushout_complement_identity_leg_gives_host():
    looped = graph(1, [(0, 0)])
    host = graph(2, [(0, 0), (0, 1)])
    comp = pushout_complement(identity(looped), hom(looped, host, (0,), (0,)))
    assert comp is not None
    assert iso_search(comp.d, host) is not None


def test_gluing_condition_dangling_edge():
    # deleting a node that another edge still touches has no complement
    point = graph(1, [])
    host = graph(2, [(0, 1)])
    empty = initial(point)
    comp = pushout_complement(hom(empty, point, []), hom(point, host, (0,)))
    assert comp is None
    assert enumerate_complements(hom(empty, point, []), hom(point, host, (0,))) == []


def test_subobjects_of_an_edge():
    assert len(sub_enumerate(graph(2, [(0, 1)]))) == 5


def test_join_of_endpoints_is_discrete_pair():
    x = graph(2, [(0, 1)])
    subs = sub_enumerate(x)
    s_only = [s for s in subs if s.members == {"n": (0,), "e": ()}][0]
    t_only = [s for s in subs if s.members == {"n": (1,), "e": ()}][0]
    j = sub_join(s_only, t_only)
    assert j.members == {"n": (0, 1), "e": ()}


def test_subobject_lattice_laws():
    x = graph(2, [(0, 1), (1, 0)])
    subs = sub_enumerate(x)
    top = full_subobject(x)
    for s1 in subs:
        assert sub_meet(s1, top) == s1
        assert sub_join(s1, s1) == s1
        for s2 in subs:
            assert sub_meet(s1, s2) == sub_meet(s2, s1)
            assert sub_join(s1, sub_meet(s1, s2)) == s1


def test_factorize_rejects_non_cocone():
    x = graph(1, [])
    two = graph(2, [])
    po = pushout(hom(x, two, (0,)), hom(x, two, (1,)))
    with pytest.raises(Exception):
        po.factorize(hom(two, x, (0, 0)), hom(two, graph(2, []), (0, 1)))


def test_universal_property_oracle_spot_check():
    report = pushout_oracle_suite(n=40, seed=11)
    assert report["ok"], report["failures"]
