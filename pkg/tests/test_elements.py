import itertools

import pytest

from cospanlab.elements import category_of_elements
from cospanlab.language import enumerate_hosts
from cospanlab.presheaf import (
    Morphism,
    Presheaf,
    canonical_key,
    check_morphism,
    graph,
    hom_enumerate,
    iso_search,
)


@pytest.fixture(scope="module")
def base():
    # two nodes b, b'; edges beta: b -> b', beta': b -> b', beta'': b' -> b'
    return graph(2, [(0, 1), (0, 1), (1, 1)])


@pytest.fixture(scope="module")
def elements(base):
    return category_of_elements(base)


def test_element_schema_shape(base, elements):
    schema = elements.schema
    # one sort per element of the base: 3 edges + 2 nodes
    assert len(schema.sorts) == 5
    assert set(schema.sorts) == {"e@0", "e@1", "e@2", "n@0", "n@1"}
    # one arrow per (arrow, source element): s and t at each of 3 edges
    assert len(schema.arrows) == 6
    by_name = {a.name: a for a in schema.arrows}
    assert by_name["s@0"].dst == "n@0" and by_name["t@0"].dst == "n@1"
    assert by_name["s@2"].src == "e@2" and by_name["s@2"].dst == "n@1"


def test_fibers_of_a_typed_graph(base, elements):
    # G has nodes a, a', a'' over b, b', b' and one edge over each base edge
    g = graph(3, [(0, 1), (0, 2), (1, 2)])
    typing = check_morphism(
        Morphism(g, base, {"n": (0, 1, 1), "e": (1, 0, 2)})
    )
    q = elements.to_elements(typing)
    assert q.carriers == {"e@0": 1, "e@1": 1, "e@2": 1, "n@0": 1, "n@1": 2}


def test_round_trip_recovers_the_typing(base, elements):
    g = graph(3, [(0, 1), (0, 2), (1, 2)])
    typing = check_morphism(
        Morphism(g, base, {"n": (0, 1, 1), "e": (1, 0, 2)})
    )
    q = elements.to_elements(typing)
    back = elements.from_elements(q)
    assert back.target == base
    iso = iso_search(back.source, typing.source)
    assert iso is not None
    # the iso commutes with the typings
    assert all(
        iso.then(typing).components[s] == back.components[s]
        for s in ("n", "e")
    ) or canonical_key(back.source) == canonical_key(typing.source)


def test_round_trip_all_small_typed_graphs(base, elements):
    from cospanlab.adjunction import graph_interface

    count = 0
    for host in enumerate_hosts(graph_interface(), {"n": 3, "e": 2}):
        for typing in hom_enumerate(host, base):
            q = elements.to_elements(typing)
            back = elements.from_elements(q)
            count += 1
            iso = iso_search(back.source, host)
            assert iso is not None
            q2 = elements.to_elements(back)
            assert q2 == q
    assert count > 20


def test_translation_out_then_in_is_identity_on_element_presheaves(base, elements):
    # starting from the element side: build a presheaf there, translate both ways
    g = graph(2, [(0, 1)])
    typing = check_morphism(Morphism(g, base, {"n": (0, 1), "e": (0,)}))
    q = elements.to_elements(typing)
    assert elements.to_elements(elements.from_elements(q)) == q


def test_to_elements_rejects_wrong_target(base, elements):
    g = graph(1, [])
    other = graph(3, [])
    typing = check_morphism(Morphism(g, other, {"n": (0,), "e": ()}))
    with pytest.raises(ValueError):
        elements.to_elements(typing)
