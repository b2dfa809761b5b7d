from fractions import Fraction

import pytest

from reebforge import (
    PLFunction,
    SimplicialComplex,
    UnknownSimplexError,
    ValueCountMismatchError,
    b1_inequality_check,
    betti,
    check_simplicial,
    connected_components,
    convolve,
    fiber_components_at,
    pl_as_simplicial_map,
    reeb_graph,
    reeb_space,
    staircase_product,
    verify_quotient,
)
from reebforge.fixtures import (
    boundary_delta3,
    circle,
    disk_collapse,
    full_simplex,
    minimal_torus,
    path_complex,
    random_function,
    random_map,
    torus_height,
)

from .oracles import level_component_count


def height_on_square_circle():
    g = PLFunction(circle(4), [Fraction(0), Fraction(1), Fraction(2), Fraction(1)])
    return g


def test_reeb_graph_of_circle_height_is_a_four_cycle():
    graph = reeb_graph(height_on_square_circle())
    assert len(graph.nodes) == 4
    assert len(graph.edges) == 4
    assert graph.betti() == (1, 1)
    assert graph == reeb_graph(height_on_square_circle())  # canonical output


def test_reeb_graph_node_counts_match_level_oracle():
    g = height_on_square_circle()
    levels = sorted({v for v in g.values})
    for i, t in enumerate(levels):
        expected = level_component_count(g.complex, g.values, t)
        got = sum(1 for n in graph_nodes_at(reeb_graph(g), t))
        assert got == expected
    # Edge counts across each gap match component counts at midpoints.
    graph = reeb_graph(g)
    for lo, hi in zip(levels, levels[1:]):
        mid = (lo + hi) / 2
        expected = level_component_count(g.complex, g.values, mid)
        got = sum(
            1
            for a, b in graph.edges
            if graph.nodes[a].value == lo and graph.nodes[b].value == hi
        )
        assert got == expected


def graph_nodes_at(graph, value):
    return [n for n in graph.nodes if n.value == value]


def test_reeb_graph_of_constant_function():
    tri = full_simplex(2)
    graph = reeb_graph(PLFunction(tri, [Fraction(7)] * 3))
    assert len(graph.nodes) == 1
    assert len(graph.edges) == 0


def test_reeb_graph_vertex_tagging():
    g = height_on_square_circle()
    graph = reeb_graph(g)
    for v, node in graph.vertex_to_node.items():
        assert graph.nodes[node].value == g.values[v]


def test_value_count_mismatch():
    with pytest.raises(ValueCountMismatchError):
        PLFunction(circle(3), [Fraction(0)])


def test_reeb_graph_uses_only_two_skeleton():
    # Adding a 3-cell changes nothing the sweep sees.
    solid = full_simplex(3)
    skel = solid.skeleton(2)
    values = [Fraction(v) for v in (0, 1, 2, 3)]
    a = reeb_graph(PLFunction(solid, values))
    b = reeb_graph(PLFunction(skel, values))
    assert a == b


def test_torus_height_reeb_graph_has_one_loop():
    height, _ = torus_height()
    graph = reeb_graph(height)
    assert graph.betti() == (1, 1)
    # Oracle: component counts at every level and gap midpoint.
    levels = sorted({v for v in height.values})
    for t in levels:
        expected = level_component_count(height.complex, height.values, t)
        assert len(graph_nodes_at(graph, t)) == expected
    for lo, hi in zip(levels, levels[1:]):
        expected = level_component_count(height.complex, height.values, (lo + hi) / 2)
        got = sum(
            1
            for a, b in graph.edges
            if graph.nodes[a].value == lo and graph.nodes[b].value == hi
        )
        assert got == expected


def test_seven_vertex_torus_height_reeb_graph():
    torus = minimal_torus()
    g = PLFunction(torus, [Fraction(v) for v in range(7)])
    graph = reeb_graph(g)
    assert graph.betti() == (1, 1)
    levels = sorted(g.values)
    for lo, hi in zip(levels, levels[1:]):
        mid = (lo + hi) / 2
        expected = level_component_count(torus, g.values, mid)
        got = sum(
            1
            for a, b in graph.edges
            if graph.nodes[a].value == lo and graph.nodes[b].value == hi
        )
        assert got == expected


def test_reeb_space_of_identity_is_the_domain():
    for k in (circle(3), boundary_delta3()):
        ident = check_simplicial(k, k, list(range(k.num_vertices)))
        space = reeb_space(ident)
        assert len(space.strata) == len(k.simplex_set)
        assert betti(space.realization) == betti(k)


def test_disk_collapse_one_gives_an_interval():
    space = reeb_space(disk_collapse(1))
    assert betti(space.realization) == (1, 0)
    assert len(space.strata) == 7


def test_disk_collapse_two_gives_a_sphere():
    f = disk_collapse(2)
    assert betti(f.domain) == (1,)
    assert betti(reeb_space(f).realization) == (1, 0, 1)


def test_constant_map_on_disconnected_domain():
    two_edges = SimplicialComplex(4, [(0,), (1,), (2,), (3,), (0, 1), (2, 3)])
    point = SimplicialComplex(1, [(0,)])
    const = check_simplicial(two_edges, point, [0, 0, 0, 0])
    space = reeb_space(const)
    assert len(space.strata) == 2
    assert verify_quotient(const)["ok"]


def test_fiber_components_disk1():
    f = disk_collapse(1)
    # Over the doubled vertex the fiber has two pieces; over an edge, one.
    assert len(fiber_components_at(f, (0,))) == 2
    assert len(fiber_components_at(f, (0, 1))) == 1
    assert len(fiber_components_at(f, (1,))) == 1


def test_fiber_components_constant_map():
    k = minimal_torus()
    point = SimplicialComplex(1, [(0,)])
    const = check_simplicial(k, point, [0] * 7)
    assert len(fiber_components_at(const, (0,))) == 1


def test_fiber_components_unknown_simplex():
    with pytest.raises(UnknownSimplexError):
        fiber_components_at(disk_collapse(1), (0, 1, 2))


def test_fiber_components_match_full_subcomplex_over_vertices():
    # Dual route: strata over a codomain vertex w against the components of
    # the full subcomplex on the preimage vertices of w.
    for f in (disk_collapse(1), disk_collapse(2), random_map(3), random_map(8)):
        for w in range(f.codomain.num_vertices):
            direct = fiber_components_at(f, (w,)) if (w,) in f.codomain.simplex_set else []
            preimage = [v for v in range(f.domain.num_vertices) if f.vertex_images[v] == w]
            if not preimage:
                assert direct == [] or all(
                    all(any(f.vertex_images[u] == w for u in s) for s in cls) for cls in direct
                )
                continue
            sub, old_to_new = f.domain.restrict_to_vertices(preimage)
            expected = len(connected_components(sub, sub.simplices)) if sub.simplex_set else 0
            assert len(direct) == expected


def test_verify_quotient_identity():
    k = boundary_delta3()
    ident = check_simplicial(k, k, list(range(4)))
    assert verify_quotient(ident)["ok"]


def test_verify_quotient_disk():
    report = verify_quotient(disk_collapse(2))
    assert report == {
        "commutes": True,
        "fibers_connected": True,
        "vertex_surjective": True,
        "ok": True,
    }


def test_b1_inequality_examples():
    # Identity: equality.
    k = minimal_torus()
    ident = check_simplicial(k, k, list(range(7)))
    report = b1_inequality_check(ident)
    assert report["ok"]
    row = report["components"][0]
    assert row["b1_domain"] == row["b1_reeb"] == 2

    # Disk collapse: 0 <= 0.
    report = b1_inequality_check(disk_collapse(2))
    assert report["components"][0] == {
        "vertices": 13,
        "b1_domain": 0,
        "b1_reeb": 0,
        "holds": True,
    }

    # Torus height: 1 <= 2.
    _, sliced = torus_height()
    report = b1_inequality_check(sliced)
    assert report["ok"]
    assert report["components"][0]["b1_domain"] == 2
    assert report["components"][0]["b1_reeb"] == 1


def test_reeb_space_idempotence():
    for f in (disk_collapse(1), disk_collapse(2), random_map(5)):
        space = reeb_space(f)
        again = reeb_space(space.quotient_map)
        assert betti(again.realization) == betti(space.realization)


def test_pl_conversion_matches_sweep_on_named_functions():
    cases = [
        height_on_square_circle(),
        PLFunction(path_complex(4), [Fraction(0), Fraction(3), Fraction(1), Fraction(2)]),
        torus_height()[0],
    ]
    for g in cases:
        graph_betti = reeb_graph(g).betti()
        space_betti = betti(reeb_space(pl_as_simplicial_map(g).map).realization)
        assert graph_betti == space_betti


def test_pl_conversion_handles_repeated_values():
    # Two vertices share a value; the slicing must still be simplicial.
    g = PLFunction(circle(4), [Fraction(0), Fraction(1), Fraction(1), Fraction(0)])
    model = pl_as_simplicial_map(g)
    assert betti(reeb_space(model.map).realization) == reeb_graph(g).betti()


def test_pl_conversion_codomain_is_a_path():
    model = pl_as_simplicial_map(height_on_square_circle())
    kinds = [lvl[0] for lvl in model.codomain_levels]
    assert kinds == ["value", "gap", "value", "gap", "value"]


def test_kunneth_product_law_small():
    g = height_on_square_circle()
    f = pl_as_simplicial_map(g).map
    factor = betti(reeb_space(f).realization)
    prod = staircase_product(f.domain, f.domain, f, f).product_map
    assert betti(reeb_space(prod).realization) == convolve(factor, factor)


def test_quotient_map_carrier_commutation():
    f = disk_collapse(2)
    space = reeb_space(f)
    q = space.quotient_map
    for i, sigma in enumerate(space.sd_carrier):
        assert space.codomain_projection[q.vertex_images[i]] == f.image_simplex(sigma)
