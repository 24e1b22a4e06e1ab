"""Tests for the labeled-graph substrate.

The subgraph-isomorphism search is checked against an independent
brute-force oracle (exhaustive injective vertex maps) on small graphs,
and a handful of counts produced by that oracle are frozen below.
"""

import itertools

import pytest

from planarseq.graph import (
    DuplicateLabelError,
    LoopEdgeError,
    ParallelEdgeError,
    UndeclaredEndpointError,
    UnknownLabelError,
    VertexNotIsolatedError,
    a_fixing_subgraph_isomorphisms,
    build_graph,
    delete_parts,
    is_hybrid_subgraph,
    is_two_connected,
)


# -- oracle ------------------------------------------------------------


def oracle_isomorphisms(h, g, a=frozenset(), g_strict=frozenset()):
    """All A-fixing subgraph isomorphisms by exhaustive injective maps.

    Returns a set of canonical (vertex_map, edge_map) forms.  Only
    usable on small graphs; this is the independent check the search
    implementation is measured against.
    """
    a = frozenset(a)
    strict_g = frozenset(g_strict) & set(g.edge_labels())
    hverts = sorted(h.vertices)
    out = set()
    for image in itertools.permutations(sorted(g.vertices), len(hverts)):
        vmap = dict(zip(hverts, image))
        emap = {}
        ok = True
        for lab, u, v in h.edge_items():
            glab = g.edge_between(vmap[u], vmap[v])
            if glab is None:
                ok = False
                break
            if lab in a and glab != lab:
                ok = False
                break
            if glab in strict_g and lab != glab:
                ok = False
                break
            emap[lab] = glab
        if ok:
            out.add(
                (tuple(sorted(vmap.items())), tuple(sorted(emap.items())))
            )
    return out


def canonical(maps):
    return {
        (tuple(sorted(m.vertex_map.items())), tuple(sorted(m.edge_map.items())))
        for m in maps
    }


# -- fixtures ----------------------------------------------------------


def triangle():
    return build_graph(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")])


def k4():
    edges = [("x", "a", "b"), ("e2", "a", "c"), ("e3", "a", "d"),
             ("e4", "b", "c"), ("e5", "b", "d"), ("e6", "c", "d")]
    return build_graph(["a", "b", "c", "d"], edges)


def path3():
    return build_graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")])


# -- construction ------------------------------------------------------


def test_build_triangle():
    g = triangle()
    assert g.num_vertices == 3
    assert g.num_edges == 3
    assert g.edge_between("a", "b") == "x"
    assert g.neighbors("b") == ("a", "c")


def test_build_isolated_vertex():
    g = build_graph(["a"], [])
    assert g.vertex_list == ("a",)
    assert g.num_edges == 0


def test_duplicate_vertex_label_rejected():
    with pytest.raises(DuplicateLabelError):
        build_graph(["a", "a"], [])


def test_duplicate_edge_label_rejected():
    with pytest.raises(DuplicateLabelError):
        build_graph(["a", "b", "c"], [("e", "a", "b"), ("e", "b", "c")])


def test_loop_rejected():
    with pytest.raises(LoopEdgeError):
        build_graph(["a"], [("e", "a", "a")])


def test_parallel_edge_rejected():
    with pytest.raises(ParallelEdgeError):
        build_graph(["a", "b"], [("e1", "a", "b"), ("e2", "b", "a")])


def test_undeclared_endpoint_rejected():
    with pytest.raises(UndeclaredEndpointError):
        build_graph(["a"], [("e", "a", "b")])


def test_value_semantics():
    assert triangle() == triangle()
    assert hash(triangle()) == hash(triangle())
    assert triangle() != k4()


# -- connectivity ------------------------------------------------------


def test_k4_is_two_connected():
    assert is_two_connected(k4())


def test_path3_is_not_two_connected():
    assert not is_two_connected(path3())


def test_triangle_is_two_connected():
    assert is_two_connected(triangle())


def test_small_graphs_are_not_two_connected():
    assert not is_two_connected(build_graph(["a"], []))
    assert not is_two_connected(build_graph(["a", "b"], [("e", "a", "b")]))


def test_disconnected_graph_is_not_two_connected():
    g = build_graph(["a", "b", "c", "d"], [("e1", "a", "b"), ("e2", "c", "d")])
    assert not is_two_connected(g)


def test_bowtie_cutvertex_detected():
    # Two triangles sharing vertex c.
    g = build_graph(
        ["a", "b", "c", "d", "e"],
        [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a"),
         ("e4", "c", "d"), ("e5", "d", "e"), ("e6", "e", "c")],
    )
    assert not is_two_connected(g)


def test_cycle_is_two_connected():
    g = build_graph(
        ["a", "b", "c", "d"],
        [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"), ("e4", "d", "a")],
    )
    assert is_two_connected(g)


# -- deletion ----------------------------------------------------------


def test_delete_edge_leaves_path():
    g = delete_parts(triangle(), edges={"x"})
    assert g.edge_labels() == ("y", "z")
    assert g.vertices == triangle().vertices


def test_delete_nothing_is_identity():
    g = triangle()
    assert delete_parts(g, (), ()) == g


def test_delete_isolated_vertex():
    g = build_graph(["a", "b", "c", "d"],
                    [("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")])
    h = delete_parts(g, isolated_vertices={"d"})
    assert h == triangle()


def test_delete_vertex_with_its_edges():
    g = triangle()
    h = delete_parts(g, edges={"x", "z"}, isolated_vertices={"a"})
    assert h.vertex_list == ("b", "c")
    assert h.edge_labels() == ("y",)


def test_delete_non_isolated_vertex_rejected():
    with pytest.raises(VertexNotIsolatedError):
        delete_parts(triangle(), edges={"x"}, isolated_vertices={"a"})


def test_delete_unknown_labels_rejected():
    with pytest.raises(UnknownLabelError):
        delete_parts(triangle(), edges={"nope"})
    with pytest.raises(UnknownLabelError):
        delete_parts(triangle(), isolated_vertices={"nope"})


# -- subgraph isomorphism ----------------------------------------------


def test_triangle_into_k4_unpinned():
    maps = list(a_fixing_subgraph_isomorphisms(triangle(), k4(), frozenset()))
    # frozen from the oracle: one map per injective vertex triple
    assert len(maps) == 24
    assert canonical(maps) == oracle_isomorphisms(triangle(), k4())


def test_triangle_into_k4_pinned_on_shared_edge():
    maps = list(a_fixing_subgraph_isomorphisms(triangle(), k4(), {"x"}))
    # frozen from the oracle: 2 orientations of x times 2 apex choices
    assert len(maps) == 4
    assert canonical(maps) == oracle_isomorphisms(triangle(), k4(), a={"x"})
    for m in maps:
        assert m.edge_map["x"] == "x"


def test_full_pinning_on_self_gives_identity():
    g = triangle()
    maps = list(a_fixing_subgraph_isomorphisms(g, g, g.edge_label_set()))
    assert len(maps) == 1
    assert maps[0].vertex_map == {"a": "a", "b": "b", "c": "c"}
    assert maps[0].edge_map == {"x": "x", "y": "y", "z": "z"}


def test_hybrid_subgraph_reflexive_when_all_strict():
    for g in (triangle(), k4(), path3()):
        assert is_hybrid_subgraph(g, g, g.edge_label_set())


def test_k4_not_subgraph_of_triangle():
    assert not is_hybrid_subgraph(k4(), triangle(), frozenset())


def test_missing_strict_label_rejected():
    with pytest.raises(UnknownLabelError):
        list(a_fixing_subgraph_isomorphisms(triangle(), k4(), {"nope"}))
    # label in h but absent from g
    h = build_graph(["a", "b"], [("only_h", "a", "b")])
    with pytest.raises(UnknownLabelError):
        list(a_fixing_subgraph_isomorphisms(h, k4(), {"only_h"}))


def test_host_strict_edge_cannot_be_renamed():
    h = build_graph(["a", "b"], [("y", "a", "b")])
    g = build_graph(["c", "d"], [("x", "c", "d")])
    assert len(list(a_fixing_subgraph_isomorphisms(h, g, ()))) == 2
    assert list(a_fixing_subgraph_isomorphisms(h, g, (), g_strict={"x"})) == []


def test_host_strict_edge_accepts_identical_label():
    h = build_graph(["a", "b"], [("x", "a", "b")])
    g = build_graph(["c", "d"], [("x", "c", "d")])
    maps = list(a_fixing_subgraph_isomorphisms(h, g, (), g_strict={"x"}))
    assert len(maps) == 2
    assert canonical(maps) == oracle_isomorphisms(h, g, g_strict={"x"})


def test_oracle_agreement_on_corpus():
    p4 = build_graph(["a", "b", "c", "d"],
                     [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d")])
    c5 = build_graph(
        ["a", "b", "c", "d", "e"],
        [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"),
         ("e4", "d", "e"), ("e5", "e", "a")],
    )
    k4_minus = delete_parts(k4(), edges={"e6"})
    cases = [
        (triangle(), k4()),
        (path3(), k4()),
        (path3(), c5),
        (p4, k4()),
        (triangle(), k4_minus),
        (p4, c5),
        (c5, c5),
    ]
    for h, g in cases:
        got = canonical(a_fixing_subgraph_isomorphisms(h, g, frozenset()))
        assert got == oracle_isomorphisms(h, g)


def test_shrinking_a_never_loses_witnesses():
    h = triangle()
    g = k4()
    full = canonical(a_fixing_subgraph_isomorphisms(h, g, {"x"}))
    loose = canonical(a_fixing_subgraph_isomorphisms(h, g, frozenset()))
    assert full <= loose


def test_yield_order_is_deterministic():
    first = list(a_fixing_subgraph_isomorphisms(triangle(), k4(), {"x"}))
    second = list(a_fixing_subgraph_isomorphisms(triangle(), k4(), {"x"}))
    assert first == second


def test_isolated_pattern_vertices_map_anywhere():
    h = build_graph(["a", "b"], [])
    g = triangle()
    maps = list(a_fixing_subgraph_isomorphisms(h, g, frozenset()))
    assert len(maps) == 6
