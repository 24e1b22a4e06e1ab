"""Labeled simple graphs and strict-edge-aware subgraph isomorphism.

Vertices and edges both carry string labels, and edge identity matters:
a graph H sits inside a graph G "up to relabeling outside A" when some
injective map of H onto a subgraph of G keeps every edge of the strict
set A under its own name.  The search below pins strict edges before
backtracking, which collapses the space for the mostly-strict gadget
graphs this package builds.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads.  Sets
iterate in label-sorted order throughout so that runs are reproducible.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Iterator, NamedTuple, Optional, Tuple


class GraphError(ValueError):
    """Base class for graph construction and edit failures."""


class DuplicateLabelError(GraphError):
    """A vertex or edge label was declared twice."""


class LoopEdgeError(GraphError):
    """An edge had equal endpoints."""


class ParallelEdgeError(GraphError):
    """Two edges were declared on the same vertex pair."""


class UndeclaredEndpointError(GraphError):
    """An edge endpoint is not a declared vertex."""


class UnknownLabelError(GraphError):
    """An operation referenced a label the graph does not contain."""


class VertexNotIsolatedError(GraphError):
    """A vertex deletion was requested while incident edges survive."""


def _pair(u: str, v: str) -> Tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class LabeledGraph:
    """Immutable simple graph with labeled vertices and labeled edges.

    Construct instances through :func:`build_graph`, which validates
    the invariants (unique labels, no loops, no parallel edges,
    declared endpoints).  Instances compare and hash by content.
    """

    __slots__ = ("_vertices", "_edges", "_incident", "_pair_to_edge", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Dict[str, Tuple[str, str]]):
        # Trusted constructor: build_graph has already validated.
        self._vertices: FrozenSet[str] = frozenset(vertices)
        self._edges: Dict[str, Tuple[str, str]] = {
            lab: edges[lab] for lab in sorted(edges)
        }
        incident: Dict[str, list] = {v: [] for v in self._vertices}
        pair_to_edge: Dict[Tuple[str, str], str] = {}
        for lab, (u, v) in self._edges.items():
            incident[u].append(lab)
            incident[v].append(lab)
            pair_to_edge[(u, v)] = lab
        self._incident = {v: tuple(labs) for v, labs in incident.items()}
        self._pair_to_edge = pair_to_edge
        self._hash = hash(
            (self._vertices, frozenset((l, uv) for l, uv in self._edges.items()))
        )

    # -- accessors ---------------------------------------------------

    @property
    def vertices(self) -> FrozenSet[str]:
        return self._vertices

    @property
    def vertex_list(self) -> Tuple[str, ...]:
        """Vertices in sorted order."""
        return tuple(sorted(self._vertices))

    def edge_labels(self) -> Tuple[str, ...]:
        """Edge labels in sorted order."""
        return tuple(self._edges)

    def edge_label_set(self) -> FrozenSet[str]:
        return frozenset(self._edges)

    def edge_items(self) -> Iterator[Tuple[str, str, str]]:
        """Yield (label, u, v) with u <= v, sorted by label."""
        for lab, (u, v) in self._edges.items():
            yield lab, u, v

    def endpoints(self, label: str) -> Tuple[str, str]:
        try:
            return self._edges[label]
        except KeyError:
            raise UnknownLabelError(f"no edge labeled {label!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertices

    def has_edge_label(self, label: str) -> bool:
        return label in self._edges

    def edge_between(self, u: str, v: str) -> Optional[str]:
        """Label of the edge joining u and v, or None."""
        return self._pair_to_edge.get(_pair(u, v))

    def incident_edges(self, v: str) -> Tuple[str, ...]:
        """Labels of edges at v, sorted."""
        try:
            return self._incident[v]
        except KeyError:
            raise UnknownLabelError(f"no vertex labeled {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.incident_edges(v))

    def neighbors(self, v: str) -> Tuple[str, ...]:
        out = []
        for lab in self.incident_edges(v):
            a, b = self._edges[lab]
            out.append(b if a == v else a)
        return tuple(sorted(out))

    def other_endpoint(self, label: str, v: str) -> str:
        a, b = self.endpoints(label)
        if v == a:
            return b
        if v == b:
            return a
        raise UnknownLabelError(f"vertex {v!r} is not an endpoint of {label!r}")

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    # -- value semantics ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return (
            f"LabeledGraph({self.num_vertices} vertices, {self.num_edges} edges)"
        )


def build_graph(
    vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]]
) -> LabeledGraph:
    """Validate and build a :class:`LabeledGraph`.

    ``edges`` is an iterable of ``(label, u, v)`` triples.  Each
    invariant violation raises its own :class:`GraphError` subclass:
    duplicate vertex or edge labels, a loop edge, a parallel edge, or
    an endpoint that is not a declared vertex.
    """
    vset = set()
    for v in vertices:
        if v in vset:
            raise DuplicateLabelError(f"duplicate vertex label {v!r}")
        vset.add(v)
    edict: Dict[str, Tuple[str, str]] = {}
    pairs = set()
    for lab, u, v in edges:
        if lab in edict:
            raise DuplicateLabelError(f"duplicate edge label {lab!r}")
        if u == v:
            raise LoopEdgeError(f"edge {lab!r} is a loop at vertex {u!r}")
        for endpoint in (u, v):
            if endpoint not in vset:
                raise UndeclaredEndpointError(
                    f"edge {lab!r} endpoint {endpoint!r} is not a declared vertex"
                )
        key = _pair(u, v)
        if key in pairs:
            raise ParallelEdgeError(
                f"edge {lab!r} is parallel to an existing edge on {key}"
            )
        pairs.add(key)
        edict[lab] = key
    return LabeledGraph(vset, edict)


def is_two_connected(g: LabeledGraph) -> bool:
    """True iff g has >= 3 vertices, is connected, and has no cutvertex."""
    verts = g.vertex_list
    if len(verts) < 3:
        return False
    root = verts[0]
    disc: Dict[str, int] = {}
    low: Dict[str, int] = {}
    parent: Dict[str, Optional[str]] = {root: None}
    counter = 0
    root_children = 0
    # Iterative lowpoint DFS; recursion depth would exceed limits on
    # the larger reduction graphs.
    stack = [(root, iter(g.neighbors(root)))]
    disc[root] = low[root] = counter
    counter += 1
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in disc:
                parent[w] = v
                if v == root:
                    root_children += 1
                disc[w] = low[w] = counter
                counter += 1
                stack.append((w, iter(g.neighbors(w))))
                advanced = True
                break
            elif w != parent[v]:
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != root and low[v] >= disc[p]:
                    return False  # p is a cutvertex
    if len(disc) != len(verts):
        return False  # disconnected
    return root_children < 2


def delete_parts(
    g: LabeledGraph,
    edges: Iterable[str] = (),
    isolated_vertices: Iterable[str] = (),
) -> LabeledGraph:
    """Delete the listed edges, then the listed isolated vertices.

    Vertex deletion is explicit and never implied: every vertex listed
    must be isolated once the listed edges are gone, otherwise
    :class:`VertexNotIsolatedError` is raised.  Labels of surviving
    elements are unchanged.
    """
    edel = frozenset(edges)
    vdel = frozenset(isolated_vertices)
    for lab in sorted(edel):
        if not g.has_edge_label(lab):
            raise UnknownLabelError(f"cannot delete unknown edge {lab!r}")
    for v in sorted(vdel):
        if not g.has_vertex(v):
            raise UnknownLabelError(f"cannot delete unknown vertex {v!r}")
        for lab in g.incident_edges(v):
            if lab not in edel:
                raise VertexNotIsolatedError(
                    f"vertex {v!r} still has incident edge {lab!r}"
                )
    new_edges = {
        lab: g.endpoints(lab) for lab in g.edge_labels() if lab not in edel
    }
    return LabeledGraph(g.vertices - vdel, new_edges)


class LabelMap(NamedTuple):
    """Witness of an A-fixing subgraph isomorphism.

    ``vertex_map`` and ``edge_map`` are injective dicts from labels of
    the pattern graph to labels of the host graph, with ``edge_map``
    compatible with ``vertex_map`` on endpoints.
    """

    vertex_map: Dict[str, str]
    edge_map: Dict[str, str]


def a_fixing_subgraph_isomorphisms(
    h: LabeledGraph,
    g: LabeledGraph,
    a: Iterable[str],
    *,
    g_strict: Iterable[str] = frozenset(),
) -> Iterator[LabelMap]:
    """Yield every map of h onto a subgraph of g fixing the edge set a.

    A yielded :class:`LabelMap` is an injective vertex map under which
    every edge of h lands on an edge of g, and whose induced edge map
    is the identity on ``a``.  The keyword-only ``g_strict`` set adds
    the converse constraint: an edge of g whose label lies in
    ``g_strict`` may only be hit by the h-edge of the same label, so
    host-side strict edges cannot be reused under a different name.
    Labels in ``g_strict`` that g does not contain are ignored.

    Raises :class:`UnknownLabelError` when ``a`` is not a subset of
    both edge label sets.  Yield order is deterministic for fixed
    input.
    """
    a = frozenset(a)
    for lab in sorted(a):
        if not h.has_edge_label(lab):
            raise UnknownLabelError(f"strict edge {lab!r} not in the pattern graph")
        if not g.has_edge_label(lab):
            raise UnknownLabelError(f"strict edge {lab!r} not in the host graph")
    strict_g = frozenset(g_strict) & g.edge_label_set()

    if h.num_vertices > g.num_vertices or h.num_edges > g.num_edges:
        return

    # Pinned edges restrict their endpoints to the matching endpoint
    # pair on the host side.
    allowed: Dict[str, FrozenSet[str]] = {}
    for lab in sorted(a):
        hu, hv = h.endpoints(lab)
        gpair = frozenset(g.endpoints(lab))
        for hx in (hu, hv):
            allowed[hx] = allowed.get(hx, gpair) & gpair
            if not allowed[hx]:
                return

    # Visit pinned vertices first, then grow through the already
    # matched boundary; ties break on degree then label so the yield
    # order is reproducible.
    order = []
    chosen = set()
    remaining = set(h.vertex_list)
    while remaining:
        boundary = [
            v for v in remaining if any(n in chosen for n in h.neighbors(v))
        ]
        pool = boundary if boundary else sorted(remaining)
        v = min(pool, key=lambda x: (x not in allowed, -h.degree(x), x))
        order.append(v)
        chosen.add(v)
        remaining.discard(v)

    gverts = g.vertex_list
    gdeg = {v: g.degree(v) for v in gverts}
    vmap: Dict[str, str] = {}
    used = set()

    def candidates(v: str) -> Iterable[str]:
        pool = sorted(allowed[v]) if v in allowed else gverts
        dv = h.degree(v)
        for w in pool:
            if w in used or gdeg[w] < dv:
                continue
            yield w

    def consistent(v: str, w: str) -> bool:
        for u in h.neighbors(v):
            if u not in vmap:
                continue
            eh = h.edge_between(v, u)
            eg = g.edge_between(w, vmap[u])
            if eg is None:
                return False
            if eh in a and eg != eh:
                return False
            if eg in strict_g and eh != eg:
                return False
        return True

    n = len(order)

    def search(depth: int) -> Iterator[LabelMap]:
        if depth == n:
            edge_map = {}
            for lab, u, v in h.edge_items():
                edge_map[lab] = g.edge_between(vmap[u], vmap[v])
            yield LabelMap(dict(vmap), edge_map)
            return
        v = order[depth]
        for w in candidates(v):
            if not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            yield from search(depth + 1)
            del vmap[v]
            used.discard(w)

    yield from search(0)


def is_hybrid_subgraph(h: LabeledGraph, g: LabeledGraph, a: Iterable[str]) -> bool:
    """True iff h maps onto a subgraph of g with edge set ``a`` fixed."""
    for _ in a_fixing_subgraph_isomorphisms(h, g, a):
        return True
    return False
