"""Spherical embeddings of labeled graphs as rotation systems.

An embedding is stored combinatorially: a cyclic order of incident
edge labels at every vertex.  Face tracing turns that into a face set,
genus 0 certifies sphericity, and reflection (reversing every
rotation) is the only embedding symmetry quotiented out by default.

Enumeration of all spherical embeddings of a 2-connected planar graph
works by recursive split decomposition: cycles have a unique rotation
system, 3-connected graphs have exactly one embedding up to
reflection, and at a split pair {u, v} the split components behave
like parallel elements of a bond, so embeddings compose from component
embeddings times a cyclic order of the components.  A brute-force
oracle over raw rotation products cross-checks the enumeration on
small graphs.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

import networkx as nx

from planarseq.graph import (
    GraphError,
    LabeledGraph,
    UnknownLabelError,
    a_fixing_subgraph_isomorphisms,
    build_graph,
    is_two_connected,
)


class EmbeddingError(ValueError):
    """Base class for embedding-level failures."""


class DisconnectedError(EmbeddingError):
    """Face tracing needs a connected graph."""


class NonPlanarError(EmbeddingError):
    """Embedding enumeration needs a planar graph."""


class NotTwoConnectedError(EmbeddingError):
    """Embedding enumeration needs a 2-connected graph."""


class SizeCapError(EmbeddingError):
    """The brute-force oracle refused an oversized input."""


class NotACycleError(EmbeddingError):
    """The given edge set does not form a single cycle."""


class LoopContractionError(EmbeddingError):
    """Contracting a loop is undefined here."""


def _canon_cycle(rot: Tuple[str, ...]) -> Tuple[str, ...]:
    """Rotate a cyclic tuple so it starts at its smallest element."""
    if len(rot) <= 1:
        return rot
    i = rot.index(min(rot))
    return rot[i:] + rot[:i]


def _cyclic_equal(a: Tuple[str, ...], b: Tuple[str, ...]) -> bool:
    return len(a) == len(b) and _canon_cycle(a) == _canon_cycle(b)


class RotationSystem:
    """Immutable combinatorial embedding of a :class:`LabeledGraph`.

    ``rotations`` maps every vertex to the cyclic order of its
    incident edge labels.  Rotations are normalized to start at the
    smallest incident label, so equality and hashing are plain
    structural comparisons.
    """

    __slots__ = ("graph", "_rot", "_hash")

    def __init__(self, graph: LabeledGraph, rotations: Dict[str, Iterable[str]]):
        rot: Dict[str, Tuple[str, ...]] = {}
        for v in graph.vertex_list:
            try:
                seq = tuple(rotations[v])
            except KeyError:
                raise EmbeddingError(f"no rotation given for vertex {v!r}") from None
            if sorted(seq) != sorted(graph.incident_edges(v)):
                raise EmbeddingError(
                    f"rotation at {v!r} is not a permutation of its incident edges"
                )
            rot[v] = _canon_cycle(seq)
        if len(rotations) != graph.num_vertices:
            raise EmbeddingError("rotation given for a vertex not in the graph")
        self.graph = graph
        self._rot = rot
        self._hash = hash((graph, tuple(sorted(rot.items()))))

    def rotation(self, v: str) -> Tuple[str, ...]:
        return self._rot[v]

    @property
    def rotations(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self._rot)

    def key(self) -> Tuple:
        """Canonical hashable encoding; equal iff embeddings equal."""
        return tuple(sorted(self._rot.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return self.graph == other.graph and self._rot == other._rot

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RotationSystem({self.graph!r})"


def reflect(e: RotationSystem) -> RotationSystem:
    """The mirror embedding: every rotation reversed."""
    return RotationSystem(
        e.graph, {v: tuple(reversed(e.rotation(v))) for v in e.graph.vertex_list}
    )


class FaceSet(NamedTuple):
    """Faces of an embedding as closed dart walks.

    A dart is a pair ``(vertex, edge)``: the edge traversed away from
    that vertex.  Every dart lies on exactly one face walk.
    """

    faces: Tuple[Tuple[Tuple[str, str], ...], ...]

    def __len__(self) -> int:
        return len(self.faces)


def _is_connected(g: LabeledGraph) -> bool:
    verts = g.vertex_list
    if not verts:
        return True
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def trace_faces(e: RotationSystem) -> FaceSet:
    """Trace all face walks of the embedding.

    Walk rule: after traversing edge ``x`` from ``v`` to ``w``, leave
    ``w`` along the successor of ``x`` in the rotation at ``w``.
    Rejects disconnected graphs, where faces per component would be
    ambiguous.
    """
    g = e.graph
    if not _is_connected(g):
        raise DisconnectedError("cannot trace faces of a disconnected graph")
    if g.num_edges == 0:
        # A lone vertex on the sphere has a single face.
        return FaceSet(faces=((),))
    succ: Dict[Tuple[str, str], str] = {}
    for v in g.vertex_list:
        rot = e.rotation(v)
        d = len(rot)
        for i, lab in enumerate(rot):
            succ[(v, lab)] = rot[(i + 1) % d]
    darts = sorted(succ)
    unused = set(darts)
    faces = []
    for start in darts:
        if start not in unused:
            continue
        walk = []
        dart = start
        while True:
            walk.append(dart)
            unused.discard(dart)
            v, lab = dart
            w = g.other_endpoint(lab, v)
            dart = (w, succ[(w, lab)])
            if dart == start:
                break
        faces.append(tuple(walk))
    return FaceSet(faces=tuple(faces))


def genus(e: RotationSystem) -> int:
    """Genus of the embedded surface: (2 - V + E - F) / 2."""
    f = len(trace_faces(e))
    val = 2 - e.graph.num_vertices + e.graph.num_edges - f
    assert val % 2 == 0, "Euler count parity violated"
    return val // 2


class EmbeddingClass(NamedTuple):
    """One spherical embedding up to the recorded equivalence."""

    representative: RotationSystem
    reflection_allowed: bool = True


def _class_key(e: RotationSystem) -> Tuple:
    return min(e.key(), reflect(e).key())


def _bucket_into_classes(systems: Iterable[RotationSystem]) -> List[EmbeddingClass]:
    """Group oriented embeddings by reflection; deterministic order."""
    reps: Dict[Tuple, RotationSystem] = {}
    for e in systems:
        r = reflect(e)
        key = min(e.key(), r.key())
        if key not in reps:
            reps[key] = e if e.key() <= r.key() else r
    return [EmbeddingClass(reps[k], True) for k in sorted(reps)]


# -- brute-force oracle --------------------------------------------------


def oracle_enumerate(g: LabeledGraph, max_edges: int = 14) -> List[EmbeddingClass]:
    """All spherical embeddings up to reflection, by raw enumeration.

    Walks the full product of cyclic orders at every vertex, keeps the
    genus-0 rotation systems, and buckets them into reflection
    classes.  Only for small graphs; the ground truth that
    :func:`enumerate_embeddings` is tested against.
    """
    if g.num_edges > max_edges:
        raise SizeCapError(
            f"{g.num_edges} edges exceeds the oracle cap of {max_edges}"
        )
    if not _is_connected(g):
        raise DisconnectedError("oracle needs a connected graph")
    per_vertex = []
    verts = g.vertex_list
    for v in verts:
        inc = g.incident_edges(v)
        if len(inc) <= 2:
            per_vertex.append([inc])
        else:
            head, rest = inc[0], inc[1:]
            per_vertex.append([(head,) + p for p in itertools.permutations(rest)])
    spherical = []
    for combo in itertools.product(*per_vertex):
        e = RotationSystem(g, dict(zip(verts, combo)))
        if genus(e) == 0:
            spherical.append(e)
    return _bucket_into_classes(spherical)


# -- structured enumeration ----------------------------------------------


def _to_networkx(g: LabeledGraph) -> "nx.Graph":
    ng = nx.Graph()
    ng.add_nodes_from(g.vertex_list)
    for lab, u, v in g.edge_items():
        ng.add_edge(u, v)
    return ng


def _planar_rotation(g: LabeledGraph) -> RotationSystem:
    """One planar rotation system, from a planarity-test embedding."""
    ok, emb = nx.check_planarity(_to_networkx(g))
    if not ok:
        raise NonPlanarError("graph is not planar")
    data = emb.get_data()
    rotations = {
        v: tuple(g.edge_between(v, w) for w in data[v]) for v in g.vertex_list
    }
    e = RotationSystem(g, rotations)
    assert genus(e) == 0
    return e


def _find_split_pair(g: LabeledGraph) -> Optional[Tuple[str, str, List[FrozenSet[str]]]]:
    """First vertex pair (sorted order) whose removal disconnects g."""
    verts = g.vertex_list
    vset = set(verts)
    for u, v in itertools.combinations(verts, 2):
        rest = vset - {u, v}
        if not rest:
            continue
        start = min(rest)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in rest and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(rest):
            comps: List[FrozenSet[str]] = []
            unassigned = set(rest)
            while unassigned:
                s = min(unassigned)
                comp = {s}
                stack = [s]
                while stack:
                    x = stack.pop()
                    for y in g.neighbors(x):
                        if y in unassigned and y not in comp:
                            comp.add(y)
                            stack.append(y)
                unassigned -= comp
                comps.append(frozenset(comp))
            comps.sort(key=lambda c: min(c))
            return u, v, comps
    return None


def _opened(rot: Tuple[str, ...], virtual: str) -> Tuple[str, ...]:
    """Rotation with the virtual edge removed, cut open at its slot."""
    i = rot.index(virtual)
    return rot[i + 1 :] + rot[:i]


def _oriented_embeddings(g: LabeledGraph, counter) -> List[RotationSystem]:
    """All distinct genus-0 rotation systems of a 2-connected graph."""
    if all(g.degree(v) == 2 for v in g.vertex_list):
        # A cycle: rotations are forced.
        return [RotationSystem(g, {v: g.incident_edges(v) for v in g.vertex_list})]

    split = _find_split_pair(g)
    if split is None:
        # 3-connected: unique embedding up to reflection.
        e = _planar_rotation(g)
        return [e, reflect(e)]

    u, v, comps = split
    uv_edge = g.edge_between(u, v)

    # One block per split component: (choices, edges_at_u, edges_at_v),
    # where each choice is (opened rot at u, opened rot at v, rotations
    # at internal vertices).
    blocks = []
    for comp in comps:
        virtual = f"\x00virtual{next(counter)}"
        edges = [
            (lab, a, b)
            for lab, a, b in g.edge_items()
            if a in comp or b in comp
        ]
        sub = build_graph(sorted(comp | {u, v}), edges + [(virtual, u, v)])
        choices = []
        for rho in _oriented_embeddings(sub, counter):
            internal = {x: rho.rotation(x) for x in comp}
            choices.append(
                (_opened(rho.rotation(u), virtual), _opened(rho.rotation(v), virtual), internal)
            )
        blocks.append(choices)
    if uv_edge is not None:
        blocks.append([((uv_edge,), (uv_edge,), {})])

    out: Dict[Tuple, RotationSystem] = {}
    first, rest = blocks[0], blocks[1:]
    for combo in itertools.product(first, *rest):
        # Cyclic order of blocks around the pair: anchor block 0,
        # permute the rest; the order reverses at v.
        for perm in itertools.permutations(range(1, len(combo))):
            order = (0,) + perm
            rot_u: List[str] = []
            rot_v: List[str] = []
            rotations: Dict[str, Tuple[str, ...]] = {}
            for i in order:
                rot_u.extend(combo[i][0])
            for i in reversed(order):
                rot_v.extend(combo[i][1])
            for choice in combo:
                rotations.update(choice[2])
            rotations[u] = tuple(rot_u)
            rotations[v] = tuple(rot_v)
            e = RotationSystem(g, rotations)
            assert genus(e) == 0, "split merge produced a non-spherical system"
            out[e.key()] = e
    return [out[k] for k in sorted(out)]


def enumerate_oriented_embeddings(g: LabeledGraph) -> List[RotationSystem]:
    """All spherical embeddings of g, orientation-sensitive.

    Requires g to be 2-connected and planar.  Deterministic order.
    """
    if not is_two_connected(g):
        raise NotTwoConnectedError("embedding enumeration needs a 2-connected graph")
    if not nx.check_planarity(_to_networkx(g))[0]:
        raise NonPlanarError("graph is not planar")
    return _oriented_embeddings(g, itertools.count())


def enumerate_embeddings(g: LabeledGraph) -> List[EmbeddingClass]:
    """All spherical embeddings of g up to reflection.

    Exactly one representative per reflection class, in deterministic
    order.  Requires g to be 2-connected and planar.
    """
    return _bucket_into_classes(enumerate_oriented_embeddings(g))


# -- derived embeddings ----------------------------------------------------


def induced_embedding(e: RotationSystem, keep: Iterable[str]) -> RotationSystem:
    """Embedding induced on the subgraph spanned by the kept edges.

    Rotations are restricted to ``keep``; vertices left with no
    incident edge are dropped.  A genus-0 input stays genus 0.
    """
    keep = frozenset(keep)
    g = e.graph
    for lab in sorted(keep):
        if not g.has_edge_label(lab):
            raise UnknownLabelError(f"cannot keep unknown edge {lab!r}")
    new_edges = {}
    for lab, a, b in g.edge_items():
        if lab in keep:
            new_edges[lab] = (a, b)
    touched = set()
    for a, b in new_edges.values():
        touched.add(a)
        touched.add(b)
    sub = LabeledGraph(touched, new_edges)
    rotations = {
        v: tuple(lab for lab in e.rotation(v) if lab in keep) for v in touched
    }
    return RotationSystem(sub, rotations)


def contract_in_embedding(e: RotationSystem, edge: str) -> RotationSystem:
    """Contract an edge inside the embedding.

    The two endpoint rotations are spliced at the contracted edge's
    slots; the surviving merged vertex keeps the lexicographically
    smaller label.  Parallel duplicates created by the contraction are
    merged immediately, keeping the lexicographically smaller edge
    label, so the result stays simple.  Genus is preserved.
    """
    g = e.graph
    u, v = g.endpoints(edge)
    if u == v:  # unreachable for validated simple graphs, kept defensive
        raise LoopContractionError(f"edge {edge!r} is a loop")
    m, gone = (u, v) if u < v else (v, u)

    rot_m = _opened(e.rotation(m), edge)
    rot_gone = _opened(e.rotation(gone), edge)
    merged = rot_m + rot_gone

    # Re-point edges at the absorbed endpoint, then collapse parallels.
    endpoint: Dict[str, Tuple[str, str]] = {}
    for lab, a, b in g.edge_items():
        if lab == edge:
            continue
        a2 = m if a == gone else a
        b2 = m if b == gone else b
        endpoint[lab] = (a2, b2) if a2 <= b2 else (b2, a2)
    by_pair: Dict[Tuple[str, str], str] = {}
    drop = set()
    for lab in sorted(endpoint):
        pair = endpoint[lab]
        if pair in by_pair:
            drop.add(lab)  # parallel duplicate; smaller label already kept
        else:
            by_pair[pair] = lab
    new_edges = {lab: pair for lab, pair in endpoint.items() if lab not in drop}
    sub = LabeledGraph(g.vertices - {gone}, new_edges)

    rotations = {}
    for x in sub.vertex_list:
        base = merged if x == m else e.rotation(x)
        rotations[x] = tuple(lab for lab in base if lab not in drop)
    out = RotationSystem(sub, rotations)
    return out


def equivalent_up_to_fixing(
    e1: RotationSystem,
    e2: RotationSystem,
    a: Iterable[str],
    allow_reflection: bool = True,
) -> bool:
    """Whether some A-fixing isomorphism carries e1 onto e2.

    The witness must be an isomorphism of the underlying graphs whose
    edge map is the identity on ``a`` and which transports every
    rotation of e1 to the corresponding rotation of e2 (or of e2
    reflected, when allowed).
    """
    g1, g2 = e1.graph, e2.graph
    if g1.num_vertices != g2.num_vertices or g1.num_edges != g2.num_edges:
        return False
    targets = [e2]
    if allow_reflection:
        targets.append(reflect(e2))
    for phi in a_fixing_subgraph_isomorphisms(g1, g2, a):
        for t in targets:
            ok = True
            for v in g1.vertex_list:
                image = tuple(phi.edge_map[lab] for lab in e1.rotation(v))
                if not _cyclic_equal(image, t.rotation(phi.vertex_map[v])):
                    ok = False
                    break
            if ok:
                return True
    return False


class SidePartition(NamedTuple):
    """The two sides a cycle cuts a spherical embedding into.

    Each side is a (vertices, edges) pair of frozensets; elements on
    the cycle belong to neither side.  Side 0 is the side whose sorted
    element listing is lexicographically smaller, so the order is
    reproducible.
    """

    sides: Tuple[Tuple[FrozenSet[str], FrozenSet[str]], Tuple[FrozenSet[str], FrozenSet[str]]]

    def side_of_vertex(self, v: str) -> int:
        for i in (0, 1):
            if v in self.sides[i][0]:
                return i
        raise UnknownLabelError(f"vertex {v!r} is on the cycle or absent")

    def side_of_edge(self, lab: str) -> int:
        for i in (0, 1):
            if lab in self.sides[i][1]:
                return i
        raise UnknownLabelError(f"edge {lab!r} is on the cycle or absent")


def cycle_sides(e: RotationSystem, cycle: Iterable[str]) -> SidePartition:
    """Partition everything off a cycle into its two Jordan sides.

    ``cycle`` is a set of edge labels that must form a single cycle in
    the embedded graph.  Faces are glued across non-cycle edges; the
    two resulting regions are the sides.
    """
    cyc = frozenset(cycle)
    g = e.graph
    for lab in sorted(cyc):
        if not g.has_edge_label(lab):
            raise UnknownLabelError(f"unknown cycle edge {lab!r}")
    deg: Dict[str, int] = {}
    for lab in cyc:
        a, b = g.endpoints(lab)
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if not cyc or any(d != 2 for d in deg.values()) or len(deg) != len(cyc):
        raise NotACycleError("edge set does not form a single cycle")
    # connectivity of the cycle subgraph
    cyc_verts = set(deg)
    start = min(cyc_verts)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for lab in g.incident_edges(x):
            if lab in cyc:
                y = g.other_endpoint(lab, x)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    if seen != cyc_verts:
        raise NotACycleError("edge set does not form a single cycle")
    if genus(e) != 0:
        raise EmbeddingError("cycle sides need a spherical embedding")

    faces = trace_faces(e).faces
    face_of: Dict[Tuple[str, str], int] = {}
    for i, walk in enumerate(faces):
        for dart in walk:
            face_of[dart] = i

    parent = list(range(len(faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for lab, a, b in g.edge_items():
        if lab in cyc:
            continue
        ra, rb = find(face_of[(a, lab)]), find(face_of[(b, lab)])
        if ra != rb:
            parent[ra] = rb

    regions = sorted({find(i) for i in range(len(faces))})
    assert len(regions) == 2, "a cycle must cut the sphere into two regions"
    index = {regions[0]: 0, regions[1]: 1}

    side_vertices: List[set] = [set(), set()]
    side_edges: List[set] = [set(), set()]
    for lab, a, b in g.edge_items():
        if lab in cyc:
            continue
        ra, rb = index[find(face_of[(a, lab)])], index[find(face_of[(b, lab)])]
        assert ra == rb, "edge faces landed in different regions"
        side_edges[ra].add(lab)
        for x in (a, b):
            if x not in cyc_verts:
                side_vertices[ra].add(x)
    sides = [
        (frozenset(side_vertices[0]), frozenset(side_edges[0])),
        (frozenset(side_vertices[1]), frozenset(side_edges[1])),
    ]
    order_key = [
        (tuple(sorted(sides[i][0])), tuple(sorted(sides[i][1]))) for i in (0, 1)
    ]
    if order_key[1] < order_key[0]:
        sides.reverse()
    return SidePartition(sides=(sides[0], sides[1]))
