"""Villages, houses, and the gadget sequences built on them.

A village is a wheel (the planet: hub, rim, spokes) with houses glued
onto stretches of the rim.  A house is a 6-edge path over its
foundation plus an inhabitant joined to the three odd wall vertices.
Each house's bounding cycle splits the sphere in two; the truth value
of a house is 1 exactly when its inhabitant is embedded on the side
away from the hub.

The gadget constructors return deletion sequences over one village
whose surviving truth profiles realize a fixed relation (equality,
inequality, disjunction).  All constructions are pure functions of
their parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from planarseq.embedding import (
    RotationSystem,
    contract_in_embedding,
    cycle_sides,
    enumerate_oriented_embeddings,
    induced_embedding,
    reflect,
)
from planarseq.graph import LabeledGraph, build_graph, delete_parts
from planarseq.sequence import HybridSequence


class GadgetError(ValueError):
    """Raised for invalid gadget parameters."""


# -- village construction ----------------------------------------------


def _rim_vertex(j: int) -> str:
    return "s%04d" % j

def _rim_edge(j: int) -> str:
    return "r%04d" % j

def _spoke(j: int) -> str:
    return "sp%04d" % j

def _house_vertex(i: int, k: int) -> str:
    return "vh%02dp%d" % (i, k)

def _inhabitant(i: int) -> str:
    return "wh%02d" % i

def _path_edge(i: int, k: int) -> str:
    return "h%02dp%d" % (i, k)

def _claw_edge(i: int, k: int) -> str:
    return "h%02dc%d" % (i, k)


@dataclass(frozen=True)
class VillageHandle:
    """Role table for a village: which label plays which part.

    house_indices are the indices carrying houses, in increasing order.
    All role lookups are pure label arithmetic; the graph itself is in
    `graph`.
    """

    graph: LabeledGraph
    m: int
    house_indices: Tuple[int, ...]

    @property
    def hub(self) -> str:
        return "hub"

    @property
    def rim(self) -> Tuple[str, ...]:
        return tuple(_rim_vertex(j) for j in range(1, 4 * self.m + 1))

    @property
    def planet_edges(self) -> FrozenSet[str]:
        return frozenset(
            [_rim_edge(j) for j in range(1, 4 * self.m + 1)]
            + [_spoke(j) for j in range(1, 4 * self.m + 1)]
        )

    @property
    def planet_vertices(self) -> FrozenSet[str]:
        return frozenset(self.rim) | {self.hub}

    def foundation(self, i: int) -> Tuple[str, ...]:
        self._check_index(i)
        return tuple(_rim_vertex(4 * i - 3 + k) for k in range(4))

    def house_vertex(self, i: int, k: int) -> str:
        self._check_house(i)
        if k == 1:
            return _rim_vertex(4 * i - 3)
        if k == 7:
            return _rim_vertex(4 * i - 1)
        if 2 <= k <= 6:
            return _house_vertex(i, k)
        raise GadgetError("house wall positions run from 1 to 7")

    def inhabitant(self, i: int) -> str:
        self._check_house(i)
        return _inhabitant(i)

    def path_edge(self, i: int, k: int) -> str:
        self._check_house(i)
        if not 1 <= k <= 6:
            raise GadgetError("house path edges run from 1 to 6")
        return _path_edge(i, k)

    def claw_edge(self, i: int, k: int) -> str:
        self._check_house(i)
        if k not in (2, 4, 6):
            raise GadgetError("claw edges attach at wall positions 2, 4, 6")
        return _claw_edge(i, k)

    def bounding_cycle(self, i: int) -> FrozenSet[str]:
        """The house path plus the rim segment under it."""
        self._check_house(i)
        return frozenset(
            [_path_edge(i, k) for k in range(1, 7)]
            + [_rim_edge(4 * i - 3), _rim_edge(4 * i - 2)]
        )

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.m:
            raise GadgetError("index %r outside 1..%d" % (i, self.m))

    def _check_house(self, i: int) -> None:
        self._check_index(i)
        if i not in self.house_indices:
            raise GadgetError("no house at index %r" % (i,))


def build_village(m: int, house_indices) -> VillageHandle:
    """Wheel of rim length 4m with a house on each index in house_indices."""
    if m < 1:
        raise GadgetError("the rim needs at least one foundation")
    indices = tuple(sorted(set(house_indices)))
    for i in indices:
        if not 1 <= i <= m:
            raise GadgetError("house index %r outside 1..%d" % (i, m))
    n = 4 * m
    vertices = ["hub"] + [_rim_vertex(j) for j in range(1, n + 1)]
    edges = []
    for j in range(1, n + 1):
        succ = _rim_vertex(j % n + 1)
        edges.append((_rim_edge(j), _rim_vertex(j), succ))
        edges.append((_spoke(j), "hub", _rim_vertex(j)))
    for i in indices:
        walls = [_rim_vertex(4 * i - 3)]
        for k in range(2, 7):
            v = _house_vertex(i, k)
            vertices.append(v)
            walls.append(v)
        walls.append(_rim_vertex(4 * i - 1))
        for k in range(1, 7):
            edges.append((_path_edge(i, k), walls[k - 1], walls[k]))
        w = _inhabitant(i)
        vertices.append(w)
        for k in (2, 4, 6):
            edges.append((_claw_edge(i, k), w, walls[k - 1]))
    return VillageHandle(graph=build_graph(vertices, edges), m=m,
                         house_indices=indices)


# -- truth values -------------------------------------------------------


def truth_values(e: RotationSystem, village: VillageHandle) -> Dict[int, int]:
    """Truth profile of a genus-0 embedding of the village (or a host
    graph containing it; the embedding is restricted first)."""
    g = e.graph
    village_labels = village.graph.edge_label_set()
    if g != village.graph:
        if not village_labels <= g.edge_label_set():
            raise GadgetError("embedding does not contain the village")
        e = induced_embedding(e, village_labels)
        if e.graph != village.graph:
            raise GadgetError("village subgraph has unexpected shape")
    out = {}
    for i in village.house_indices:
        sides = cycle_sides(e, village.bounding_cycle(i))
        hub_side = sides.side_of_vertex(village.hub)
        w_side = sides.side_of_vertex(village.inhabitant(i))
        out[i] = 0 if w_side == hub_side else 1
    return out


def truth_profile(e: RotationSystem, village: VillageHandle) -> Tuple[int, ...]:
    tv = truth_values(e, village)
    return tuple(tv[i] for i in village.house_indices)


# -- shared gadget plumbing ---------------------------------------------


def _add_edges(g: LabeledGraph, new_vertices, new_edges) -> LabeledGraph:
    vertices = list(g.vertex_list) + list(new_vertices)
    edges = [(lab, u, v) for lab, u, v in g.edge_items()]
    edges.extend(new_edges)
    return build_graph(vertices, edges)


def _strict_sequence(graphs: Sequence[LabeledGraph]) -> HybridSequence:
    labels = set()
    for g in graphs:
        labels |= g.edge_label_set()
    return HybridSequence(graphs=tuple(graphs), strict_edges=frozenset(labels),
                          mode="strict")


def _check_pair(m: int, i: int, j: int) -> None:
    if m < 2:
        raise GadgetError("need at least two foundations")
    if i == j:
        raise GadgetError("the two house indices must differ")
    for k in (i, j):
        if not 1 <= k <= m:
            raise GadgetError("house index %r outside 1..%d" % (k, m))


def _prefixed(label_prefix: str, label: str) -> str:
    return label_prefix + label if label_prefix else label


def equaliser(m: int, i: int, j: int, *, label_prefix: str = "") -> HybridSequence:
    """Nine-graph strict sequence forcing T_i = T_j on V(m, {i, j}).

    A bridge joins wall 6 of house i to wall 2 of house j, the two
    facing doors open, and a tie between the two inhabitants forces
    them onto one side of the combined cycle before everything is
    undone in reverse.
    """
    _check_pair(m, i, j)
    village = build_village(m, {i, j})
    g1 = village.graph
    bridge = _prefixed(label_prefix, "g")
    tie = _prefixed(label_prefix, "ww")
    g3 = _add_edges(g1, [], [(bridge, village.house_vertex(i, 6),
                              village.house_vertex(j, 2))])
    doors = {village.path_edge(i, 6), village.path_edge(j, 1)}
    g4 = delete_parts(g3, edges=doors)
    g5 = _add_edges(g4, [], [(tie, village.inhabitant(i), village.inhabitant(j))])
    return _strict_sequence([g1, g1, g3, g4, g5, g4, g3, g1, g1])


def negator(m: int, i: int, j: int, *, label_prefix: str = "") -> HybridSequence:
    """Nine-graph strict sequence forcing T_i != T_j on V(m, {i, j}).

    Same skeleton as the equaliser, but instead of tying the two
    inhabitants directly, a second claw (the exhabitant of house i)
    grips walls 4 and 6 of house i and the inhabitant of house j.  Its
    attachments interleave with the inhabitant's own claw, so the two
    always land on opposite sides of the open cycle.
    """
    _check_pair(m, i, j)
    village = build_village(m, {i, j})
    g1 = village.graph
    bridge = _prefixed(label_prefix, "g")
    g3 = _add_edges(g1, [], [(bridge, village.house_vertex(i, 6),
                              village.house_vertex(j, 2))])
    doors = {village.path_edge(i, 6), village.path_edge(j, 1)}
    g4 = delete_parts(g3, edges=doors)
    exhabitant = _prefixed(label_prefix, "wx%02d" % i)
    g5 = _add_edges(
        g4,
        [exhabitant],
        [(_prefixed(label_prefix, "a"), exhabitant, village.house_vertex(i, 4)),
         (_prefixed(label_prefix, "b"), exhabitant, village.house_vertex(i, 6)),
         (_prefixed(label_prefix, "gx"), exhabitant, village.inhabitant(j))],
    )
    return _strict_sequence([g1, g1, g3, g4, g5, g4, g3, g1, g1])


def or_gadget(m: int, t: int, *, label_prefix: str = "") -> HybridSequence:
    """Fifteen-graph sequence coupling the truths of the t-th
    consecutive house triple (h1, h2, h3) = (3t-2, 3t-1, 3t).

    While the door between houses 1 and 2 is open, two-edge carrier
    paths hang between wall 4 and wall 7 of the middle house, tied to
    the first two inhabitants; a third carrier tethered to the ground
    beyond the middle house joins when the door closes.  All carriers
    are then traded for a single fresh one, and carrier edges are the
    only weak edges, so the trading witness may route the survivor
    onto any of the three.  A tie to the third inhabitant across the
    now-open door between houses 2 and 3 then reads off which side the
    survivor kept.  The second bridge pockets wall 6 of the middle
    house against any carrier hung outside it, so the survivor must
    sit inside and the third inhabitant always reads 1; the village
    tests freeze the resulting allocation set.
    """
    if m % 3 != 0:
        raise GadgetError("the rim length parameter must be divisible by 3")
    if not 1 <= t <= m // 3:
        raise GadgetError("triple index %r outside 1..%d" % (t, m // 3))
    h1, h2, h3 = 3 * t - 2, 3 * t - 1, 3 * t
    village = build_village(m, {h1, h2, h3})
    P = lambda s: _prefixed(label_prefix, s)

    g1 = village.graph
    br12 = P("br12")
    g3 = _add_edges(g1, [], [(br12, village.house_vertex(h1, 6),
                              village.house_vertex(h2, 2))])
    g4 = delete_parts(g3, edges={village.path_edge(h1, 6),
                                 village.path_edge(h2, 1),
                                 village.claw_edge(h2, 2)})

    wall4, wall7 = village.house_vertex(h2, 4), village.house_vertex(h2, 7)
    carrier = lambda k: [(P("e%d" % k), wall4, P("x%d" % k)),
                         (P("f%d" % k), P("x%d" % k), wall7)]
    g5 = _add_edges(
        g4,
        [P("x1"), P("x2")],
        carrier(1) + carrier(2)
        + [(P("g1"), P("x1"), village.inhabitant(h1)),
           (P("g2"), P("x2"), village.inhabitant(h2))],
    )
    g6 = delete_parts(g5, edges={P("g1"), P("g2")})
    g7 = _add_edges(
        g6,
        [P("x0")],
        [(village.path_edge(h1, 6), village.house_vertex(h1, 6),
          village.house_vertex(h1, 7)),
         (village.path_edge(h2, 1), village.house_vertex(h2, 1),
          village.house_vertex(h2, 2))]
        + carrier(0)
        + [(P("q"), P("x0"), village.foundation(h2)[3])],
    )
    g8 = _add_edges(
        delete_parts(
            g7,
            edges={br12, P("q"), P("e0"), P("f0"), P("e1"), P("f1"),
                   P("e2"), P("f2")},
            isolated_vertices={P("x0"), P("x1"), P("x2")},
        ),
        [P("x3")],
        [(P("e3"), wall4, P("x3")), (P("f3"), P("x3"), wall7)],
    )
    br23 = P("br23")
    g9 = _add_edges(g8, [], [(br23, village.house_vertex(h2, 6),
                              village.house_vertex(h3, 2))])
    g10 = delete_parts(g9, edges={village.path_edge(h2, 6),
                                  village.path_edge(h3, 1)})
    g11 = _add_edges(
        g10, [],
        [(P("g3"), P("x3"), village.inhabitant(h3))],
    )
    g12 = delete_parts(g11, edges={P("e3"), P("f3"), P("g3")},
                       isolated_vertices={P("x3")})
    g13 = _add_edges(g12, [], [(village.claw_edge(h2, 2),
                                village.inhabitant(h2),
                                village.house_vertex(h2, 2)),
                               (village.path_edge(h2, 6),
                                village.house_vertex(h2, 6),
                                village.house_vertex(h2, 7)),
                               (village.path_edge(h3, 1),
                                village.house_vertex(h3, 1),
                                village.house_vertex(h3, 2))])
    g14 = delete_parts(g13, edges={br23})

    graphs = [g1, g1, g3, g4, g5, g6, g7, g8, g9, g10, g11, g12, g13, g14, g14]
    weak = {P("e%d" % k) for k in range(4)} | {P("f%d" % k) for k in range(4)}
    labels = set()
    for g in graphs:
        labels |= g.edge_label_set()
    return HybridSequence(graphs=tuple(graphs),
                          strict_edges=frozenset(labels - weak),
                          mode="hybrid")


# -- arches --------------------------------------------------------------


def arches(s: HybridSequence, village: VillageHandle) -> FrozenSet[Tuple[int, int]]:
    """All house pairs joined, in some graph, by a path between their
    foundations whose interior avoids the planet."""
    planet_v = village.planet_vertices
    foundations = {i: set(village.foundation(i)) for i in village.house_indices}
    found = set()
    for g in s.graphs:
        for lab in village.planet_edges:
            if not g.has_edge_label(lab):
                raise GadgetError("planet edge %r missing from a graph" % lab)
        # components of the graph minus all planet vertices
        comp: Dict[str, int] = {}
        cid = 0
        for v in g.vertex_list:
            if v in planet_v or v in comp:
                continue
            stack = [v]
            comp[v] = cid
            while stack:
                u = stack.pop()
                for nb in g.neighbors(u):
                    if nb not in planet_v and nb not in comp:
                        comp[nb] = cid
                        stack.append(nb)
            cid += 1
        # which components (or direct edges) touch which foundations
        touches: Dict[int, set] = {}
        direct = set()
        for lab, u, v in g.edge_items():
            for a, b in ((u, v), (v, u)):
                if a in planet_v and b not in planet_v:
                    for i, fnd in foundations.items():
                        if a in fnd:
                            touches.setdefault(comp[b], set()).add(i)
                if a in planet_v and b in planet_v and lab not in village.planet_edges:
                    pa = [i for i, f in foundations.items() if a in f]
                    pb = [i for i, f in foundations.items() if b in f]
                    for ia in pa:
                        for ib in pb:
                            if ia != ib:
                                direct.add((min(ia, ib), max(ia, ib)))
        for owners in touches.values():
            for ia, ib in itertools.combinations(sorted(owners), 2):
                found.add((ia, ib))
        found |= direct
    return frozenset(found)
