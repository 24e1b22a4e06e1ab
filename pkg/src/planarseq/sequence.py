"""Deletion sequences of labeled graphs and simultaneous embeddings.

A hybrid sequence is an ordered list of graphs with a global strict
edge set; each consecutive pair must be related by hybrid subgraph
inclusion (one direction or the other).  A simultaneous embedding
assigns a spherical embedding to every graph so that each embedding
agrees, up to strict-fixing isomorphism, with the embedding induced by
its larger neighbor.

The decision procedure works on oriented embeddings: every graph's
genus-0 rotation systems are enumerated, each step contributes a
relation between consecutive oriented states (computed by transporting
the larger graph's embedding along every witness map and hashing), and
chains are counted by forward/backward reachability.  Reflection is
handled globally at the end: reversing every rotation of every graph
maps chains to chains, and counts are reported up to that involution.

The indefinite variant allows minors instead of subgraphs: removed
edges are split into a contracted set C and a deleted set D, the split
is searched exhaustively, and embeddings are transported through
contractions.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

from planarseq.graph import (
    GraphError,
    LabeledGraph,
    LabelMap,
    UnknownLabelError,
    a_fixing_subgraph_isomorphisms,
    build_graph,
    is_two_connected,
)
from planarseq.embedding import (
    RotationSystem,
    _canon_cycle,
    contract_in_embedding,
    enumerate_embeddings,
    enumerate_oriented_embeddings,
    reflect,
)

MODES = ("strict", "hybrid", "indefinite")

DEFAULT_CHAIN_CAP = 10 ** 6


def _chain_cap() -> int:
    raw = os.environ.get("PLANAR_SEQ_SCALE_CAP", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_CHAIN_CAP


class SequenceError(ValueError):
    """Raised for malformed sequences or unsatisfiable preconditions."""


@dataclass(frozen=True)
class HybridSequence:
    """An ordered list of graphs plus a global strict edge set.

    ``mode`` is one of ``strict``, ``hybrid``, ``indefinite``.  Strict
    mode requires every edge label appearing anywhere to be strict.
    Step validity is not enforced at construction; use
    :func:`validate_sequence`.
    """

    graphs: Tuple[LabeledGraph, ...]
    strict_edges: FrozenSet[str]
    mode: str = "hybrid"

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "strict_edges", frozenset(self.strict_edges))
        if self.mode not in MODES:
            raise SequenceError(f"unknown mode {self.mode!r}")
        if not self.graphs:
            raise SequenceError("a sequence needs at least one graph")
        if self.mode == "strict":
            for g in self.graphs:
                missing = g.edge_label_set() - self.strict_edges
                if missing:
                    raise SequenceError(
                        f"strict mode but weak labels present: {sorted(missing)[:5]}"
                    )

    def all_edge_labels(self) -> FrozenSet[str]:
        out = set()
        for g in self.graphs:
            out |= g.edge_label_set()
        return frozenset(out)

    def weak_edge_labels(self) -> FrozenSet[str]:
        return self.all_edge_labels() - self.strict_edges


class StepReport(NamedTuple):
    index: int
    direction: str  # forward | backward | equal | invalid
    valid: bool
    witness: Optional[LabelMap]
    detail: str


class ValidationReport(NamedTuple):
    valid: bool
    mode: str
    strict_convention_ok: bool
    weak_edges: Tuple[str, ...]
    steps: Tuple[StepReport, ...]
    notes: Tuple[str, ...]


def _fits(h: LabeledGraph, g: LabeledGraph) -> bool:
    """Necessary size condition for h to sit inside g."""
    return h.num_vertices <= g.num_vertices and h.num_edges <= g.num_edges


def _first_witness(h, g, strict):
    """First strict-respecting witness embedding h into g, or None."""
    a = strict & h.edge_label_set()
    if not a <= g.edge_label_set():
        return None
    for phi in a_fixing_subgraph_isomorphisms(h, g, a, g_strict=strict):
        return phi
    return None


def _contract_edge_graph(g: LabeledGraph, edge: str) -> LabeledGraph:
    """Graph-level edge contraction, merging parallels to the smaller label."""
    u, v = g.endpoints(edge)
    m, gone = (u, v) if u < v else (v, u)
    endpoint: Dict[str, Tuple[str, str]] = {}
    for lab, a, b in g.edge_items():
        if lab == edge:
            continue
        a2 = m if a == gone else a
        b2 = m if b == gone else b
        endpoint[lab] = (a2, b2) if a2 <= b2 else (b2, a2)
    by_pair: Dict[Tuple[str, str], str] = {}
    for lab in sorted(endpoint):
        pair = endpoint[lab]
        if pair not in by_pair:
            by_pair[pair] = lab
    new_edges = {lab: pair for pair, lab in by_pair.items()}
    return LabeledGraph(g.vertices - {gone}, new_edges)


def _is_forest(g: LabeledGraph, edges: Iterable[str]) -> bool:
    parent: Dict[str, str] = {}

    def find(x: str) -> str:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for lab in edges:
        u, v = g.endpoints(lab)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _apply_minor_graph(big: LabeledGraph, contract: Tuple[str, ...],
                       keep: FrozenSet[str]) -> Optional[LabeledGraph]:
    """Contract the given edges (sorted order), then keep only ``keep``.

    Returns the resulting graph, or None when a contraction step lost
    an edge that was supposed to survive.
    """
    g = big
    for lab in contract:
        if not g.has_edge_label(lab):
            return None  # swallowed as a parallel duplicate earlier
        g = _contract_edge_graph(g, lab)
    if not keep <= g.edge_label_set():
        return None
    surviving = {lab: g.endpoints(lab) for lab in keep}
    touched = set()
    for a, b in surviving.values():
        touched.add(a)
        touched.add(b)
    return LabeledGraph(touched, surviving)


def minor_splits(big: LabeledGraph, small: LabeledGraph) -> List[Tuple[Tuple[str, ...], FrozenSet[str]]]:
    """All (C, D) splits with small == big / C \\ D, exact labels.

    C ranges over forests of removed edges; D is the rest of the
    removed edges.  Each contraction absorbs one vertex and deletions
    may isolate further vertices (dropped, as minors allow), so |C|
    runs from 0 up to the vertex deficit.  Matching is exact:
    contractions keep the lexicographically smaller vertex label and
    merge parallel duplicates to the smaller edge label, and the
    result must equal ``small`` as a labeled graph.
    """
    removed = big.edge_label_set() - small.edge_label_set()
    if not small.edge_label_set() <= big.edge_label_set():
        return []
    deficit = big.num_vertices - small.num_vertices
    if deficit < 0:
        return []
    out = []
    keep = small.edge_label_set()
    for c_size in range(0, min(deficit, len(removed)) + 1):
        for combo in itertools.combinations(sorted(removed), c_size):
            if not _is_forest(big, combo):
                continue
            got = _apply_minor_graph(big, combo, keep)
            if got is not None and got == small:
                out.append((combo, frozenset(removed) - set(combo)))
    return out


def validate_sequence(s: HybridSequence) -> ValidationReport:
    """Check every consecutive pair and the strict-label convention.

    For hybrid/strict modes a step is valid when one of the two graphs
    embeds into the other by a witness that fixes strict labels and
    never reuses a strict host edge under a different name.  For the
    indefinite mode a step is valid when one graph is an exact labeled
    minor of the other for at least one contraction/deletion split.
    The report carries per-step direction and a witness where one
    exists; nothing raises.
    """
    notes: List[str] = []
    steps: List[StepReport] = []
    strict_ok = True
    unused = s.strict_edges - s.all_edge_labels()
    if unused:
        notes.append(f"strict labels never used: {sorted(unused)[:5]}")
    for i in range(len(s.graphs) - 1):
        gi, gj = s.graphs[i], s.graphs[i + 1]
        if s.mode == "indefinite":
            steps.append(_validate_indefinite_step(i, gi, gj))
            continue
        if gi == gj:
            phi = _first_witness(gi, gj, s.strict_edges)
            if phi is None:
                steps.append(StepReport(i, "invalid", False, None,
                                        "equal graphs but no strict-respecting witness"))
                strict_ok = False
            else:
                steps.append(StepReport(i, "equal", True, phi, "graphs equal"))
            continue
        tried = []
        order = []
        if _fits(gj, gi):
            order.append(("forward", gj, gi))
        if _fits(gi, gj):
            order.append(("backward", gi, gj))
        done = False
        for name, h, g in order:
            phi = _first_witness(h, g, s.strict_edges)
            tried.append(name)
            if phi is not None:
                small = "next" if name == "forward" else "current"
                steps.append(StepReport(i, name, True, phi,
                                        f"{small} graph is a hybrid subgraph of its neighbor"))
                done = True
                break
        if not done:
            steps.append(StepReport(i, "invalid", False, None,
                                    f"no witness in directions {tried}"))
    valid = all(st.valid for st in steps)
    return ValidationReport(
        valid=valid,
        mode=s.mode,
        strict_convention_ok=strict_ok,
        weak_edges=tuple(sorted(s.weak_edge_labels())),
        steps=tuple(steps),
        notes=tuple(notes),
    )


def _validate_indefinite_step(i: int, gi: LabeledGraph, gj: LabeledGraph) -> StepReport:
    if gi == gj:
        return StepReport(i, "equal", True, None, "graphs equal")
    if _fits(gj, gi):
        splits = minor_splits(gi, gj)
        if splits:
            return StepReport(i, "forward", True, None,
                              f"next graph is a labeled minor ({len(splits)} split(s))")
    if _fits(gi, gj):
        splits = minor_splits(gj, gi)
        if splits:
            return StepReport(i, "backward", True, None,
                              f"current graph is a labeled minor ({len(splits)} split(s))")
    return StepReport(i, "invalid", False, None, "no contraction/deletion split works")


class StepRelation(NamedTuple):
    """Class-level step relation: pairs of reflection-class indices."""

    index: int
    pairs: FrozenSet[Tuple[int, int]]


class SimultaneousEmbedding(NamedTuple):
    """One simultaneous embedding, projected to class indices per graph.

    ``oriented_indices`` points into the per-graph oriented embedding
    lists of the analysis that produced it (canonical orbit
    representative under global reflection).
    """

    classes: Tuple[int, ...]
    oriented_indices: Tuple[int, ...]


class SimCount(NamedTuple):
    oriented: int
    up_to_reflection: int


class AllocationSet(NamedTuple):
    """T-profiles of the first graph over all simultaneous embeddings."""

    index_set: Tuple[int, ...]
    functions: FrozenSet[Tuple[int, ...]]


# -- analysis core ---------------------------------------------------------


class _Analysis:
    """Oriented embeddings, step relations, and reachability for a sequence."""

    def __init__(self, s: HybridSequence):
        self.seq = s
        self.oriented: List[List[RotationSystem]] = [
            enumerate_oriented_embeddings(g) for g in s.graphs
        ]
        self.key_index: List[Dict[Tuple, int]] = [
            {e.key(): i for i, e in enumerate(col)} for col in self.oriented
        ]
        self.reflection: List[List[int]] = []
        for col, idx in zip(self.oriented, self.key_index):
            refl = []
            for e in col:
                k = reflect(e).key()
                assert k in idx, "oriented enumeration not closed under reflection"
                refl.append(idx[k])
            self.reflection.append(refl)
        # class projection
        self.class_index: List[Dict[Tuple, int]] = []
        self.class_of: List[List[int]] = []
        for g, col in zip(s.graphs, self.oriented):
            classes = enumerate_embeddings(g)
            cidx = {c.representative.key(): i for i, c in enumerate(classes)}
            self.class_index.append(cidx)
            here = []
            for e in col:
                k = min(e.key(), reflect(e).key())
                here.append(cidx[k])
            self.class_of.append(here)
        self.relations: List[Set[Tuple[int, int]]] = [
            self._step(i) for i in range(len(s.graphs) - 1)
        ]
        self._reach()

    # -- step relations ---------------------------------------------

    def _step(self, i: int) -> Set[Tuple[int, int]]:
        gi, gj = self.seq.graphs[i], self.seq.graphs[i + 1]
        if self.seq.mode == "indefinite":
            return self._indefinite_step(i)
        pairs: Set[Tuple[int, int]] = set()
        # Try both directions; for equal graphs one suffices since the
        # witness families are inverses of each other.
        if _fits(gj, gi):
            pairs |= self._hybrid_pairs(i, small_side=1)
        if _fits(gi, gj) and gi != gj:
            pairs |= self._hybrid_pairs(i, small_side=0)
        return pairs

    def _hybrid_pairs(self, i: int, small_side: int) -> Set[Tuple[int, int]]:
        """Oriented pairs for step i with the small graph on the given side."""
        s = self.seq
        hi = i + small_side  # index of the small graph
        gi_small = s.graphs[hi]
        gi_big = s.graphs[i + 1 - small_side]
        a = s.strict_edges & gi_small.edge_label_set()
        if not a <= gi_big.edge_label_set():
            return set()
        small_keys = self.key_index[hi]
        pairs: Set[Tuple[int, int]] = set()
        big_col = self.oriented[i + 1 - small_side]
        for phi in a_fixing_subgraph_isomorphisms(
            gi_small, gi_big, a, g_strict=s.strict_edges
        ):
            inv_edge = {v: k for k, v in phi.edge_map.items()}
            image = set(phi.edge_map.values())
            vmap = phi.vertex_map
            for bj, rho in enumerate(big_col):
                key = []
                for v in gi_small.vertex_list:
                    rot = tuple(
                        inv_edge[lab]
                        for lab in rho.rotation(vmap[v])
                        if lab in image
                    )
                    key.append((v, _canon_cycle(rot)))
                sj = small_keys.get(tuple(key))
                if sj is not None:
                    if small_side == 1:
                        pairs.add((bj, sj))
                    else:
                        pairs.add((sj, bj))
        return pairs

    def _indefinite_step(self, i: int) -> Set[Tuple[int, int]]:
        s = self.seq
        gi, gj = s.graphs[i], s.graphs[i + 1]
        pairs: Set[Tuple[int, int]] = set()
        found_split = False
        if _fits(gj, gi):
            splits = minor_splits(gi, gj)
            found_split = found_split or bool(splits)
            pairs |= self._minor_pairs(i, big_side=0, splits=splits)
        if _fits(gi, gj) and gi != gj:
            splits = minor_splits(gj, gi)
            found_split = found_split or bool(splits)
            pairs |= self._minor_pairs(i, big_side=1, splits=splits)
        if not found_split:
            raise SequenceError(f"step {i}: no valid contraction/deletion split")
        return pairs

    def _minor_pairs(self, i: int, big_side: int, splits) -> Set[Tuple[int, int]]:
        s = self.seq
        big_i = i + big_side
        small_i = i + 1 - big_side
        small = s.graphs[small_i]
        small_keys = self.key_index[small_i]
        keep = small.edge_label_set()
        pairs: Set[Tuple[int, int]] = set()
        for bj, rho in enumerate(self.oriented[big_i]):
            for contract, _delete in splits:
                e = rho
                ok = True
                for lab in contract:
                    if not e.graph.has_edge_label(lab):
                        ok = False
                        break
                    e = contract_in_embedding(e, lab)
                if not ok or not keep <= e.graph.edge_label_set():
                    continue
                rot_key = []
                for v in small.vertex_list:
                    rot = tuple(lab for lab in e.rotation(v) if lab in keep)
                    rot_key.append((v, _canon_cycle(rot)))
                sj = small_keys.get(tuple(rot_key))
                if sj is not None:
                    if big_side == 0:
                        pairs.add((bj, sj))
                    else:
                        pairs.add((sj, bj))
        return pairs

    # -- reachability and counting -----------------------------------

    def _reach(self):
        n = len(self.oriented)
        fwd: List[Set[int]] = [set(range(len(self.oriented[0])))]
        for i in range(n - 1):
            nxt = {b for (a, b) in self.relations[i] if a in fwd[i]}
            fwd.append(nxt)
        bwd: List[Set[int]] = [set() for _ in range(n)]
        bwd[n - 1] = set(range(len(self.oriented[n - 1])))
        for i in range(n - 2, -1, -1):
            bwd[i] = {a for (a, b) in self.relations[i] if b in bwd[i + 1]}
        self.surviving = [f & b for f, b in zip(fwd, bwd)]

    def count_paths(self, allowed: Optional[List[Set[int]]] = None) -> int:
        states = allowed if allowed is not None else self.surviving
        n = len(self.oriented)
        cnt: Dict[int, int] = {a: 1 for a in states[0]}
        for i in range(n - 1):
            nxt: Dict[int, int] = {}
            for (a, b) in self.relations[i]:
                if a in cnt and b in states[i + 1]:
                    nxt[b] = nxt.get(b, 0) + cnt[a]
            cnt = nxt
        return sum(cnt.values())

    def count(self) -> SimCount:
        n_all = self.count_paths()
        mirror_states = [
            {a for a in surv if self.reflection[i][a] == a}
            for i, surv in enumerate(self.surviving)
        ]
        if any(not ms for ms in mirror_states):
            fixed = 0
        else:
            fixed = self.count_paths(mirror_states)
        assert (n_all + fixed) % 2 == 0
        return SimCount(oriented=n_all, up_to_reflection=(n_all + fixed) // 2)

    def iter_chains(self):
        """All oriented chains over surviving states, DFS order."""
        n = len(self.oriented)
        succ: List[Dict[int, List[int]]] = []
        for i in range(n - 1):
            m: Dict[int, List[int]] = {}
            for (a, b) in self.relations[i]:
                if a in self.surviving[i] and b in self.surviving[i + 1]:
                    m.setdefault(a, []).append(b)
            for lst in m.values():
                lst.sort()
            succ.append(m)
        chain: List[int] = []

        def rec(i: int):
            if i == n:
                yield tuple(chain)
                return
            if i == 0:
                options = sorted(self.surviving[0])
            else:
                options = succ[i - 1].get(chain[-1], [])
            for a in options:
                chain.append(a)
                yield from rec(i + 1)
                chain.pop()

        yield from rec(0)

    def reflect_chain(self, chain: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(self.reflection[i][a] for i, a in enumerate(chain))

    def project(self, chain: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(self.class_of[i][a] for i, a in enumerate(chain))


@lru_cache(maxsize=64)
def _analyze(s: HybridSequence) -> _Analysis:
    return _Analysis(s)


def step_relation(s: HybridSequence, i: int) -> StepRelation:
    """Relation between embedding classes of graphs i and i+1.

    A class pair is included when some oriented representatives of the
    two classes are related by a strict-respecting witness transport
    (or, in the indefinite mode, by some contraction/deletion split).
    """
    a = _analyze(s)
    if not 0 <= i < len(s.graphs) - 1:
        raise SequenceError(f"no step {i} in a sequence of {len(s.graphs)} graphs")
    pairs = frozenset(
        (a.class_of[i][x], a.class_of[i + 1][y]) for (x, y) in a.relations[i]
    )
    return StepRelation(index=i, pairs=pairs)


def count_simultaneous_embeddings(s: HybridSequence) -> SimCount:
    """Exact chain counts: oriented, and up to global reflection."""
    return _analyze(s).count()


def simultaneous_embeddings(s: HybridSequence) -> List[SimultaneousEmbedding]:
    """All simultaneous embeddings up to reflection, or a witness.

    When the oriented chain count exceeds the scale cap (env var
    PLANAR_SEQ_SCALE_CAP, default 10^6) the result is truncated to a
    single existence witness.  Empty iff no simultaneous embedding
    exists.
    """
    a = _analyze(s)
    n_all = a.count_paths()
    if n_all == 0:
        return []
    out: List[SimultaneousEmbedding] = []
    if n_all > 2 * _chain_cap():
        chain = next(a.iter_chains())
        canon = min(chain, a.reflect_chain(chain))
        return [SimultaneousEmbedding(classes=a.project(canon), oriented_indices=canon)]
    seen = set()
    for chain in a.iter_chains():
        canon = min(chain, a.reflect_chain(chain))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(SimultaneousEmbedding(classes=a.project(canon), oriented_indices=canon))
    out.sort()
    return out


def surviving_first_embeddings(s: HybridSequence) -> List[RotationSystem]:
    """Oriented embeddings of the first graph extendable to full chains."""
    a = _analyze(s)
    return [a.oriented[0][i] for i in sorted(a.surviving[0])]


def surviving_embeddings_at(s: HybridSequence, k: int) -> List[RotationSystem]:
    """Oriented embeddings of graph ``k`` that occur in some full chain."""
    a = _analyze(s)
    if not 0 <= k < len(s.graphs):
        raise SequenceError("graph index %d out of range" % k)
    return [a.oriented[k][i] for i in sorted(a.surviving[k])]


def chain_embeddings(s: HybridSequence) -> List[Tuple[RotationSystem, ...]]:
    """Concrete rotation systems along each chain, up to reflection.

    Same truncation rule as :func:`simultaneous_embeddings`.
    """
    a = _analyze(s)
    n_all = a.count_paths()
    if n_all == 0:
        return []
    chains: List[Tuple[int, ...]] = []
    if n_all > 2 * _chain_cap():
        chain = next(a.iter_chains())
        chains = [min(chain, a.reflect_chain(chain))]
    else:
        seen = set()
        for chain in a.iter_chains():
            canon = min(chain, a.reflect_chain(chain))
            if canon not in seen:
                seen.add(canon)
                chains.append(canon)
        chains.sort()
    return [tuple(a.oriented[k][i] for k, i in enumerate(ch)) for ch in chains]


def allocation_set(s: HybridSequence, village_handle) -> AllocationSet:
    """T-profiles of the first graph across all simultaneous embeddings."""
    from planarseq.villages import truth_values  # deferred: villages builds sequences

    idx = tuple(sorted(village_handle.house_indices))
    funcs = set()
    for e in surviving_first_embeddings(s):
        t = truth_values(e, village_handle)
        funcs.add(tuple(t[i] for i in idx))
    return AllocationSet(index_set=idx, functions=frozenset(funcs))


class HousingReport(NamedTuple):
    certified: bool
    valid_sequence: bool
    endpoints_are_villages: bool
    same_first_last_embedding: Optional[bool]  # None when over the scale cap
    planet_in_every_graph: bool
    hub_degree_dominates: bool
    scale_capped: bool
    notes: Tuple[str, ...]


def is_housing_sequence(s: HybridSequence, m: int, house_indices: Iterable[int]) -> HousingReport:
    """Certify the four housing-sequence conditions at desk scale.

    Checks that both endpoint graphs are villages V(m, I), that the
    village planet survives in every graph, that the hub strictly
    dominates every other degree in every graph, and that every
    simultaneous embedding gives the first and last graph the same
    embedding.  The last clause quantifies over all chains, so it is
    decided by exhaustive enumeration and refused above the scale cap
    (reported as not certified at this scale).
    """
    from planarseq.villages import build_village  # deferred

    notes: List[str] = []
    house_indices = tuple(sorted(house_indices))
    report_valid = validate_sequence(s).valid

    handle = build_village(m, house_indices)
    ref = handle.graph
    first, last = s.graphs[0], s.graphs[-1]

    def _isomorphic(g):
        if (g.num_vertices, g.num_edges) != (ref.num_vertices, ref.num_edges):
            return None
        for phi in a_fixing_subgraph_isomorphisms(ref, g, frozenset()):
            return phi
        return None

    phi_first = _isomorphic(first)
    phi_last = _isomorphic(last)
    endpoints_ok = phi_first is not None and phi_last is not None
    if not endpoints_ok:
        notes.append("an endpoint graph is not isomorphic to the reference village")

    planet_ok = False
    hub_ok = False
    if phi_first is not None:
        planet_edges = {}
        for lab in handle.planet_edges:
            x, y = ref.endpoints(lab)
            planet_edges[phi_first.edge_map[lab]] = tuple(
                sorted((phi_first.vertex_map[x], phi_first.vertex_map[y]))
            )
        hub = phi_first.vertex_map[handle.hub]
        planet_ok = True
        for g in s.graphs:
            for lab, pair in planet_edges.items():
                if not g.has_edge_label(lab) or tuple(sorted(g.endpoints(lab))) != pair:
                    planet_ok = False
                    notes.append(f"planet edge {lab!r} missing or moved")
                    break
            if not planet_ok:
                break
        hub_ok = True
        for gi, g in enumerate(s.graphs):
            if not g.has_vertex(hub):
                hub_ok = False
                notes.append(f"hub absent from graph {gi}")
                break
            dh = g.degree(hub)
            for v in g.vertex_list:
                if v != hub and g.degree(v) >= dh:
                    hub_ok = False
                    notes.append(
                        f"vertex {v!r} in graph {gi} has degree {g.degree(v)} >= hub's {dh}"
                    )
                    break
            if not hub_ok:
                break

    same_embedding: Optional[bool] = None
    scale_capped = False
    if report_valid and endpoints_ok:
        a = _analyze(s)
        n_all = a.count_paths()
        if n_all > 2 * _chain_cap():
            scale_capped = True
            notes.append("not certified at this scale: chain count exceeds cap")
        elif first != last:
            same_embedding = False
            notes.append("endpoint graphs are not identically labeled")
        else:
            same_embedding = True
            for chain in a.iter_chains():
                if chain[0] != chain[-1]:
                    same_embedding = False
                    notes.append("a simultaneous embedding moves the endpoint village")
                    break

    certified = bool(
        report_valid
        and endpoints_ok
        and planet_ok
        and hub_ok
        and same_embedding is True
    )
    return HousingReport(
        certified=certified,
        valid_sequence=report_valid,
        endpoints_are_villages=endpoints_ok,
        same_first_last_embedding=same_embedding,
        planet_in_every_graph=planet_ok,
        hub_degree_dominates=hub_ok,
        scale_capped=scale_capped,
        notes=tuple(notes),
    )


def indefinite_step_relation(s: HybridSequence, i: int) -> StepRelation:
    """Class-level relation for an indefinite (minor) step."""
    if s.mode != "indefinite":
        raise SequenceError("indefinite_step_relation needs mode='indefinite'")
    return step_relation(s, i)
