"""planarseq: labeled graphs, spherical embeddings, and deletion sequences.

The package decides simultaneous embeddability for hybrid, weak and
indefinite deletion sequences of labeled planar graphs, builds the
village-based gadget sequences (equaliser, negator, or, indefinite-or)
with verified allocation sets, and runs the full 3-SAT reduction
pipeline on top of them.
"""

from planarseq.graph import (
    GraphError,
    LabeledGraph,
    LabelMap,
    a_fixing_subgraph_isomorphisms,
    build_graph,
    delete_parts,
    is_hybrid_subgraph,
    is_two_connected,
)

__version__ = "0.1.0"

__all__ = [
    "GraphError",
    "LabeledGraph",
    "LabelMap",
    "a_fixing_subgraph_isomorphisms",
    "build_graph",
    "delete_parts",
    "is_hybrid_subgraph",
    "is_two_connected",
    "__version__",
]
