"""Exact-arithmetic invariants, equivalences and term calculus for edge shifts.

The package works with finite directed graphs and their nonnegative integer
adjacency matrices: flow invariants (Bowen-Franks group, determinant data),
dimension triples with decidable cone membership, witness verification and
bounded search for (strong) shift equivalence, splitting moves with their
witnesses, product graphs, and a term calculus for the associated path
algebras with ghost edges.  All arithmetic is exact (integers and
fractions); searches are complete within their stated bounds and never
report a negative as a proof of inequivalence.
"""

from .dimension import (
    Candidate,
    DimElement,
    DimensionTriple,
    InCone,
    Infeasible,
    ModuleIsoCandidate,
    NotFoundWithinBounds,
    NotInCone,
    Unknown,
    dg_add,
    dg_equal,
    dg_neg,
    dg_positive,
    dg_scale,
    dg_shift,
    from_graph,
    from_matrix,
    order_unit,
    product_triple,
    search_module_iso,
    search_pointed_intertwiner,
    tensor_phi,
    tensor_psi,
    verify_module_iso,
)
from .equivalences import (
    ChainLink,
    ChainWitness,
    SEWitness,
    SSEWitness,
    search_esse,
    search_se,
    verify_chain,
    verify_esse,
    verify_se,
)
from .errors import SftkitError
from .graphs import Edge, Graph, classify, essentialize, from_adjacency, transpose
from .invariants import (
    AbelianGroupFP,
    bowen_franks,
    bratteli,
    char_poly_away_from_zero,
    det_i_minus_a,
    flow_equivalent,
    invariants_report,
)
from .linalg import Matrix, char_poly, smith_normal_form
from .moves import (
    EdgePartition,
    bridge_from_factorization,
    in_split,
    kronecker_product,
    out_split,
    verify_bridge,
)
from .polynomials import Poly
from .terms import (
    AlgebraElement,
    FamilyAssignment,
    WeightMap,
    ck2_expand,
    equal_mod_ck2,
    graded_decompose,
    parse_element,
    reduce,
    star,
    verify_family,
)

__all__ = [
    "AbelianGroupFP",
    "AlgebraElement",
    "Candidate",
    "ChainLink",
    "ChainWitness",
    "DimElement",
    "DimensionTriple",
    "Edge",
    "EdgePartition",
    "FamilyAssignment",
    "Graph",
    "InCone",
    "Infeasible",
    "Matrix",
    "ModuleIsoCandidate",
    "NotFoundWithinBounds",
    "NotInCone",
    "Poly",
    "SEWitness",
    "SSEWitness",
    "SftkitError",
    "Unknown",
    "WeightMap",
    "bowen_franks",
    "bratteli",
    "bridge_from_factorization",
    "char_poly",
    "char_poly_away_from_zero",
    "ck2_expand",
    "classify",
    "det_i_minus_a",
    "dg_add",
    "dg_equal",
    "dg_neg",
    "dg_positive",
    "dg_scale",
    "dg_shift",
    "equal_mod_ck2",
    "essentialize",
    "flow_equivalent",
    "from_adjacency",
    "from_graph",
    "from_matrix",
    "graded_decompose",
    "in_split",
    "invariants_report",
    "kronecker_product",
    "order_unit",
    "out_split",
    "parse_element",
    "product_triple",
    "reduce",
    "search_esse",
    "search_module_iso",
    "search_pointed_intertwiner",
    "search_se",
    "smith_normal_form",
    "star",
    "tensor_phi",
    "tensor_psi",
    "transpose",
    "verify_bridge",
    "verify_chain",
    "verify_esse",
    "verify_family",
    "verify_module_iso",
    "verify_se",
    "__version__",
]

__version__ = "0.1.0"
