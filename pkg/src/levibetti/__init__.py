"""Edge ideals of Levi graphs: Betti tables, bounds, and classification."""

from .arrangements import (
    Arrangement,
    Point,
    TVector,
    gen_cm_configuration,
    gen_conic_6_5,
    gen_generic_lines,
    gen_pencil,
    gen_projective_plane,
    gen_quasi_pencil,
    t_vector,
    validate,
)
from .bipartite import (
    BipartiteGraph,
    degree_profile,
    hall_check,
    induced_matching,
    levi_graph,
    make_graph,
    max_matching,
)
from .complexes import (
    LcmLattice,
    MonomialIdeal,
    SimplicialComplex,
    alexander_dual,
    complex_of_ideal,
    edge_ideal,
    independence_complex,
    lcm_lattice,
    make_complex,
    make_ideal,
    open_interval_complex,
    power,
    stanley_reisner_ideal,
)
from .classify import (
    ClassificationVerdict,
    PureOrder,
    bounds_report,
    bounds_verify,
    classification_verdict,
    cross_free_pure_order,
    herzog_hibi_search,
    is_shellable,
    power_bound_check,
    theorem_a_verify,
    theorem_b_verify,
)
from .errors import CapExceeded, InputError, InvalidArrangement, NonSquarefree
from .homology import GF2, GFMatrix, PrimeField, boundary_matrix, rank, reduced_betti
from .resolutions import (
    BettiTable,
    HomologicalSummary,
    betti_general,
    betti_of_ideal,
    betti_squarefree,
    eagon_reiner_check,
    has_linear_resolution,
    render_diagram,
    summarize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
