"""Hemisphere nerves, hyperplane arrangements and digraph complexes, computed
exactly over the rationals and the integers."""

from .arrangements import (
    Arrangement,
    IntersectionLattice,
    arrangement_from_config,
    braid_arrangement,
    config_from_arrangement,
    intersection_lattice,
    mobius_invariant,
    proper_dual_poset,
    quillen_map_check,
    random_arrangement,
)
from .complexes import (
    EnumerationLimitError,
    FinitePoset,
    HomologyProfile,
    SimplicialComplex,
    alexander_dual,
    classify_pseudomanifold,
    face_poset,
    from_facets,
    order_complex,
    ordered_sum,
    poset_isomorphism,
    reduced_homology,
)
from .digraphs import (
    Digraph,
    WeightedDAG,
    dag_complex,
    decode_vector,
    disds_complex,
    disds_facets,
    encode_dag,
    root_system,
    verify_identifications,
)
from .exact import SmithForm, lp_feasible, parse_rational, format_rational, smith_normal_form
from .gale import FacetIncidence, cycle_lattice, cycle_polytope_facets, gale_duality_check, minimal_nonfaces, nerve_complex
from .posets import (
    FiniteTopology,
    Relation,
    galois_check,
    poset_of_orders,
    poset_of_preorders,
    poset_of_t0_topologies,
    poset_of_topologies,
)
from .spheres import (
    Configuration,
    Subspace,
    bstel_complex,
    essentialize,
    halfspace_nerve,
    in_closed_hemisphere,
    in_open_hemisphere,
    is_ample,
    is_antipodal,
    quillen_fiber,
    ridge,
    stel_complex,
)
from .tda import hemisphere_cech_endpoints, hypercube, persistence, vr_filtration

__version__ = "0.1.0"
