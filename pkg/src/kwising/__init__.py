"""Kac-Ward determinants and the critical Ising model on isoradial graphs embedded in closed surfaces."""

from .angles import AnglePi
from .builders import gen_genus2_bouquet, gen_torus_lattice, star_construction
from .cohomology import (
    Character,
    Cocycle,
    SpinStructure,
    canonical_bundle,
    canonical_character,
    character_to_cocycle,
    h1_mod2_reps,
    homology_basis,
    intersection_form_mod2,
    spin_structures,
    tree_cotree_basis,
)
from .kacward import (
    WeightSystem,
    critical_weights,
    kw_matrix,
    partition_function_kw,
    tau,
    tau_sqrt,
    tau_via_m,
    vdw_convert,
)
from .laplacian import det_laplacian, laplacian_matrix
from .mapio import MapDocument, read_map, write_map
from .ribbon import CombinatorialMap, IsoradialMap, build_isoradial_map, check_hypotheses, dual, quad_graph

__version__ = "0.1.0"
