"""Exact workbench for finite pointfree topology.

Finite lattices and frames, polarities and their concept lattices,
filters and Scott-open filters, finite spaces and spectra, canonical
extensions with executable axiom verifiers, map extensions, sublocale
structure, and join-strong proximity lattices. Everything runs the
definitions literally at desk scale and verifies the finite
degeneracies instead of assuming them.
"""

from .lattice import (
    FiniteLattice,
    build_lattice,
    find_isomorphism,
    is_boolean,
    is_completely_distributive,
    is_distributive,
    is_frame,
    is_locally_compact,
    is_stably_locally_compact,
    is_subfit,
    way_below,
)
from .polarity import Polarity, concept_lattice, galois_closed_sets, polar_left, polar_right
from .filters import all_filters, all_ideals, is_scott_open, scott_open_poset
from .spaces import FiniteSpace, open_set_frame, points, saturated_sets, space_canext_oracle
from .canext import (
    CanExtBundle,
    canonical_extension,
    dlat_canonical_extension,
    intersection_filter_representation,
    verify_compact,
    verify_compact_plus,
    verify_dense,
)
from .maps import LatticeMap, classify, pi_extension, sigma_extension
from .sublocales import open_sublocale, closed_sublocale, sc_lattice, sublocale_coframe
from .proximity import ProximityLattice, check_axioms, round_ideals

__all__ = [
    "FiniteLattice",
    "build_lattice",
    "find_isomorphism",
    "is_boolean",
    "is_completely_distributive",
    "is_distributive",
    "is_frame",
    "is_locally_compact",
    "is_stably_locally_compact",
    "is_subfit",
    "way_below",
    "Polarity",
    "concept_lattice",
    "galois_closed_sets",
    "polar_left",
    "polar_right",
    "all_filters",
    "all_ideals",
    "is_scott_open",
    "scott_open_poset",
    "FiniteSpace",
    "open_set_frame",
    "points",
    "saturated_sets",
    "space_canext_oracle",
    "CanExtBundle",
    "canonical_extension",
    "dlat_canonical_extension",
    "intersection_filter_representation",
    "verify_compact",
    "verify_compact_plus",
    "verify_dense",
    "LatticeMap",
    "classify",
    "pi_extension",
    "sigma_extension",
    "open_sublocale",
    "closed_sublocale",
    "sc_lattice",
    "sublocale_coframe",
    "ProximityLattice",
    "check_axioms",
    "round_ideals",
]
