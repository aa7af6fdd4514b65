"""Toric manifolds from complete non-singular fans: cohomology, characteristic
classes and cohomological-rigidity experiments, in exact integer arithmetic."""

from .cohomology import (
    CohClass,
    GradedRing,
    betti_numbers,
    equivariant_presentation,
    f_from_betti,
    ordinary_cohomology,
    presentation_text,
    total_chern,
    total_pontrjagin,
)
from .fan import (
    BottTowerData,
    Fan,
    FanReport,
    bott_tower,
    example_4_3_triple,
    hirzebruch,
    is_complete,
    is_smooth,
    product,
    projective_space,
    stellar_subdivide,
    underlying_complex,
    validate_fan,
)
from .isosearch import (
    RingMap,
    classify_family,
    complexes_isomorphic,
    fans_isomorphic,
    induced_ring_map,
    preserves_chern,
    preserves_pontrjagin,
    ring_isomorphisms,
)
from .simplicial import SimplicialComplex

__version__ = "0.1.0"
