"""Castelnuovo-Mumford regularity of homogeneous ideals over prime fields."""

from .arrangements import (
    Arrangement,
    LinearSubspace,
    arrangement_ideal,
    cone_ideal,
    linear_subspace,
    pairwise_intersection_dims,
    point_ideal,
    points_ideal,
    random_subspace,
)
from .cohomology import (
    cohomological_regularity,
    cohomology_table,
    ext_graded_dim,
    regdef_equivalence_check,
    sheaf_cohomology_dim,
    sheaf_regularity,
)
from .groebner import GroebnerBasis, buchberger, normal_form, syzygy_basis
from .harness import CampaignConfig, CampaignResult, TrialRecord, run_campaign
from .ideal import Ideal, colon, hilbert_function, intersect, krull_dim, product, saturate
from .resolution import BettiTable, Resolution, betti_table, minimal_free_resolution, regularity
from .ring import DEFAULT_PRIME, MonomialOrder, Polynomial, RingContext

__version__ = "0.1.0"
