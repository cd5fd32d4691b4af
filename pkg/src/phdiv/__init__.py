"""Structural diversity of datasets via persistent homology.

Builds Vietoris-Rips filtrations from pairwise distances, computes H0/H1
persistence diagrams, and summarizes them as persistence entropies and
Hill numbers, alongside the Vendi score baseline, distance-ranked subset
selection, and classical MDS for visualization.
"""

from .diversity import (
    DEFAULT_Q,
    DiversityReport,
    LifetimeDistribution,
    LifetimeStats,
    build_report,
    clip_to_window,
    hill_number,
    renyi_persistence_entropy,
    summary_stats,
    vendi_score,
)
from .errors import (
    AsymmetryError,
    DimensionMismatch,
    EigenFailure,
    FiltrationDimError,
    InsufficientClassMembers,
    NegativeDistance,
    NegativeOrder,
    NonFinite,
    NonzeroDiagonal,
    PhdivError,
    SizeLimit,
    TooFewPoints,
    WindowOrderError,
    ZeroVectorError,
)
from .filtration import Filtration, Simplex, build_vr_filtration
from .geometry import (
    COSINE,
    EUCLIDEAN,
    PRECOMPUTED,
    DistanceMatrix,
    PointCloud,
    compute_distance_matrix,
    load_distance_csv,
    load_points_csv,
    validate_distance_matrix,
)
from .persistence import (
    ESSENTIAL,
    ZERO_TOL,
    Interval,
    PersistenceDiagram,
    compute_h0,
    compute_h1,
    diagram_to_csv,
    diagrams_match,
    nonzero_intervals,
    oracle_reduce,
)
from .projection import Embedding2D, classical_mds, embedding_to_csv, embedding_to_svg
from .rng import Xoshiro256StarStar
from .selection import (
    SUBSET_KINDS,
    SubsetResult,
    SubsetSpec,
    eccentricity,
    rank_partition,
    select_subset,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetryError",
    "COSINE",
    "DEFAULT_Q",
    "DimensionMismatch",
    "DistanceMatrix",
    "DiversityReport",
    "EigenFailure",
    "Embedding2D",
    "ESSENTIAL",
    "EUCLIDEAN",
    "Filtration",
    "FiltrationDimError",
    "InsufficientClassMembers",
    "Interval",
    "LifetimeDistribution",
    "LifetimeStats",
    "NegativeDistance",
    "NegativeOrder",
    "NonFinite",
    "NonzeroDiagonal",
    "PersistenceDiagram",
    "PhdivError",
    "PointCloud",
    "PRECOMPUTED",
    "Simplex",
    "SizeLimit",
    "SubsetResult",
    "SubsetSpec",
    "SUBSET_KINDS",
    "TooFewPoints",
    "WindowOrderError",
    "Xoshiro256StarStar",
    "ZERO_TOL",
    "ZeroVectorError",
    "build_report",
    "build_vr_filtration",
    "classical_mds",
    "clip_to_window",
    "compute_distance_matrix",
    "compute_h0",
    "compute_h1",
    "diagram_to_csv",
    "diagrams_match",
    "eccentricity",
    "embedding_to_csv",
    "embedding_to_svg",
    "hill_number",
    "load_distance_csv",
    "load_points_csv",
    "nonzero_intervals",
    "oracle_reduce",
    "rank_partition",
    "renyi_persistence_entropy",
    "select_subset",
    "summary_stats",
    "validate_distance_matrix",
    "vendi_score",
]
