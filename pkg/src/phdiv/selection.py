"""Distance-ranked, class-balanced subset construction.

Points are ranked ascending by eccentricity (max distance to any other
point), ties broken by original index. The lower half of the ranking is
the core pool, the upper half the peripheral pool. The `closest` subset
samples per-class from the core, `farthest` from the periphery, and
`random` from all points regardless of rank. Sampling is seeded and
portable (see `phdiv.rng`), so a spec reproduces byte-identical subsets.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientClassMembers, TooFewPoints
from .rng import Xoshiro256StarStar

CLOSEST = "closest"
FARTHEST = "farthest"
RANDOM = "random"

SUBSET_KINDS = (CLOSEST, FARTHEST, RANDOM)


@dataclass(frozen=True)
class SubsetSpec:
    kind: str
    per_class: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SUBSET_KINDS:
            raise ValueError(f"kind must be one of {SUBSET_KINDS}, got {self.kind!r}")
        if self.per_class < 1:
            raise ValueError(f"per_class must be >= 1, got {self.per_class}")


@dataclass(frozen=True)
class SubsetResult:
    indices: tuple
    class_counts: dict


def eccentricity(distance_matrix):
    """Max distance from each point to any other point."""
    if distance_matrix.n < 2:
        raise TooFewPoints("eccentricity needs at least 2 points")
    full = distance_matrix.full()
    np.fill_diagonal(full, -np.inf)
    return full.max(axis=1)


def rank_partition(distance_matrix):
    """(lower, upper) index arrays from the ascending eccentricity ranking.

    The lower half holds the first floor(n/2) ranks (core samples), the
    upper half the rest (peripheral samples).
    """
    ecc = eccentricity(distance_matrix)
    order = np.lexsort((np.arange(len(ecc)), ecc))
    half = len(ecc) // 2
    return order[:half], order[half:]


def select_subset(distance_matrix, labels, spec):
    """Sample `spec.per_class` points per class from the pool for `spec.kind`."""
    labels = np.asarray(labels, dtype=np.int64)
    n = distance_matrix.n
    if labels.shape != (n,):
        raise ValueError(f"labels must have length {n}, got shape {labels.shape}")
    lower, upper = rank_partition(distance_matrix)
    if spec.kind == CLOSEST:
        pool = lower
    elif spec.kind == FARTHEST:
        pool = upper
    else:
        pool = np.arange(n)
    gen = Xoshiro256StarStar(spec.seed)
    chosen = []
    counts = {}
    for label in sorted(set(labels.tolist())):
        candidates = sorted(int(i) for i in pool if labels[i] == label)
        if len(candidates) < spec.per_class:
            raise InsufficientClassMembers(
                f"class {label} has {len(candidates)} members in the "
                f"{spec.kind} pool, need {spec.per_class}"
            )
        picked = gen.sample(candidates, spec.per_class)
        chosen.extend(picked)
        counts[int(label)] = len(picked)
    return SubsetResult(indices=tuple(sorted(chosen)), class_counts=counts)


def subset_to_csv(result, labels):
    """CSV text ``index,label`` for a selection result."""
    labels = np.asarray(labels, dtype=np.int64)
    lines = ["index,label"]
    for i in result.indices:
        lines.append(f"{i},{int(labels[i])}")
    return "\n".join(lines) + "\n"
