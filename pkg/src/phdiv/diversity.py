"""Diversity measures over persistence lifetimes, plus the Vendi baseline.

Finite lifetimes l_i are normalized to weights p_i = l_i / sum(l). The
Renyi persistence entropy of order q >= 0 is

    PE^(q) = log(sum_i p_i^q) / (1 - q),        q != 1
    PE^(1) = -sum_i p_i log(p_i)                (Shannon limit)

with natural logarithms throughout, and the Hill number PEH^q = exp(PE^(q))
is the effective number of topologically significant features. An empty
lifetime set has entropy 0, so collapsed data scores an effective size of
one, its minimum.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import EigenFailure, NegativeOrder, WindowOrderError, ZeroVectorError
from .filtration import build_vr_filtration
from .persistence import ZERO_TOL, Interval, PersistenceDiagram, compute_h0, compute_h1, nonzero_intervals

#: orders reported by default, matching the report schema's q1/q20 columns
DEFAULT_Q = (1.0, 20.0)

_SHANNON_BAND = 1e-9


class LifetimeDistribution:
    """Positive lifetimes with their normalized weights.

    Lifetimes are stored sorted ascending so every downstream sum is
    independent of input order.
    """

    __slots__ = ("lifetimes", "total", "weights")

    def __init__(self, lifetimes):
        vals = np.sort(np.asarray(lifetimes, dtype=np.float64).reshape(-1))
        if vals.size and vals[0] <= 0.0:
            raise ValueError("lifetimes must be strictly positive")
        self.lifetimes = vals
        self.total = float(vals.sum())
        self.weights = vals / self.total if vals.size else vals

    @classmethod
    def from_diagram(cls, diag, tol=ZERO_TOL):
        """Distribution of the diagram's nonzero finite lifetimes."""
        return cls(diag.lifetimes(tol))

    @property
    def count(self):
        return int(self.lifetimes.size)

    def __len__(self):
        return self.count


def renyi_persistence_entropy(dist, q):
    """Renyi persistence entropy of order q (natural log).

    Orders within 1e-9 of 1 use the Shannon form directly, since the
    generic formula loses all precision there. The empty distribution
    returns 0 and the convention 0*log(0) = 0 applies.
    """
    q = float(q)
    if q < 0:
        raise NegativeOrder(f"entropy order must be >= 0, got {q}")
    if dist.count == 0:
        return 0.0
    p = dist.weights
    if abs(q - 1.0) < _SHANNON_BAND:
        return float(-np.sum(p * np.log(p)))
    # log(sum p^q) evaluated in log space so large q cannot underflow
    return float(logsumexp(q * np.log(p)) / (1.0 - q))


def hill_number(dist, q):
    """Effective feature count exp(PE^(q)); 1 for empty or singleton input."""
    return math.exp(renyi_persistence_entropy(dist, q))


@dataclass(frozen=True)
class LifetimeStats:
    min: float
    mean: float
    max: float
    total: float
    count: int


def summary_stats(dist):
    """(min, mean, max, total, count) of the lifetimes; zeros when empty."""
    if dist.count == 0:
        return LifetimeStats(0.0, 0.0, 0.0, 0.0, 0)
    v = dist.lifetimes
    return LifetimeStats(
        float(v[0]), float(v.mean()), float(v[-1]), float(v.sum()), int(v.size)
    )


def clip_to_window(diag, eps_min, eps_max):
    """Restrict a diagram to the scale window [eps_min, eps_max].

    Each interval is intersected with the window. Intervals still alive at
    the top of the window (original death beyond eps_max, or essential)
    are right-censored: they keep death = eps_max but stay flagged
    essential, exactly as if the filtration had been recomputed with this
    bound. Intervals whose intersection is empty are dropped.
    """
    eps_min = float(eps_min)
    eps_max = float(eps_max)
    if not (0.0 <= eps_min < eps_max):
        raise WindowOrderError(f"need 0 <= eps_min < eps_max, got [{eps_min}, {eps_max}]")
    kept = []
    for iv in diag.intervals:
        birth = max(iv.birth, eps_min)
        censored = iv.essential or iv.death > eps_max
        death = eps_max if censored else iv.death
        if death - birth <= 0.0:
            continue
        kept.append(Interval(birth, death, essential=censored))
    return PersistenceDiagram(diag.k, kept)


def vendi_score(cloud):
    """Exponential of the Shannon entropy of the similarity-kernel spectrum.

    Rows are unit-normalized, the n x n Gram matrix is scaled by 1/n so its
    eigenvalues form a probability vector, and the score exp(-sum l log l)
    lands in [1, n]. Rows are put in a canonical order first, which makes
    the result exactly invariant under permutations of the input.
    """
    pts = cloud.points
    n = cloud.n
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms == 0.0):
        bad = int(np.flatnonzero(norms == 0.0)[0])
        raise ZeroVectorError(f"point {bad} has zero norm; similarity undefined")
    unit = pts / norms[:, None]
    unit = unit[np.lexsort(unit.T[::-1])]
    gram = unit @ unit.T
    try:
        lam = np.linalg.eigvalsh(gram / n)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigendecomposition failed: {exc}") from None
    lam = np.clip(lam, 0.0, None)
    total = lam.sum()
    if abs(total - 1.0) > 1e-9:
        raise EigenFailure(f"kernel eigenvalues sum to {total}, expected 1")
    # discard numerically-zero eigenvalues, then renormalize exactly
    lam = lam[lam > lam[-1] * n * np.finfo(np.float64).eps]
    lam = lam / lam.sum()
    entropy = float(-np.sum(lam * np.log(lam)))
    return math.exp(entropy)


@dataclass(frozen=True)
class DiversityReport:
    """Every measure for one dataset, with the policies that produced it."""

    pe: dict
    peh: dict
    stats: dict
    vendi_score: float | None
    meta: dict = field(default_factory=dict)

    def to_json_dict(self):
        """Nested dict with the stable export schema."""
        out = {
            "peh": {f"h{k}": {_q_key(q): v for q, v in self.peh[k].items()} for k in (0, 1)},
            "pe": {f"h{k}": {_q_key(q): v for q, v in self.pe[k].items()} for k in (0, 1)},
            "stats": {
                f"h{k}": {
                    "min": self.stats[k].min,
                    "mean": self.stats[k].mean,
                    "max": self.stats[k].max,
                    "total": self.stats[k].total,
                    "count": self.stats[k].count,
                }
                for k in (0, 1)
            },
            "vendi_score": self.vendi_score,
            "meta": dict(self.meta),
        }
        return out


def _q_key(q):
    return f"q{q:g}"


def build_report(distance_matrix, cloud=None, q_list=DEFAULT_Q, window=None, zero_tol=ZERO_TOL):
    """Run the full measurement pipeline on one dataset.

    H0 and H1 are computed over the full scale range, optionally clipped
    to `window` = (eps_min, eps_max), filtered to nonzero lifetimes, and
    summarized as entropies and Hill numbers for every order in `q_list`.
    The Vendi score needs coordinates, so it is reported only when `cloud`
    is given and marked unavailable otherwise.
    """
    if not q_list:
        raise ValueError("q_list must be nonempty")
    q_list = tuple(float(q) for q in q_list)
    diag0 = compute_h0(distance_matrix)
    diag1 = compute_h1(build_vr_filtration(distance_matrix, None, 2))
    eps_min, eps_max = 0.0, distance_matrix.diameter
    if window is not None:
        eps_min, eps_max = float(window[0]), float(window[1])
        diag0 = clip_to_window(diag0, eps_min, eps_max)
        diag1 = clip_to_window(diag1, eps_min, eps_max)
    pe, peh, stats = {}, {}, {}
    essential = {}
    for k, diag in ((0, diag0), (1, diag1)):
        dist = LifetimeDistribution.from_diagram(diag, zero_tol)
        pe[k] = {q: renyi_persistence_entropy(dist, q) for q in q_list}
        peh[k] = {q: hill_number(dist, q) for q in q_list}
        stats[k] = summary_stats(dist)
        essential[k] = len(diag.essential_intervals())
    if cloud is not None:
        vendi = vendi_score(cloud)
        vendi_note = "computed"
    else:
        vendi = None
        vendi_note = "unavailable: no point coordinates (distance-only input)"
    meta = {
        "metric": distance_matrix.metric_tag,
        "eps_min": eps_min,
        "eps_max": eps_max,
        "zero_tol": zero_tol,
        "essential_h0": essential[0],
        "essential_h1": essential[1],
        "essential_policy": "essential and censored bars are excluded from lifetime statistics",
        "window_applied": window is not None,
        "q_list": list(q_list),
        "vendi": vendi_note,
    }
    return DiversityReport(pe=pe, peh=peh, stats=stats, vendi_score=vendi, meta=meta)
