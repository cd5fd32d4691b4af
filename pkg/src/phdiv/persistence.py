"""Persistence diagrams in dimensions 0 and 1.

H0 comes from a Kruskal sweep over ascending edges (each merge emits an
interval born at 0). H1 comes from boundary-matrix reduction over Z/2 of
the triangle columns, with edge columns never built: the Kruskal pass has
already decided which edges kill components, and the remaining edges are
the cycle creators. `oracle_reduce` is the independent check: a textbook
dense reduction of the full boundary matrix, sharing no logic with the
fast path.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._reduction import kruskal_merge_mask, reduce_triangles
from .errors import FiltrationDimError, SizeLimit
from .filtration import edge_index_matrix, sorted_edges

ESSENTIAL = math.inf

#: absolute lifetime below which an interval counts as zero
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """One persistence interval.

    `essential` marks features that never die within the observed scale
    range: either death is infinite (never died in the filtration) or the
    interval was right-censored at a window bound by `clip_to_window`.
    """

    birth: float
    death: float
    essential: bool = None

    def __post_init__(self):
        if self.essential is None:
            object.__setattr__(self, "essential", math.isinf(self.death))
        if math.isinf(self.death) and not self.essential:
            raise ValueError("infinite death implies an essential interval")
        if not math.isinf(self.death) and self.death < self.birth:
            raise ValueError(f"death {self.death} precedes birth {self.birth}")
        if self.birth < 0:
            raise ValueError(f"negative birth {self.birth}")

    @property
    def lifetime(self):
        return self.death - self.birth


class PersistenceDiagram:
    """Multiset of intervals in one homology dimension (0 or 1).

    Intervals are kept in canonical (birth, death, essential) order so
    exports and comparisons are deterministic.
    """

    __slots__ = ("k", "intervals")

    def __init__(self, k, intervals):
        if k not in (0, 1):
            raise ValueError(f"homology dimension must be 0 or 1, got {k}")
        self.k = k
        self.intervals = tuple(
            sorted(intervals, key=lambda iv: (iv.birth, iv.death, iv.essential))
        )

    @property
    def m_k(self):
        return len(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def finite_intervals(self):
        return tuple(iv for iv in self.intervals if not iv.essential)

    def essential_intervals(self):
        return tuple(iv for iv in self.intervals if iv.essential)

    def lifetimes(self, tol=ZERO_TOL):
        """Sorted array of finite lifetimes exceeding ``tol``."""
        vals = [iv.lifetime for iv in self.intervals if not iv.essential and iv.lifetime > tol]
        return np.sort(np.asarray(vals, dtype=np.float64))

    def __repr__(self):
        ess = len(self.essential_intervals())
        return f"PersistenceDiagram(k={self.k}, intervals={len(self)}, essential={ess})"


def nonzero_intervals(diag, tol=ZERO_TOL):
    """Drop zero-lifetime (within ``tol``) and essential intervals."""
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    kept = [
        iv for iv in diag.intervals if not iv.essential and iv.lifetime > tol
    ]
    return PersistenceDiagram(diag.k, kept)


def compute_h0(distance_matrix, eps_max=None):
    """H0 diagram of the Vietoris-Rips filtration up to ``eps_max``.

    Edges are swept ascending by (weight, i, j); every merge of two
    components emits an interval (0, weight). Components still separate at
    ``eps_max`` yield essential intervals; with the full diameter range
    there is exactly one.
    """
    n = distance_matrix.n
    eps = distance_matrix.diameter if eps_max is None else float(eps_max)
    eu, ev, ew = sorted_edges(distance_matrix, eps)
    intervals = []
    merges = 0
    if eu.size:
        mask = kruskal_merge_mask(n, eu, ev)
        merges = int(mask.sum())
        intervals = [Interval(0.0, float(d)) for d in ew[mask]]
    intervals.extend(Interval(0.0, math.inf) for _ in range(n - merges))
    return PersistenceDiagram(0, intervals)


def compute_h1(filt):
    """H1 diagram of a max_dim=2 filtration via triangle-column reduction.

    A triangle whose reduced column bottoms out at edge e pairs as
    (value(e), value(triangle)); zero-lifetime pairs are retained. Cycle
    edges never killed within ``eps_max`` are essential.
    """
    if filt.max_dim < 2:
        raise FiltrationDimError("H1 needs a filtration built with max_dim=2")
    dm = filt.distance_matrix
    n = filt.n
    intervals = []
    eu, ev, ew = sorted_edges(dm, filt.eps_max)
    if eu.size:
        eid = edge_index_matrix(n, eu, ev)
        is_pos = ~kruskal_merge_mask(n, eu, ev)
        pair_rows, pair_deaths, pivot = reduce_triangles(n, eu, ev, ew, eid, is_pos)
        for r, d in zip(pair_rows, pair_deaths):
            intervals.append(Interval(float(ew[r]), float(d)))
        for r in np.flatnonzero(is_pos & (pivot < 0)):
            intervals.append(Interval(float(ew[r]), math.inf))
    return PersistenceDiagram(1, intervals)


def oracle_reduce(filt, max_simplices=50_000):
    """Textbook reduction of the full boundary matrix; returns (H0, H1).

    Dense Z/2 columns over all simplices in filtration order, reduced
    left to right with no shortcuts. Meant for small inputs (n up to ~30)
    as an independent correctness reference.
    """
    if filt.max_dim < 2:
        raise FiltrationDimError("oracle needs a filtration built with max_dim=2")
    nv, ne, nt = filt.counts()
    total = nv + ne + nt
    if total > max_simplices:
        raise SizeLimit(f"{total} simplices exceed the oracle bound {max_simplices}")
    simplices = filt.simplices
    N = len(simplices)
    index = {s.vertices: i for i, s in enumerate(simplices)}
    R = np.zeros((N, N), dtype=bool)
    for j, s in enumerate(simplices):
        for f in s.faces():
            R[index[f], j] = True
    owner = np.full(N, -1, dtype=np.int64)  # row -> column with that low
    low_of = np.full(N, -1, dtype=np.int64)
    for j in range(N):
        while True:
            nz = np.flatnonzero(R[:, j])
            if nz.size == 0:
                break
            low = int(nz[-1])
            k = owner[low]
            if k < 0:
                owner[low] = j
                low_of[j] = low
                break
            R[:, j] ^= R[:, k]
    h0, h1 = [], []
    for j in range(N):
        low = int(low_of[j])
        if low >= 0:
            birth = simplices[low]
            death = simplices[j]
            if birth.dim == 0:
                h0.append(Interval(birth.value, death.value))
            elif birth.dim == 1:
                h1.append(Interval(birth.value, death.value))
    for i in range(N):
        if low_of[i] < 0 and owner[i] < 0:  # creates a class that never dies
            s = simplices[i]
            if s.dim == 0:
                h0.append(Interval(0.0, math.inf))
            elif s.dim == 1:
                h1.append(Interval(s.value, math.inf))
    return PersistenceDiagram(0, h0), PersistenceDiagram(1, h1)


def diagrams_match(a, b, tol=1e-9):
    """Multiset equality of two diagrams within a per-coordinate tolerance."""
    fa, fb = a.finite_intervals(), b.finite_intervals()
    if len(fa) != len(fb):
        return False
    for x, y in zip(fa, fb):
        if abs(x.birth - y.birth) > tol or abs(x.death - y.death) > tol:
            return False
    ea = sorted(iv.birth for iv in a.essential_intervals())
    eb = sorted(iv.birth for iv in b.essential_intervals())
    if len(ea) != len(eb):
        return False
    return all(abs(x - y) <= tol for x, y in zip(ea, eb))


def diagram_to_csv(diag):
    """CSV text with header ``k,birth,death,lifetime``; infinite deaths as ``inf``."""
    lines = ["k,birth,death,lifetime"]
    for iv in diag.intervals:
        death = "inf" if math.isinf(iv.death) else repr(iv.death)
        life = "inf" if math.isinf(iv.death) else repr(iv.lifetime)
        lines.append(f"{diag.k},{iv.birth!r},{death},{life}")
    return "\n".join(lines) + "\n"
