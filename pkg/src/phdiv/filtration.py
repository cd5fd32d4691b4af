"""Vietoris-Rips filtrations up to simplex dimension 2.

A simplex enters at the largest pairwise distance among its vertices.
The canonical total order is (value, dim, lexicographic vertex tuple),
which guarantees faces precede cofaces at equal value.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from ._reduction import count_triangles
from .errors import DimensionMismatch


@dataclass(frozen=True)
class Simplex:
    """A vertex, edge, or triangle with its filtration value."""

    vertices: tuple
    value: float

    @property
    def dim(self):
        return len(self.vertices) - 1

    @property
    def sort_key(self):
        return (self.value, self.dim, self.vertices)

    def faces(self):
        """Codimension-1 faces (empty for a vertex)."""
        if self.dim == 0:
            return ()
        return tuple(
            tuple(v for k, v in enumerate(self.vertices) if k != drop)
            for drop in range(len(self.vertices))
        )


class Filtration:
    """Ordered Vietoris-Rips complex of a distance matrix.

    The simplex sequence is defined by (distance_matrix, eps_max, max_dim)
    and generated on demand: consumers that can stream (the H1 reduction)
    never materialize it, while `simplices` materializes the full sorted
    tuple as a fallback for small inputs, tests, and the oracle.
    """

    def __init__(self, distance_matrix, eps_max, max_dim):
        self.distance_matrix = distance_matrix
        self.eps_max = float(eps_max)
        self.max_dim = int(max_dim)
        self.n = distance_matrix.n

    @cached_property
    def simplices(self):
        """All simplices in canonical order. Materializes; O(n^3) at dim 2."""
        items = [Simplex((i,), 0.0) for i in range(self.n)]
        iu, ju = np.triu_indices(self.n, k=1)
        w = self.distance_matrix.condensed
        keep = w <= self.eps_max
        for i, j, v in zip(iu[keep], ju[keep], w[keep]):
            items.append(Simplex((int(i), int(j)), float(v)))
        if self.max_dim >= 2:
            dm = self.distance_matrix
            for a, b, c in combinations(range(self.n), 3):
                v = max(dm.value(a, b), dm.value(a, c), dm.value(b, c))
                if v <= self.eps_max:
                    items.append(Simplex((a, b, c), v))
        items.sort(key=lambda s: s.sort_key)
        return tuple(items)

    def __iter__(self):
        return iter(self.simplices)

    def counts(self):
        """(vertices, edges, triangles) without materializing simplices."""
        w = self.distance_matrix.condensed
        n_edges = int(np.count_nonzero(w <= self.eps_max)) if w.size else 0
        n_tri = 0
        if self.max_dim >= 2 and self.n >= 3:
            eu, ev, ew = sorted_edges(self.distance_matrix, self.eps_max)
            eid = edge_index_matrix(self.n, eu, ev)
            n_tri = int(count_triangles(self.n, eu, ev, eid))
        return self.n, n_edges, n_tri

    def __len__(self):
        return sum(self.counts())

    def __repr__(self):
        return (
            f"Filtration(n={self.n}, eps_max={self.eps_max}, max_dim={self.max_dim})"
        )


def build_vr_filtration(distance_matrix, eps_max=None, max_dim=2):
    """Construct the Vietoris-Rips filtration of a distance matrix.

    Parameters
    ----------
    distance_matrix : DistanceMatrix
    eps_max : float or None
        Upper filtration bound. None resolves to the diameter, the full
        scale range [0, max d(x_i, x_j)].
    max_dim : int
        1 (vertices and edges) or 2 (adds triangles, needed for H1).
    """
    if max_dim not in (1, 2):
        raise DimensionMismatch(f"max_dim must be 1 or 2, got {max_dim}")
    if eps_max is None:
        eps_max = distance_matrix.diameter
    eps_max = float(eps_max)
    if eps_max < 0:
        raise ValueError(f"eps_max must be >= 0, got {eps_max}")
    return Filtration(distance_matrix, eps_max, max_dim)


def sorted_edges(distance_matrix, eps_max):
    """Edges with value <= eps_max, sorted by (value, i, j).

    Returns (eu, ev, ew): int32 endpoint arrays with eu < ev, float64 values.
    The position of an edge in these arrays is its reduction row index.
    """
    n = distance_matrix.n
    w = distance_matrix.condensed
    iu, ju = np.triu_indices(n, k=1)
    keep = w <= eps_max
    eu = iu[keep].astype(np.int32)
    ev = ju[keep].astype(np.int32)
    ew = w[keep]
    order = np.lexsort((ev, eu, ew))
    return eu[order], ev[order], ew[order]


def edge_index_matrix(n, eu, ev):
    """Dense (n, n) lookup from vertex pair to edge row, -1 where absent."""
    eid = np.full((n, n), -1, dtype=np.int64)
    rows = np.arange(eu.size, dtype=np.int64)
    eid[eu, ev] = rows
    eid[ev, eu] = rows
    return eid
