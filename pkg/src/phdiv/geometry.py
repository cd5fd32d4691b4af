"""Point clouds and pairwise distance matrices.

Distances are stored condensed (one entry per unordered pair), so symmetry
holds by construction and the implicit diagonal is exactly zero.
"""

import csv

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import (
    AsymmetryError,
    DimensionMismatch,
    NegativeDistance,
    NonFinite,
    NonzeroDiagonal,
    ZeroVectorError,
)

EUCLIDEAN = "euclidean"
COSINE = "cosine"
PRECOMPUTED = "precomputed"

POINT_METRICS = (EUCLIDEAN, COSINE)

#: relative tolerance for symmetrizing / diagonal checks on precomputed input
SYMMETRY_TOL = 1e-9


class PointCloud:
    """n points in R^d with optional integer class labels.

    Parameters
    ----------
    points : array_like, shape (n, d)
        Real coordinates, one row per point.
    labels : array_like of int, shape (n,), optional
        Class identifiers aligned with the rows of `points`.
    """

    __slots__ = ("points", "labels")

    def __init__(self, points, labels=None):
        try:
            arr = np.array(points, dtype=np.float64)
        except (ValueError, TypeError) as exc:
            raise DimensionMismatch(f"points are not a rectangular real array: {exc}") from None
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected an (n, d) array of points, got ndim={arr.ndim}")
        n, d = arr.shape
        if n < 1:
            raise DimensionMismatch("a point cloud needs at least one point")
        if d < 1:
            raise DimensionMismatch("points need at least one coordinate")
        arr.setflags(write=False)
        self.points = arr
        if labels is None:
            self.labels = None
        else:
            lab = np.array(labels, dtype=np.int64)
            if lab.shape != (n,):
                raise DimensionMismatch(
                    f"labels must have length {n}, got shape {lab.shape}"
                )
            lab.setflags(write=False)
            self.labels = lab

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]

    def subset(self, indices):
        """New cloud restricted to `indices` (order preserved)."""
        idx = np.asarray(indices, dtype=np.int64)
        labels = self.labels[idx] if self.labels is not None else None
        return PointCloud(self.points[idx], labels)

    def __repr__(self):
        tag = "labeled" if self.labels is not None else "unlabeled"
        return f"PointCloud(n={self.n}, d={self.d}, {tag})"


class DistanceMatrix:
    """Symmetric pairwise distances over n points, condensed storage.

    `condensed` holds the n(n-1)/2 upper-triangular entries in row-major
    pair order (0,1), (0,2), ..., (n-2, n-1). Entries are validated to be
    finite and nonnegative; the diagonal is implicit and exactly zero.
    """

    __slots__ = ("n", "metric_tag", "condensed")

    def __init__(self, n, condensed, metric_tag):
        cond = np.asarray(condensed, dtype=np.float64).reshape(-1)
        if cond.size != n * (n - 1) // 2:
            raise DimensionMismatch(
                f"condensed length {cond.size} does not match n={n}"
            )
        if cond.size and not np.isfinite(cond).all():
            raise NonFinite("distance matrix contains NaN or infinite entries")
        if cond.size and cond.min() < 0.0:
            raise NegativeDistance(f"negative distance entry: {cond.min()}")
        cond = np.array(cond, copy=True)
        cond.setflags(write=False)
        self.n = int(n)
        self.metric_tag = metric_tag
        self.condensed = cond

    def value(self, i, j):
        """Distance between points i and j."""
        if i == j:
            return 0.0
        if i > j:
            i, j = j, i
        return float(self.condensed[self._pair_index(i, j)])

    def _pair_index(self, i, j):
        return self.n * i - i * (i + 1) // 2 + (j - i - 1)

    def full(self):
        """Dense symmetric (n, n) array; a fresh copy each call."""
        if self.n == 1:
            return np.zeros((1, 1))
        return squareform(self.condensed, checks=False)

    @property
    def diameter(self):
        """Largest pairwise distance (0 for a single point)."""
        return float(self.condensed.max()) if self.condensed.size else 0.0

    def submatrix(self, indices):
        """Distance matrix restricted to `indices`, same metric tag."""
        idx = np.asarray(indices, dtype=np.int64)
        sub = self.full()[np.ix_(idx, idx)]
        cond = squareform(sub, checks=False) if idx.size > 1 else np.empty(0)
        return DistanceMatrix(idx.size, cond, self.metric_tag)

    def __repr__(self):
        return f"DistanceMatrix(n={self.n}, metric={self.metric_tag})"


def compute_distance_matrix(cloud, metric=EUCLIDEAN):
    """Pairwise distances of a point cloud under the chosen metric.

    Euclidean is the L2 norm of coordinate differences. Cosine is
    1 - cos(angle), clamped to [0, 2] against floating-point rounding;
    it requires every point to have nonzero norm.
    """
    if metric not in POINT_METRICS:
        raise ValueError(f"metric must be one of {POINT_METRICS}, got {metric!r}")
    pts = cloud.points
    if cloud.n == 1:
        return DistanceMatrix(1, np.empty(0), metric)
    if metric == COSINE:
        norms = np.linalg.norm(pts, axis=1)
        if np.any(norms == 0.0):
            bad = int(np.flatnonzero(norms == 0.0)[0])
            raise ZeroVectorError(f"point {bad} has zero norm; cosine distance undefined")
        cond = np.clip(pdist(pts, metric="cosine"), 0.0, 2.0)
    else:
        cond = pdist(pts, metric="euclidean")
    return DistanceMatrix(cloud.n, cond, metric)


def validate_distance_matrix(raw):
    """Validate a square array of precomputed distances.

    Asymmetry within relative tolerance 1e-9 is symmetrized by averaging;
    a diagonal within 1e-9 of zero is forced to zero. Gross asymmetry,
    nonzero diagonals, negative entries, and non-finite entries are errors.
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise NonFinite("precomputed matrix contains NaN or infinite entries")
    if arr.min() < -SYMMETRY_TOL:
        raise NegativeDistance(f"negative distance entry: {arr.min()}")
    gap = np.abs(arr - arr.T)
    tol = SYMMETRY_TOL * np.maximum(1.0, np.abs(arr))
    if np.any(gap > tol):
        i, j = np.unravel_index(int(np.argmax(gap - tol)), arr.shape)
        raise AsymmetryError(
            f"entries ({i},{j}) and ({j},{i}) differ by {gap[i, j]}"
        )
    diag = np.abs(np.diagonal(arr))
    if np.any(diag > SYMMETRY_TOL):
        bad = int(np.argmax(diag))
        raise NonzeroDiagonal(f"diagonal entry {bad} is {arr[bad, bad]}")
    n = arr.shape[0]
    if n == 1:
        return DistanceMatrix(1, np.empty(0), PRECOMPUTED)
    sym = 0.5 * (arr + arr.T)
    np.fill_diagonal(sym, 0.0)
    cond = np.maximum(squareform(sym, checks=False), 0.0)
    return DistanceMatrix(n, cond, PRECOMPUTED)


def _looks_numeric(row):
    for cell in row:
        try:
            float(cell)
        except ValueError:
            return False
    return True


def load_points_csv(path):
    """Read a point cloud from CSV, one row per point.

    Columns are real coordinates. A header row whose final column is
    named ``label`` marks an integer class column; any other header row
    just names the coordinates. Headerless all-numeric files are accepted.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError(f"{path}: empty points file")
    has_label = False
    start = 0
    if not _looks_numeric(rows[0]):
        header = [c.strip().lower() for c in rows[0]]
        has_label = bool(header) and header[-1] == "label"
        start = 1
    data = rows[start:]
    if not data:
        raise ValueError(f"{path}: no data rows")
    try:
        if has_label:
            coords = [[float(c) for c in r[:-1]] for r in data]
            labels = [int(float(r[-1])) for r in data]
            return PointCloud(coords, labels)
        coords = [[float(c) for c in r] for r in data]
        return PointCloud(coords)
    except ValueError as exc:
        raise ValueError(f"{path}: malformed row: {exc}") from None


def load_distance_csv(path):
    """Read and validate a precomputed n x n distance matrix (headerless CSV)."""
    arr = np.loadtxt(path, delimiter=",", ndmin=2)
    return validate_distance_matrix(arr)
