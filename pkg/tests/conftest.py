"""Shared helpers: cloud generators and independent reference algorithms.

The reference implementations here (Prim's MST, direct entropy sums) are
deliberately written from scratch so tests never share logic with the
library paths they check.
"""

import math

import numpy as np

from phdiv import PointCloud, compute_distance_matrix


def random_cloud(rng, n, d, labeled=False):
    pts = rng.normal(size=(n, d))
    labels = rng.integers(0, 2, n) if labeled else None
    return PointCloud(pts, labels)


def cloud_and_matrix(rng, n, d, metric="euclidean"):
    cloud = random_cloud(rng, n, d)
    return cloud, compute_distance_matrix(cloud, metric)


def finite_multiset(diag):
    """Sorted (birth, death) pairs of non-essential intervals."""
    return sorted((iv.birth, iv.death) for iv in diag.intervals if not iv.essential)


def essential_births(diag):
    return sorted(iv.birth for iv in diag.intervals if iv.essential)


def prim_mst_weights(full):
    """Edge weights of a minimum spanning tree via Prim's algorithm.

    Dense O(n^2) scan, no shared code with the Kruskal/union-find path.
    """
    n = full.shape[0]
    if n < 2:
        return []
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, math.inf)
    in_tree[0] = True
    best = full[0].copy()
    best[0] = math.inf
    weights = []
    for _ in range(n - 1):
        j = int(np.argmin(np.where(in_tree, math.inf, best)))
        weights.append(float(best[j]))
        in_tree[j] = True
        better = full[j] < best
        best = np.where(better, full[j], best)
        best[in_tree] = math.inf
    return sorted(weights)


def shannon_reference(lifetimes):
    """Direct -sum p log p over explicit fractions."""
    total = sum(lifetimes)
    acc = 0.0
    for l in lifetimes:
        p = l / total
        if p > 0:
            acc -= p * math.log(p)
    return acc


def renyi_reference(lifetimes, q):
    """Direct (1/(1-q)) log sum p^q."""
    total = sum(lifetimes)
    s = sum((l / total) ** q for l in lifetimes)
    return math.log(s) / (1.0 - q)
