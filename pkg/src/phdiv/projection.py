"""Classical (Torgerson) multidimensional scaling to low dimension.

Double-center the squared distances, B = -1/2 J D^2 J with
J = I - (1/n) 11^T, and embed along the top eigenpairs scaled by the
square root of their eigenvalues. Deterministic up to axis sign, which is
fixed by forcing the largest-magnitude coordinate on each axis positive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EigenFailure, TooFewPoints


@dataclass(frozen=True)
class Embedding2D:
    """MDS coordinates plus the residual left out of the embedding.

    `stress` is the Frobenius norm of the discarded eigenvalue mass of the
    centered matrix. `non_euclidean` flags meaningfully negative
    eigenvalues somewhere in the spectrum (cosine input, typically).
    """

    coords: np.ndarray
    stress: float
    non_euclidean: bool


def classical_mds(distance_matrix, dim=2):
    if dim not in (1, 2, 3):
        raise ValueError(f"dim must be 1, 2, or 3, got {dim}")
    n = distance_matrix.n
    if n < dim + 1:
        raise TooFewPoints(f"MDS to dim {dim} needs at least {dim + 1} points")
    full = distance_matrix.full()
    sq = full * full
    row_mean = sq.mean(axis=1, keepdims=True)
    grand = sq.mean()
    b = -0.5 * (sq - row_mean - row_mean.T + grand)
    try:
        evals, evecs = np.linalg.eigh(b)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"MDS eigendecomposition failed: {exc}") from None
    evals = evals[::-1]
    evecs = evecs[:, ::-1]
    top = evals[:dim].copy()
    scale = max(1.0, float(np.abs(evals).max()))
    non_euclidean = bool(evals.min() < -1e-9 * scale)
    top[top < 0.0] = 0.0
    coords = evecs[:, :dim] * np.sqrt(top)
    for axis in range(dim):
        col = coords[:, axis]
        lead = int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            coords[:, axis] = -col
    discarded = np.concatenate([evals[:dim][evals[:dim] < 0.0], evals[dim:]])
    stress = float(np.sqrt(np.sum(discarded * discarded)))
    coords.setflags(write=False)
    return Embedding2D(coords=coords, stress=stress, non_euclidean=non_euclidean)


def recovered_distance_error(embedding, distance_matrix):
    """Max absolute gap between embedded and original pairwise distances."""
    c = embedding.coords
    diff = c[:, None, :] - c[None, :, :]
    rec = np.sqrt((diff * diff).sum(axis=2))
    return float(np.abs(rec - distance_matrix.full()).max())


def embedding_to_csv(embedding, labels=None, subset_kinds=None):
    """CSV text ``x,y,label,subset_kind`` (blank label/kind where unknown)."""
    coords = embedding.coords
    n = coords.shape[0]
    y = coords[:, 1] if coords.shape[1] > 1 else np.zeros(n)
    lines = ["x,y,label,subset_kind"]
    for i in range(n):
        lab = "" if labels is None else str(int(labels[i]))
        kind = "" if subset_kinds is None else subset_kinds[i]
        lines.append(f"{coords[i, 0]!r},{y[i]!r},{lab},{kind}")
    return "\n".join(lines) + "\n"


_MARKER_STYLE = {
    "closest": ("circle", "#1f77b4"),
    "farthest": ("square", "#d62728"),
    "random": ("triangle", "#2ca02c"),
    "": ("dot", "#9a9a9a"),
}

_VIEW_W, _VIEW_H, _MARGIN = 800, 600, 60


def _marker_svg(shape, color, x, y):
    if shape == "square":
        return f'<rect x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" height="8" fill="{color}"/>'
    if shape == "triangle":
        pts = f"{x:.2f},{y - 5:.2f} {x - 4.5:.2f},{y + 4:.2f} {x + 4.5:.2f},{y + 4:.2f}"
        return f'<polygon points="{pts}" fill="{color}"/>'
    r = 4 if shape == "circle" else 2
    return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>'


def embedding_to_svg(embedding, subset_kinds=None, title="MDS projection"):
    """Scatter plot as a standalone SVG string, one marker shape per subset kind."""
    coords = embedding.coords
    n = coords.shape[0]
    xs = coords[:, 0]
    ys = coords[:, 1] if coords.shape[1] > 1 else np.zeros(n)
    kinds = list(subset_kinds) if subset_kinds is not None else [""] * n

    def scaler(vals, lo, hi):
        vmin, vmax = float(vals.min()), float(vals.max())
        span = vmax - vmin
        if span == 0.0:
            return lambda v: (lo + hi) / 2.0
        return lambda v: lo + (v - vmin) / span * (hi - lo)

    sx = scaler(xs, _MARGIN, _VIEW_W - _MARGIN)
    sy = scaler(ys, _VIEW_H - _MARGIN, _MARGIN)  # y grows upward
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_VIEW_W} {_VIEW_H}">',
        f'<rect width="{_VIEW_W}" height="{_VIEW_H}" fill="white"/>',
        f'<text x="{_VIEW_W // 2}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]
    for i in range(n):
        shape, color = _MARKER_STYLE.get(kinds[i], _MARKER_STYLE[""])
        parts.append(_marker_svg(shape, color, sx(xs[i]), sy(ys[i])))
    legend_kinds = sorted({k for k in kinds if k}) or [""]
    ly = 50
    for kind in legend_kinds:
        shape, color = _MARKER_STYLE.get(kind, _MARKER_STYLE[""])
        parts.append(_marker_svg(shape, color, _VIEW_W - 130, ly))
        label = kind if kind else "points"
        parts.append(
            f'<text x="{_VIEW_W - 118}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
        ly += 20
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
