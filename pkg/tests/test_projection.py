import math

import numpy as np
import pytest

from phdiv import (
    PointCloud,
    TooFewPoints,
    classical_mds,
    compute_distance_matrix,
    embedding_to_csv,
    embedding_to_svg,
    validate_distance_matrix,
)
from phdiv.projection import recovered_distance_error

from conftest import random_cloud


def pairwise(coords):
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


class TestClassicalMds:
    def test_two_points_exact_separation(self):
        dm = validate_distance_matrix([[0.0, 3.5], [3.5, 0.0]])
        emb = classical_mds(dm, dim=1)
        assert abs(emb.coords[0, 0] - emb.coords[1, 0]) == pytest.approx(3.5, abs=1e-12)

    def test_unit_square_recovers_distances(self):
        cloud = PointCloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        dm = compute_distance_matrix(cloud)
        emb = classical_mds(dm, dim=2)
        rec = sorted(pairwise(emb.coords)[np.triu_indices(4, 1)])
        expected = sorted([1, 1, 1, 1, math.sqrt(2), math.sqrt(2)])
        assert np.allclose(rec, expected, atol=1e-6)

    def test_planar_clouds_recovered(self):
        rng = np.random.default_rng(60)
        for _ in range(10):
            n = int(rng.integers(3, 30))
            cloud = random_cloud(rng, n, 2)
            dm = compute_distance_matrix(cloud)
            emb = classical_mds(dm, dim=2)
            assert recovered_distance_error(emb, dm) <= 1e-6 * dm.diameter
            assert not emb.non_euclidean

    def test_coords_centered(self):
        rng = np.random.default_rng(61)
        dm = compute_distance_matrix(random_cloud(rng, 20, 2))
        emb = classical_mds(dm, dim=2)
        assert np.all(np.abs(emb.coords.mean(axis=0)) <= 1e-9)

    def test_deterministic_with_sign_convention(self):
        rng = np.random.default_rng(62)
        dm = compute_distance_matrix(random_cloud(rng, 15, 3))
        a = classical_mds(dm, dim=2)
        b = classical_mds(dm, dim=2)
        assert np.array_equal(a.coords, b.coords)
        for axis in range(2):
            col = a.coords[:, axis]
            assert col[int(np.argmax(np.abs(col)))] >= 0

    def test_cosine_flags_non_euclidean(self):
        rng = np.random.default_rng(63)
        dm = compute_distance_matrix(random_cloud(rng, 25, 4), "cosine")
        emb = classical_mds(dm, dim=2)
        assert emb.non_euclidean

    def test_stress_zero_for_exact_embedding(self):
        rng = np.random.default_rng(64)
        dm = compute_distance_matrix(random_cloud(rng, 10, 2))
        emb = classical_mds(dm, dim=2)
        assert emb.stress <= 1e-6 * dm.diameter ** 2

    def test_dim_validation(self):
        rng = np.random.default_rng(65)
        dm = compute_distance_matrix(random_cloud(rng, 10, 2))
        with pytest.raises(ValueError):
            classical_mds(dm, dim=4)

    def test_too_few_points(self):
        dm = compute_distance_matrix(PointCloud([[0.0], [1.0]]))
        with pytest.raises(TooFewPoints):
            classical_mds(dm, dim=2)


class TestWriters:
    def setup_method(self):
        rng = np.random.default_rng(66)
        self.cloud = random_cloud(rng, 4, 2)
        self.dm = compute_distance_matrix(self.cloud)
        self.emb = classical_mds(self.dm, dim=2)

    def test_csv_header_and_rows(self):
        text = embedding_to_csv(self.emb, labels=[0, 1, 0, 1],
                                subset_kinds=["closest", "", "random", ""])
        lines = text.strip().split("\n")
        assert lines[0] == "x,y,label,subset_kind"
        assert len(lines) == 5
        assert lines[1].endswith(",0,closest")

    def test_svg_has_markers_and_legend(self):
        svg = embedding_to_svg(self.emb, ["closest", "farthest", "random", ""])
        assert svg.startswith("<svg")
        assert 'viewBox="0 0 800 600"' in svg
        assert "<circle" in svg and "<rect" in svg and "<polygon" in svg
        assert ">closest<" in svg and ">farthest<" in svg and ">random<" in svg

    def test_svg_marker_count_square(self):
        svg = embedding_to_svg(self.emb)
        # 4 data markers (dots) plus one legend marker
        assert svg.count("<circle") == 5

    def test_svg_deterministic(self):
        a = embedding_to_svg(self.emb, ["closest", "", "", ""])
        b = embedding_to_svg(self.emb, ["closest", "", "", ""])
        assert a == b
