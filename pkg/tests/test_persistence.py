import math

import numpy as np
import pytest

from phdiv import (
    FiltrationDimError,
    Interval,
    PersistenceDiagram,
    PointCloud,
    SizeLimit,
    build_vr_filtration,
    compute_distance_matrix,
    compute_h0,
    compute_h1,
    diagram_to_csv,
    diagrams_match,
    nonzero_intervals,
    oracle_reduce,
    validate_distance_matrix,
)

from conftest import essential_births, finite_multiset, prim_mst_weights, random_cloud

SQRT2 = math.sqrt(2.0)


def line_cloud(*xs):
    return PointCloud([[float(x)] for x in xs])


def unit_square():
    return PointCloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class TestComputeH0:
    def test_three_points_on_line(self):
        # MST of {0, 1, 3} has edges 1 and 2 (hand-run Kruskal)
        dm = compute_distance_matrix(line_cloud(0, 1, 3))
        diag = compute_h0(dm)
        assert finite_multiset(diag) == [(0.0, 1.0), (0.0, 2.0)]
        assert essential_births(diag) == [0.0]

    def test_three_points_match_oracle(self):
        dm = compute_distance_matrix(line_cloud(0, 1, 3))
        o0, _ = oracle_reduce(build_vr_filtration(dm))
        assert diagrams_match(compute_h0(dm), o0)

    def test_identical_points(self):
        n = 6
        dm = compute_distance_matrix(PointCloud([[1.0, 2.0]] * n))
        diag = compute_h0(dm)
        assert finite_multiset(diag) == [(0.0, 0.0)] * (n - 1)
        assert len(essential_births(diag)) == 1

    def test_single_point(self):
        dm = compute_distance_matrix(PointCloud([[0.0]]))
        diag = compute_h0(dm)
        assert finite_multiset(diag) == []
        assert essential_births(diag) == [0.0]

    def test_small_eps_keeps_components_apart(self):
        dm = compute_distance_matrix(line_cloud(0, 1, 3))
        diag = compute_h0(dm, eps_max=0.5)
        assert finite_multiset(diag) == []
        assert len(essential_births(diag)) == 3

    def test_h0_deaths_are_mst_weights(self):
        rng = np.random.default_rng(20)
        for _ in range(30):
            n = int(rng.integers(2, 30))
            dm = compute_distance_matrix(random_cloud(rng, n, 3))
            deaths = sorted(d for _, d in finite_multiset(compute_h0(dm)))
            expected = prim_mst_weights(dm.full())
            assert np.allclose(deaths, expected, atol=1e-9)


class TestComputeH1:
    def test_unit_square(self):
        dm = compute_distance_matrix(unit_square())
        diag = compute_h1(build_vr_filtration(dm))
        nz = nonzero_intervals(diag)
        assert len(nz) == 1
        (iv,) = nz.intervals
        assert iv.birth == pytest.approx(1.0, abs=1e-12)
        assert iv.death == pytest.approx(SQRT2, abs=1e-12)

    def test_unit_square_matches_oracle(self):
        dm = compute_distance_matrix(unit_square())
        filt = build_vr_filtration(dm)
        _, o1 = oracle_reduce(filt)
        assert diagrams_match(compute_h1(filt), o1)

    def test_equilateral_zero_lifetime_retained(self):
        dm = validate_distance_matrix(
            [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]
        )
        diag = compute_h1(build_vr_filtration(dm))
        assert finite_multiset(diag) == [(1.0, 1.0)]
        assert len(nonzero_intervals(diag)) == 0

    def test_identical_points_no_loops(self):
        dm = compute_distance_matrix(PointCloud([[3.0, 4.0]] * 7))
        diag = compute_h1(build_vr_filtration(dm))
        assert len(nonzero_intervals(diag)) == 0

    def test_requires_triangles(self):
        dm = compute_distance_matrix(unit_square())
        with pytest.raises(FiltrationDimError):
            compute_h1(build_vr_filtration(dm, None, max_dim=1))

    def test_essential_loop_below_diameter(self):
        # cut the filtration before the diagonals: the square loop never fills
        dm = compute_distance_matrix(unit_square())
        diag = compute_h1(build_vr_filtration(dm, 1.2))
        assert finite_multiset(diag) == []
        assert essential_births(diag) == [1.0]


class TestOracle:
    def test_single_point(self):
        dm = compute_distance_matrix(PointCloud([[0.0]]))
        o0, o1 = oracle_reduce(build_vr_filtration(dm))
        assert essential_births(o0) == [0.0]
        assert len(o0.finite_intervals()) == 0
        assert len(o1) == 0

    def test_two_points(self):
        dm = validate_distance_matrix([[0.0, 1.0], [1.0, 0.0]])
        o0, o1 = oracle_reduce(build_vr_filtration(dm))
        assert finite_multiset(o0) == [(0.0, 1.0)]
        assert essential_births(o0) == [0.0]
        assert len(o1) == 0

    def test_size_limit(self):
        rng = np.random.default_rng(21)
        dm = compute_distance_matrix(random_cloud(rng, 12, 2))
        with pytest.raises(SizeLimit):
            oracle_reduce(build_vr_filtration(dm), max_simplices=10)

    def test_requires_triangles(self):
        dm = compute_distance_matrix(unit_square())
        with pytest.raises(FiltrationDimError):
            oracle_reduce(build_vr_filtration(dm, None, max_dim=1))

    def test_equivalence_random_clouds(self):
        rng = np.random.default_rng(22)
        for _ in range(25):
            n = int(rng.integers(4, 18))
            d = int(rng.choice([2, 3, 8]))
            metric = "euclidean" if rng.random() < 0.5 else "cosine"
            dm = compute_distance_matrix(random_cloud(rng, n, d), metric)
            filt = build_vr_filtration(dm)
            o0, o1 = oracle_reduce(filt)
            assert diagrams_match(compute_h0(dm), o0)
            assert diagrams_match(compute_h1(filt), o1)

    def test_equivalence_with_duplicates_and_ties(self):
        # grid data has many exactly-tied distances; duplicates add zero edges
        pts = [[float(i), float(j)] for i in range(3) for j in range(3)]
        pts += [pts[0], pts[4], pts[4]]
        dm = compute_distance_matrix(PointCloud(pts))
        filt = build_vr_filtration(dm)
        o0, o1 = oracle_reduce(filt)
        assert diagrams_match(compute_h0(dm), o0)
        assert diagrams_match(compute_h1(filt), o1)


class TestNonzeroIntervals:
    def test_drops_zero_and_essential(self):
        diag = PersistenceDiagram(
            0, [Interval(0.0, 1.0), Interval(0.0, 0.0), Interval(0.0, math.inf)]
        )
        assert finite_multiset(nonzero_intervals(diag)) == [(0.0, 1.0)]

    def test_all_zero(self):
        diag = PersistenceDiagram(0, [Interval(0.0, 0.0)] * 4)
        assert len(nonzero_intervals(diag)) == 0

    def test_below_tolerance(self):
        diag = PersistenceDiagram(1, [Interval(0.5, 0.5 + 1e-13)])
        assert len(nonzero_intervals(diag, tol=1e-12)) == 0

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            nonzero_intervals(PersistenceDiagram(0, []), tol=-1.0)


class TestAxioms:
    def test_twin_property_exact(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            n = int(rng.integers(3, 14))
            cloud = random_cloud(rng, n, 3)
            dup = int(rng.integers(0, n))
            twin = PointCloud(np.vstack([cloud.points, cloud.points[dup]]))
            dm = compute_distance_matrix(cloud)
            dm2 = compute_distance_matrix(twin)
            f1 = build_vr_filtration(dm)
            f2 = build_vr_filtration(dm2)
            for a, b in (
                (compute_h0(dm), compute_h0(dm2)),
                (compute_h1(f1), compute_h1(f2)),
            ):
                assert finite_multiset(nonzero_intervals(a)) == finite_multiset(
                    nonzero_intervals(b)
                )

    def test_permutation_invariance_exact(self):
        rng = np.random.default_rng(24)
        for _ in range(15):
            n = int(rng.integers(3, 14))
            cloud = random_cloud(rng, n, 3)
            perm = rng.permutation(n)
            dm = compute_distance_matrix(cloud)
            dm2 = compute_distance_matrix(PointCloud(cloud.points[perm]))
            assert finite_multiset(compute_h0(dm)) == finite_multiset(compute_h0(dm2))
            h1a = compute_h1(build_vr_filtration(dm))
            h1b = compute_h1(build_vr_filtration(dm2))
            assert finite_multiset(h1a) == finite_multiset(h1b)

    def test_truncation_is_prefix_of_full_run(self):
        # diagrams at a lower eps_max are exactly the full-range diagrams
        # truncated: finite bars dying within range survive, the rest of the
        # born-by-eps bars turn essential
        rng = np.random.default_rng(25)
        for _ in range(10):
            n = int(rng.integers(4, 14))
            dm = compute_distance_matrix(random_cloud(rng, n, 2))
            eps = float(rng.uniform(0.2, 1.0)) * dm.diameter
            for compute, full_diag in (
                (lambda e: compute_h0(dm, e), compute_h0(dm)),
                (
                    lambda e: compute_h1(build_vr_filtration(dm, e)),
                    compute_h1(build_vr_filtration(dm)),
                ),
            ):
                cut = compute(eps)
                want_finite = sorted(
                    (b, d) for b, d in finite_multiset(full_diag) if d <= eps
                )
                want_essential = sorted(
                    [b for b, d in finite_multiset(full_diag) if b <= eps < d]
                    + [b for b in essential_births(full_diag) if b <= eps]
                )
                assert finite_multiset(cut) == want_finite
                assert essential_births(cut) == want_essential


class TestExport:
    def test_csv_shape_and_inf(self):
        diag = PersistenceDiagram(0, [Interval(0.0, 1.5), Interval(0.0, math.inf)])
        text = diagram_to_csv(diag)
        lines = text.strip().split("\n")
        assert lines[0] == "k,birth,death,lifetime"
        assert lines[1] == "0,0.0,1.5,1.5"
        assert lines[2] == "0,0.0,inf,inf"

    def test_diagrams_match_tolerance(self):
        a = PersistenceDiagram(0, [Interval(0.0, 1.0)])
        b = PersistenceDiagram(0, [Interval(0.0, 1.0 + 5e-10)])
        c = PersistenceDiagram(0, [Interval(0.0, 1.1)])
        assert diagrams_match(a, b)
        assert not diagrams_match(a, c)
        assert not diagrams_match(a, PersistenceDiagram(0, []))
