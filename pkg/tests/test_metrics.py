import math

import numpy as np
import pytest

from persland import (
    Barcode,
    GridBarcode,
    GridSpec,
    build_grid_landscape,
    build_landscape,
    grid_lp_distance,
    inner_product,
    linear_combination,
    lp_distance,
    lp_norm,
    random_barcode,
    scale,
    segment_lp_integral,
    sup_norm,
)
from helpers import (
    quad_inner_product,
    quad_lp_distance,
    quad_lp_norm,
    random_landscapes,
)

INF = math.inf


def tri(b, d):
    return build_landscape(Barcode([(b, d)]))


FIG = build_landscape(Barcode([(1, 5), (2, 8), (3, 4), (5, 9), (6, 7)]))


class TestSegmentIntegral:
    def test_unit_triangle_area(self):
        assert segment_lp_integral(0, 0, 1, 1, 1) == 0.5

    def test_sign_change_splits(self):
        assert segment_lp_integral(0, -1, 2, 1, 1) == 1.0

    def test_square_of_ramp(self):
        assert segment_lp_integral(0, 0, 1, 1, 2) == pytest.approx(1 / 3, rel=1e-15)

    def test_constant_segment(self):
        assert segment_lp_integral(0, 2, 3, 2, 2) == 12.0

    def test_negative_constant(self):
        assert segment_lp_integral(0, -2, 1, -2, 3) == 8.0

    def test_non_integer_exponent(self):
        # int_0^1 x^2.5 dx = 1/3.5
        assert segment_lp_integral(0, 0, 1, 1, 2.5) == pytest.approx(1 / 3.5, rel=1e-12)

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            segment_lp_integral(1, 0, 1, 1, 2)
        with pytest.raises(ValueError):
            segment_lp_integral(2, 0, 1, 1, 2)

    def test_invalid_exponent(self):
        with pytest.raises(ValueError):
            segment_lp_integral(0, 0, 1, 1, 0.5)

    def test_matches_quadrature_on_randoms(self):
        from scipy.integrate import quad

        rng = np.random.default_rng(3)
        for _ in range(50):
            x0, dx = rng.uniform(-2, 2), rng.uniform(0.1, 3)
            y0, y1 = rng.uniform(-4, 4, 2)
            breaks = [x0 - y0 * dx / (y1 - y0)] if y0 * y1 < 0 else None
            for p in (1, 2, 3, 4, 2.5, 1.7):
                got = segment_lp_integral(x0, y0, x0 + dx, y1, p)
                want = quad(
                    lambda t: abs(y0 + (y1 - y0) * (t - x0) / dx) ** p,
                    x0,
                    x0 + dx,
                    points=breaks,
                    limit=200,
                )[0]
                assert got == pytest.approx(want, rel=1e-9, abs=1e-12)


class TestNorms:
    def test_unit_triangle_l1(self):
        assert lp_norm(tri(0, 2), 1) == 1.0

    def test_unit_triangle_l2(self):
        assert lp_norm(tri(0, 2), 2) == pytest.approx(math.sqrt(2 / 3), rel=1e-15)

    def test_zero_combination(self):
        zero = linear_combination([tri(0, 2), tri(0, 2)], [1.0, -1.0])
        for p in (1, 2, 3, INF):
            assert lp_norm(zero, p) == 0.0

    def test_sup_norm_examples(self):
        assert sup_norm(tri(0, 2)) == 1.0
        assert sup_norm(FIG) == 3.0

    def test_infinite_layer_rejected(self):
        bad = build_landscape(Barcode([(0, INF)]))
        with pytest.raises(ValueError, match="truncate"):
            lp_norm(bad, 2)
        with pytest.raises(ValueError, match="truncate"):
            sup_norm(bad)

    def test_p_below_one_rejected(self):
        with pytest.raises(ValueError):
            lp_norm(tri(0, 2), 0.5)

    def test_matches_quadrature_on_randoms(self):
        rng = np.random.default_rng(4)
        for trial in range(10):
            inputs = random_landscapes(int(rng.integers(1, 5)), 6, seed=300 + trial)
            coeffs = rng.uniform(-2, 2, len(inputs)).tolist()
            combo = linear_combination(inputs, coeffs)
            for p in (1, 2, 3, 2.5):
                want = quad_lp_norm(combo, p)
                assert lp_norm(combo, p) == pytest.approx(want, rel=1e-6, abs=1e-12)

    def test_homogeneity(self):
        rng = np.random.default_rng(5)
        for trial in range(5):
            ls = build_landscape(random_barcode(8, seed=400 + trial))
            a = float(rng.uniform(-3, 3))
            for p in (1, 2, INF):
                assert lp_norm(scale(ls, a), p) == pytest.approx(
                    abs(a) * lp_norm(ls, p), rel=1e-12, abs=1e-15
                )


class TestDistances:
    def test_self_distance_zero(self):
        for p in (1, 2, 2.5, INF):
            assert lp_distance(FIG, FIG, p) == 0.0

    def test_sup_distance_of_triangles(self):
        assert lp_distance(tri(0, 2), tri(0, 4), INF) == 2.0

    def test_l1_distance_of_triangles(self):
        assert lp_distance(tri(0, 2), tri(0, 4), 1) == pytest.approx(3.0, rel=1e-15)

    def test_symmetry_and_nonnegativity(self):
        rng = np.random.default_rng(6)
        for trial in range(10):
            f = build_landscape(random_barcode(6, seed=trial))
            g = build_landscape(random_barcode(9, seed=100 + trial))
            for p in (1, 2, INF):
                d = lp_distance(f, g, p)
                assert d >= 0
                assert d == lp_distance(g, f, p)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(7)
        for trial in range(40):
            f, g, h = random_landscapes(3, 8, seed=500 + trial)
            for p in (1, 2, INF):
                assert lp_distance(f, h, p) <= (
                    lp_distance(f, g, p) + lp_distance(g, h, p) + 1e-9
                )

    def test_identity_of_indiscernibles(self):
        f = build_landscape(random_barcode(7, seed=9))
        assert lp_distance(f, build_landscape(random_barcode(7, seed=9)), 2) == 0.0

    def test_matches_quadrature(self):
        for trial in range(8):
            f = build_landscape(random_barcode(6, seed=600 + trial))
            g = build_landscape(random_barcode(5, seed=700 + trial))
            for p in (1, 2, 2.5):
                assert lp_distance(f, g, p) == pytest.approx(
                    quad_lp_distance(f, g, p), rel=1e-6, abs=1e-12
                )

    def test_matches_difference_combination_norm(self):
        f = build_landscape(random_barcode(6, seed=800))
        g = build_landscape(random_barcode(9, seed=801))
        diff = linear_combination([f, g], [1.0, -1.0])
        for p in (1, 2, INF):
            assert lp_distance(f, g, p) == pytest.approx(lp_norm(diff, p), rel=1e-12)


class TestInnerProduct:
    def test_matches_squared_l2_norm(self):
        t = tri(0, 2)
        assert inner_product(t, t) == pytest.approx(2 / 3, rel=1e-15)
        rng = np.random.default_rng(8)
        for trial in range(8):
            f = build_landscape(random_barcode(int(rng.integers(1, 10)), seed=trial))
            assert inner_product(f, f) == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-10)

    def test_zero_factor(self):
        zero = linear_combination([tri(0, 2), tri(0, 2)], [1.0, -1.0])
        assert inner_product(tri(0, 2), zero) == 0.0

    def test_symmetry(self):
        f = build_landscape(random_barcode(6, seed=20))
        g = build_landscape(random_barcode(8, seed=21))
        assert inner_product(f, g) == inner_product(g, f)

    def test_cauchy_schwarz(self):
        for trial in range(10):
            f = build_landscape(random_barcode(6, seed=900 + trial))
            g = build_landscape(random_barcode(7, seed=950 + trial))
            lhs = abs(inner_product(f, g))
            rhs = lp_norm(f, 2) * lp_norm(g, 2)
            assert lhs <= rhs + 1e-12

    def test_matches_quadrature(self):
        f = build_landscape(random_barcode(5, seed=31))
        g = build_landscape(random_barcode(6, seed=32))
        assert inner_product(f, g) == pytest.approx(quad_inner_product(f, g), rel=1e-8)

    def test_bilinearity(self):
        f = build_landscape(random_barcode(4, seed=33))
        g = build_landscape(random_barcode(5, seed=34))
        h = build_landscape(random_barcode(6, seed=35))
        combo = linear_combination([g, h], [2.0, -0.5])
        want = 2.0 * inner_product(f, g) - 0.5 * inner_product(f, h)
        assert inner_product(f, combo) == pytest.approx(want, rel=1e-10, abs=1e-12)


class TestGridDistance:
    def spec(self):
        return GridSpec(0.0, 0.5, 10)

    def test_identical_matrices(self):
        gl = build_grid_landscape(GridBarcode(self.spec(), ((0, 4), (2, 8))))
        for p in (1, 2, INF):
            assert grid_lp_distance(gl, gl, p) == 0.0

    def test_unit_triangle_row(self):
        # rows [0,1,0] vs zero on a one-step grid: interpolant is a unit triangle
        spec = GridSpec(0.0, 2.0, 1)
        a = build_grid_landscape(GridBarcode(spec, ((0, 1),)))
        b = build_grid_landscape(GridBarcode(spec, ()))
        assert np.array_equal(a.values, [[0, 1, 0]])
        assert grid_lp_distance(a, b, 1) == 1.0

    def test_spec_mismatch(self):
        a = build_grid_landscape(GridBarcode(GridSpec(0.0, 1.0, 3), ((0, 2),)))
        b = build_grid_landscape(GridBarcode(GridSpec(0.0, 2.0, 3), ((0, 2),)))
        with pytest.raises(ValueError, match="mismatch"):
            grid_lp_distance(a, b, 1)

    def test_matches_exact_distance_for_grid_barcodes(self):
        spec = GridSpec(0.0, 0.25, 20)
        rng = np.random.default_rng(11)
        for trial in range(10):
            pairs_a = []
            pairs_b = []
            for pairs in (pairs_a, pairs_b):
                while len(pairs) < 6:
                    i, j = sorted(rng.integers(0, spec.count + 1, 2).tolist())
                    if i < j:
                        pairs.append((int(i), int(j)))
            ga = GridBarcode(spec, tuple(pairs_a))
            gb = GridBarcode(spec, tuple(pairs_b))
            fa, fb = build_landscape(ga.to_barcode()), build_landscape(gb.to_barcode())
            va, vb = build_grid_landscape(ga), build_grid_landscape(gb)
            for p in (1, 2, INF):
                exact = lp_distance(fa, fb, p)
                grid = grid_lp_distance(va, vb, p)
                assert grid == pytest.approx(exact, rel=1e-10, abs=1e-12)

    def test_depth_padding(self):
        spec = self.spec()
        deep = build_grid_landscape(GridBarcode(spec, ((0, 8), (1, 9))))
        shallow = build_grid_landscape(GridBarcode(spec, ((0, 8),)))
        assert grid_lp_distance(deep, shallow, INF) > 0
