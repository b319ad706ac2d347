"""Arithmetic-intensity models and the augmented-matrix distance oracle."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from popcorn import (IntensityReport, augmented_distance_oracle,
                     default_kernel_cost, intensity_distances,
                     intensity_kernel_matrix)

from conftest import make_rng


class TestIntensityKernelMatrix:
    def test_unit_substitution(self):
        r = intensity_kernel_matrix(1, 1, 0, 0)
        assert (r.flops, r.bytes) == (2, 12)
        assert r.intensity == pytest.approx(1.0 / 6.0)

    def test_two_point_substitution(self):
        r = intensity_kernel_matrix(2, 1, 0, 0)
        assert (r.flops, r.bytes) == (8, 32)
        assert r.intensity == pytest.approx(0.25)

    def test_polynomial_cost_model(self):
        n, d = 100, 10
        f_k, b_k = default_kernel_cost("polynomial", n, degree=2)
        # 3 flops and 2 accesses per entry over n^2 entries
        assert f_k == 3 * n * n and b_k == 2 * n * n
        r = intensity_kernel_matrix(n, d, f_k, b_k)
        # recomputed independently
        assert r.flops == 3 * 100 * 100 + 2 * 100 * 100 * 10
        assert r.bytes == 4 * (2 * 100 * 100 + 2 * 100 * 10 + 100 * 100)
        assert r.intensity == pytest.approx(r.flops / r.bytes)

    def test_zero_counts_rejected(self):
        with pytest.raises(ValueError):
            intensity_kernel_matrix(0, 1, 0, 0)
        with pytest.raises(ValueError):
            intensity_kernel_matrix(1, 1, -1, 0)

    def test_scale_check(self):
        # doubling n quadruples the Gram flops: f(2n) - 2 f(n) = 4 n^2 d
        for n in range(1, 9):
            for d in (1, 3):
                f2 = intensity_kernel_matrix(2 * n, d, 0, 0).flops
                f1 = intensity_kernel_matrix(n, d, 0, 0).flops
                assert f2 - 2 * f1 == 4 * n * n * d


class TestIntensityDistances:
    def test_small_substitution(self):
        r = intensity_distances(2, 1)
        assert (r.flops, r.bytes) == (18, 104)
        assert r.intensity == pytest.approx(18.0 / 104.0)

    def test_unit_substitution(self):
        r = intensity_distances(1, 1)
        assert (r.flops, r.bytes) == (7, 56)

    def test_large_instance_recomputed(self):
        n, k = 10**4, 100
        r = intensity_distances(n, k)
        assert r.flops == 2 * n * n + 2 * n + 3 * n * k
        assert r.bytes == 4 * (n * n + 6 * n + 4 * k + 3 * n * k)
        assert r.intensity == pytest.approx(r.flops / r.bytes)

    def test_scale_check(self):
        # leading term grows quadratically: f(2n, k) - 2 f(n, k) = 4 n^2
        for n in range(1, 9):
            for k in (1, 5, 17):
                assert intensity_distances(2 * n, k).flops - 2 * intensity_distances(n, k).flops == 4 * n * n


class TestIntensityReport:
    def test_invariant(self):
        r = IntensityReport(flops=10, bytes=4)
        assert r.intensity == 2.5

    def test_rejects_zero_bytes(self):
        with pytest.raises(ValueError):
            IntensityReport(flops=1, bytes=0)


class TestAugmentedDistanceOracle:
    def test_worked_1d_values(self):
        assert augmented_distance_oracle([3.0], [7.0]) == 16.0
        assert augmented_distance_oracle([1.0], [7.0]) == 36.0

    def test_worked_2d_value(self):
        assert augmented_distance_oracle([5.0, 2.0], [1.0, 4.0]) == 20.0

    def test_worked_3d_value(self):
        assert augmented_distance_oracle([4.0, 3.0, 2.0], [5.0, 2.0, 3.0]) == 3.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            augmented_distance_oracle([1.0], [1.0, 2.0])

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), d=st.integers(1, 16))
    def test_matches_direct_squared_distance(self, seed, d):
        rng = make_rng(seed)
        p = rng.uniform(-10, 10, size=d)
        c = rng.uniform(-10, 10, size=d)
        direct = float(((p - c) ** 2).sum())
        assert augmented_distance_oracle(p, c) == pytest.approx(direct, rel=1e-6, abs=1e-9)


def test_default_cost_model_families():
    n = 10
    assert default_kernel_cost("linear", n) == (0, 0)
    assert default_kernel_cost("gaussian", n) == (5 * n * n, 2 * n * n)
    assert default_kernel_cost("sigmoid", n) == (3 * n * n, 2 * n * n)
    assert default_kernel_cost("polynomial", n, degree=4) == (5 * n * n, 2 * n * n)
    with pytest.raises(ValueError):
        default_kernel_cost("fourier", n)
