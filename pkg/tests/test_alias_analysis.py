import numpy as np
import pytest

from helpers import (
    brute_dft2,
    enumerate_contributions,
    random_bandlimited,
    truncated_sinc_square_replicas,
)
from upspec import (
    KernelSpec,
    alias_energy,
    bed_of_nails,
    contribution_map,
    empirical_filter_response,
    error_spectrum,
    filter_response,
    fourier_pad_upsample,
    linear,
    nearest,
    psnr,
    replica_deviation,
)


class TestAliasEnergy:
    def test_ideal_upsampler_is_alias_free(self):
        rng = np.random.default_rng(0)
        x = random_bandlimited(32, 15, rng)  # band excludes the Nyquist bin
        report = alias_energy(fourier_pad_upsample(x, 2), 2)
        assert report.alias_ratio <= 1e-12
        assert report.nyquist_energy <= 1e-15

    def test_zero_insertion_duplicates_cosine_bins(self):
        # input cos(2*pi*j/4): passband bins k_c = +-1 carry |F|^2 = 4 each,
        # and zero insertion mirrors them into the alias band -> ratio 1/2
        report = alias_energy(bed_of_nails([1.0, 0.0, -1.0, 0.0], 2), 2)
        assert report.passband_energy == pytest.approx(8.0, abs=1e-9)
        assert report.alias_energy == pytest.approx(8.0, abs=1e-9)
        assert report.nyquist_energy == pytest.approx(0.0, abs=1e-9)
        assert report.alias_ratio == pytest.approx(0.5, abs=1e-12)

    def test_constant_through_nearest_stays_dc(self):
        for r in (2, 3, 4):
            report = alias_energy(nearest([2.0, 2.0, 2.0], r), r)
            assert report.alias_ratio == pytest.approx(0.0, abs=1e-15)

    def test_ratio_consistent_with_energies(self):
        rng = np.random.default_rng(1)
        y = nearest(rng.normal(size=16), 2)
        report = alias_energy(y, 2)
        total = report.passband_energy + report.alias_energy + report.nyquist_energy
        assert report.alias_ratio == pytest.approx(
            (report.alias_energy + report.nyquist_energy) / total, abs=1e-12)
        assert 0.0 <= report.alias_ratio <= 1.0

    def test_reference_populates_replica_deviation(self):
        x = np.array([1.0, 2.0, 3.0])
        report = alias_energy(bed_of_nails(x, 2), 2, reference=x)
        assert report.replica_deviation == pytest.approx(0.0, abs=1e-10)
        assert alias_energy(bed_of_nails(x, 2), 2).replica_deviation is None

    def test_length_must_divide(self):
        with pytest.raises(ValueError):
            alias_energy(np.ones(7), 2)

    def test_unrelated_shuffled_channels_are_heavily_aliased(self):
        # interleaving statistically independent channels fills the band
        # edge, unlike smoothing the same channel
        from upspec import pixel_shuffle
        rng = np.random.default_rng(8)
        base = random_bandlimited(64, 10, rng)
        other = random_bandlimited(64, 10, rng)
        shuffled = pixel_shuffle([base, other], 2)
        ratio_shuffled = alias_energy(shuffled, 2).alias_ratio
        ratio_linear = alias_energy(np.asarray(
            [v for pair in zip(base, (base + np.roll(base, -1)) / 2) for v in pair]), 2
        ).alias_ratio
        assert ratio_shuffled > 0.1
        assert ratio_shuffled > ratio_linear


class TestReplicaDeviation:
    def test_zero_insertion_is_exact(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            n = int(rng.integers(2, 257))
            x = rng.normal(size=n)
            assert replica_deviation(x, bed_of_nails(x, 2), 2) <= 1e-10

    def test_box_filter_modulates_replicas(self):
        # nearest([1,0], 2) = [1,1,0,0]; DFT = [2, 1-i, 0, 1+i] deviates
        # from the tiled [1,1,1,1] by exactly 1 in every bin
        dev = replica_deviation([1.0, 0.0], nearest([1.0, 0.0], 2), 2)
        assert dev == pytest.approx(1.0, abs=1e-12)

    def test_ideal_upsampler_removes_replicas(self):
        x = np.array([1.0, 0.0, -1.0, 0.0])
        assert replica_deviation(x, fourier_pad_upsample(x, 2), 2) > 0.1

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            replica_deviation(np.ones(4), np.ones(6), 2)


class TestFilterResponse:
    def test_linear_dc_gain(self):
        _, mags = filter_response("linear", 2, 3)
        assert mags[0] == pytest.approx(1.0)

    def test_linear_null_at_one_cycle(self):
        ell, mags = filter_response("linear", 2, 3)
        assert ell[-1] == pytest.approx(1.0)
        assert mags[-1] == pytest.approx(0.0, abs=1e-15)

    def test_linear_half_cycle_value(self):
        # sinc(0.5)^2 evaluated literally: (sin(pi/2) / (pi/2))^2
        expected = (np.sin(np.pi / 2) / (np.pi / 2)) ** 2
        assert expected == pytest.approx(0.4053, abs=1e-4)
        ell, mags = filter_response("linear", 2, 5)
        assert ell[2] == pytest.approx(0.5)
        assert mags[2] == pytest.approx(expected, abs=1e-12)

    def test_bed_of_nails_flat(self):
        _, mags = filter_response("bed_of_nails", 2, 9)
        np.testing.assert_allclose(mags, 1.0)

    def test_nearest_is_abs_sinc(self):
        ell, mags = filter_response("nearest", 2, 9)
        np.testing.assert_allclose(mags, np.abs(np.sinc(ell)), atol=1e-12)

    def test_folded_equals_truncated_replica_sum(self):
        # the closed form must agree with literally summing sinc^2 replicas
        for r in (2, 3):
            ell, folded = filter_response("linear", r, 33, include_replicas=True)
            literal = truncated_sinc_square_replicas(ell, r, terms=200_000)
            np.testing.assert_allclose(folded, literal, atol=1e-6)

    def test_folded_dc_gain_is_r(self):
        for r in (2, 3, 4):
            _, mags = filter_response("linear", r, 5, include_replicas=True)
            assert mags[0] == pytest.approx(r)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            filter_response("bicubic", 2, 8)
        with pytest.raises(ValueError):
            filter_response("linear", 2, 1)


class TestEmpiricalFilterResponse:
    def test_zero_insertion_flat(self):
        _, mags = empirical_filter_response("bed_of_nails", 2, 32)
        np.testing.assert_allclose(mags, 1.0, atol=1e-12)

    def test_linear_null_at_output_nyquist(self):
        freqs, mags = empirical_filter_response("linear", 2, 64)
        assert freqs[-1] == pytest.approx(1.0)
        assert mags[-1] == pytest.approx(0.0, abs=1e-9)

    def test_nearest_dc_gain(self):
        _, mags = empirical_filter_response("nearest", 2, 32)
        assert mags[0] == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("method", ["bed_of_nails", "nearest", "linear"])
    @pytest.mark.parametrize("r", [2, 3])
    def test_matches_folded_analytic_response(self, method, r):
        for n in (64, 128):
            freqs, measured = empirical_filter_response(method, r, n)
            ell, analytic = filter_response(method, r, freqs.size, include_replicas=True)
            np.testing.assert_allclose(freqs, ell, atol=1e-12)
            np.testing.assert_allclose(measured, analytic, atol=1e-6)


class TestContributionMap:
    def test_three_taps_stride_two(self):
        cmap = contribution_map(KernelSpec(weights=np.ones(3), stride=2), 8)
        np.testing.assert_array_equal(cmap.counts, [1, 2, 1, 2, 1, 2, 1, 2])
        assert not cmap.uniform
        assert cmap.variance > 0

    def test_four_taps_stride_two_uniform(self):
        cmap = contribution_map(KernelSpec(weights=np.ones(4), stride=2), 8)
        np.testing.assert_array_equal(cmap.counts, np.full(8, 2))
        assert cmap.uniform and cmap.variance == 0.0

    def test_stride_matched_kernel_tiles_exactly(self):
        cmap = contribution_map(KernelSpec(weights=np.ones(2), stride=2), 8)
        np.testing.assert_array_equal(cmap.counts, np.ones(8))
        assert cmap.uniform

    def test_uniform_iff_stride_divides_size(self):
        for k in range(1, 17):
            for s in range(1, 9):
                cmap = contribution_map(KernelSpec(weights=np.ones(k), stride=s), 8 * s)
                np.testing.assert_array_equal(cmap.counts,
                                              enumerate_contributions(k, s, 8 * s))
                assert cmap.uniform == (k % s == 0), (k, s)
                assert cmap.uniform == (cmap.variance == 0.0)

    def test_counts_repeat_with_stride_period(self):
        cmap = contribution_map(KernelSpec(weights=np.ones(5), stride=3), 12)
        assert cmap.period == 3
        np.testing.assert_array_equal(cmap.counts, np.tile(cmap.counts[:3], 4))

    def test_2d_counts_are_outer_product(self):
        cmap2 = contribution_map(KernelSpec(weights=np.ones((3, 3)), stride=2), 8)
        cmap1 = contribution_map(KernelSpec(weights=np.ones(3), stride=2), 8)
        np.testing.assert_array_equal(cmap2.counts,
                                      np.outer(cmap1.counts, cmap1.counts))
        assert not cmap2.uniform

    def test_out_len_must_be_multiple_of_stride(self):
        with pytest.raises(ValueError):
            contribution_map(KernelSpec(weights=np.ones(3), stride=2), 7)


class TestErrorSpectrum:
    def test_identical_inputs_hit_floor(self):
        img = np.random.default_rng(3).normal(size=(8, 8, 3))
        out = error_spectrum(img, img)
        np.testing.assert_allclose(out, -12.0, atol=1e-9)

    def test_single_pixel_delta_is_flat(self):
        pred = np.zeros((8, 8))
        pred[2, 5] = 1.0
        mags = error_spectrum(pred, np.zeros((8, 8)), log=False)
        np.testing.assert_allclose(mags, 1.0, atol=1e-12)

    def test_pure_cosine_lights_two_bins(self):
        h = w = 8
        k1, k2 = 2, 3
        jj, ii = np.meshgrid(np.arange(w), np.arange(h))
        diff = np.cos(2 * np.pi * (k1 * ii / h + k2 * jj / w))
        expected = np.abs(np.fft.fftshift(brute_dft2(diff)))
        mags = error_spectrum(diff, np.zeros((h, w)), log=False)
        np.testing.assert_allclose(mags, expected, atol=1e-9)
        hot = np.argwhere(mags > 1e-6)
        assert len(hot) == 2
        centered = {tuple(idx - 4) for idx in hot}
        assert centered == {(k1, k2), (-k1, -k2)}

    def test_symmetric_under_swap(self):
        rng = np.random.default_rng(4)
        a, b = rng.normal(size=(6, 6, 2)), rng.normal(size=(6, 6, 2))
        np.testing.assert_allclose(error_spectrum(a, b), error_spectrum(b, a),
                                   atol=1e-12)

    def test_complex_mean_can_cancel_where_magnitude_mean_cannot(self):
        base = np.zeros((4, 4))
        delta = np.zeros((4, 4))
        delta[1, 1] = 1.0
        pred = np.stack([base + delta, base - delta], axis=2)
        gt = np.zeros((4, 4, 2))
        complex_mean = error_spectrum(pred, gt, mode="complex", log=False)
        magnitude_mean = error_spectrum(pred, gt, mode="magnitude", log=False)
        np.testing.assert_allclose(complex_mean, 0.0, atol=1e-12)
        np.testing.assert_allclose(magnitude_mean, 1.0, atol=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            error_spectrum(np.zeros((4, 4)), np.zeros((4, 5)))


class TestPsnr:
    def test_identical_inputs_are_infinite(self):
        img = np.ones((3, 3))
        assert psnr(img, img, peak=1.0) == float("inf")

    def test_formula_20db(self):
        pred = np.full((5, 5), 0.1)
        assert psnr(pred, np.zeros((5, 5)), peak=1.0) == pytest.approx(20.0)

    def test_formula_0db(self):
        pred = np.full((4, 4), 255.0)
        assert psnr(pred, np.zeros((4, 4)), peak=255.0) == pytest.approx(0.0)

    def test_invariant_under_common_offset(self):
        rng = np.random.default_rng(5)
        pred, gt = rng.normal(size=(6, 6)), rng.normal(size=(6, 6))
        assert psnr(pred, gt, 2.0) == pytest.approx(psnr(pred + 3.5, gt + 3.5, 2.0))

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            psnr(np.ones((2, 2)), np.ones((2, 3)), 1.0)
        with pytest.raises(ValueError):
            psnr(np.ones((2, 2)), np.ones((2, 2)), 0.0)


class TestAliasOrderingInvariant:
    def test_more_context_means_less_alias(self):
        rng = np.random.default_rng(6)
        for r in (2, 3):
            for _ in range(5):
                n = int(rng.integers(8, 129)) * 2  # even, well below 256
                x = random_bandlimited(n, (n - 1) // 2, rng)
                ratio_bon = alias_energy(bed_of_nails(x, r), r).alias_ratio
                ratio_lin = alias_energy(linear(x, r), r).alias_ratio
                ratio_ideal = alias_energy(fourier_pad_upsample(x, r), r).alias_ratio
                assert ratio_bon >= ratio_lin >= ratio_ideal
                assert ratio_ideal <= 1e-12
