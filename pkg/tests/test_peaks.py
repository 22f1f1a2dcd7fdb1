"""Peak snapping, trapezoid integration, Rf, and run analysis."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lanescan import (
    BaselineMode,
    Chromatogram,
    PeakBounds,
    analyze_run,
    compute_rf,
    find_apex,
    integrate_peak,
    snap_click,
)
from lanescan.errors import (
    DegenerateFrontError,
    EmptyPeakSetError,
    InvalidBoundsError,
    OverlappingPeaksError,
    ZeroTotalAreaError,
)


def _chrom(values, seed_idx=None, front_idx=None) -> Chromatogram:
    sig = np.asarray(values, dtype=np.float64)
    n = sig.shape[0]
    return Chromatogram(
        sig,
        seed_idx=0 if seed_idx is None else seed_idx,
        front_idx=n - 1 if front_idx is None else front_idx,
    )


class TestSnapClick:
    def test_y_is_ignored(self):
        chrom = _chrom([0, 10, 20])
        assert snap_click(chrom, 1.2, 999.0) == (1, 10.0)
        assert snap_click(chrom, 1.2, -999.0) == snap_click(chrom, 1.2, 999.0)

    def test_x_clamps_low_and_high(self):
        chrom = _chrom([0, 10, 20])
        assert snap_click(chrom, -5.0, 0.0) == (0, 0.0)
        assert snap_click(chrom, 77.0, 0.0) == (2, 20.0)

    @settings(max_examples=100)
    @given(
        x=st.floats(-10.0, 30.0, allow_nan=False),
        y1=st.floats(allow_nan=False, allow_infinity=False),
        y2=st.floats(allow_nan=False, allow_infinity=False),
    )
    def test_y_invariance_property(self, x, y1, y2):
        chrom = _chrom(np.arange(21) % 7 * 10.0)
        assert snap_click(chrom, x, y1) == snap_click(chrom, x, y2)


class TestIntegratePeak:
    def test_triangle_exact(self):
        chrom = _chrom([0, 1, 2, 1, 0])
        assert integrate_peak(chrom, PeakBounds(0, 4)) == 4.0

    def test_flat_signal_raw_and_chord(self):
        chrom = _chrom([5, 5, 5, 5])
        assert integrate_peak(chrom, PeakBounds(0, 3), BaselineMode.RAW) == 15.0
        assert integrate_peak(chrom, PeakBounds(0, 3), BaselineMode.LINEAR_CHORD) == 0.0

    def test_chord_clamps_at_zero(self):
        # a dip below the chord contributes nothing, never negative area
        dip = _chrom([10, 0, 0, 0, 10])
        assert integrate_peak(dip, PeakBounds(0, 4), BaselineMode.LINEAR_CHORD) == 0.0
        # while samples above the chord still count after clamping
        bump = _chrom([10, 0, 20, 0, 10])
        assert integrate_peak(bump, PeakBounds(0, 4), BaselineMode.LINEAR_CHORD) == 10.0

    def test_bounds_must_fit_signal(self):
        chrom = _chrom([0, 1, 2])
        with pytest.raises(InvalidBoundsError):
            integrate_peak(chrom, PeakBounds(0, 7))

    def test_gaussian_against_independent_sum_and_analytic(self):
        # independent oracle: scalar fsum of the same trapezoid terms, plus
        # the closed-form integral A*sigma*sqrt(2*pi)
        n = 257
        mu = (n - 1) / 2.0
        for sigma in (3.0, 5.0, 8.0):
            amp = 100.0
            idx = np.arange(n, dtype=np.float64)
            g = amp * np.exp(-((idx - mu) ** 2) / (2.0 * sigma**2))
            chrom = _chrom(g)
            got = integrate_peak(chrom, PeakBounds(0, n - 1))

            samples = [float(v) for v in g]
            oracle = math.fsum(
                (samples[i] + samples[i + 1]) / 2.0 for i in range(n - 1)
            )
            assert got == pytest.approx(oracle, rel=1e-12)

            analytic = amp * sigma * math.sqrt(2.0 * math.pi)
            assert got == pytest.approx(analytic, rel=1e-3)

    @settings(max_examples=100)
    @given(
        seed=st.integers(0, 2**32 - 1),
        n=st.integers(4, 60),
    )
    def test_additivity_property(self, seed, n):
        rng = np.random.default_rng(seed)
        chrom = _chrom(rng.integers(0, 256, size=n).astype(float))
        a, c = 0, n - 1
        b = int(rng.integers(1, n - 1))
        whole = integrate_peak(chrom, PeakBounds(a, c))
        parts = integrate_peak(chrom, PeakBounds(a, b)) + integrate_peak(
            chrom, PeakBounds(b, c)
        )
        # integer samples make every trapezoid term an exact multiple of 0.5
        assert whole == parts

    @settings(max_examples=100)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 50))
    def test_affine_segments_are_exact(self, seed, n):
        rng = np.random.default_rng(seed)
        y0, y1 = rng.uniform(0, 255, size=2)
        samples = np.linspace(y0, y1, n)
        chrom = _chrom(samples)
        analytic = (y0 + y1) / 2.0 * (n - 1)
        got = integrate_peak(chrom, PeakBounds(0, n - 1))
        assert got == pytest.approx(analytic, rel=1e-12, abs=1e-9)


class TestFindApex:
    def test_unique_max(self):
        assert find_apex(_chrom([0, 3, 9, 3, 0]), PeakBounds(0, 4)) == 2

    def test_tie_breaks_toward_seed(self):
        assert find_apex(_chrom([0, 7, 7, 0]), PeakBounds(0, 3)) == 1

    def test_all_tie_degenerate(self):
        assert find_apex(_chrom([4, 4, 4]), PeakBounds(0, 2)) == 0

    def test_respects_bounds(self):
        assert find_apex(_chrom([9, 0, 1, 2, 0]), PeakBounds(1, 4)) == 3


class TestComputeRf:
    def test_extremes_and_midpoint(self):
        assert compute_rf(90, 10, 90) == 1.0
        assert compute_rf(10, 10, 90) == 0.0
        assert compute_rf(50, 10, 90) == 0.5

    def test_clamped_outside_span(self):
        assert compute_rf(5, 10, 90) == 0.0
        assert compute_rf(95, 10, 90) == 1.0

    def test_degenerate_front_rejected(self):
        with pytest.raises(DegenerateFrontError):
            compute_rf(5, 10, 10)

    @settings(max_examples=100)
    @given(
        seed=st.integers(0, 50),
        front=st.integers(51, 200),
        apex=st.integers(-20, 250),
    )
    def test_bounds_and_monotonicity_property(self, seed, front, apex):
        rf = compute_rf(apex, seed, front)
        assert 0.0 <= rf <= 1.0
        if seed < apex < front:
            assert compute_rf(apex - 1, seed, front) < rf < compute_rf(
                apex + 1, seed, front
            )


class TestAnalyzeRun:
    def test_two_triangles_percent_split(self):
        chrom = _chrom([0, 3, 0, 0, 1, 0, 0])
        results = analyze_run(chrom, [((0, 0), (2, 5)), ((3, -1), (5, 9))])
        assert [p.area for p in results] == [3.0, 1.0]
        assert [p.percent for p in results] == [75.0, 25.0]
        assert [p.number for p in results] == [1, 2]

    def test_single_peak_is_hundred_percent(self):
        chrom = _chrom([0, 2, 0])
        (only,) = analyze_run(chrom, [((0, 0), (2, 0))])
        assert only.percent == 100.0

    def test_reversed_click_pair_normalized(self):
        chrom = _chrom([0, 3, 0, 0, 1, 0, 0])
        forward = analyze_run(chrom, [((0, 0), (2, 0))])
        backward = analyze_run(chrom, [((2, 0), (0, 0))])
        assert forward == backward

    def test_overlapping_peaks_rejected(self):
        chrom = _chrom([0, 1, 2, 3, 2, 1, 0])
        with pytest.raises(OverlappingPeaksError):
            analyze_run(chrom, [((0, 0), (4, 0)), ((2, 0), (6, 0))])

    def test_shared_endpoint_allowed(self):
        chrom = _chrom([0, 2, 1, 2, 0])
        results = analyze_run(chrom, [((0, 0), (2, 0)), ((2, 0), (4, 0))])
        assert len(results) == 2

    def test_empty_selection_rejected(self):
        with pytest.raises(EmptyPeakSetError):
            analyze_run(_chrom([0, 1, 0]), [])

    def test_zero_total_area_rejected(self):
        chrom = _chrom([0, 0, 0, 0])
        with pytest.raises(ZeroTotalAreaError):
            analyze_run(chrom, [((0, 0), (3, 0))])

    def test_collapsed_pair_rejected(self):
        chrom = _chrom([0, 1, 0])
        with pytest.raises(InvalidBoundsError):
            analyze_run(chrom, [((1.1, 0), (1.4, 0))])

    def test_peak_numbers_follow_input_order(self):
        # second-selected peak sits left of the first; numbering must not sort
        chrom = _chrom([0, 1, 0, 0, 3, 0, 0])
        results = analyze_run(chrom, [((3, 0), (5, 0)), ((0, 0), (2, 0))])
        assert [(p.number, p.bounds.start_idx) for p in results] == [(1, 3), (2, 0)]

    def test_rf_uses_marks(self):
        chrom = _chrom([0, 0, 5, 0, 0], seed_idx=1, front_idx=3)
        (only,) = analyze_run(chrom, [((0, 0), (4, 0))])
        assert only.apex_idx == 2
        assert only.rf == 0.5

    @settings(max_examples=100)
    @given(seed=st.integers(0, 2**32 - 1), n_peaks=st.integers(1, 5))
    def test_percents_sum_to_hundred_property(self, seed, n_peaks):
        rng = np.random.default_rng(seed)
        sig = rng.integers(1, 200, size=120).astype(float)
        chrom = _chrom(sig)
        cuts = sorted(rng.choice(np.arange(1, 119), size=2 * n_peaks, replace=False))
        clicks = [
            ((float(cuts[2 * i]), 0.0), (float(cuts[2 * i + 1]), 0.0))
            for i in range(n_peaks)
        ]
        results = analyze_run(chrom, clicks)
        assert math.isclose(
            sum(p.percent for p in results), 100.0, rel_tol=0, abs_tol=1e-9
        )

    @settings(max_examples=100)
    @given(
        seed=st.integers(0, 2**32 - 1),
        scale=st.floats(0.01, 4.0, allow_nan=False),
        mode=st.sampled_from([BaselineMode.RAW, BaselineMode.LINEAR_CHORD]),
    )
    def test_scale_equivariance_property(self, seed, scale, mode):
        rng = np.random.default_rng(seed)
        sig = rng.integers(0, 50, size=80).astype(float)
        sig[5] = 40.0  # guarantee nonzero total area
        base = _chrom(sig, seed_idx=3, front_idx=70)
        scaled = _chrom(sig * scale, seed_idx=3, front_idx=70)
        clicks = [((2.0, 0.0), (30.0, 0.0)), ((40.0, 0.0), (75.0, 0.0))]
        try:
            res_base = analyze_run(base, clicks, mode)
        except ZeroTotalAreaError:
            # chord subtraction can flatten everything; scaling must too
            with pytest.raises(ZeroTotalAreaError):
                analyze_run(scaled, clicks, mode)
            return
        res_scaled = analyze_run(scaled, clicks, mode)
        for pb, ps in zip(res_base, res_scaled):
            assert ps.area == pytest.approx(pb.area * scale, rel=1e-12, abs=1e-12)
            assert ps.percent == pytest.approx(pb.percent, rel=0, abs=1e-9)
            assert ps.apex_idx == pb.apex_idx
            assert ps.rf == pb.rf
