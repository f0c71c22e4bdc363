import numpy as np
import pytest

from slif import (
    IntegratorConfig,
    ModelKind,
    ResponseCurve,
    amplitude_at,
    curve_to_csv,
    fire_band,
    fires,
    metrics,
    metrics_as_dict,
    pair,
    peak_amplitude,
    response_curve,
    simulate,
    threshold_for_onset,
)


class TestResponseCurve:
    def test_validation(self):
        with pytest.raises(ValueError):
            ResponseCurve(ists=np.array([1.0, 2.0]), amplitudes=np.array([1.0]))
        with pytest.raises(ValueError):
            ResponseCurve(ists=np.array([2.0, 1.0]), amplitudes=np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            ResponseCurve(ists=np.array([1.0, 2.0]), amplitudes=np.array([1.0, -0.1]))

    def test_range_and_spacing_validation(self, reference_params):
        with pytest.raises(ValueError):
            response_curve(reference_params, ist_range=(0.0, 5.0), n_points=5)
        with pytest.raises(ValueError):
            response_curve(reference_params, ist_range=(5.0, 1.0), n_points=5)
        with pytest.raises(ValueError):
            response_curve(reference_params, n_points=2)
        with pytest.raises(ValueError):
            response_curve(reference_params, n_points=5, spacing="sqrt")

    def test_log_spacing(self, reference_params):
        c = response_curve(reference_params, ist_range=(0.5, 8.0), n_points=9,
                           spacing="log")
        ratios = c.ists[1:] / c.ists[:-1]
        assert np.allclose(ratios, ratios[0])

    def test_amplitude_matches_direct_simulation(self, reference_params):
        direct = simulate(reference_params, pair(1.0, 2.5), firing_enabled=False)
        assert amplitude_at(reference_params, 2.5) == pytest.approx(
            peak_amplitude(direct, reference_params.v_rest)
        )

    def test_jobs_do_not_change_values(self, reference_params):
        a = response_curve(reference_params, n_points=24)
        b = response_curve(reference_params, n_points=24, jobs=4)
        assert np.array_equal(a.amplitudes, b.amplitudes)


class TestShape:
    def test_saturating_pair_response_peaks_inside_the_range(self, reference_params):
        c = response_curve(reference_params, n_points=60)
        i = int(np.argmax(c.amplitudes))
        assert 0 < i < len(c) - 1
        assert c.amplitudes[i] > c.amplitudes[0]
        assert c.amplitudes[i] > c.amplitudes[-1]

    def test_additive_pair_response_only_decays(self, reference_params):
        p = reference_params.with_(kind=ModelKind.LIF, w=0.5)
        c = response_curve(p, n_points=60)
        assert np.all(np.diff(c.amplitudes) < 0.0)


class TestMetrics:
    def test_flat_curve_degenerates_cleanly(self, reference_params):
        # every IST equally good: zero margin, timewidth spans the scan
        ists = np.linspace(1.0, 5.0, 9)
        flat = ResponseCurve(ists=ists, amplitudes=np.full(9, 3.0))
        m = metrics(flat, reference_params)
        assert m.margin == 0.0
        assert m.timewidth == pytest.approx(4.0)
        assert m.tw_low_saturated and m.tw_high_saturated
        assert m.favorite_ist == 1.0

    def test_empty_curve_rejected(self, reference_params):
        empty = ResponseCurve(ists=np.array([]), amplitudes=np.array([]))
        with pytest.raises(ValueError):
            metrics(empty, reference_params)
        c = response_curve(reference_params, n_points=8)
        with pytest.raises(ValueError):
            metrics(c, reference_params, tw_offset=0.0)

    def test_refined_peak_beats_the_grid(self, reference_params):
        c = response_curve(reference_params, n_points=40)
        m = metrics(c, reference_params)
        i = int(np.argmax(c.amplitudes))
        assert m.unimodal_grid
        assert c.ists[i - 1] < m.favorite_ist < c.ists[i + 1]
        assert m.max_amplitude >= c.amplitudes[i]

    def test_grid_refinement_invariance(self, reference_params):
        # metrics are properties of the curve, not of its sampling
        m1 = metrics(response_curve(reference_params, n_points=150), reference_params)
        m2 = metrics(response_curve(reference_params, n_points=200), reference_params)
        assert m1.favorite_ist == pytest.approx(m2.favorite_ist, rel=2e-3)
        assert m1.timewidth == pytest.approx(m2.timewidth, rel=2e-3)
        assert m1.max_amplitude == pytest.approx(m2.max_amplitude, rel=1e-4)

    def test_timewidth_bounds_bracket_the_favorite(self, reference_params):
        m = metrics(response_curve(reference_params, n_points=60), reference_params)
        assert m.tw_low < m.favorite_ist < m.tw_high
        assert m.timewidth == pytest.approx(m.tw_high - m.tw_low)
        assert not m.tw_low_saturated and not m.tw_high_saturated
        # the located bounds really sit on the offset level
        level = m.max_amplitude - 0.1
        for edge in (m.tw_low, m.tw_high):
            assert amplitude_at(reference_params, edge) == pytest.approx(
                level, abs=2e-3
            )

    def test_narrow_scan_saturates_both_flags(self, reference_params):
        # a window tight around the peak never drops tw_offset below it
        c = response_curve(reference_params, ist_range=(0.7, 0.9), n_points=8)
        m = metrics(c, reference_params)
        assert m.tw_low_saturated and m.tw_high_saturated
        assert m.timewidth == pytest.approx(0.2)
        assert m.margin < 0.1

    def test_tiny_synapse_time_gives_tiny_response(self, reference_params):
        p = reference_params.with_(tau_s=0.01)
        c = response_curve(p, ist_range=(0.1, 2.0), n_points=12)
        full = amplitude_at(reference_params, 0.8)
        assert np.all(c.amplitudes < full / 10.0)

    def test_dict_keys(self, reference_params):
        m = metrics(response_curve(reference_params, n_points=12), reference_params)
        d = metrics_as_dict(m)
        assert set(d) == {
            "favorite_ist_ms", "max_amplitude_mV", "margin_mV", "timewidth_ms",
            "tw_low_ms", "tw_high_ms", "tw_low_saturated", "tw_high_saturated",
            "unimodal_grid",
        }
        assert d["favorite_ist_ms"] == m.favorite_ist


class TestPinnedReference:
    """The shipped parameter set reproduces its recorded measurements."""

    def test_metrics_match_the_artifact(self, pinned_doc, pinned_params):
        m = metrics(response_curve(pinned_params, n_points=200), pinned_params)
        want = pinned_doc["achieved"]
        assert m.favorite_ist == pytest.approx(want["favorite_ist_ms"], rel=1e-9)
        assert m.max_amplitude == pytest.approx(want["max_amplitude_mV"], rel=1e-9)
        assert m.margin == pytest.approx(want["margin_mV"], rel=1e-9)
        assert m.timewidth == pytest.approx(want["timewidth_ms"], rel=1e-9)

    def test_fire_band_matches_the_artifact(self, pinned_doc, pinned_params):
        band = fire_band(pinned_params)
        assert band is not None
        lo, hi = band
        assert lo == pytest.approx(pinned_doc["fire_band_ms"][0], rel=1e-9)
        assert hi == pytest.approx(pinned_doc["fire_band_ms"][1], rel=1e-9)

    def test_threshold_fit_reproduces_v_th(self, pinned_doc, pinned_params):
        onset = pinned_doc["band_onset_target_ms"]
        v_th = threshold_for_onset(pinned_params, onset)
        assert v_th == pytest.approx(pinned_params.v_th, rel=1e-12)

    def test_firing_inside_and_outside_the_band(self, pinned_params):
        lo, hi = 2.0, 3.55
        assert fires(pinned_params, (lo + hi) / 2.0)
        assert not fires(pinned_params, lo - 0.5)
        assert not fires(pinned_params, hi + 0.5)

    def test_fire_band_none_when_threshold_unreachable(self, pinned_params):
        timid = pinned_params.with_(v_th=-40.0)
        assert fire_band(timid, n_probe=16) is None


def test_curve_csv(tmp_path, reference_params):
    c = response_curve(reference_params, n_points=12)
    out = tmp_path / "curve.csv"
    curve_to_csv(c, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "ist_ms,amplitude_mV"
    assert len(lines) == 13
    d, a = lines[1].split(",")
    assert float(d) == c.ists[0]
    assert float(a) == c.amplitudes[0]
