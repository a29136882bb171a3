"""Link-budget unit and property tests.

Frozen reference values were computed by hand from the closed-form
expressions (wavelength from c=3e8, k0=(lambda/4pi)^2, gain formulas,
thermal noise from the PSD) before the implementation existed.
"""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from railwave.blockage import build_graph
from railwave.channel import (
    Alignment,
    AntennaPattern,
    BORESIGHT,
    HopBudget,
    UNAVAILABLE,
    db_to_linear,
    doppler_from_relative,
    doppler_shift_hz,
    evaluate_all_modes,
    evaluate_direct,
    evaluate_hop,
    evaluate_relay,
    linear_to_db,
    max_doppler_hz,
    noise_power_mw,
    rate_bps,
    received_power_mw,
    si_power_mw,
    sinr,
)
from railwave.modes import Mode
from railwave.scenario import Flow, RadioParams, ScenarioConfig, build_scenario

PARAMS = RadioParams()

# Independently derived reference points (see module docstring).
G0_30_DB = 15.909977437209967
GSL_30_DB = -11.977232243601312
NOISE_MW = 4.7772860466419634e-11
PR_100M_MW = 0.00011053560844164303
SINR_100M = 2313774.1253601597
SINR_100M_SI = 748010.2103509154
DOPPLER_300KMH_28GHZ = 7777.777777777777


class TestAntennaPattern:
    def test_peak_gain_at_30_deg_beamwidth(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        assert pat.max_gain_db == pytest.approx(G0_30_DB, rel=1e-12)
        # stated tolerance of the published rounding
        assert pat.max_gain_db == pytest.approx(15.91, abs=0.01)

    def test_side_lobe_gain_at_30_deg_beamwidth(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        assert pat.side_lobe_gain_db == pytest.approx(GSL_30_DB, rel=1e-12)
        assert pat.side_lobe_gain_db == pytest.approx(-11.98, abs=0.01)

    def test_main_lobe_width(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        assert pat.theta_ml_deg == pytest.approx(78.0)

    def test_gain_drops_3db_at_half_beamwidth(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        # 2*theta/theta_3db = 1 at theta = 15 deg, so the quadratic term is 3.01
        assert pat.gain_db(15.0) == pytest.approx(pat.max_gain_db - 3.01, rel=1e-12)

    def test_boresight_gain_is_peak(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        assert pat.gain_db(0.0) == pat.max_gain_db

    def test_side_lobe_beyond_main_lobe_edge(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        assert pat.gain_db(39.0 + 1e-9) == pat.side_lobe_gain_db
        assert pat.gain_db(180.0) == pat.side_lobe_gain_db

    def test_gain_non_increasing_on_grid(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        thetas = np.linspace(0.0, 180.0, 3601)
        gains = [pat.gain_db(t) for t in thetas]
        assert all(g2 <= g1 + 1e-12 for g1, g2 in zip(gains, gains[1:]))

    @given(st.floats(min_value=5.0, max_value=120.0))
    def test_gain_never_exceeds_peak(self, theta_3db):
        pat = AntennaPattern(theta_3db_deg=theta_3db)
        for theta in (0.0, theta_3db / 2, theta_3db, 1.3 * theta_3db, 90.0, 180.0):
            assert pat.gain_db(theta) <= pat.max_gain_db + 1e-12

    def test_rejects_out_of_domain_angle(self):
        pat = AntennaPattern(theta_3db_deg=30.0)
        with pytest.raises(ValueError):
            pat.gain_db(-1.0)
        with pytest.raises(ValueError):
            pat.gain_db(180.1)

    def test_rejects_bad_beamwidth(self):
        with pytest.raises(ValueError):
            AntennaPattern(theta_3db_deg=0.0)
        with pytest.raises(ValueError):
            AntennaPattern(theta_3db_deg=180.0)


class TestDbConversion:
    def test_known_points(self):
        assert db_to_linear(0.0) == pytest.approx(1.0)
        assert db_to_linear(30.0) == pytest.approx(1000.0)
        assert linear_to_db(100.0) == pytest.approx(20.0)

    @given(st.floats(min_value=-200.0, max_value=200.0))
    def test_roundtrip(self, db):
        assert linear_to_db(db_to_linear(db)) == pytest.approx(db, abs=1e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            linear_to_db(0.0)
        with pytest.raises(ValueError):
            linear_to_db(-1.0)


class TestReceivedPower:
    def test_boresight_100m(self):
        pr = received_power_mw((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), PARAMS)
        assert pr == pytest.approx(PR_100M_MW, rel=1e-12)
        # published rounding is 1.106e-4 mW
        assert pr == pytest.approx(1.106e-4, rel=3e-3)

    def test_inverse_square_law(self):
        pr1 = received_power_mw((0.0, 0.0, 0.0), (50.0, 0.0, 0.0), PARAMS)
        pr2 = received_power_mw((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), PARAMS)
        assert pr1 / pr2 == pytest.approx(4.0, rel=1e-12)

    def test_power_scales_linearly_with_transmit_power(self):
        doubled = RadioParams(transmit_power_mw=2000.0)
        pr1 = received_power_mw((0.0, 0.0, 0.0), (80.0, 0.0, 0.0), PARAMS)
        pr2 = received_power_mw((0.0, 0.0, 0.0), (80.0, 0.0, 0.0), doubled)
        assert pr2 / pr1 == pytest.approx(2.0, rel=1e-12)

    def test_off_boresight_weaker(self):
        tilted = Alignment(tx_offset_deg=20.0, rx_offset_deg=0.0)
        pr_on = received_power_mw((0.0, 0.0, 0.0), (60.0, 0.0, 0.0), PARAMS)
        pr_off = received_power_mw(
            (0.0, 0.0, 0.0), (60.0, 0.0, 0.0), PARAMS, alignment=tilted
        )
        assert pr_off < pr_on

    def test_steeper_path_loss_reduces_power(self):
        steep = RadioParams(path_loss_exponent=2.5)
        pr_a = received_power_mw((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), PARAMS)
        pr_b = received_power_mw((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), steep)
        assert pr_b < pr_a

    def test_rejects_zero_distance(self):
        with pytest.raises(ValueError):
            received_power_mw((1.0, 2.0, 3.0), (1.0, 2.0, 3.0), PARAMS)

    @given(st.integers(min_value=1, max_value=60))
    def test_monotone_in_distance(self, tens):
        d1 = 10.0 * tens
        pr1 = received_power_mw((0.0, 0.0, 0.0), (d1, 0.0, 0.0), PARAMS)
        pr2 = received_power_mw((0.0, 0.0, 0.0), (d1 + 10.0, 0.0, 0.0), PARAMS)
        assert pr2 < pr1


class TestNoiseAndInterference:
    def test_noise_power(self):
        noise = noise_power_mw(PARAMS)
        assert noise == pytest.approx(NOISE_MW, rel=1e-12)
        assert noise == pytest.approx(4.777e-11, rel=1e-3)

    def test_self_interference_residual(self):
        assert si_power_mw(PARAMS) == pytest.approx(1.0e-10, rel=1e-12)

    def test_sinr_at_100m(self):
        pr = received_power_mw((0.0, 0.0, 0.0), (100.0, 0.0, 0.0), PARAMS)
        assert sinr(pr, PARAMS, si_active=False) == pytest.approx(SINR_100M, rel=1e-12)
        assert sinr(pr, PARAMS, si_active=True) == pytest.approx(
            SINR_100M_SI, rel=1e-12
        )

    def test_si_only_hurts(self):
        pr = 1e-6
        assert sinr(pr, PARAMS, si_active=True) < sinr(pr, PARAMS, si_active=False)


class TestRate:
    def test_zero_sinr_zero_rate(self):
        assert rate_bps(0.0, PARAMS) == 0.0

    def test_rejects_negative_sinr(self):
        with pytest.raises(ValueError):
            rate_bps(-0.1, PARAMS)

    def test_known_value(self):
        # W * log2(1 + 3) = 2W at full efficiency
        assert rate_bps(3.0, PARAMS) == pytest.approx(2 * PARAMS.bandwidth_hz)

    def test_efficiency_scales_rate(self):
        half = RadioParams(transceiver_efficiency=0.5)
        assert rate_bps(3.0, half) == pytest.approx(PARAMS.bandwidth_hz)

    @given(st.floats(min_value=0.0, max_value=1e7), st.floats(min_value=0.0, max_value=1e7))
    def test_monotone_in_sinr(self, a, b):
        lo, hi = sorted((a, b))
        assert rate_bps(lo, PARAMS) <= rate_bps(hi, PARAMS)


class TestDoppler:
    def test_max_shift_at_300kmh_28ghz(self):
        fd = max_doppler_hz(300.0 / 3.6, PARAMS.carrier_freq_hz)
        assert fd == pytest.approx(DOPPLER_300KMH_28GHZ, rel=1e-12)
        assert fd == pytest.approx(7778.0, abs=1.0)

    def test_shift_at_angle(self):
        fd = max_doppler_hz(300.0 / 3.6, PARAMS.carrier_freq_hz)
        assert doppler_shift_hz(300.0 / 3.6, PARAMS.carrier_freq_hz, 60.0) == (
            pytest.approx(fd * 0.5)
        )

    def test_relative_shift_scaling(self):
        fd = max_doppler_hz(300.0 / 3.6, PARAMS.carrier_freq_hz)
        assert doppler_from_relative(
            -0.25, 300.0 / 3.6, PARAMS.carrier_freq_hz
        ) == pytest.approx(-0.25 * fd)

    def test_validation(self):
        with pytest.raises(ValueError):
            max_doppler_hz(-1.0, PARAMS.carrier_freq_hz)
        with pytest.raises(ValueError):
            max_doppler_hz(10.0, 0.0)
        with pytest.raises(ValueError):
            doppler_from_relative(1.5, 10.0, 28e9)


class TestHopsAndModes:
    def test_equal_distance_hops_match_without_si(self):
        a = evaluate_hop((0.0, 0.0, 0.0), (40.0, 0.0, 0.0), PARAMS, si_active=False)
        b = evaluate_hop((100.0, 0.0, 0.0), (140.0, 0.0, 0.0), PARAMS, si_active=False)
        assert a.sinr == pytest.approx(b.sinr, rel=1e-12)
        assert isinstance(a, HopBudget)

    def test_relay_rate_is_min_of_hops(self):
        scenario = build_scenario(ScenarioConfig())
        flow = Flow(id=3, dest_mr=3, qos_bps=1e7, sinr_min=0.0)
        for relay_mode in (Mode.LEFT, Mode.RIGHT, Mode.UAV):
            res = evaluate_relay(flow, relay_mode, scenario)
            assert res.rate_bps == pytest.approx(
                min(res.hop1.rate_bps, res.hop2.rate_bps)
            )
            assert res.sinr == pytest.approx(min(res.hop1.sinr, res.hop2.sinr))

    def test_first_hop_carries_si_penalty(self):
        # relay equidistant from source and destination: only SI breaks the tie
        scenario = build_scenario(ScenarioConfig())
        flow = Flow(id=2, dest_mr=2, qos_bps=1e7, sinr_min=0.0)
        res = evaluate_relay(flow, Mode.LEFT, scenario)
        assert res.hop1.si_mw > 0.0
        assert res.hop2.si_mw == 0.0

    def test_missing_neighbor_is_unavailable(self):
        scenario = build_scenario(ScenarioConfig())
        first = Flow(id=1, dest_mr=1, qos_bps=1e7, sinr_min=0.0)
        last = Flow(id=16, dest_mr=16, qos_bps=1e7, sinr_min=0.0)
        assert evaluate_relay(first, Mode.LEFT, scenario).rate_bps == 0.0
        assert evaluate_relay(last, Mode.RIGHT, scenario).rate_bps == 0.0

    def test_direct_has_no_si(self):
        scenario = build_scenario(ScenarioConfig())
        flow = Flow(id=5, dest_mr=5, qos_bps=1e7, sinr_min=0.0)
        direct = evaluate_direct(flow, scenario)
        assert direct.sinr > 0.0

    def test_forbidden_modes_zeroed_in_evaluation(self):
        scenario = build_scenario(ScenarioConfig())
        graph = build_graph(frozenset({4}), scenario.mr_count)
        blocked_flow = Flow(id=4, dest_mr=4, qos_bps=1e7, sinr_min=0.0)
        ev = evaluate_all_modes(blocked_flow, scenario, graph)
        assert ev.direct == UNAVAILABLE
        assert ev.left.sinr > 0.0 and ev.right.sinr > 0.0 and ev.uav.sinr > 0.0
        neighbor_flow = Flow(id=5, dest_mr=5, qos_bps=1e7, sinr_min=0.0)
        ev5 = evaluate_all_modes(neighbor_flow, scenario, graph)
        assert ev5.left == UNAVAILABLE  # its left neighbor is the blocked node
        assert ev5.direct.sinr > 0.0

    def test_boundary_modes_zeroed_in_evaluation(self):
        scenario = build_scenario(ScenarioConfig())
        graph = build_graph(frozenset(), scenario.mr_count)
        ev1 = evaluate_all_modes(
            Flow(id=1, dest_mr=1, qos_bps=1e7, sinr_min=0.0), scenario, graph
        )
        evf = evaluate_all_modes(
            Flow(id=16, dest_mr=16, qos_bps=1e7, sinr_min=0.0), scenario, graph
        )
        assert ev1.left == UNAVAILABLE
        assert evf.right == UNAVAILABLE
        assert ev1.uav.sinr > 0.0 and evf.uav.sinr > 0.0
