"""Link budgets: antenna pattern, received power, SINR, rate, Doppler.

All power arithmetic is carried out in linear milliwatts; dB values appear
only at the interfaces that are naturally logarithmic (antenna gains, noise
spectral density). Relay links are two-hop: BS -> relay under residual
self-interference, relay -> destination MR without it, combined as the
element-wise minimum of the two hops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .blockage import BlockageGraph, forbidden_modes
from .modes import Mode
from .scenario import Flow, Position, RadioParams, Scenario, distance

C_MPS = 3.0e8  # propagation speed used throughout


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(linear: float) -> float:
    if linear <= 0:
        raise ValueError("linear power must be positive to convert to dB")
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class AntennaPattern:
    """Directional pattern: Gaussian main lobe plus constant side lobe.

    Derived quantities follow the usual reference-antenna fits, with the
    half-power beamwidth expressed in degrees:
      main-lobe width  theta_ml = 2.6 * theta_3db
      peak gain        G_0  = 20*log10(1.6162 / sin(theta_3db/2))
      side-lobe gain   G_sl = -0.4111*ln(theta_3db) - 10.579
    """

    theta_3db_deg: float

    def __post_init__(self) -> None:
        if not 0 < self.theta_3db_deg < 180:
            raise ValueError("theta_3db_deg must be in (0, 180)")

    @property
    def theta_ml_deg(self) -> float:
        return 2.6 * self.theta_3db_deg

    @property
    def max_gain_db(self) -> float:
        return 20.0 * math.log10(1.6162 / math.sin(math.radians(self.theta_3db_deg / 2)))

    @property
    def side_lobe_gain_db(self) -> float:
        return -0.4111 * math.log(self.theta_3db_deg) - 10.579

    def gain_db(self, theta_deg: float) -> float:
        """Gain toward an off-boresight angle theta in [0, 180] degrees."""
        if not 0 <= theta_deg <= 180:
            raise ValueError("theta_deg must be in [0, 180]")
        if theta_deg <= self.theta_ml_deg / 2:
            return self.max_gain_db - 3.01 * (2 * theta_deg / self.theta_3db_deg) ** 2
        return self.side_lobe_gain_db


@dataclass(frozen=True)
class Alignment:
    """Beam-steering error per link end, degrees off boresight."""

    tx_offset_deg: float = 0.0
    rx_offset_deg: float = 0.0


BORESIGHT = Alignment()


def received_power_mw(
    tx: Position,
    rx: Position,
    params: RadioParams,
    alignment: Alignment = BORESIGHT,
) -> float:
    """Free-space received power k0 * P_t * G_t * G_r * d^-alpha in mW."""
    d = distance(tx, rx)
    if d <= 0:
        raise ValueError("transmitter and receiver positions coincide")
    wavelength = C_MPS / params.carrier_freq_hz
    k0 = (wavelength / (4 * math.pi)) ** 2
    pattern = AntennaPattern(params.half_power_beamwidth_deg)
    g_tx = db_to_linear(pattern.gain_db(alignment.tx_offset_deg))
    g_rx = db_to_linear(pattern.gain_db(alignment.rx_offset_deg))
    return k0 * params.transmit_power_mw * g_tx * g_rx * d ** (-params.path_loss_exponent)


def noise_power_mw(params: RadioParams) -> float:
    """Thermal noise over the full band: PSD (dBm/MHz) times bandwidth."""
    return db_to_linear(params.noise_psd_dbm_per_mhz) * (params.bandwidth_hz / 1e6)


def si_power_mw(params: RadioParams) -> float:
    """Residual self-interference at a full-duplex relay: beta * P_t."""
    return params.si_cancellation * params.transmit_power_mw


def rate_bps(sinr: float, params: RadioParams) -> float:
    """Shannon rate scaled by the transceiver efficiency."""
    if sinr < 0:
        raise ValueError("sinr must be non-negative")
    return params.transceiver_efficiency * params.bandwidth_hz * math.log2(1.0 + sinr)


def sinr(received_mw: float, params: RadioParams, si_active: bool) -> float:
    """Signal over noise plus (optionally) the full-duplex SI residual."""
    if received_mw < 0:
        raise ValueError("received power must be non-negative")
    denom = noise_power_mw(params) + (si_power_mw(params) if si_active else 0.0)
    return received_mw / denom


@dataclass(frozen=True)
class HopBudget:
    """One hop's full budget; si_mw is zero when the hop has no relay SI."""

    received_mw: float
    noise_mw: float
    si_mw: float
    sinr: float
    rate_bps: float


def evaluate_hop(
    tx: Position,
    rx: Position,
    params: RadioParams,
    si_active: bool,
    alignment: Alignment = BORESIGHT,
) -> HopBudget:
    p_r = received_power_mw(tx, rx, params, alignment)
    noise = noise_power_mw(params)
    si = si_power_mw(params) if si_active else 0.0
    gamma = sinr(p_r, params, si_active)
    return HopBudget(p_r, noise, si, gamma, rate_bps(gamma, params))


class ModeLink(NamedTuple):
    """SINR/rate pair for one transmission mode; zeros mean unavailable."""

    sinr: float
    rate_bps: float


UNAVAILABLE = ModeLink(0.0, 0.0)


class RelayEvaluation(NamedTuple):
    hop1: HopBudget | None   # BS -> relay, with self-interference
    hop2: HopBudget | None   # relay -> destination MR
    sinr: float              # min over hops
    rate_bps: float


def evaluate_direct(flow: Flow, scenario: Scenario) -> HopBudget:
    """Single-hop BS -> destination MR budget (no self-interference)."""
    return evaluate_hop(scenario.bs_position, scenario.mr_position(flow.dest_mr),
                        scenario.radio, si_active=False)


def _relay_position(flow: Flow, relay: Mode, scenario: Scenario) -> Position | None:
    if relay is Mode.LEFT:
        idx = flow.dest_mr - 1
    elif relay is Mode.RIGHT:
        idx = flow.dest_mr + 1
    elif relay is Mode.UAV:
        return scenario.uav_position
    else:
        raise ValueError(f"{relay} is not a relay mode")
    if 1 <= idx <= scenario.mr_count:
        return scenario.mr_position(idx)
    return None


def evaluate_relay(flow: Flow, relay: Mode, scenario: Scenario) -> RelayEvaluation:
    """Two-hop budget via a neighbor MR or the UAV.

    A nonexistent neighbor (past either end of the train) yields the
    unavailable-mode result rather than an error.
    """
    pos = _relay_position(flow, relay, scenario)
    if pos is None:
        return RelayEvaluation(None, None, 0.0, 0.0)
    hop1 = evaluate_hop(scenario.bs_position, pos, scenario.radio, si_active=True)
    hop2 = evaluate_hop(pos, scenario.mr_position(flow.dest_mr), scenario.radio,
                        si_active=False)
    return RelayEvaluation(hop1, hop2, min(hop1.sinr, hop2.sinr),
                           min(hop1.rate_bps, hop2.rate_bps))


@dataclass(frozen=True)
class ModeEvaluation:
    """Per-mode (sinr, rate) for one flow; zeros mark unavailable modes."""

    direct: ModeLink
    left: ModeLink
    right: ModeLink
    uav: ModeLink

    def for_mode(self, mode: Mode) -> ModeLink:
        if mode is Mode.DIRECT:
            return self.direct
        if mode is Mode.LEFT:
            return self.left
        if mode is Mode.RIGHT:
            return self.right
        if mode is Mode.UAV:
            return self.uav
        return UNAVAILABLE


def evaluate_all_modes(flow: Flow, scenario: Scenario, graph: BlockageGraph) -> ModeEvaluation:
    """Evaluate the four modes, zeroing any the blockage graph forbids."""
    forbidden = forbidden_modes(flow.dest_mr, graph)
    links = {}
    for mode in (Mode.DIRECT, Mode.LEFT, Mode.RIGHT, Mode.UAV):
        if mode in forbidden:
            links[mode] = UNAVAILABLE
        elif mode is Mode.DIRECT:
            hop = evaluate_direct(flow, scenario)
            links[mode] = ModeLink(hop.sinr, hop.rate_bps)
        else:
            ev = evaluate_relay(flow, mode, scenario)
            links[mode] = ModeLink(ev.sinr, ev.rate_bps)
    return ModeEvaluation(direct=links[Mode.DIRECT], left=links[Mode.LEFT],
                          right=links[Mode.RIGHT], uav=links[Mode.UAV])


def max_doppler_hz(speed_mps: float, carrier_hz: float) -> float:
    """Worst-case Doppler magnitude (v/c) * f_c."""
    if speed_mps < 0:
        raise ValueError("speed_mps must be non-negative")
    if carrier_hz <= 0:
        raise ValueError("carrier_hz must be positive")
    return speed_mps / C_MPS * carrier_hz


def doppler_shift_hz(speed_mps: float, carrier_hz: float, theta_deg: float) -> float:
    """Doppler shift for a path at angle theta from the velocity vector."""
    return max_doppler_hz(speed_mps, carrier_hz) * math.cos(math.radians(theta_deg))


def doppler_from_relative(rel: float, speed_mps: float, carrier_hz: float) -> float:
    """Map a relative estimate in [-1, 1] onto the physical Doppler range."""
    if not -1.0 <= rel <= 1.0:
        raise ValueError("rel must lie in [-1, 1]")
    return rel * max_doppler_hz(speed_mps, carrier_hz)
