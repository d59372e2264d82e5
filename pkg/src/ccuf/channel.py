"""Radio computations: ground path loss, Rayleigh fading, FAP SINR,
air-to-ground LoS probability and mean path loss, the server-to-UAV link,
and cell-core / cell-edge classification.

Everything here is a pure function of immutable parameter blocks plus
caller-supplied random samples, so the functions are safe to call from
parallel replications.  Path loss in dB is always applied as attenuation:
received power carries a factor 10**(-loss_db/10).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

LIGHT_SPEED = 3.0e8


class Region(enum.Enum):
    CELL_CORE = "core"
    CELL_EDGE = "edge"


@dataclass(frozen=True)
class GroundChannelParams:
    """Ground-to-ground (FAP) link parameters."""

    path_loss_exponent: float = 3.0
    shadowing_std_db: float = 4.0
    carrier_hz: float = 2.4e9
    ref_distance_m: float = 1.0
    noise_dbm: float = -94.0

    @property
    def ref_loss_db(self):
        """Free-space loss at the reference distance,
        20*log10(4*pi*f_c*d0/c)."""
        return 20.0 * math.log10(
            4.0 * math.pi * self.carrier_hz * self.ref_distance_m / LIGHT_SPEED
        )


@dataclass(frozen=True)
class AirChannelParams:
    """Air-to-ground (UAV) and server-to-UAV link parameters."""

    los_exponent: float = 2.5
    nlos_exponent: float = 3.0
    los_shadowing_std_db: float = 3.5
    nlos_shadowing_std_db: float = 3.0
    # S-curve constants of the LoS probability (dense-urban defaults).
    los_a: float = 9.61
    los_b: float = 0.16
    server_los_exponent: float = 2.0
    server_nlos_penalty: float = 20.0
    # The NLoS penalty divides the linear gain by default; the literal mode
    # multiplies it instead (kept for comparison, physically inverted).
    server_link_literal: bool = False
    # Extra wall loss applied when the ground user is indoors.
    indoor_penetration_db: float = 20.0


def db_to_linear(db):
    return np.power(10.0, np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(np.asarray(x, dtype=float))


def dbm_to_mw(dbm):
    return np.power(10.0, np.asarray(dbm, dtype=float) / 10.0)


def mw_to_dbm(mw):
    return 10.0 * np.log10(np.asarray(mw, dtype=float))


def rayleigh_gain(rng, size=None):
    """Squared magnitude of a zero-mean unit-variance complex Gaussian;
    exponential with unit mean."""
    return rng.exponential(1.0, size=size)


def ground_path_loss_db(distance_m, ground, shadow_db=0.0):
    """Log-distance path loss in dB; distances below the reference distance
    are clamped to it."""
    d = np.maximum(np.asarray(distance_m, dtype=float), ground.ref_distance_m)
    return (
        ground.ref_loss_db
        + 10.0 * ground.path_loss_exponent * np.log10(d / ground.ref_distance_m)
        + shadow_db
    )


def received_power_mw(tx_power_dbm, loss_db, fading=1.0):
    """Received power with the path loss applied as attenuation."""
    return dbm_to_mw(tx_power_dbm) * np.asarray(fading, dtype=float) * db_to_linear(-np.asarray(loss_db, dtype=float))


def sinr_linear(signal_mw, interference_mw, noise_dbm):
    return np.asarray(signal_mw, dtype=float) / (
        np.asarray(interference_mw, dtype=float) + dbm_to_mw(noise_dbm)
    )


def fap_sinr(fap, point, fading, interferers, ground, shadow_db=0.0):
    """SINR of a single FAP-to-user link.

    ``interferers`` is an iterable of (FapSite, fading, shadow_db) triples
    describing the other FAP links active in the same slot.
    """
    d = math.dist(fap.position, (point[0], point[1]))
    sig = received_power_mw(
        fap.tx_power_dbm, ground_path_loss_db(d, ground, shadow_db), fading
    )
    interference = 0.0
    for other, gain, shad in interferers:
        d_i = math.dist(other.position, (point[0], point[1]))
        interference += received_power_mw(
            other.tx_power_dbm, ground_path_loss_db(d_i, ground, shad), gain
        )
    return float(sinr_linear(sig, interference, ground.noise_dbm))


def jt_sinr(cooperating, point, fadings, interferers, ground, shadows=None):
    """SINR under joint transmission: the cooperating FAPs' received powers
    add coherently in the numerator and are absent from the interference."""
    if shadows is None:
        shadows = [0.0] * len(cooperating)
    sig = 0.0
    for fap, gain, shad in zip(cooperating, fadings, shadows):
        d = math.dist(fap.position, (point[0], point[1]))
        sig += received_power_mw(
            fap.tx_power_dbm, ground_path_loss_db(d, ground, shad), gain
        )
    interference = 0.0
    for other, gain, shad in interferers:
        d_i = math.dist(other.position, (point[0], point[1]))
        interference += received_power_mw(
            other.tx_power_dbm, ground_path_loss_db(d_i, ground, shad), gain
        )
    return float(sinr_linear(sig, interference, ground.noise_dbm))


def classify_region(mean_sinr_db, threshold_db):
    """Cell-core when the window-averaged SINR strictly exceeds the
    threshold, otherwise cell-edge."""
    return Region.CELL_CORE if mean_sinr_db > threshold_db else Region.CELL_EDGE


def elevation_deg(horizontal_m, altitude_m):
    return np.degrees(np.arctan2(altitude_m, np.asarray(horizontal_m, dtype=float)))


def los_probability(horizontal_m, altitude_m, air):
    """Probability of a line-of-sight air-to-ground link,
    1 / (1 + a*exp(-b*(phi - a))) with the elevation angle phi in degrees."""
    phi = elevation_deg(horizontal_m, altitude_m)
    return 1.0 / (1.0 + air.los_a * np.exp(-air.los_b * (phi - air.los_a)))


def air_ground_avg_path_loss(
    horizontal_m, altitude_m, air, ground, p_los=None, indoor=False
):
    """Mean air-to-ground path loss in dB: the LoS/NLoS mixture of the
    deterministic log-distance losses, weighted by the LoS probability.

    ``p_los`` overrides the geometric LoS probability when given.  Indoor
    users pay the configured penetration loss on top.
    """
    d = np.hypot(np.asarray(horizontal_m, dtype=float), altitude_m)
    if p_los is None:
        p_los = los_probability(horizontal_m, altitude_m, air)
    d = np.maximum(d, ground.ref_distance_m)
    log_d = np.log10(d / ground.ref_distance_m)
    loss_los = ground.ref_loss_db + 10.0 * air.los_exponent * log_d
    loss_nlos = ground.ref_loss_db + 10.0 * air.nlos_exponent * log_d
    loss = p_los * loss_los + (1.0 - p_los) * loss_nlos
    if np.any(indoor):
        loss = loss + np.asarray(indoor, dtype=float) * air.indoor_penetration_db
    return loss


def server_uav_avg_path_loss(distance_m, air, p_los, literal=None):
    """Mean server-to-UAV channel gain (linear).

    The LoS branch is d**(-exponent).  By default the NLoS penalty divides
    that gain; ``literal=True`` multiplies instead.
    """
    if literal is None:
        literal = air.server_link_literal
    d = np.asarray(distance_m, dtype=float)
    gain_los = np.power(d, -air.server_los_exponent)
    if literal:
        gain_nlos = air.server_nlos_penalty * gain_los
    else:
        gain_nlos = gain_los / air.server_nlos_penalty
    return p_los * gain_los + (1.0 - p_los) * gain_nlos
