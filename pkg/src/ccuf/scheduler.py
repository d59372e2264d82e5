"""Per-request service logic: transmission-scheme choice, hit and miss
delays for FAP and UAV paths, UAV energy accounting, and handover detection.

Scheme selection is a pure function of the request context; the energy
ledger is the only stateful piece and is owned by a single replication.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import Region
from .popularity import ContentClass


class Scheme(enum.Enum):
    ST = "st"
    JT = "jt"
    PT = "pt"
    UAV_SERVE = "uav"


@dataclass(frozen=True)
class RequestOutcome:
    scheme: Scheme
    served_by: tuple[int, ...]
    hit: bool
    delay_s: float
    energy_j: float = 0.0
    handover: bool = False


@dataclass(frozen=True)
class EnergyParams:
    """UAV energy cost per served request."""

    tx_w_per_mbit: float = 0.5
    rx_w_per_mbit: float = 0.25
    pause_s: float = 1.0
    flyby_s: float = 2.0
    hover_los_w: float = 0.1
    hover_nlos_w: float = 0.2

    def __post_init__(self):
        if min(self.tx_w_per_mbit, self.rx_w_per_mbit, self.pause_s,
               self.flyby_s, self.hover_los_w, self.hover_nlos_w) < 0:
            raise ValueError("energy parameters must be >= 0")
        if self.flyby_s < self.pause_s:
            raise ValueError("flyby_s must be >= pause_s")


def select_scheme(content_class, region, speed, speed_threshold, indoor,
                  stationary=False):
    """Transmission scheme for one request.

    Outdoor users at or above the speed threshold go to their UAV.  Everyone
    else is served by FAPs: popular content by JT for cell-edge users and ST
    for cell-core users; mediocre content by ST regardless of link quality
    (each cluster member holds a different segment), or by PT when the user
    has not moved for two slots; non-popular content takes the miss path
    through the serving FAP, which is a single transmission.
    """
    if not indoor and speed >= speed_threshold:
        return Scheme.UAV_SERVE
    if content_class is ContentClass.POPULAR:
        return Scheme.JT if region is Region.CELL_EDGE else Scheme.ST
    if content_class is ContentClass.MEDIOCRE:
        return Scheme.PT if stationary else Scheme.ST
    return Scheme.ST


def fap_delay(hit, sinr, size_bits, bandwidth_hz, miss_penalty_s=0.0):
    """Download time over a FAP link: size / (B * log2(1 + SINR)); a miss
    adds the backhaul fetch penalty on top of the hit delay."""
    if np.any(np.asarray(sinr) <= 0):
        raise ValueError("sinr must be > 0")
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be > 0")
    base = size_bits / (bandwidth_hz * np.log2(1.0 + np.asarray(sinr, dtype=float)))
    return base if hit else base + miss_penalty_s


def uav_delay(hit, user_sinr, server_sinr, size_bits, bandwidth_hz):
    """Download time through a UAV.  On a hit only the UAV-to-user link is
    traversed; on a miss the server-to-UAV fetch comes first and the two
    link delays add."""
    ug = size_bits / (bandwidth_hz * np.log2(1.0 + np.asarray(user_sinr, dtype=float)))
    if hit:
        return ug
    mu = size_bits / (bandwidth_hz * np.log2(1.0 + np.asarray(server_sinr, dtype=float)))
    return mu + ug


def expected_uav_delay(cache, profile, hit_delay_s, miss_delay_s):
    """Popularity-weighted mean UAV delay: the hit probability is the cached
    head mass of the profile."""
    p_hit = float(sum(profile.probability(rank) for rank in cache.selected))
    return p_hit * hit_delay_s + (1.0 - p_hit) * miss_delay_s


def uav_energy_step(content_mbit, params, los):
    """Energy drawn from a UAV battery by one served request:
    transmit and receive energy over the pause time plus hover power over
    the remaining flyby time."""
    hover = np.where(los, params.hover_los_w, params.hover_nlos_w)
    e = (
        content_mbit * params.tx_w_per_mbit * params.pause_s
        + content_mbit * params.rx_w_per_mbit * params.pause_s
        + hover * (params.flyby_s - params.pause_s)
    )
    return float(e) if np.isscalar(los) or np.ndim(los) == 0 else e


class UavEnergyLedger:
    """Battery bookkeeping for the fleet.

    A request that drives a battery below zero is still served; every later
    request to a depleted UAV is rejected.
    """

    def __init__(self, batteries_j):
        self.remaining = np.asarray(batteries_j, dtype=float).copy()
        self.spent = np.zeros_like(self.remaining)

    def alive(self, uav_id=None):
        if uav_id is None:
            return self.remaining >= 0.0
        return bool(self.remaining[uav_id] >= 0.0)

    def charge(self, uav_id, joules):
        """Deduct energy; returns False when the UAV was already depleted
        and the request is rejected."""
        if self.remaining[uav_id] < 0.0:
            return False
        self.remaining[uav_id] -= joules
        self.spent[uav_id] += joules
        return True

    @property
    def total_spent(self):
        return float(self.spent.sum())


def detect_handover(start, velocity, dt_s, fap_pos, coverage_radius_m):
    """True when a user moving in a straight line exits the serving FAP's
    coverage disc strictly before the slot ends."""
    vx, vy = velocity
    speed_sq = vx * vx + vy * vy
    if speed_sq == 0.0 or dt_s <= 0.0:
        return False
    dx = start[0] - fap_pos[0]
    dy = start[1] - fap_pos[1]
    slack = coverage_radius_m * coverage_radius_m - (dx * dx + dy * dy)
    if slack < 0.0:
        return True
    b = dx * vx + dy * vy
    t_exit = (-b + math.sqrt(b * b + speed_sq * slack)) / speed_sq
    return t_exit < dt_s


def detect_handover_many(starts, velocities, dt_s, fap_positions, coverage_radius_m):
    """Vectorised :func:`detect_handover` over aligned arrays."""
    starts = np.asarray(starts, dtype=float)
    vel = np.asarray(velocities, dtype=float)
    fp = np.asarray(fap_positions, dtype=float)
    speed_sq = np.einsum("ij,ij->i", vel, vel)
    delta = starts - fp
    slack = coverage_radius_m**2 - np.einsum("ij,ij->i", delta, delta)
    b = np.einsum("ij,ij->i", delta, vel)
    moving = speed_sq > 0.0
    out = moving & (slack < 0.0)
    safe_speed = np.where(moving, speed_sq, 1.0)
    t_exit = (-b + np.sqrt(np.maximum(b * b + safe_speed * np.maximum(slack, 0.0), 0.0))) / safe_speed
    out |= moving & (slack >= 0.0) & (t_exit < dt_s)
    return out
