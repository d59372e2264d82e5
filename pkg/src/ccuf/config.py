"""Simulation configuration: one nested block per subsystem, JSON-backed,
with desk and paper-scale profiles.

Every block mirrors its module's parameter dataclass; ``SimConfig`` is the
single object the harness consumes.  Configs round-trip losslessly through
``to_dict``/``from_dict`` and reject bad values with field-level messages.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field, fields

from .channel import AirChannelParams, GroundChannelParams
from .scheduler import EnergyParams
from .topology import TopologyConfig


class ConfigError(ValueError):
    pass


@dataclass
class CatalogConfig:
    n_contents: int = 40724
    gamma: float = 0.6
    alpha: float = 0.4
    n_segments: int = 7
    content_size_mbit: float = 300.0
    demand_noise: float = 0.0
    demand_update_slots: int = 100


@dataclass
class SchedulerConfig:
    bandwidth_hz: float = 20.0e6
    sinr_threshold_db: float = 18.0
    sinr_window_slots: int = 20
    speed_threshold_ms: float = 1.5
    miss_penalty_s: float = 0.05
    # When set, this fraction of outdoor users is routed to UAVs regardless
    # of speed; when None, routing follows the speed threshold.
    uav_serve_fraction: float | None = None
    route_all_to_faps: bool = False
    server_tx_power_dbm: float | None = None


@dataclass
class MobilityConfig:
    n_users: int = 500
    model: str = "random_walk"  # random_walk | simple | continuous
    stationary_fraction: float = 0.0
    min_speed_factor: float = 0.1
    max_speed_factor: float = 0.9
    # When set, every user moves at speed_ratio * speed_threshold.
    speed_ratio: float | None = None
    # Slot length; None derives it (continuous: cell radius over the speed
    # threshold; lattice walks: one segment at the threshold SINR).
    slot_s: float | None = None


@dataclass
class DeploymentConfig:
    redeploy_every_slots: int = 50
    kmeans_max_iter: int = 100


@dataclass
class ChannelConfig:
    ground: GroundChannelParams = field(default_factory=GroundChannelParams)
    air: AirChannelParams = field(default_factory=AirChannelParams)


@dataclass
class SimConfig:
    seed: int = 0
    replications: int = 10
    horizon_slots: int = 500
    # cross-product sweep: list of (dotted parameter path, list of values)
    sweep: list = field(default_factory=list)
    topology: TopologyConfig = field(default_factory=TopologyConfig)
    catalog: CatalogConfig = field(default_factory=CatalogConfig)
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    scheduler: SchedulerConfig = field(default_factory=SchedulerConfig)
    energy: EnergyParams = field(default_factory=EnergyParams)
    mobility: MobilityConfig = field(default_factory=MobilityConfig)
    deployment: DeploymentConfig = field(default_factory=DeploymentConfig)

    def validate(self):
        def need(cond, message):
            if not cond:
                raise ConfigError(message)

        need(self.seed >= 0, "seed: must be >= 0")
        need(self.replications >= 1, "replications: must be >= 1")
        need(self.horizon_slots >= 0, "horizon_slots: must be >= 0")
        t = self.topology
        need(t.n_faps >= 0, "topology.n_faps: must be >= 0")
        need(t.cluster_size >= 1, "topology.cluster_size: must be >= 1")
        need(
            t.n_faps == 0 or t.n_faps >= t.cluster_size,
            "topology.n_faps: must be >= cluster_size (or 0)",
        )
        need(t.layout in ("hex", "ppp"), "topology.layout: must be 'hex' or 'ppp'")
        need(t.region_radius_m > 0, "topology.region_radius_m: must be > 0")
        need(t.cell_radius_m > 0, "topology.cell_radius_m: must be > 0")
        need(t.fap_cache_capacity >= 1, "topology.fap_cache_capacity: must be >= 1")
        need(t.n_uavs >= 0, "topology.n_uavs: must be >= 0")
        need(t.uav_altitude_m > 0, "topology.uav_altitude_m: must be > 0")
        need(t.uav_cache_capacity >= 0, "topology.uav_cache_capacity: must be >= 0")
        need(0.0 <= t.indoor_fraction <= 1.0, "topology.indoor_fraction: must be in [0, 1]")
        c = self.catalog
        need(c.n_contents >= 1, "catalog.n_contents: must be >= 1")
        need(c.gamma >= 0, "catalog.gamma: must be >= 0")
        need(0.0 <= c.alpha <= 1.0, "catalog.alpha: must be in [0, 1]")
        need(c.n_segments >= 1, "catalog.n_segments: must be >= 1")
        need(c.content_size_mbit > 0, "catalog.content_size_mbit: must be > 0")
        need(c.demand_noise >= 0, "catalog.demand_noise: must be >= 0")
        need(c.demand_update_slots >= 1, "catalog.demand_update_slots: must be >= 1")
        need(
            c.n_segments == self.topology.cluster_size or self.topology.n_faps == 0,
            "catalog.n_segments: must equal topology.cluster_size",
        )
        g = self.channel.ground
        need(g.path_loss_exponent > 0, "channel.ground.path_loss_exponent: must be > 0")
        need(g.shadowing_std_db >= 0, "channel.ground.shadowing_std_db: must be >= 0")
        need(g.ref_distance_m > 0, "channel.ground.ref_distance_m: must be > 0")
        a = self.channel.air
        need(
            a.nlos_exponent >= a.los_exponent,
            "channel.air.nlos_exponent: must be >= los_exponent",
        )
        need(a.server_nlos_penalty >= 1, "channel.air.server_nlos_penalty: must be >= 1")
        s = self.scheduler
        need(s.bandwidth_hz > 0, "scheduler.bandwidth_hz: must be > 0")
        need(s.sinr_window_slots >= 1, "scheduler.sinr_window_slots: must be >= 1")
        need(s.speed_threshold_ms > 0, "scheduler.speed_threshold_ms: must be > 0")
        need(s.miss_penalty_s >= 0, "scheduler.miss_penalty_s: must be >= 0")
        if s.uav_serve_fraction is not None:
            need(
                0.0 <= s.uav_serve_fraction <= 1.0,
                "scheduler.uav_serve_fraction: must be in [0, 1]",
            )
        m = self.mobility
        need(m.n_users >= 0, "mobility.n_users: must be >= 0")
        need(
            m.model in ("random_walk", "simple", "continuous"),
            "mobility.model: must be random_walk, simple or continuous",
        )
        need(
            0.0 <= m.stationary_fraction <= 1.0,
            "mobility.stationary_fraction: must be in [0, 1]",
        )
        need(
            0.0 <= m.min_speed_factor <= m.max_speed_factor,
            "mobility.min_speed_factor: must be in [0, max_speed_factor]",
        )
        d = self.deployment
        need(d.redeploy_every_slots >= 1, "deployment.redeploy_every_slots: must be >= 1")
        need(d.kmeans_max_iter >= 1, "deployment.kmeans_max_iter: must be >= 1")
        for i, axis in enumerate(self.sweep):
            need(
                isinstance(axis, (list, tuple)) and len(axis) == 2,
                f"sweep[{i}]: must be a (parameter, values) pair",
            )
            need(len(axis[1]) >= 1, f"sweep[{i}]: needs at least one value")
        return self

    def to_dict(self):
        return _asdict(self)

    @classmethod
    def from_dict(cls, data):
        return _from_dict(cls, data, path="")

    def to_json(self, path=None):
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def with_overrides(self, overrides):
        """A copy with dotted-path parameters replaced,
        e.g. {'catalog.alpha': 0.2}."""
        data = self.to_dict()
        for dotted, value in overrides.items():
            node = data
            parts = dotted.split(".")
            for part in parts[:-1]:
                if part not in node:
                    raise ConfigError(f"{dotted}: unknown config section {part!r}")
                node = node[part]
            if parts[-1] not in node:
                raise ConfigError(f"{dotted}: unknown parameter")
            node[parts[-1]] = value
        return SimConfig.from_dict(data)


_NESTED = {
    "topology": TopologyConfig,
    "catalog": CatalogConfig,
    "scheduler": SchedulerConfig,
    "energy": EnergyParams,
    "mobility": MobilityConfig,
    "deployment": DeploymentConfig,
    "ground": GroundChannelParams,
    "air": AirChannelParams,
    "channel": ChannelConfig,
}


def _asdict(obj):
    out = {}
    for f in fields(obj):
        value = getattr(obj, f.name)
        if dataclasses.is_dataclass(value):
            out[f.name] = _asdict(value)
        elif isinstance(value, tuple):
            out[f.name] = list(value)
        elif isinstance(value, list):
            out[f.name] = [list(v) if isinstance(v, (tuple, list)) else v for v in value]
        else:
            out[f.name] = value
    return out


def _from_dict(cls, data, path):
    if not isinstance(data, dict):
        raise ConfigError(f"{path or 'config'}: expected an object")
    known = {f.name: f for f in fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"{path + key if path else key}: unknown parameter")
    kwargs = {}
    for name, f in known.items():
        if name not in data:
            continue
        value = data[name]
        sub = _NESTED.get(name)
        if sub is not None and isinstance(value, dict):
            kwargs[name] = _from_dict(sub, value, path=f"{path}{name}.")
        elif name == "server_pos" and isinstance(value, list):
            kwargs[name] = tuple(value)
        elif name == "sweep" and isinstance(value, list):
            kwargs[name] = [(axis[0], list(axis[1])) for axis in value]
        else:
            kwargs[name] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path or 'config'}: {exc}") from exc


def desk_profile():
    """Desk-scale defaults: 7 hex clusters, a small catalog, short horizon.
    Fast enough for interactive runs and the test suite."""
    cfg = SimConfig(
        replications=10,
        horizon_slots=500,
        topology=TopologyConfig(
            n_faps=49,
            region_radius_m=300.0,
            n_uavs=3,
            uav_cache_capacity=30,
            fap_cache_capacity=10,
        ),
        catalog=CatalogConfig(n_contents=500),
        mobility=MobilityConfig(n_users=100),
    )
    return cfg.validate()


def paper_profile():
    """Full-scale defaults: 25 hex clusters, 10 UAVs, a 40k-content
    catalog.  Expect minutes per replication."""
    cfg = SimConfig(
        replications=10,
        horizon_slots=500,
        topology=TopologyConfig(
            n_faps=175,
            region_radius_m=5000.0,
            n_uavs=10,
            uav_cache_capacity=200,
            fap_cache_capacity=20,
        ),
        catalog=CatalogConfig(n_contents=40724),
        mobility=MobilityConfig(n_users=500),
    )
    return cfg.validate()


PROFILES = {"desk": desk_profile, "paper": paper_profile}
