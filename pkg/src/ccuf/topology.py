"""Static network topology: FAP sites, inter-cluster tiling, indoor
rectangles, the UAV fleet and the main server.

A ``Network`` is immutable once built, so replications running in parallel
can share it for reads.  Two layout modes are supported:

* ``hex``  -- FAPs on a hexagonal lattice with cell radius equal to the FAP
  transmission range, grouped into seven-cell flowers (the default; all
  placement and reuse machinery assumes this tiling).
* ``ppp``  -- FAP count drawn from a Poisson point process with intensity
  ``n_faps`` over the region disc, clustered by greedy nearest-neighbour
  grouping.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import lattice


@dataclass(frozen=True)
class FapSite:
    id: int
    position: tuple[float, float]
    tx_power_dbm: float
    tx_range_m: float
    cache_capacity: int
    inter_cluster_id: int
    lattice_coord: tuple[int, int] | None = None


@dataclass(frozen=True)
class UavSite:
    id: int
    position: tuple[float, float]
    altitude_m: float
    tx_power_dbm: float
    tx_range_m: float
    cache_capacity: int
    battery_j: float


@dataclass(frozen=True)
class Network:
    faps: tuple[FapSite, ...]
    inter_clusters: tuple[tuple[int, ...], ...]
    uavs: tuple[UavSite, ...]
    server_pos: tuple[float, float, float]
    region_radius_m: float
    indoor_regions: tuple[tuple[float, float, float, float], ...]
    layout: str
    cell_radius_m: float

    def cluster_of(self, fap_id):
        return self.faps[fap_id].inter_cluster_id

    def to_dict(self):
        return {
            "layout": self.layout,
            "region_radius_m": self.region_radius_m,
            "cell_radius_m": self.cell_radius_m,
            "server_pos": list(self.server_pos),
            "indoor_regions": [list(r) for r in self.indoor_regions],
            "inter_clusters": [list(c) for c in self.inter_clusters],
            "faps": [
                {
                    "id": f.id,
                    "position": list(f.position),
                    "tx_power_dbm": f.tx_power_dbm,
                    "tx_range_m": f.tx_range_m,
                    "cache_capacity": f.cache_capacity,
                    "inter_cluster_id": f.inter_cluster_id,
                    "lattice_coord": list(f.lattice_coord) if f.lattice_coord else None,
                }
                for f in self.faps
            ],
            "uavs": [
                {
                    "id": u.id,
                    "position": list(u.position),
                    "altitude_m": u.altitude_m,
                    "tx_power_dbm": u.tx_power_dbm,
                    "tx_range_m": u.tx_range_m,
                    "cache_capacity": u.cache_capacity,
                    "battery_j": u.battery_j,
                }
                for u in self.uavs
            ],
        }

    @classmethod
    def from_dict(cls, data):
        faps = tuple(
            FapSite(
                id=f["id"],
                position=tuple(f["position"]),
                tx_power_dbm=f["tx_power_dbm"],
                tx_range_m=f["tx_range_m"],
                cache_capacity=f["cache_capacity"],
                inter_cluster_id=f["inter_cluster_id"],
                lattice_coord=tuple(f["lattice_coord"]) if f["lattice_coord"] else None,
            )
            for f in data["faps"]
        )
        uavs = tuple(
            UavSite(
                id=u["id"],
                position=tuple(u["position"]),
                altitude_m=u["altitude_m"],
                tx_power_dbm=u["tx_power_dbm"],
                tx_range_m=u["tx_range_m"],
                cache_capacity=u["cache_capacity"],
                battery_j=u["battery_j"],
            )
            for u in data["uavs"]
        )
        return cls(
            faps=faps,
            inter_clusters=tuple(tuple(c) for c in data["inter_clusters"]),
            uavs=uavs,
            server_pos=tuple(data["server_pos"]),
            region_radius_m=data["region_radius_m"],
            indoor_regions=tuple(tuple(r) for r in data["indoor_regions"]),
            layout=data["layout"],
            cell_radius_m=data["cell_radius_m"],
        )

    def to_json(self, path=None):
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_json(cls, text_or_path):
        text = text_or_path
        if "{" not in str(text_or_path):
            with open(text_or_path, encoding="utf-8") as fh:
                text = fh.read()
        return cls.from_dict(json.loads(text))


@dataclass
class TopologyConfig:
    """Geometry knobs for :func:`build_topology`."""

    n_faps: int = 175
    cluster_size: int = 7
    layout: str = "hex"
    region_radius_m: float = 5000.0
    cell_radius_m: float = 30.0
    fap_tx_power_dbm: float = 15.0
    fap_cache_capacity: int = 10
    n_uavs: int = 10
    uav_altitude_m: float = 100.0
    uav_range_m: float = 500.0
    uav_tx_power_dbm: float = 15.0
    uav_cache_capacity: int = 30
    uav_battery_j: float = 5.0e6
    server_pos: tuple[float, float, float] = (0.0, 0.0, 0.0)
    indoor_fraction: float = 0.4
    building_pitch_m: float | None = None
    indoor_regions: list | None = None


def uniform_disc(rng, n, radius):
    """n points uniformly distributed over the disc of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def building_grid(region_radius, fraction, pitch=None):
    """Axis-aligned building rectangles covering ``fraction`` of the area.

    A square grid of buildings with pitch ``pitch`` (default: one fifth of
    the region radius); each building is a square of side
    pitch*sqrt(fraction) centred on a grid point.
    """
    if fraction <= 0.0:
        return ()
    if pitch is None:
        pitch = region_radius / 5.0
    side = pitch * math.sqrt(min(fraction, 1.0))
    half = side / 2.0
    rects = []
    n = int(math.ceil(region_radius / pitch))
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            cx, cy = i * pitch, j * pitch
            if math.hypot(cx, cy) <= region_radius + pitch:
                rects.append((cx - half, cy - half, cx + half, cy + half))
    return tuple(rects)


def _hex_layout(cfg):
    if cfg.n_faps == 0:
        return [], []
    if cfg.cluster_size != lattice.FLOWER_SIZE:
        raise ValueError(
            "hex layout tiles seven-cell flowers; cluster_size must be 7, "
            f"got {cfg.cluster_size}"
        )
    if cfg.n_faps % cfg.cluster_size != 0:
        raise ValueError(
            f"n_faps={cfg.n_faps} is not tileable into inter-clusters of "
            f"size {cfg.cluster_size}"
        )
    n_clusters = cfg.n_faps // cfg.cluster_size
    coords = []
    clusters = []
    for center in lattice.cluster_centers(n_clusters):
        cells = lattice.flower(center)
        clusters.append(list(range(len(coords), len(coords) + len(cells))))
        coords.extend(cells)
    positions = [lattice.axial_to_xy(c, cfg.cell_radius_m) for c in coords]
    worst = max(math.hypot(x, y) for x, y in positions)
    if worst > cfg.region_radius_m:
        raise ValueError(
            f"hex layout needs region_radius_m >= {worst:.1f} m for "
            f"{cfg.n_faps} FAPs (got {cfg.region_radius_m})"
        )
    return list(zip(positions, coords)), clusters


def _ppp_layout(cfg, rng):
    n = int(rng.poisson(cfg.n_faps))
    n -= n % cfg.cluster_size
    n = max(n, cfg.cluster_size)
    xy = uniform_disc(rng, n, cfg.region_radius_m)
    remaining = list(range(n))
    clusters = []
    while remaining:
        seed = remaining[0]
        rest = remaining[1:]
        d = [(math.dist(xy[seed], xy[j]), j) for j in rest]
        d.sort()
        group = [seed] + [j for _, j in d[: cfg.cluster_size - 1]]
        clusters.append(sorted(group))
        taken = set(group)
        remaining = [j for j in remaining if j not in taken]
    sites = [((float(x), float(y)), None) for x, y in xy]
    return sites, clusters


def build_topology(cfg, rng):
    """Build an immutable :class:`Network` from a :class:`TopologyConfig`.

    The same (config, seed) always produces a bit-identical network.
    """
    if cfg.n_faps < 0:
        raise ValueError("n_faps must be >= 0")
    if cfg.n_faps and cfg.cluster_size < 1:
        raise ValueError("cluster_size must be >= 1")
    if cfg.region_radius_m <= 0:
        raise ValueError("region_radius_m must be > 0")

    if cfg.layout == "hex":
        sites, clusters = _hex_layout(cfg)
    elif cfg.layout == "ppp":
        sites, clusters = _ppp_layout(cfg, rng) if cfg.n_faps else ([], [])
    else:
        raise ValueError(f"unknown layout {cfg.layout!r}")

    cluster_of = {}
    for cid, members in enumerate(clusters):
        for fid in members:
            cluster_of[fid] = cid

    faps = tuple(
        FapSite(
            id=i,
            position=(float(pos[0]), float(pos[1])),
            tx_power_dbm=cfg.fap_tx_power_dbm,
            tx_range_m=cfg.cell_radius_m,
            cache_capacity=cfg.fap_cache_capacity,
            inter_cluster_id=cluster_of[i],
            lattice_coord=coord,
        )
        for i, (pos, coord) in enumerate(sites)
    )

    uav_xy = uniform_disc(rng, cfg.n_uavs, cfg.region_radius_m)
    uavs = tuple(
        UavSite(
            id=k,
            position=(float(uav_xy[k, 0]), float(uav_xy[k, 1])),
            altitude_m=cfg.uav_altitude_m,
            tx_power_dbm=cfg.uav_tx_power_dbm,
            tx_range_m=cfg.uav_range_m,
            cache_capacity=cfg.uav_cache_capacity,
            battery_j=cfg.uav_battery_j,
        )
        for k in range(cfg.n_uavs)
    )

    if cfg.indoor_regions is not None:
        rects = tuple(tuple(float(v) for v in r) for r in cfg.indoor_regions)
    else:
        rects = building_grid(
            cfg.region_radius_m, cfg.indoor_fraction, cfg.building_pitch_m
        )

    return Network(
        faps=faps,
        inter_clusters=tuple(tuple(c) for c in clusters),
        uavs=uavs,
        server_pos=tuple(float(v) for v in cfg.server_pos),
        region_radius_m=float(cfg.region_radius_m),
        indoor_regions=rects,
        layout=cfg.layout,
        cell_radius_m=float(cfg.cell_radius_m),
    )


def is_indoor(point, net):
    """True when ``point`` lies inside any indoor rectangle (closed regions:
    a point exactly on an edge counts as indoor)."""
    x, y = point[0], point[1]
    for xmin, ymin, xmax, ymax in net.indoor_regions:
        if xmin <= x <= xmax and ymin <= y <= ymax:
            return True
    return False


def indoor_mask(points, rects):
    """Vectorised :func:`is_indoor` for an (n, 2) array of points."""
    points = np.asarray(points, dtype=float)
    mask = np.zeros(len(points), dtype=bool)
    for xmin, ymin, xmax, ymax in rects:
        mask |= (
            (points[:, 0] >= xmin)
            & (points[:, 0] <= xmax)
            & (points[:, 1] >= ymin)
            & (points[:, 1] <= ymax)
        )
    return mask


def fap_covers(fap, point, shadow_db, ground, rssi_threshold_dbm):
    """Coverage test from received signal strength.

    The received power at distance d is the power at the reference distance
    minus the distance-dependent attenuation, plus a shadowing sample:

        rssi(d) = rssi(d0) - 10*eta*log10(d/d0) + shadow

    and the point is covered when rssi(d) >= rssi_threshold_dbm.
    Distances below the reference distance are clamped to it.
    """
    d = max(math.dist(fap.position, (point[0], point[1])), ground.ref_distance_m)
    rssi = (
        fap.tx_power_dbm
        - ground.ref_loss_db
        - 10.0 * ground.path_loss_exponent * math.log10(d / ground.ref_distance_m)
        + shadow_db
    )
    return rssi >= rssi_threshold_dbm


def default_rssi_threshold(tx_power_dbm, ground, coverage_radius_m):
    """Threshold that puts the zero-shadowing coverage boundary exactly at
    ``coverage_radius_m``."""
    return (
        tx_power_dbm
        - ground.ref_loss_db
        - 10.0
        * ground.path_loss_exponent
        * math.log10(coverage_radius_m / ground.ref_distance_m)
    )
