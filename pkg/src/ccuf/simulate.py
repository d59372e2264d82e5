"""Replication engine: one discrete-time run of the full network.

Each replication owns its state and draws from six independent RNG streams
(topology, user init, mobility, radio, requests, deployment) spawned from
(seed, replication_index).  Keeping the radio and mobility draws on their
own streams makes slot-level radio samples identical across sweep points
that only change the catalog, which is what lets the trend checks compare
sweep points without Monte Carlo slack where none is expected.

Per slot, every user issues one request for the next segment of its current
content (a fresh content is drawn on completion).  Indoor and slow outdoor
users are served by FAPs with the scheme picked per request; fast outdoor
users are served by their intra-cluster UAV, which also pays the energy
cost.  A FAP request that cannot be served with a new segment is a cache
miss and is relayed from the main server through the serving FAP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import topology as topo
from .channel import dbm_to_mw, los_probability, server_uav_avg_path_loss
from .deployment import kmeans_deploy
from .placement import (
    build_network_placement,
    measured_cache_diversity,
    measured_cache_redundancy,
)
from .popularity import UserDemand, ZipfProfile, aggregate_demand
from .scheduler import UavEnergyLedger, detect_handover_many, uav_energy_step

METRIC_COLUMNS = (
    "cache_hit_ratio",
    "mean_access_delay",
    "mean_edge_sinr",
    "cache_diversity",
    "cache_redundancy",
    "uav_energy_total",
    "handover_probability",
)

CONTINUOUS = "continuous"


@dataclass
class ReplicationMetrics:
    cache_hit_ratio: float
    mean_access_delay: float
    mean_edge_sinr: float
    cache_diversity: float
    cache_redundancy: float
    uav_energy_total: float
    handover_probability: float

    def as_dict(self):
        return {name: getattr(self, name) for name in METRIC_COLUMNS}


def derive_slot_length(cfg):
    """Slot length when not configured.

    Continuous mobility: the slot is the time a threshold-speed user needs
    to cross one cell radius, so the handover geometry is speed-ratio
    driven.  Lattice walks: the time to download one segment at the
    core/edge threshold SINR.
    """
    if cfg.mobility.slot_s is not None:
        return float(cfg.mobility.slot_s)
    if cfg.mobility.model == CONTINUOUS:
        return cfg.topology.cell_radius_m / cfg.scheduler.speed_threshold_ms
    seg_bits = cfg.catalog.content_size_mbit * 1e6 / cfg.catalog.n_segments
    rate = cfg.scheduler.bandwidth_hz * math.log2(
        1.0 + 10.0 ** (cfg.scheduler.sinr_threshold_db / 10.0)
    )
    return seg_bits / rate


def _hit_assumption_delay(dist_m, tx_power_dbm, size_bits, cfg):
    """Noise-limited download time used as the per-user delay weight when
    aggregating demand for the placement objective."""
    ground = cfg.channel.ground
    loss = ground.ref_loss_db + 10.0 * ground.path_loss_exponent * np.log10(
        np.maximum(dist_m, ground.ref_distance_m) / ground.ref_distance_m
    )
    snr = dbm_to_mw(tx_power_dbm - loss) / dbm_to_mw(ground.noise_dbm)
    return size_bits / (cfg.scheduler.bandwidth_hz * np.log2(1.0 + snr))


class _Replication:
    def __init__(self, cfg, rep_index):
        self.cfg = cfg
        seq = np.random.SeedSequence([cfg.seed, rep_index])
        (self.r_topo, self.r_users, self.r_move,
         self.r_chan, self.r_req, self.r_deploy) = map(
            np.random.default_rng, seq.spawn(6)
        )
        self.net = topo.build_topology(cfg.topology, self.r_topo)
        self.slot_s = derive_slot_length(cfg)
        self._init_static()
        self._init_users()
        self._init_placement()
        self._init_deployment()
        self._init_state()

    # ------------------------------------------------------------- setup

    def _init_static(self):
        cfg, net = self.cfg, self.net
        self.n_f = len(net.faps)
        self.n_users = cfg.mobility.n_users
        self.cluster_size = cfg.topology.cluster_size
        self.fap_xy = np.array([f.position for f in net.faps], dtype=float).reshape(
            self.n_f, 2
        )
        self.members = np.array(net.inter_clusters, dtype=int).reshape(
            -1, self.cluster_size
        ) if net.inter_clusters else np.zeros((0, self.cluster_size), dtype=int)
        self.cluster_of = np.array(
            [f.inter_cluster_id for f in net.faps], dtype=int
        )
        ground = cfg.channel.ground
        self.noise_mw = float(dbm_to_mw(ground.noise_dbm))
        self.fap_p_mw = float(dbm_to_mw(cfg.topology.fap_tx_power_dbm))
        self.uav_p_mw = float(dbm_to_mw(cfg.topology.uav_tx_power_dbm))
        server_dbm = (
            cfg.scheduler.server_tx_power_dbm
            if cfg.scheduler.server_tx_power_dbm is not None
            else cfg.topology.uav_tx_power_dbm
        )
        self.server_p_mw = float(dbm_to_mw(server_dbm))
        self.seg_bits = cfg.catalog.content_size_mbit * 1e6 / cfg.catalog.n_segments
        self.content_bits = cfg.catalog.content_size_mbit * 1e6
        self.bw = cfg.scheduler.bandwidth_hz
        self.rects = net.indoor_regions

    def _init_users(self):
        cfg = self.cfg
        n = self.n_users
        self.user_xy = topo.uniform_disc(self.r_users, n, cfg.topology.region_radius_m)
        v_th = cfg.scheduler.speed_threshold_ms
        if cfg.mobility.speed_ratio is not None:
            self.speeds = np.full(n, cfg.mobility.speed_ratio * v_th)
        else:
            self.speeds = v_th * self.r_users.uniform(
                cfg.mobility.min_speed_factor, cfg.mobility.max_speed_factor, size=n
            )
            n_still = int(round(cfg.mobility.stationary_fraction * n))
            if n_still:
                self.speeds[self.r_users.choice(n, size=n_still, replace=False)] = 0.0
        self.hsu_quantile = self.r_users.uniform(size=n)
        if self.n_f:
            d = np.linalg.norm(
                self.user_xy[:, None, :] - self.fap_xy[None, :, :], axis=2
            )
            self.serving = np.argmin(d, axis=1)
        else:
            self.serving = np.zeros(n, dtype=int)
        # lattice walks keep a user inside its home cluster; track the slot
        # position as an index into the cluster member list
        self.home_cluster = self.cluster_of[self.serving] if self.n_f else None
        self.cell_slot = np.zeros(n, dtype=int)
        if self.n_f:
            for u in range(n):
                row = self.members[self.home_cluster[u]]
                self.cell_slot[u] = int(np.where(row == self.serving[u])[0][0])
        self.offset_radius = (
            math.sqrt(3.0) / 2.0 * self.cfg.topology.cell_radius_m
        )

    def _placement_weights(self):
        cfg = self.cfg
        if self.n_users == 0:
            zero = np.zeros(cfg.catalog.n_contents)
            return zero, zero
        d_fap = np.linalg.norm(self.user_xy - self.fap_xy[self.serving], axis=1) \
            if self.n_f else np.ones(self.n_users)
        fap_delay_w = _hit_assumption_delay(
            d_fap, cfg.topology.fap_tx_power_dbm, self.seg_bits, cfg
        )
        if len(self.net.uavs):
            uav_xy0 = np.array([u.position for u in self.net.uavs])
            d_uav = np.min(
                np.linalg.norm(self.user_xy[:, None, :] - uav_xy0[None, :, :], axis=2),
                axis=1,
            )
            d_uav = np.hypot(d_uav, cfg.topology.uav_altitude_m)
        else:
            d_uav = np.ones(self.n_users)
        uav_delay_w = _hit_assumption_delay(
            d_uav, cfg.topology.uav_tx_power_dbm, self.content_bits, cfg
        )
        if self.demand._matrix is None:
            # shared demand: the aggregate is the profile scaled by the
            # total delay weight
            p = self.profile.probabilities
            return p * fap_delay_w.sum(), p * uav_delay_w.sum()
        vectors = self.demand._matrix
        return (
            aggregate_demand(vectors, fap_delay_w),
            aggregate_demand(vectors, uav_delay_w),
        )

    def _init_placement(self):
        cfg = self.cfg
        self.profile = ZipfProfile.build(cfg.catalog.n_contents, cfg.catalog.gamma)
        self.demand = UserDemand(
            self.profile,
            self.n_users,
            dirichlet_noise=cfg.catalog.demand_noise,
            rng=self.r_req,
        )
        self._solve_placement()

    def _solve_placement(self):
        cfg = self.cfg
        fap_w, uav_w = self._placement_weights()
        self.placement = build_network_placement(
            self.net,
            fap_w,
            uav_w,
            cfg.catalog.alpha,
            cfg.topology.fap_cache_capacity,
            cfg.catalog.n_segments,
            cfg.topology.uav_cache_capacity,
        )
        n_c = cfg.catalog.n_contents
        # 0 = stored whole, 1 = stored coded, 2 = not cached
        self.content_kind = np.full(n_c, 2, dtype=np.int8)
        self.med_row = np.full(n_c, -1, dtype=np.int32)
        for rank in self.placement.popular:
            self.content_kind[rank - 1] = 0
        for row, rank in enumerate(self.placement.mediocre):
            self.content_kind[rank - 1] = 1
            self.med_row[rank - 1] = row
        n_med = len(self.placement.mediocre)
        self.seg_of = np.zeros((self.n_f, n_med), dtype=np.int16)
        for fid, mat in self.placement.matrices.items():
            if n_med:
                self.seg_of[fid] = np.argmax(mat, axis=1)
        self.uav_cached = np.zeros(n_c, dtype=bool)
        for rank in self.placement.uav_cache:
            self.uav_cached[rank - 1] = True

    def _init_deployment(self):
        cfg = self.cfg
        self.n_uav = len(self.net.uavs)
        if self.n_uav == 0:
            self.uav_xy = np.zeros((0, 2))
            self.user_uav = np.zeros(self.n_users, dtype=int)
            self.ledger = UavEnergyLedger(np.zeros(0))
            return
        self.uav_xy = np.array([u.position for u in self.net.uavs], dtype=float)
        self.ledger = UavEnergyLedger(
            [u.battery_j for u in self.net.uavs]
        )
        self._redeploy()

    def _redeploy(self):
        if self.n_uav == 0 or self.n_users == 0:
            return
        outdoor = ~topo.indoor_mask(self.user_xy, self.rects)
        pts = self.user_xy[outdoor] if outdoor.sum() >= self.n_uav else self.user_xy
        clustering = kmeans_deploy(
            pts,
            self.n_uav,
            self.r_deploy,
            max_iter=self.cfg.deployment.kmeans_max_iter,
            region_radius=self.cfg.topology.region_radius_m,
        )
        self.uav_xy = clustering.centroids
        d = np.linalg.norm(
            self.user_xy[:, None, :] - self.uav_xy[None, :, :], axis=2
        )
        self.user_uav = np.argmin(d, axis=1)

    def _init_state(self):
        n = self.n_users
        n_s = self.cfg.catalog.n_segments
        self.current = self.demand.sample_many(self.r_req.uniform(size=n)) \
            if n else np.zeros(0, dtype=int)
        self.held = np.zeros((n, n_s), dtype=bool)
        self.got_count = np.zeros(n, dtype=int)
        self.still_slots = np.zeros(n, dtype=int)
        w = self.cfg.scheduler.sinr_window_slots
        self.window = np.full((n, w), np.nan)
        # accumulators
        self.requests = 0
        self.hits = 0
        self.delay_sum = 0.0
        self.delay_count = 0
        self.edge_sinr_sum = 0.0
        self.edge_count = 0
        self.handovers = 0
        self.fap_requests = 0
        self.events = None

    # ------------------------------------------------------------- slots

    def _move(self, t):
        """Advance the walk and pick this slot's serving FAP.

        Lattice walks move first: the slot's contact is the new cell.
        Continuous motion serves at the slot-start position and applies the
        displacement at the end of the slot (see :meth:`_finish_move`), so
        handover is judged against the serving FAP of the starting point.
        Returns per-user velocity for continuous motion, else None.
        """
        cfg = self.cfg
        n = self.n_users
        # fixed-shape draws keep the stream aligned across configurations
        jump = self.r_move.integers(0, max(self.cluster_size - 1, 1), size=n)
        theta = self.r_move.uniform(0.0, 2.0 * math.pi, size=n)
        rho = np.sqrt(self.r_move.uniform(size=n))
        if cfg.mobility.model == CONTINUOUS:
            velocity = np.column_stack(
                (self.speeds * np.cos(theta), self.speeds * np.sin(theta))
            )
            if self.n_f:
                d = np.linalg.norm(
                    self.user_xy[:, None, :] - self.fap_xy[None, :, :], axis=2
                )
                self.serving = np.argmin(d, axis=1)
            return velocity
        # lattice walk within the home cluster
        moving = self.speeds > 0.0
        if cfg.mobility.model == "simple":
            nxt = (self.cell_slot + 1) % self.cluster_size
        else:
            nxt = jump + (jump >= self.cell_slot)
        self.cell_slot = np.where(moving, nxt, self.cell_slot)
        if self.n_f:
            self.serving = self.members[self.home_cluster, self.cell_slot]
            centers = self.fap_xy[self.serving]
            offsets = (self.offset_radius * rho)[:, None] * np.column_stack(
                (np.cos(theta), np.sin(theta))
            )
            self.user_xy = np.where(moving[:, None], centers + offsets, self.user_xy)
        return None

    def _finish_move(self, velocity):
        radius_max = self.cfg.topology.region_radius_m
        self.user_xy = self.user_xy + velocity * self.slot_s
        radius = np.linalg.norm(self.user_xy, axis=1)
        outside = radius > radius_max
        if np.any(outside):  # mirror back inside the region disc
            self.user_xy[outside] *= (
                np.maximum(2 * radius_max - radius[outside], 0.0) / radius[outside]
            )[:, None]

    def _radio_field(self):
        """Received power from every FAP at every user for this slot.

        A segment download spans the whole slot, many fading coherence
        times, so the slot rate uses the unit-mean fading average and only
        per-slot shadowing varies the link.
        """
        ground = self.cfg.channel.ground
        n, f = self.n_users, self.n_f
        shadow = self.r_chan.normal(0.0, ground.shadowing_std_db, size=(n, f))
        d = np.maximum(
            np.linalg.norm(self.user_xy[:, None, :] - self.fap_xy[None, :, :], axis=2),
            ground.ref_distance_m,
        )
        loss = (
            ground.ref_loss_db
            + 10.0 * ground.path_loss_exponent * np.log10(d / ground.ref_distance_m)
            + shadow
        )
        return self.fap_p_mw * np.power(10.0, -loss / 10.0)

    def _route_uav(self, outdoor):
        cfg = self.cfg
        if self.n_uav == 0 or cfg.scheduler.route_all_to_faps:
            return np.zeros(self.n_users, dtype=bool)
        if cfg.scheduler.uav_serve_fraction is not None:
            mask = outdoor & (self.hsu_quantile < cfg.scheduler.uav_serve_fraction)
        else:
            mask = outdoor & (self.speeds >= cfg.scheduler.speed_threshold_ms)
        return mask & self.ledger.alive()[self.user_uav]

    def _uav_link(self, indoor):
        """Per-user UAV SINRs for the downlink and the server fetch."""
        cfg = self.cfg
        air, ground = cfg.channel.air, cfg.channel.ground
        horiz = np.linalg.norm(
            self.user_xy[:, None, :] - self.uav_xy[None, :, :], axis=2
        )
        alt = cfg.topology.uav_altitude_m
        p_los = los_probability(horiz, alt, air)
        d = np.maximum(np.hypot(horiz, alt), ground.ref_distance_m)
        log_d = np.log10(d / ground.ref_distance_m)
        loss = p_los * (ground.ref_loss_db + 10.0 * air.los_exponent * log_d) + (
            1.0 - p_los
        ) * (ground.ref_loss_db + 10.0 * air.nlos_exponent * log_d)
        loss = loss + indoor[:, None] * air.indoor_penetration_db
        prx = self.uav_p_mw * np.power(10.0, -loss / 10.0)
        own = prx[np.arange(self.n_users), self.user_uav]
        active = self.ledger.alive()
        total = (prx * active[None, :]).sum(axis=1)
        interference = total - own * active[self.user_uav]
        sinr_down = own / (interference + self.noise_mw)
        # server fetch: mean gain of the backhaul air link, same
        # interference environment as the downlink
        sx, sy, sz = self.net.server_pos
        d_srv = np.sqrt(
            (self.uav_xy[:, 0] - sx) ** 2
            + (self.uav_xy[:, 1] - sy) ** 2
            + (alt - sz) ** 2
        )
        p_los_srv = los_probability(
            np.hypot(self.uav_xy[:, 0] - sx, self.uav_xy[:, 1] - sy),
            max(alt - sz, 1.0),
            air,
        )
        gain_srv = server_uav_avg_path_loss(np.maximum(d_srv, 1.0), air, p_los_srv)
        sinr_srv = (
            self.server_p_mw * gain_srv[self.user_uav] / (interference + self.noise_mw)
        )
        p_los_own = p_los[np.arange(self.n_users), self.user_uav]
        return sinr_down, sinr_srv, p_los_own

    def run_slot(self, t):
        cfg = self.cfg
        n = self.n_users
        if n == 0 or self.n_f == 0:
            return
        velocity = self._move(t)
        indoor = topo.indoor_mask(self.user_xy, self.rects)
        self.still_slots = np.where(self.speeds == 0.0, self.still_slots + 1, 0)

        prx = self._radio_field()
        los_draw = self.r_chan.uniform(size=n)
        new_content_draw = self.r_req.uniform(size=n)

        uav_mask = self._route_uav(~indoor)
        fap_mask = ~uav_mask

        idx = np.arange(n)
        active = np.zeros(self.n_f, dtype=bool)
        active[self.serving[fap_mask]] = True
        total_active = (prx * active[None, :]).sum(axis=1)
        own = prx[idx, self.serving]
        st_sinr = own / (total_active - own * active[self.serving] + self.noise_mw)
        st_db = 10.0 * np.log10(st_sinr)

        w = cfg.scheduler.sinr_window_slots
        self.window[:, t % w] = st_db
        mean_db = np.nanmean(self.window, axis=1)
        edge = mean_db <= cfg.scheduler.sinr_threshold_db

        # cooperative quantities over the serving cluster
        coop = self.members[self.cluster_of[self.serving]]
        coop_prx = np.take_along_axis(prx, coop, axis=1)
        coop_sum = coop_prx.sum(axis=1)
        coop_active_sum = (coop_prx * active[coop]).sum(axis=1)
        out_interference = total_active - coop_active_sum + self.noise_mw
        jt_sinr_v = coop_sum / out_interference
        pt_sinr_v = coop_prx.min(axis=1) / out_interference

        content = self.current
        kind = self.content_kind[content - 1]
        rows = self.med_row[content - 1]

        handover = np.zeros(n, dtype=bool)
        if velocity is not None:
            handover = fap_mask & detect_handover_many(
                self.user_xy,
                velocity,
                self.slot_s,
                self.fap_xy[self.serving],
                cfg.topology.cell_radius_m,
            )

        f_ok = fap_mask & ~handover
        jt = f_ok & (kind == 0) & edge
        st_pop = f_ok & (kind == 0) & ~edge
        med = f_ok & (kind == 1)
        pt = med & (self.still_slots >= 2)
        med_st = med & ~pt
        non = f_ok & (kind == 2)

        if self.seg_of.shape[1]:
            seg_here = np.where(
                rows >= 0, self.seg_of[self.serving, np.maximum(rows, 0)], 0
            )
        else:
            seg_here = np.zeros(n, dtype=np.int16)
        fresh = ~self.held[idx, seg_here]
        med_hit = med_st & fresh
        med_miss = med_st & ~fresh

        hit = jt | st_pop | med_hit | pt
        rate_st = self.bw * np.log2(1.0 + st_sinr)
        delay = np.zeros(n)
        delay[st_pop | med_hit] = self.seg_bits / rate_st[st_pop | med_hit]
        delay[jt] = self.seg_bits / (self.bw * np.log2(1.0 + jt_sinr_v[jt]))
        delay[pt] = self.seg_bits / (self.bw * np.log2(1.0 + pt_sinr_v[pt]))
        miss_mask = med_miss | non
        delay[miss_mask] = (
            self.seg_bits / rate_st[miss_mask] + cfg.scheduler.miss_penalty_s
        )

        energy = np.zeros(n)
        rejected = np.zeros(n, dtype=bool)
        if np.any(uav_mask):
            sinr_down, sinr_srv, p_los_own = self._uav_link(indoor)
            hit |= uav_mask & self.uav_cached[content - 1]
            d_down = self.content_bits / (self.bw * np.log2(1.0 + sinr_down))
            d_srv = self.content_bits / (self.bw * np.log2(1.0 + sinr_srv))
            delay[uav_mask] = d_down[uav_mask]
            fetch = uav_mask & ~self.uav_cached[content - 1]
            delay[fetch] += d_srv[fetch]
            los = np.where(indoor, False, los_draw < p_los_own)
            e = uav_energy_step(cfg.catalog.content_size_mbit, cfg.energy, los)
            # a UAV can run dry mid slot; later requests that slot bounce
            for u in np.flatnonzero(uav_mask):
                if self.ledger.charge(self.user_uav[u], e[u]):
                    energy[u] = e[u]
                else:
                    rejected[u] = True
            hit &= ~rejected

        # progress; a duplicate-segment contact yields nothing, the user
        # keeps walking until a fresh cell turns up
        self.got_count[jt | st_pop | non] += 1
        self.held[idx[med_hit], seg_here[med_hit]] = True
        self.held[pt] = True
        served_by_uav = uav_mask & ~rejected
        self.got_count[served_by_uav] = cfg.catalog.n_segments

        done = np.zeros(n, dtype=bool)
        done |= (kind != 1) & (self.got_count >= cfg.catalog.n_segments)
        done |= (kind == 1) & self.held.all(axis=1)
        done |= served_by_uav
        if np.any(done):
            self.current = np.where(
                done, self.demand.sample_many(new_content_draw), self.current
            )
            self.held[done] = False
            self.got_count[done] = 0

        # metrics
        self.requests += n
        self.hits += int(hit.sum())
        served = hit
        self.delay_sum += float(delay[served].sum())
        self.delay_count += int(served.sum())
        eff_sinr = np.where(jt, jt_sinr_v, st_sinr)
        edge_fap = fap_mask & edge
        if np.any(edge_fap):
            self.edge_sinr_sum += float(
                (10.0 * np.log10(eff_sinr[edge_fap])).sum()
            )
            self.edge_count += int(edge_fap.sum())
        self.handovers += int(handover.sum())
        self.fap_requests += int(fap_mask.sum())

        if self.events is not None:
            scheme = np.full(n, "st", dtype=object)
            scheme[jt] = "jt"
            scheme[pt] = "pt"
            scheme[uav_mask] = "uav"
            node = np.where(uav_mask, self.user_uav, self.serving)
            for u in range(n):
                self.events.append(
                    (t, u, int(content[u]), scheme[u], int(node[u]),
                     bool(hit[u]), float(delay[u]), float(energy[u]))
                )

        # end-of-slot displacement for continuous motion
        if velocity is not None:
            self._finish_move(velocity)

        # epochs
        if (t + 1) % cfg.catalog.demand_update_slots == 0:
            self.demand.update(self.r_req)
            if cfg.catalog.demand_noise > 0:
                self._solve_placement()
        if self.n_uav and (t + 1) % cfg.deployment.redeploy_every_slots == 0:
            self._redeploy()

    # ------------------------------------------------------------ result

    def metrics(self):
        cfg = self.cfg
        c_f = cfg.topology.fap_cache_capacity
        n_s = cfg.catalog.n_segments
        if self.net.inter_clusters:
            first = self.net.inter_clusters[0]
            diversity = measured_cache_diversity(
                self.placement.matrices, first, c_f, n_s
            )
            redundancy = measured_cache_redundancy(
                self.placement.popular, self.placement.matrices, first, c_f, n_s
            )
        else:
            diversity, redundancy = 0.0, 0.0
        return ReplicationMetrics(
            cache_hit_ratio=self.hits / self.requests if self.requests else 0.0,
            mean_access_delay=(
                self.delay_sum / self.delay_count if self.delay_count else 0.0
            ),
            mean_edge_sinr=(
                self.edge_sinr_sum / self.edge_count if self.edge_count else 0.0
            ),
            cache_diversity=diversity,
            cache_redundancy=redundancy,
            uav_energy_total=self.ledger.total_spent,
            handover_probability=(
                self.handovers / self.fap_requests if self.fap_requests else 0.0
            ),
        )


def simulate_replication(cfg, rep_index, collect_events=False):
    """Run one replication and return its metrics (and optional event
    rows (t, user, content, scheme, node, hit, delay, energy))."""
    rep = _Replication(cfg, rep_index)
    if collect_events:
        rep.events = []
    for t in range(cfg.horizon_slots):
        rep.run_slot(t)
    if collect_events:
        return rep.metrics(), rep.events
    return rep.metrics()
