"""Acceptance suite: closed-form exactness, oracle equivalence, placement
structure, Monte Carlo agreement, desk-scale trend reproduction, clustering
behaviour and end-to-end determinism.

Each criterion prints one PASS line when it holds (run with ``pytest -s``
or execute this file directly to see them).
"""

import itertools
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

mpmath = pytest.importorskip("mpmath")

from ccuf.channel import AirChannelParams, GroundChannelParams, air_ground_avg_path_loss
from ccuf.config import desk_profile
from ccuf.deployment import kmeans_deploy
from ccuf.mobility import (
    RANDOM_WALK,
    SIMPLE,
    SuccessProbInputs,
    monte_carlo_success,
    p_new_segment,
    success_prob_coded_rw,
    success_prob_coded_simple,
    success_prob_uncoded,
)
from ccuf.placement import (
    assign_segments,
    beta_max,
    cache_diversity,
    kappa,
    replicate_across_clusters,
    solve_fap_placement,
    solve_uav_placement,
)
from ccuf.popularity import ZipfProfile, n_popular
from ccuf.report import aggregate_means, run
from ccuf.scheduler import EnergyParams, uav_delay, uav_energy_step
from ccuf.topology import TopologyConfig, build_topology

RTOL = 1e-12
ALPHAS = [Fraction(0), Fraction(1, 10), Fraction(1, 5), Fraction(2, 5),
          Fraction(3, 5), Fraction(4, 5), Fraction(1)]
GAMMAS = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
SEGMENT_COUNTS = [2, 3, 7]


def ok(line):
    print(f"PASS {line}")


# ---------------------------------------------------------------------------
# criterion 1: closed forms against high-precision evaluation
# ---------------------------------------------------------------------------


def mp_zipf_head(n_contents, gamma, upper):
    with mpmath.workdps(50):
        norm = mpmath.fsum(mpmath.power(r, -gamma) for r in range(1, n_contents + 1))
        head = mpmath.fsum(mpmath.power(r, -gamma) for r in range(1, upper + 1))
        return head / norm


def test_criterion_1_closed_form_exactness():
    start = time.time()
    n_contents, c_f = 120, 10
    for gamma in GAMMAS:
        profile = ZipfProfile.build(n_contents, gamma)
        with mpmath.workdps(50):
            norm = mpmath.fsum(
                mpmath.power(r, -gamma) for r in range(1, n_contents + 1)
            )
        for rank in (1, 2, 7, 59, n_contents):
            from ccuf.popularity import zipf_popularity

            want = float(mpmath.power(rank, -gamma) / norm)
            got = zipf_popularity(rank, gamma, n_contents)
            assert abs(got - want) <= RTOL * want
        for alpha in ALPHAS:
            a = float(alpha)
            n_p = int(alpha * c_f)  # exact rational floor
            assert n_popular(a, c_f) == n_p
            for n_s in SEGMENT_COUNTS:
                coded_upper = n_s * (c_f - n_p)
                # cache metrics, exact rational oracles
                want_kappa = Fraction(n_p + coded_upper, c_f)
                assert abs(kappa(a, c_f, n_s) - want_kappa) <= RTOL * want_kappa
                want_cd = 1 - Fraction(n_p, c_f)
                assert abs(cache_diversity(a, c_f, n_s) - want_cd) <= RTOL * max(
                    want_cd, Fraction(1)
                )
                want_beta = Fraction(1) / (alpha * (1 - n_s) + n_s)
                assert abs(beta_max(a, n_s) - want_beta) <= RTOL * want_beta
                # per-contact fresh-segment probability
                for n0 in range(1, n_s + 1):
                    want_p = (
                        Fraction(1)
                        if n0 <= 2
                        else Fraction(n_s - 2, n_s - 1) ** (n0 - 2)
                    )
                    assert abs(p_new_segment(n0, n_s) - want_p) <= RTOL * max(
                        want_p, Fraction(1)
                    )
                # success probabilities against 50-digit head masses
                n_med = max(0, coded_upper - n_p)
                want_uc = mp_zipf_head(n_contents, gamma, c_f)
                got_uc = success_prob_uncoded(profile, c_f)
                assert abs(got_uc - float(want_uc)) <= 1e-12
                want_cc = mp_zipf_head(n_contents, gamma, n_p + n_med)
                got_cc = success_prob_coded_simple(profile, a, c_f, n_s)
                assert abs(got_cc - float(want_cc)) <= 1e-12
                pop_mass = mp_zipf_head(n_contents, gamma, n_p)
                med_mass = want_cc - pop_mass
                factor = sum(
                    Fraction(1) if n <= 2 else Fraction(n_s - 2, n_s - 1) ** (n - 2)
                    for n in range(1, n_s + 1)
                )
                want_rw = float(pop_mass) if n_med == 0 else float(
                    pop_mass + Fraction(factor, n_s) * med_mass
                )
                got_rw = success_prob_coded_rw(profile, a, c_f, n_s)
                assert abs(got_rw - want_rw) <= 1e-12
    elapsed = time.time() - start
    assert elapsed < 1.0, f"closed-form check took {elapsed:.2f}s"
    ok(f"criterion 1: closed forms match high-precision oracle ({elapsed:.2f}s)")


# ---------------------------------------------------------------------------
# criterion 2: greedy placement equals exhaustive enumeration
# ---------------------------------------------------------------------------


def _combo_masks(n, k):
    combos = list(itertools.combinations(range(n), k))
    masks = np.array([sum(1 << i for i in c) for c in combos], dtype=np.int64)
    idx = np.array(combos, dtype=np.int64).reshape(len(combos), k)
    return masks, idx


def test_criterion_2_placement_oracle_equivalence():
    start = time.time()
    gen = np.random.default_rng(2024)
    fap_splits = [
        (alpha, c_f, n_s)
        for alpha in (0.0, 0.5, 1.0)
        for c_f in (1, 2)
        for n_s in (2, 3)
        if n_popular(alpha, c_f) <= 4 and n_s * (c_f - n_popular(alpha, c_f)) <= 4
    ]
    for trial in range(200):
        n = int(gen.integers(6, 13))
        weights = gen.uniform(0.0, 1.0, size=n)
        total = weights.sum()

        c_u = int(gen.integers(1, 5))
        sel = solve_uav_placement(weights, c_u)
        got = total - sum(weights[r - 1] for r in sel.selected)
        best = -1.0
        for combo in itertools.combinations(range(n), min(c_u, n)):
            best = max(best, sum(weights[i] for i in combo))
        assert got == pytest.approx(total - best, abs=1e-12)

        alpha, c_f, n_s = fap_splits[int(gen.integers(len(fap_splits)))]
        fap = solve_fap_placement(weights, alpha, c_f, n_s)
        got_fap = fap.objective(weights)
        pop_budget = n_popular(alpha, c_f)
        med_budget = min(n_s * (c_f - pop_budget), n - pop_budget)
        pop_masks, pop_idx = _combo_masks(n, min(pop_budget, n))
        med_masks, med_idx = _combo_masks(n, med_budget)
        pop_sums = weights[pop_idx].sum(axis=1) if pop_idx.size else np.zeros(1)
        med_sums = weights[med_idx].sum(axis=1) if med_idx.size else np.zeros(1)
        best_cover = -1.0
        for pm, ps in zip(pop_masks, pop_sums):
            disjoint = (med_masks & pm) == 0
            if np.any(disjoint):
                best_cover = max(best_cover, ps + med_sums[disjoint].max())
        assert got_fap == pytest.approx(2 * total - best_cover, abs=1e-12)
    elapsed = time.time() - start
    assert elapsed < 30.0
    ok(f"criterion 2: greedy equals exhaustive on 200 instances ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# criterion 3: orthogonality and reuse on a 7-cluster map
# ---------------------------------------------------------------------------


def test_criterion_3_orthogonality_and_reuse():
    from ccuf import lattice

    start = time.time()
    cfg = TopologyConfig(n_faps=49, region_radius_m=400.0, cell_radius_m=30.0, n_uavs=0)
    net = build_topology(cfg, np.random.default_rng(0))
    seed = assign_segments(net.inter_clusters[0], n_mediocre=6, n_segments=7)
    full = replicate_across_clusters(net, seed, w=2, z=1)

    for members in net.inter_clusters:
        for a, b in itertools.combinations(members, 2):
            assert np.all((full[a] * full[b]).sum(axis=1) == 0)

    centers = {
        cid: net.faps[m[0]].lattice_coord for cid, m in enumerate(net.inter_clusters)
    }
    checked = 0
    for fap in net.faps:
        own = centers[fap.inter_cluster_id]
        for cid, members in enumerate(net.inter_clusters):
            delta = (centers[cid][0] - own[0], centers[cid][1] - own[1])
            if lattice.squared_norm(delta) != 7:
                continue
            matches = [g for g in members if np.array_equal(full[g], full[fap.id])]
            assert len(matches) == 1
            move = (
                net.faps[matches[0]].lattice_coord[0] - fap.lattice_coord[0],
                net.faps[matches[0]].lattice_coord[1] - fap.lattice_coord[1],
            )
            assert lattice.squared_norm(move) == 7
            checked += 1
    assert checked > 0
    elapsed = time.time() - start
    assert elapsed < 5.0
    ok(
        "criterion 3: per-cluster orthogonality and (2,1) reuse identity "
        f"({checked} neighbour pairs, {elapsed:.1f}s)"
    )


# ---------------------------------------------------------------------------
# criterion 4: Monte Carlo versus analytics
# ---------------------------------------------------------------------------


def test_criterion_4_monte_carlo_vs_analytics():
    start = time.time()
    gen = np.random.default_rng(404)
    c_f, n_s = 10, 7
    points = [(a, g) for a in (0.0, 0.4, 1.0) for g in (0.5, 0.8, 1.0)]
    for alpha, gamma in points:
        profile = ZipfProfile.build(400, gamma)
        inputs = SuccessProbInputs(profile, alpha, c_f, n_s, SIMPLE)
        mc = monte_carlo_success(inputs, 100000, gen)
        want = success_prob_coded_simple(profile, alpha, c_f, n_s)
        assert abs(mc.estimate - want) <= max(mc.ci_halfwidth, 1e-9), (alpha, gamma)

    inputs = SuccessProbInputs(ZipfProfile.build(400, 0.6), 0.0, c_f, n_s, RANDOM_WALK)
    mc = monte_carlo_success(inputs, 100000, gen)
    rate3 = mc.new_segment_rate[2]
    se = math.sqrt((5 / 6) * (1 / 6) / mc.trials)
    assert abs(rate3 - 5.0 / 6.0) <= 1.96 * se
    for contact in range(4, n_s + 1):
        print(
            f"  contact {contact}: walk fresh rate {mc.new_segment_rate[contact - 1]:.4f}"
            f" vs power formula {p_new_segment(contact, n_s):.4f} (reported)"
        )
    elapsed = time.time() - start
    assert elapsed < 120.0
    ok(f"criterion 4: Monte Carlo matches analytics within CI ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# criterion 5: trend reproduction at desk scale
# ---------------------------------------------------------------------------

ALPHA_GRID = [0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0]


@pytest.fixture(scope="module")
def alpha_gamma_sweep():
    cfg = desk_profile()
    cfg.seed = 0
    cfg.sweep = [("catalog.alpha", ALPHA_GRID), ("catalog.gamma", [0.5, 1.0])]
    report = run(cfg)
    out = {}
    for metric in ("cache_hit_ratio", "mean_edge_sinr", "mean_access_delay"):
        for (alpha, gamma), mean in aggregate_means(report, metric):
            out[(metric, alpha, gamma)] = mean
    return out


def _series(table, metric, gamma):
    return [table[(metric, a, gamma)] for a in ALPHA_GRID]


def test_criterion_5a_hit_ratio_trend(alpha_gamma_sweep):
    low = _series(alpha_gamma_sweep, "cache_hit_ratio", 0.5)
    assert all(b < a for a, b in zip(low, low[1:])), low
    high = _series(alpha_gamma_sweep, "cache_hit_ratio", 1.0)
    assert high[-1] >= high[0], high  # uncoded >= fully coded by gamma = 1
    ok(
        "criterion 5a: hit ratio strictly decreasing in alpha at gamma=0.5 "
        "and ordering reversed at gamma=1"
    )


def test_criterion_5b_edge_sinr_trend(alpha_gamma_sweep):
    for gamma in (0.5, 1.0):
        series = _series(alpha_gamma_sweep, "mean_edge_sinr", gamma)
        assert all(b >= a - 1e-12 for a, b in zip(series, series[1:])), series
    at_zero = [alpha_gamma_sweep[("mean_edge_sinr", 0.0, g)] for g in (0.5, 1.0)]
    assert max(at_zero) - min(at_zero) < 1e-9, at_zero
    ok(
        "criterion 5b: edge SINR non-decreasing in alpha and invariant "
        "across gamma at alpha=0"
    )


def test_criterion_5c_access_delay_trend(alpha_gamma_sweep):
    for gamma in (0.5, 1.0):
        series = _series(alpha_gamma_sweep, "mean_access_delay", gamma)
        assert all(b <= a + 1e-12 for a, b in zip(series, series[1:])), series
    ok("criterion 5c: mean access delay non-increasing in alpha at fixed gamma")


def test_criterion_5d_indoor_uav_service_costlier():
    air, ground = AirChannelParams(), GroundChannelParams()
    energy = EnergyParams()
    horizontal, altitude = 120.0, 100.0
    bw, bits = 20e6, 300e6
    noise_mw = 10 ** (ground.noise_dbm / 10.0)
    delays, energies = {}, {}
    for indoor in (False, True):
        loss = air_ground_avg_path_loss(
            horizontal, altitude, air, ground, indoor=indoor
        )
        sinr = 10 ** ((15.0 - loss) / 10.0) / noise_mw
        delays[indoor] = uav_delay(True, sinr, sinr, bits, bw)
        energies[indoor] = uav_energy_step(300.0, energy, los=not indoor)
    assert delays[True] > delays[False]
    assert energies[True] > energies[False]
    ok(
        "criterion 5d: indoor UAV service strictly slower and costlier than "
        f"outdoor at equal geometry ({delays[True]:.2f}s vs {delays[False]:.2f}s)"
    )


def test_criterion_5e_energy_increasing_in_uav_share():
    cfg = desk_profile()
    cfg.sweep = [("scheduler.uav_serve_fraction", [0.5, 0.7, 1.0])]
    report = run(cfg)
    means = [m for _, m in aggregate_means(report, "uav_energy_total")]
    assert means[0] < means[1] < means[2], means
    ok(f"criterion 5e: UAV energy strictly increasing in served share {means}")


ZETAS = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]


def _handover_config(route_all_to_faps):
    cfg = desk_profile()
    cfg.mobility.model = "continuous"
    cfg.topology.indoor_fraction = 0.0
    cfg.scheduler.route_all_to_faps = route_all_to_faps
    cfg.sweep = [("mobility.speed_ratio", ZETAS)]
    cfg.horizon_slots = 300
    return cfg


def test_criterion_5f_handover_probability():
    fap_report = run(_handover_config(route_all_to_faps=True))
    fap_means = dict(
        (point[0], m)
        for point, m in aggregate_means(fap_report, "handover_probability")
    )
    series = [fap_means[z] for z in ZETAS]
    assert all(b >= a - 1e-12 for a, b in zip(series, series[1:])), series
    for zeta in (2.5, 3.0):
        assert fap_means[zeta] == pytest.approx(1.0, abs=1e-12)

    uav_report = run(_handover_config(route_all_to_faps=False))
    uav_means = dict(
        (point[0], m)
        for point, m in aggregate_means(uav_report, "handover_probability")
    )
    for zeta in (1.5, 2.0, 2.5, 3.0):  # HSUs handled by UAVs: no FAP handover
        assert uav_means[zeta] == 0.0
    ok(
        "criterion 5f: handover probability non-decreasing in speed ratio, "
        "one beyond 2, and zero when HSUs ride UAVs"
    )


# ---------------------------------------------------------------------------
# criterion 6: clustering behaviour
# ---------------------------------------------------------------------------


def test_criterion_6_kmeans():
    start = time.time()
    for seed in range(10):
        gen = np.random.default_rng(seed)
        centers = gen.uniform(-80, 80, size=(3, 2))
        pts = np.concatenate([c + gen.normal(0, 6, size=(25, 2)) for c in centers])
        result = kmeans_deploy(pts, 3, gen, region_radius=120.0)
        hist = result.history
        assert all(b <= a + 1e-9 for a, b in zip(hist, hist[1:]))
    pts = np.array([[0.0, 0.0], [0.0, 1.0], [10.0, 10.0], [10.0, 11.0]])
    result = kmeans_deploy(pts, 2, np.random.default_rng(0), region_radius=15.0)
    got = sorted(map(tuple, result.centroids))
    assert np.allclose(got, [(0.0, 0.5), (10.0, 10.5)])
    elapsed = time.time() - start
    assert elapsed < 1.0
    ok(f"criterion 6: K-means objective monotone and exact split ({elapsed:.2f}s)")


# ---------------------------------------------------------------------------
# criterion 7: end-to-end determinism through the CLI
# ---------------------------------------------------------------------------


def test_criterion_7_cli_determinism(tmp_path):
    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        proc = subprocess.run(
            [
                sys.executable, "-m", "ccuf.cli", "run",
                "--profile", "desk", "--seed", "7", "--out", str(out),
            ],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append((out / "metrics.csv").read_bytes())
    assert outputs[0] == outputs[1]
    ok("criterion 7: two desk runs with seed 7 emit byte-identical CSV")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
