import itertools
import math

import numpy as np
import pytest

from ccuf.channel import Region
from ccuf.placement import solve_uav_placement
from ccuf.popularity import ContentClass, ZipfProfile
from ccuf.scheduler import (
    EnergyParams,
    RequestOutcome,
    Scheme,
    UavEnergyLedger,
    detect_handover,
    detect_handover_many,
    expected_uav_delay,
    fap_delay,
    select_scheme,
    uav_delay,
    uav_energy_step,
)


class TestSelectScheme:
    def test_reference_cases(self):
        assert select_scheme(
            ContentClass.POPULAR, Region.CELL_EDGE, 0.5, 1.5, indoor=True
        ) is Scheme.JT
        assert select_scheme(
            ContentClass.MEDIOCRE, Region.CELL_EDGE, 0.5, 1.5, indoor=True
        ) is Scheme.ST
        assert select_scheme(
            ContentClass.NON_POPULAR, Region.CELL_CORE, 3.0, 1.5, indoor=False
        ) is Scheme.UAV_SERVE

    def test_exhaustive_truth_table(self):
        classes = list(ContentClass)
        regions = list(Region)
        v_th = 1.5
        for cls, region, indoor, fast, still in itertools.product(
            classes, regions, (True, False), (True, False), (True, False)
        ):
            if fast and still:
                continue  # inconsistent: a stationary user has zero speed
            speed = 0.0 if still else (2.0 * v_th if fast else 0.5 * v_th)
            got = select_scheme(cls, region, speed, v_th, indoor, stationary=still)
            if not indoor and speed >= v_th:
                expected = Scheme.UAV_SERVE
            elif cls is ContentClass.POPULAR:
                expected = Scheme.JT if region is Region.CELL_EDGE else Scheme.ST
            elif cls is ContentClass.MEDIOCRE:
                expected = Scheme.PT if still else Scheme.ST
            else:
                expected = Scheme.ST
            assert got is expected, (cls, region, indoor, fast, still)

    def test_indoor_fast_user_stays_on_faps(self):
        got = select_scheme(
            ContentClass.POPULAR, Region.CELL_CORE, 10.0, 1.5, indoor=True
        )
        assert got is Scheme.ST

    def test_outcome_record_composes(self):
        scheme = select_scheme(
            ContentClass.POPULAR, Region.CELL_EDGE, 0.2, 1.5, indoor=False
        )
        outcome = RequestOutcome(
            scheme=scheme,
            served_by=(0, 1, 2, 3, 4, 5, 6),
            hit=True,
            delay_s=fap_delay(True, 9.0, 1.0, 1.0),
            energy_j=0.0,
        )
        assert outcome.scheme is Scheme.JT
        assert not outcome.handover


class TestDelays:
    def test_fap_hit_unit_case(self):
        assert fap_delay(True, 1.0, 1.0, 1.0) == pytest.approx(1.0)

    def test_fap_hit_log_case(self):
        # log2(1 + 3) = 2
        assert fap_delay(True, 3.0, 2.0, 1.0) == pytest.approx(1.0)

    def test_fap_miss_adds_penalty(self):
        hit = fap_delay(True, 1.0, 1.0, 1.0)
        miss = fap_delay(False, 1.0, 1.0, 1.0, miss_penalty_s=0.5)
        assert miss == pytest.approx(hit + 0.5)

    def test_fap_delay_rejects_bad_sinr(self):
        with pytest.raises(ValueError):
            fap_delay(True, 0.0, 1.0, 1.0)

    def test_delay_decreasing_in_sinr(self):
        sinrs = np.linspace(0.5, 50.0, 50)
        delays = [fap_delay(True, s, 1.0, 1.0) for s in sinrs]
        assert all(b < a for a, b in zip(delays, delays[1:]))

    def test_uav_hit_and_miss(self):
        assert uav_delay(True, 1.0, 1.0, 1.0, 1.0) == pytest.approx(1.0)
        assert uav_delay(False, 1.0, 1.0, 1.0, 1.0) == pytest.approx(2.0)

    def test_uav_miss_limit_fast_backhaul(self):
        # the server fetch term vanishes as the backhaul SINR grows
        hit = uav_delay(True, 1.0, 1.0, 1.0, 1.0)
        gaps = [uav_delay(False, 1.0, s, 1.0, 1.0) - hit for s in (1e3, 1e9, 1e30)]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] == pytest.approx(0.0, abs=0.02)

    def test_miss_never_beats_hit(self):
        for s in (0.3, 1.0, 40.0):
            assert uav_delay(False, s, s, 1.0, 1.0) >= uav_delay(True, s, s, 1.0, 1.0)
            assert fap_delay(False, s, 1.0, 1.0, 0.05) >= fap_delay(True, s, 1.0, 1.0)


class TestExpectedUavDelay:
    def test_empty_and_full_cache(self):
        profile = ZipfProfile.build(3, 1.0)
        empty = solve_uav_placement(np.zeros(3), 0)
        full = solve_uav_placement(profile.probabilities, 3)
        assert expected_uav_delay(empty, profile, 1.0, 3.0) == pytest.approx(3.0)
        assert expected_uav_delay(full, profile, 1.0, 3.0) == pytest.approx(1.0)

    def test_top_two_of_three(self):
        # Zipf gamma=1, 3 contents: p = (6/11, 3/11, 2/11); top-2 mass 9/11
        profile = ZipfProfile.build(3, 1.0)
        cache = solve_uav_placement(profile.probabilities, 2)
        got = expected_uav_delay(cache, profile, 1.0, 3.0)
        assert got == pytest.approx(9 / 11 + 3 * 2 / 11, rel=1e-12)


class TestEnergy:
    def test_zero_content_zero_window(self):
        params = EnergyParams(pause_s=1.0, flyby_s=1.0)
        assert uav_energy_step(0.0, params, True) == pytest.approx(0.0)

    def test_reference_value(self):
        params = EnergyParams(
            tx_w_per_mbit=0.5, rx_w_per_mbit=0.25, pause_s=1.0,
            flyby_s=2.0, hover_los_w=0.1,
        )
        # 300*0.5*1 + 300*0.25*1 + 0.1*(2-1)
        assert uav_energy_step(300.0, params, True) == pytest.approx(225.1, rel=1e-12)

    def test_nlos_at_least_los(self):
        params = EnergyParams(hover_los_w=0.1, hover_nlos_w=0.4)
        assert uav_energy_step(10.0, params, False) >= uav_energy_step(
            10.0, params, True
        )

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            EnergyParams(pause_s=3.0, flyby_s=1.0)
        with pytest.raises(ValueError):
            EnergyParams(tx_w_per_mbit=-1.0)

    def test_ledger_conservation_and_depletion(self):
        ledger = UavEnergyLedger([500.0, 500.0])
        drawn = []
        for i in range(4):
            assert ledger.charge(0, 200.0)
            drawn.append(200.0)
            if ledger.remaining[0] < 0:
                break
        # the request that drives the battery below zero is served...
        assert ledger.remaining[0] < 0
        # ...and everything afterwards is rejected
        assert not ledger.charge(0, 1.0)
        assert not ledger.alive(0)
        assert ledger.alive(1)
        assert ledger.total_spent == pytest.approx(sum(drawn))


class TestHandover:
    FAP = (0.0, 0.0)
    R = 30.0

    def test_stationary_never_hands_over(self):
        assert not detect_handover((10.0, 5.0), (0.0, 0.0), 10.0, self.FAP, self.R)

    def test_radial_exit_time(self):
        # from the centre, exit happens at R / v; handover iff dt exceeds it
        v = 3.0
        t_exit = self.R / v
        assert detect_handover((0.0, 0.0), (v, 0.0), t_exit * 1.01, self.FAP, self.R)
        assert not detect_handover((0.0, 0.0), (v, 0.0), t_exit * 0.99, self.FAP, self.R)

    def test_travel_twice_radius_always_exits(self):
        gen = np.random.default_rng(8)
        dt = 1.0
        for _ in range(300):
            r = self.R * 0.999 * math.sqrt(gen.uniform())
            a = gen.uniform(0, 2 * math.pi)
            start = (r * math.cos(a), r * math.sin(a))
            heading = gen.uniform(0, 2 * math.pi)
            speed = 2.0 * self.R / dt
            vel = (speed * math.cos(heading), speed * math.sin(heading))
            assert detect_handover(start, vel, dt, self.FAP, self.R)

    def test_vectorised_matches_scalar(self):
        gen = np.random.default_rng(9)
        starts = gen.uniform(-25, 25, size=(200, 2))
        vels = gen.uniform(-40, 40, size=(200, 2))
        vels[::7] = 0.0
        many = detect_handover_many(starts, vels, 0.7, np.zeros((200, 2)), self.R)
        single = [
            detect_handover(tuple(s), tuple(v), 0.7, (0.0, 0.0), self.R)
            for s, v in zip(starts, vels)
        ]
        assert many.tolist() == single
