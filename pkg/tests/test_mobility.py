import math
from fractions import Fraction

import numpy as np
import pytest

from ccuf.mobility import (
    RANDOM_WALK,
    SIMPLE,
    GroundUser,
    SuccessProbInputs,
    monte_carlo_success,
    p_new_segment,
    step,
    success_prob_coded_rw,
    success_prob_coded_simple,
    success_prob_uncoded,
)
from ccuf.popularity import ZipfProfile, n_mediocre, n_popular
from ccuf.topology import TopologyConfig, build_topology


def small_net():
    cfg = TopologyConfig(n_faps=7, region_radius_m=200.0, cell_radius_m=30.0, n_uavs=0)
    return build_topology(cfg, np.random.default_rng(0))


class TestStep:
    def test_simple_visits_distinct_cells(self):
        net = small_net()
        user = GroundUser(id=0, position=net.faps[0].position, speed=1.0)
        gen = np.random.default_rng(1)
        for _ in range(6):
            step(user, SIMPLE, 1.0, net, gen)
        assert len(user.visited_cells) == 7

    def test_random_walk_uniform_over_other_cells(self):
        net = small_net()
        gen = np.random.default_rng(2)
        counts = np.zeros(7)
        trials = 30000
        for _ in range(trials):
            user = GroundUser(id=0, position=net.faps[0].position, speed=1.0)
            step(user, RANDOM_WALK, 1.0, net, gen)
            nearest = min(
                range(7), key=lambda i: math.dist(net.faps[i].position, user.position)
            )
            counts[nearest] += 1
        assert counts[0] == 0  # never stays
        p = 1.0 / 6.0
        sigma = math.sqrt(trials * p * (1 - p))
        assert np.all(np.abs(counts[1:] - trials * p) <= 3.5 * sigma)

    def test_stationary_user_stays(self):
        net = small_net()
        user = GroundUser(id=0, position=(5.0, 5.0), speed=0.0)
        pos = step(user, RANDOM_WALK, 1.0, net, np.random.default_rng(0))
        assert pos == (5.0, 5.0)
        assert user.stationary


class TestClosedForms:
    def test_uncoded_full_catalog(self):
        profile = ZipfProfile.build(10, 0.7)
        assert success_prob_uncoded(profile, 10) == pytest.approx(1.0)

    def test_uncoded_uniform_half(self):
        profile = ZipfProfile.build(10, 0.0)
        assert success_prob_uncoded(profile, 5) == pytest.approx(0.5)

    def test_uncoded_harmonic_case(self):
        profile = ZipfProfile.build(3, 1.0)
        assert success_prob_uncoded(profile, 2) == pytest.approx(
            float(Fraction(9, 11)), rel=1e-12
        )

    def test_uncoded_rejects_oversized_cache(self):
        with pytest.raises(ValueError):
            success_prob_uncoded(ZipfProfile.build(5, 0.5), 6)

    def test_coded_simple_alpha_one_equals_uncoded(self):
        profile = ZipfProfile.build(100, 0.8)
        assert success_prob_coded_simple(profile, 1.0, 10, 7) == pytest.approx(
            success_prob_uncoded(profile, 10), rel=1e-12
        )

    def test_coded_simple_alpha_zero(self):
        profile = ZipfProfile.build(100, 0.8)
        assert success_prob_coded_simple(profile, 0.0, 10, 7) == pytest.approx(
            profile.head_mass(70), rel=1e-12
        )

    @pytest.mark.parametrize("gamma", [0.5, 0.8, 1.0])
    @pytest.mark.parametrize("n_segments", [2, 3, 7])
    def test_coded_at_least_uncoded_in_superset_regime(self, gamma, n_segments):
        # the coded rank span covers the uncoded one while
        # floor(alpha*C_f) <= C_f*(N_s-1)/N_s
        profile = ZipfProfile.build(300, gamma)
        c_f = 10
        alpha_cap = (n_segments - 1) / n_segments
        for alpha in np.arange(0.0, alpha_cap + 1e-9, 0.1):
            assert success_prob_coded_simple(
                profile, alpha, c_f, n_segments
            ) >= success_prob_uncoded(profile, c_f) - 1e-12
        assert success_prob_coded_simple(profile, 1.0, c_f, n_segments) == pytest.approx(
            success_prob_uncoded(profile, c_f)
        )


class TestNewSegment:
    def test_first_two_contacts_certain(self):
        assert p_new_segment(1, 7) == 1.0
        assert p_new_segment(2, 7) == 1.0

    def test_third_contact(self):
        assert p_new_segment(3, 7) == pytest.approx(float(Fraction(5, 6)), rel=1e-12)

    def test_fifth_contact_power(self):
        assert p_new_segment(5, 7) == pytest.approx(
            float(Fraction(125, 216)), rel=1e-12
        )

    def test_two_segments_late_contacts_impossible(self):
        assert p_new_segment(3, 2) == 0.0
        assert p_new_segment(4, 2) == 0.0

    def test_invalid_contact(self):
        with pytest.raises(ValueError):
            p_new_segment(0, 7)

    def test_monotone_in_contact_and_segments(self):
        vals = [p_new_segment(n, 7) for n in range(1, 8)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        for n in (3, 5, 7):
            assert p_new_segment(n, 7) >= p_new_segment(n, 3)

    def test_literal_factor_differs_only_on_early_contacts(self):
        for n_segments in (3, 7):
            for n in range(2, n_segments + 1):
                assert p_new_segment(n, n_segments, literal=True) == pytest.approx(
                    p_new_segment(n, n_segments)
                )
            lit = p_new_segment(1, n_segments, literal=True)
            assert lit > 1.0
            assert lit == pytest.approx((n_segments - 1) / (n_segments - 2))


class TestCodedRandomWalk:
    def test_alpha_one_popular_only(self):
        profile = ZipfProfile.build(100, 0.7)
        assert success_prob_coded_rw(profile, 1.0, 10, 7) == pytest.approx(
            success_prob_uncoded(profile, 10), rel=1e-12
        )

    def test_two_segment_case_direct(self):
        # N_s=2: both contacts always fresh, success = popular + mediocre mass
        profile = ZipfProfile.build(50, 0.6)
        alpha, c_f, n_s = 0.5, 4, 2
        pop = n_popular(alpha, c_f)
        med = n_mediocre(alpha, c_f, n_s)
        expected = profile.head_mass(pop) + (
            (profile.head_mass(pop + med) - profile.head_mass(pop)) / 2.0
        ) * sum(p_new_segment(n, 2) for n in (1, 2))
        assert success_prob_coded_rw(profile, alpha, c_f, n_s) == pytest.approx(
            expected, rel=1e-12
        )

    def test_clamped_stays_in_unit_interval(self):
        for gamma in (0.0, 0.5, 1.0):
            profile = ZipfProfile.build(200, gamma)
            for alpha in np.arange(0.0, 1.01, 0.1):
                v = success_prob_coded_rw(profile, alpha, 10, 7)
                assert 0.0 <= v <= 1.0 + 1e-12

    def test_literal_mode_reported_unclipped(self):
        # high mediocre mass makes the literal form exceed one
        profile = ZipfProfile.build(70, 0.0)
        v = success_prob_coded_rw(profile, 0.0, 10, 7, mode="literal")
        assert v > 1.0

    def test_mode_difference_is_early_contact_factor(self):
        profile = ZipfProfile.build(300, 0.8)
        alpha, c_f, n_s = 0.4, 10, 7
        pop = n_popular(alpha, c_f)
        med_mass = profile.head_mass(pop + n_mediocre(alpha, c_f, n_s)) - \
            profile.head_mass(pop)
        lit = success_prob_coded_rw(profile, alpha, c_f, n_s, mode="literal")
        cl = success_prob_coded_rw(profile, alpha, c_f, n_s, mode="clamped")
        factor_lit = sum(p_new_segment(n, n_s, literal=True) for n in range(1, n_s + 1))
        factor_cl = sum(p_new_segment(n, n_s) for n in range(1, n_s + 1))
        assert lit - cl == pytest.approx(
            med_mass * (factor_lit - factor_cl / n_s), rel=1e-10
        )


class TestMonteCarlo:
    def test_zero_trials_rejected(self):
        inputs = SuccessProbInputs(ZipfProfile.build(10, 0.5), 0.4, 4, 3, SIMPLE)
        with pytest.raises(ValueError):
            monte_carlo_success(inputs, 0, np.random.default_rng(0))

    def test_simple_matches_closed_form_within_ci(self):
        profile = ZipfProfile.build(200, 0.7)
        inputs = SuccessProbInputs(profile, 0.4, 10, 7, SIMPLE)
        mc = monte_carlo_success(inputs, 100000, np.random.default_rng(5))
        expected = success_prob_coded_simple(profile, 0.4, 10, 7)
        assert abs(mc.estimate - expected) <= mc.ci_halfwidth

    def test_random_walk_third_contact_rate(self):
        profile = ZipfProfile.build(50, 0.5)
        inputs = SuccessProbInputs(profile, 0.0, 5, 7, RANDOM_WALK)
        mc = monte_carlo_success(inputs, 100000, np.random.default_rng(6))
        rate = mc.new_segment_rate[2]  # contact 3
        se = math.sqrt((5 / 6) * (1 / 6) / mc.trials)
        assert abs(rate - 5.0 / 6.0) <= 1.96 * se * 1.5
        # the first two contacts always find something new
        assert mc.new_segment_rate[0] == 1.0
        assert mc.new_segment_rate[1] == 1.0

    def test_later_contacts_reported_against_power_formula(self):
        # compare the walk's per-contact fresh rates with the power formula
        # beyond the third contact; the comparison is reported, not asserted
        inputs = SuccessProbInputs(ZipfProfile.build(10, 0.5), 0.0, 5, 7, RANDOM_WALK)
        mc = monte_carlo_success(inputs, 200000, np.random.default_rng(7))
        for contact in (4, 5, 6, 7):
            formula = p_new_segment(contact, 7)
            measured = mc.new_segment_rate[contact - 1]
            print(
                f"contact {contact}: walk rate {measured:.4f} vs "
                f"power formula {formula:.4f}"
            )
        rates = mc.new_segment_rate
        assert np.all((0.0 <= rates) & (rates <= 1.0))
        assert np.all(np.diff(rates[1:]) <= 0.01)  # decaying after contact 2

    def test_seeded_determinism(self):
        inputs = SuccessProbInputs(ZipfProfile.build(30, 0.8), 0.2, 5, 7, RANDOM_WALK)
        a = monte_carlo_success(inputs, 20000, np.random.default_rng(11))
        b = monte_carlo_success(inputs, 20000, np.random.default_rng(11))
        assert a.estimate == b.estimate
        assert np.array_equal(a.new_segment_rate, b.new_segment_rate)

    def test_ci_property(self):
        inputs = SuccessProbInputs(ZipfProfile.build(30, 0.8), 0.2, 5, 7, SIMPLE)
        mc = monte_carlo_success(inputs, 5000, np.random.default_rng(3))
        lo, hi = mc.ci
        assert lo <= mc.estimate <= hi
