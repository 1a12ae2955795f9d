"""Birth-death chain numerics against independent dense and rational solvers."""

from fractions import Fraction

import numpy as np
import pytest

from wordwait.markov import (
    BirthDeathChain,
    condition_on_hitting,
    expected_hitting_time,
    greens_function,
    hitting_probability,
    kac_return_time,
    mean_return_time,
    stationary_distribution,
)
from wordwait.mutation import build_match_chain

from conftest import (
    dense_expected_time,
    dense_hitting,
    random_chain,
    rational_expected_time,
    rational_hitting,
)


def symmetric_walk(n):
    up = np.full(n + 1, 0.5)
    down = np.full(n + 1, 0.5)
    up[-1] = 0.0
    down[0] = 0.0
    return BirthDeathChain(up=up, down=down, stay=1.0 - up - down)


class TestValidation:
    def test_rows_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            BirthDeathChain(up=[0.5, 0.0], down=[0.0, 0.4], stay=[0.5, 0.5])

    def test_boundaries_must_not_leak(self):
        with pytest.raises(ValueError, match="down"):
            BirthDeathChain(up=[0.5, 0.0], down=[0.1, 0.5], stay=[0.4, 0.5])
        with pytest.raises(ValueError, match="up"):
            BirthDeathChain(up=[0.5, 0.1], down=[0.0, 0.5], stay=[0.5, 0.4])

    def test_entries_in_unit_interval(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            BirthDeathChain(up=[1.2, 0.0], down=[0.0, 1.2], stay=[-0.2, -0.2])

    def test_arrays_frozen(self):
        chain = symmetric_walk(3)
        with pytest.raises(ValueError):
            chain.up[0] = 0.9


class TestHittingProbability:
    def test_symmetric_walk_is_linear(self):
        n = 7
        h = hitting_probability(symmetric_walk(n), 0, n)
        np.testing.assert_allclose(h, np.arange(n + 1) / n, atol=1e-14)

    def test_matches_dense_solver_on_random_chains(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 8))
            chain = random_chain(rng, n)
            lower = int(rng.integers(0, n - 1))
            upper = int(rng.integers(lower + 1, n + 1))
            h = hitting_probability(chain, lower, upper)
            np.testing.assert_allclose(h, dense_hitting(chain, lower, upper), atol=1e-11)

    def test_matches_exact_rational_solver(self):
        W = 5
        up = [Fraction(W - x, 3 * W) for x in range(W + 1)]
        down = [Fraction(x, W) for x in range(W + 1)]
        stay = [1 - u - d for u, d in zip(up, down)]
        exact = rational_hitting(up, down, stay, 0, W)
        h = hitting_probability(build_match_chain(W), 0, W)
        np.testing.assert_allclose(h, [float(v) for v in exact], atol=1e-12)

    def test_strictly_increasing_interior(self, rng):
        for _ in range(10):
            chain = random_chain(rng, 6)
            h = hitting_probability(chain, 0, 6)
            assert np.all(np.diff(h) > 0)

    def test_blocked_interval_raises(self):
        chain = BirthDeathChain(
            up=[0.3, 0.0, 0.3, 0.0],
            down=[0.0, 0.3, 0.3, 0.3],
            stay=[0.7, 0.7, 0.4, 0.7],
        )
        with pytest.raises(ValueError, match="not irreducible"):
            hitting_probability(chain, 0, 3)

    def test_match_chain_reference_values(self):
        h6 = hitting_probability(build_match_chain(6), 0, 6)
        assert h6[5] == pytest.approx(0.08093797, abs=5e-9)
        h8 = hitting_probability(build_match_chain(8), 0, 8)
        assert h8[7] == pytest.approx(0.05228556, abs=5e-9)


class TestExpectedHittingTime:
    def test_boundary_is_zero(self, rng):
        chain = random_chain(rng, 5)
        assert expected_hitting_time(chain, 3)[3] == 0.0

    def test_matches_dense_solver_on_random_chains(self, rng):
        for _ in range(25):
            n = int(rng.integers(2, 8))
            chain = random_chain(rng, n)
            target = int(rng.integers(0, n + 1))
            u = expected_hitting_time(chain, target)
            np.testing.assert_allclose(
                u, dense_expected_time(chain, target), rtol=1e-9, atol=1e-9
            )

    def test_matches_exact_rational_solver(self):
        W = 4
        up = [Fraction(W - x, 3 * W) for x in range(W + 1)]
        down = [Fraction(x, W) for x in range(W + 1)]
        stay = [1 - u - d for u, d in zip(up, down)]
        exact = rational_expected_time(up, down, stay, W)
        u = expected_hitting_time(build_match_chain(W), W)
        np.testing.assert_allclose(u, [float(v) for v in exact], rtol=1e-12)

    def test_reference_values_w8(self):
        chain = build_match_chain(8)
        assert expected_hitting_time(chain, 8)[0] == pytest.approx(69104.23, abs=0.005)
        assert expected_hitting_time(chain, 7)[6] == pytest.approx(3119.57, abs=0.005)

    def test_unreachable_target_raises(self):
        chain = BirthDeathChain(
            up=[0.3, 0.0, 0.3, 0.0],
            down=[0.0, 0.3, 0.3, 0.3],
            stay=[0.7, 0.7, 0.4, 0.7],
        )
        with pytest.raises(ValueError, match="unreachable"):
            expected_hitting_time(chain, 3)


class TestGreensFunction:
    def test_exact_visit_counts_w8(self):
        chain = build_match_chain(8)
        assert greens_function(chain, 0, 6, 7) == pytest.approx(12.0, abs=1e-12)
        assert greens_function(chain, 0, 5, 7) == pytest.approx(80.0, abs=1e-10)

    def test_started_at_stop_state(self, rng):
        chain = random_chain(rng, 5)
        for y in (0, 1, 2, 4):
            assert greens_function(chain, 3, y, 3) == 0.0

    def test_stop_between_raises(self, rng):
        chain = random_chain(rng, 5)
        with pytest.raises(ValueError, match="between"):
            greens_function(chain, 1, 4, 2)

    def test_sums_to_expected_hitting_time(self, rng):
        # E_x T_b == sum over y < b of expected visits to y
        for _ in range(10):
            n = int(rng.integers(3, 8))
            chain = random_chain(rng, n)
            b = int(rng.integers(1, n + 1))
            u = expected_hitting_time(chain, b)
            for x in range(b):
                total = sum(greens_function(chain, x, y, b) for y in range(b))
                assert total == pytest.approx(u[x], rel=1e-8)

    def test_mirrored_side(self, rng):
        # above the stop state, by symmetry with the dense solver
        chain = random_chain(rng, 6)
        u = expected_hitting_time(chain, 2)
        total = sum(greens_function(chain, 5, y, 2) for y in range(3, 7))
        assert total == pytest.approx(u[5], rel=1e-8)


class TestConditioning:
    def test_rows_sum_to_one(self):
        cond = condition_on_hitting(build_match_chain(8), 8, 0)
        np.testing.assert_allclose(cond.up + cond.down + cond.stay, 1.0, atol=1e-12)

    def test_conditioned_times_up(self):
        cond = condition_on_hitting(build_match_chain(8), 8, 0)
        u = expected_hitting_time(cond, 8)
        assert u[7] == pytest.approx(2.156068, abs=5e-7)
        assert u[0] == pytest.approx(47.229002, abs=5e-7)

    def test_conditioned_times_down(self):
        cond = condition_on_hitting(build_match_chain(8), 0, 8)
        u = expected_hitting_time(cond, 0)
        assert u[8] == pytest.approx(47.229002, abs=5e-7)
        assert u[1] == pytest.approx(26.937262, abs=5e-7)

    def test_avoided_state_unreachable(self):
        cond = condition_on_hitting(build_match_chain(6), 6, 0)
        assert cond.down[1] == 0.0

    def test_target_row_absorbing(self):
        cond = condition_on_hitting(build_match_chain(6), 6, 0)
        assert cond.stay[6] == 1.0 and cond.up[6] == 0.0 and cond.down[6] == 0.0

    def test_blocked_chain_raises(self):
        chain = BirthDeathChain(
            up=[0.3, 0.0, 0.3, 0.0],
            down=[0.0, 0.3, 0.3, 0.3],
            stay=[0.7, 0.7, 0.4, 0.7],
        )
        with pytest.raises(ValueError):
            condition_on_hitting(chain, 3, 0)

    def test_agrees_with_dense_doob_transform(self, rng):
        # independent route: transform the dense kernel, solve densely
        chain = random_chain(rng, 6)
        cond = condition_on_hitting(chain, 6, 0)
        h = dense_hitting(chain, 0, 6)
        for x in range(1, 6):
            assert cond.up[x] == pytest.approx(chain.up[x] * h[x + 1] / h[x], rel=1e-12)
            assert cond.down[x] == pytest.approx(chain.down[x] * h[x - 1] / h[x], rel=1e-12)


class TestStationaryAndKac:
    def test_detailed_balance(self, rng):
        for _ in range(10):
            chain = random_chain(rng, int(rng.integers(2, 9)))
            pi = stationary_distribution(chain)
            flow = pi[:-1] * chain.up[:-1] - pi[1:] * chain.down[1:]
            np.testing.assert_allclose(flow, 0.0, atol=1e-10)

    def test_kac_identity_match_chain(self):
        assert kac_return_time(build_match_chain(6), 6) == pytest.approx(4096.0)
        assert kac_return_time(build_match_chain(8), 8) == pytest.approx(65536.0)

    def test_two_state_fair_chain(self):
        chain = BirthDeathChain(up=[0.5, 0.0], down=[0.0, 0.5], stay=[0.5, 0.5])
        assert kac_return_time(chain, 0) == pytest.approx(2.0)

    def test_kac_agrees_with_first_step_analysis(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 9))
            chain = random_chain(rng, n)
            x = int(rng.integers(0, n + 1))
            assert mean_return_time(chain, x) == pytest.approx(
                kac_return_time(chain, x), rel=1e-8
            )

    def test_zero_mass_raises(self):
        chain = build_match_chain(4)
        pi = np.zeros(5)
        pi[0] = 1.0
        with pytest.raises(ValueError, match="zero"):
            kac_return_time(chain, 4, stationary=pi)
