"""The projected-subgradient minimizer and its report contract."""

import random
from fractions import Fraction

import pytest

from skewbisub import (
    Alpha,
    DiminishingStep,
    FixedStep,
    FractionalPoint,
    MinimizeConfig,
    TableFunction,
    all_labelings,
    brute_force_min,
    decompose,
    expand_to_table,
    extension_value,
    format_labeling,
    generate_instance,
    minimize,
    numeric,
    project_box,
)
from conftest import ALPHA_GRID, random_grid_point


class TestProjectBox:
    def test_inside_point_roundtrips_on_grid(self, alpha_half):
        x = project_box([0.25, -0.25], alpha_half)
        assert x.coords == (Fraction(1, 4), Fraction(-1, 4))

    def test_clamps_below(self, alpha_half):
        x = project_box([-5.0, 0.0], alpha_half)
        assert x.coords == (Fraction(-1, 2), Fraction(0))

    def test_clamps_above(self, alpha_half):
        x = project_box([1.0000001, 2.0], alpha_half)
        assert x.coords == (Fraction(1), Fraction(1))

    def test_denominators_bounded(self, alpha_half):
        x = project_box([0.333333333333, -0.123456789], alpha_half, max_denominator=1 << 10)
        assert all(c.denominator <= 1 << 10 for c in x.coords)

    def test_exact_lower_bound_off_grid(self):
        # -alpha is not a dyadic grid point here; the exact clamp must win
        alpha = Alpha(Fraction(1, 3))
        x = project_box([-1.0], alpha)
        assert x.coords == (Fraction(-1, 3),)

    def test_non_finite_rejected(self, alpha_half):
        with pytest.raises(RuntimeError, match="non-finite"):
            project_box([float("nan")], alpha_half)


class TestMinimizeBasics:
    def test_constant(self, alpha_half):
        f = TableFunction(2, alpha_half, {u: Fraction(7) for u in all_labelings(2)})
        report = minimize(f)
        assert report.value == 7
        assert format_labeling(report.minimizer) == "00"  # support atom of the zero start
        assert len(report.trajectory_best) == 1

    def test_separable_linear(self, alpha_half):
        f = TableFunction(
            2, alpha_half, {a: sum(numeric(a, alpha_half)) for a in all_labelings(2)}
        )
        report = minimize(f)
        assert format_labeling(report.minimizer) == "--"
        assert report.value == -1

    def test_value_is_exact_reevaluation(self, alpha_half):
        f = expand_to_table(
            generate_instance(3, alpha_half, num_terms=3, max_scope=2, seed=60)
        )
        report = minimize(f)
        assert report.value == f[report.minimizer]

    def test_trajectory_strictly_decreasing(self, alpha_half):
        f = expand_to_table(
            generate_instance(4, alpha_half, num_terms=4, max_scope=2, seed=61)
        )
        report = minimize(f)
        values = [v for _, v in report.trajectory_best]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] == report.value

    def test_oracle_calls_are_counter_delta(self, alpha_half):
        f = expand_to_table(
            generate_instance(3, alpha_half, num_terms=2, max_scope=2, seed=62)
        )
        before = f.call_count
        report = minimize(f)
        assert report.oracle_calls == f.call_count - before

    def test_deterministic(self, alpha_half):
        f1 = expand_to_table(
            generate_instance(3, alpha_half, num_terms=3, max_scope=2, seed=63)
        )
        f2 = expand_to_table(
            generate_instance(3, alpha_half, num_terms=3, max_scope=2, seed=63)
        )
        r1 = minimize(f1)
        r2 = minimize(f2)
        assert r1.to_json() == r2.to_json()

    def test_report_json_shape(self, alpha_half):
        f = TableFunction(1, alpha_half, {"-": -1, "0": 0, "+": 1})
        report = minimize(f)
        doc = report.to_json()
        assert set(doc) == {"minimizer", "value", "iterations", "oracle_calls", "trace"}
        assert doc["minimizer"] == "-"
        assert doc["value"] == "-1"
        assert all(isinstance(t, int) and isinstance(v, str) for t, v in doc["trace"])

    def test_default_iteration_budget(self, alpha_half):
        f = TableFunction(2, alpha_half, {u: Fraction(1) for u in all_labelings(2)})
        report = minimize(f)
        assert report.iterations_used == 200 * 4

    def test_explicit_start(self, alpha_half):
        f = TableFunction(2, alpha_half, {u: Fraction(2) for u in all_labelings(2)})
        start = FractionalPoint((Fraction(1), Fraction(-1, 2)), alpha_half)
        report = minimize(f, MinimizeConfig(max_iters=1, start=start))
        assert format_labeling(report.minimizer) == "+-"

    def test_seeded_start_is_reproducible(self, alpha_half):
        f = expand_to_table(
            generate_instance(2, alpha_half, num_terms=2, max_scope=2, seed=64)
        )
        r1 = minimize(f, MinimizeConfig(seed=5))
        r2 = minimize(f, MinimizeConfig(seed=5))
        assert r1.to_json() == r2.to_json()

    def test_config_validation(self, alpha_half):
        with pytest.raises(ValueError):
            MinimizeConfig(max_iters=0)
        with pytest.raises(ValueError):
            MinimizeConfig(tolerance=Fraction(-1))
        with pytest.raises(ValueError):
            FixedStep(gamma=0.0)
        with pytest.raises(ValueError):
            DiminishingStep(gamma0=-1.0)

    def test_arity_mismatch_start(self, alpha_half):
        f = TableFunction(2, alpha_half, {u: 0 for u in all_labelings(2)})
        bad = FractionalPoint((Fraction(0),), alpha_half)
        with pytest.raises(ValueError):
            minimize(f, MinimizeConfig(start=bad))


class TestRoundingSoundness:
    def test_support_min_never_exceeds_extension(self, alpha_half):
        # the bound the best-so-far update relies on, at arbitrary points
        f = expand_to_table(
            generate_instance(4, alpha_half, num_terms=4, max_scope=2, seed=65)
        )
        rng = random.Random(0)
        for _ in range(50):
            x = random_grid_point(4, alpha_half, rng)
            support_min = min(f[u] for u in decompose(x).support())
            assert support_min <= extension_value(f, x)


class TestOptimality:
    def test_matches_brute_force_on_batch(self):
        for k in range(12):
            n = 2 + k % 4
            alpha = ALPHA_GRID[k % 4]
            f = generate_instance(n, alpha, num_terms=n, max_scope=2, seed=700 + k)
            report = minimize(f)
            _, best = brute_force_min(expand_to_table(f))
            assert report.value == best, (k, n, str(alpha))

    def test_fixed_step_rule_works_when_scaled(self, alpha_half):
        f = expand_to_table(
            generate_instance(2, alpha_half, num_terms=2, max_scope=2, seed=66)
        )
        report = minimize(f, MinimizeConfig(step=FixedStep(gamma=0.01)))
        _, best = brute_force_min(f)
        assert report.value == best

    def test_early_stop_with_tolerance(self, alpha_half):
        f = expand_to_table(
            generate_instance(2, alpha_half, num_terms=2, max_scope=2, seed=67)
        )
        report = minimize(f, MinimizeConfig(tolerance=Fraction(1, 2)))
        _, best = brute_force_min(f)
        # the certificate guarantees value within tolerance of the optimum
        assert report.value - best <= Fraction(1, 2)
        assert report.iterations_used <= 200 * 4
