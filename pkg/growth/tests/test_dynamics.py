import math
from dataclasses import replace

import numpy as np
import pytest

from growth.allocator import automation_thresholds
from growth.dynamics import (
    BoundedSaturatingPath,
    ExponentialPath,
    cognitive_automation_time,
    compute_at,
    evaluate_at,
    growth_decomposition,
    numeric_growth_rate,
    persistence_check,
    physical_automation_time,
    simulate,
    time_grid,
)
from growth.exceptions import DegenerateEconomy, InvalidParameter, NonPositiveOutput, NumericOverflow
from growth.models import AutomationCost, ProductionSpec

from .factories import BoundedPathFactory, ExponentialPathFactory, ScenarioFactory

BASELINE_PATH = ExponentialPath(q0=1e22, growth=0.2)
ALPHA_P = AutomationCost.finite(1e21)


class TestComputePath:
    def test_start(self):
        assert compute_at(BASELINE_PATH, 0.0) == 1e22

    def test_century(self):
        assert compute_at(BASELINE_PATH, 100.0) == pytest.approx(4.85e30, rel=1e-3)

    def test_saturation_limit(self):
        path = BoundedSaturatingPath(q0=1e22, q_max=1e29, rate=0.1)
        assert compute_at(path, 1e4) == pytest.approx(1e29, rel=1e-12)
        assert compute_at(path, 0.0) == pytest.approx(1e22)

    def test_monotone(self):
        for path in (BASELINE_PATH, BoundedSaturatingPath(1e22, 1e29, 0.1), ExponentialPath(1.0, 0.0)):
            values = [compute_at(path, t) for t in np.linspace(0, 300, 301)]
            assert all(b >= a for a, b in zip(values, values[1:]))

    def test_rejects_negative_time(self):
        with pytest.raises(InvalidParameter):
            compute_at(BASELINE_PATH, -1.0)

    @pytest.mark.parametrize('kwargs', [
        {'q0': 1e22, 'q_max': 1e21, 'rate': 0.1},
        {'q0': 1e22, 'q_max': 1e29, 'rate': 0.0},
        {'q0': -1.0, 'q_max': 1e29, 'rate': 0.1},
    ])
    def test_bounded_rejects(self, kwargs):
        with pytest.raises(InvalidParameter):
            BoundedSaturatingPath(**kwargs)


class TestScenario:
    def test_rejects_non_positive_labor(self):
        with pytest.raises(InvalidParameter):
            ScenarioFactory(labor_supply=0.0)

    def test_rejects_non_finite_rates(self):
        with pytest.raises(InvalidParameter):
            ScenarioFactory(g_l=math.inf)

    def test_levels_grow(self):
        scenario = ScenarioFactory(g_a=0.01, g_al=0.02, g_l=0.03)
        spec = scenario.production_at(10.0)
        assert spec.hicks_neutral == pytest.approx(math.exp(0.1))
        assert spec.labor_augmenting == pytest.approx(math.exp(0.2))
        assert scenario.labor_at(10.0) == pytest.approx(1e9 * math.exp(0.3))


class TestSimulate:
    def test_key_rows(self, baseline_scenario):
        crossing = cognitive_automation_time(baseline_scenario)
        points = simulate(baseline_scenario, [0.0, crossing, 100.0])
        flags = [(p.flags.cognitive, p.flags.physical) for p in points]
        assert flags == [(False, False), (True, False), (True, True)]
        assert points[1].result.labor_share == pytest.approx(0.5, abs=1e-9)
        assert points[0].result.labor_share == pytest.approx(1 / 1.1, rel=1e-9)

    def test_points_are_independent(self, baseline_scenario):
        grid = [0.0, 5.0, 50.0, 100.0]
        full = simulate(baseline_scenario, grid)
        single = [evaluate_at(baseline_scenario, t) for t in reversed(grid)][::-1]
        assert [p.result for p in full] == [p.result for p in single]

    def test_rejects_unsorted_grid(self, baseline_scenario):
        with pytest.raises(InvalidParameter):
            simulate(baseline_scenario, [1.0, 0.0])

    def test_rejects_negative_times(self, baseline_scenario):
        with pytest.raises(InvalidParameter):
            simulate(baseline_scenario, [-1.0, 0.0])

    def test_errors_carry_time(self):
        scenario = ScenarioFactory(
            tasks__physical__cost=AutomationCost.infinite(),
            g_l=-50.0,
            compute_path=ExponentialPath(q0=0.0, growth=0.0),
        )
        # labor underflows to zero by t = 20 and there is no compute either
        with pytest.raises(DegenerateEconomy) as excinfo:
            simulate(scenario, [0.0, 20.0])
        assert excinfo.value.t == 20.0

    @pytest.mark.parametrize('t', [3400.0, 3600.0])
    def test_compute_overflow(self, baseline_scenario, t):
        with pytest.raises(NumericOverflow) as excinfo:
            evaluate_at(baseline_scenario, t)
        assert excinfo.value.t == t

    def test_labor_overflow(self):
        with pytest.raises(NumericOverflow) as excinfo:
            simulate(ScenarioFactory(g_l=1.0), [0.0, 800.0])
        assert excinfo.value.t == 800.0
        assert 'labor' in str(excinfo.value)

    def test_unautomatable_physical_share_converges(self, unautomatable_scenario):
        point = evaluate_at(unautomatable_scenario, 200.0)
        assert point.result.labor_share == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize('beta', [0.2, 0.5, 0.7])
    def test_share_equals_beta_after_cognitive_automation(self, beta):
        scenario = ScenarioFactory(
            tasks__physical__cost=AutomationCost.infinite(),
            production__beta=beta,
        )
        start = math.ceil(cognitive_automation_time(scenario))
        for point in simulate(scenario, np.arange(max(start, 12), 301, 1.0)):
            assert point.result.labor_share == pytest.approx(beta, abs=1e-6)

    def test_labor_share_declines_to_zero(self, baseline_scenario):
        points = simulate(baseline_scenario, time_grid(0.0, 150.0, 1.0))
        shares = [p.result.labor_share for p in points]
        assert all(later <= earlier + 1e-9 for earlier, later in zip(shares, shares[1:]))
        assert shares[-1] <= 0.01

    def test_share_is_beta_between_thresholds(self, baseline_scenario):
        start = cognitive_automation_time(baseline_scenario)
        end = physical_automation_time(baseline_scenario)
        for point in simulate(baseline_scenario, np.linspace(start + 0.1, end - 0.1, 40)):
            assert point.result.labor_share == pytest.approx(0.5, abs=1e-12)


class TestTimeGrid:
    def test_inclusive(self):
        assert time_grid(0.0, 2.0, 0.5) == [0.0, 0.5, 1.0, 1.5, 2.0]

    def test_step_of_a_tenth(self):
        grid = time_grid(20.0, 80.0, 0.1)
        assert len(grid) == 601
        assert grid[-1] == pytest.approx(80.0)

    def test_rejects_bad_step(self):
        with pytest.raises(InvalidParameter):
            time_grid(0.0, 1.0, 0.0)


class TestAutomationTimes:
    def test_baseline_crossings(self, baseline_scenario):
        assert cognitive_automation_time(baseline_scenario) == pytest.approx(11.513, abs=0.01)
        assert physical_automation_time(baseline_scenario) == pytest.approx(92.103, abs=0.01)

    def test_already_automated(self):
        scenario = ScenarioFactory(compute_path__q0=1e24)
        assert cognitive_automation_time(scenario) == 0.0

    def test_bounded_path_below_threshold(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=1e21, q_max=1e22))
        assert cognitive_automation_time(scenario) is None

    def test_bounded_path_crossing(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=1e22, q_max=1e24, rate=0.1))
        crossing = cognitive_automation_time(scenario)
        # 1e24 - (1e24 - 1e22) e^{-0.1 t} = 1e23
        assert crossing == pytest.approx(10.0 * math.log(99e22 / 9e23), abs=1e-9)

    def test_slow_saturating_path(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=1e22, q_max=1e24, rate=5e-5))
        crossing = cognitive_automation_time(scenario)
        assert crossing == pytest.approx(math.log(99e22 / 9e23) / 5e-5, rel=1e-12)
        assert crossing > 1900.0

    def test_bounded_path_from_zero(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=0.0, q_max=1e24, rate=0.1))
        assert cognitive_automation_time(scenario) == pytest.approx(10.0 * math.log(10.0 / 9.0), abs=1e-9)

    @pytest.mark.parametrize('q_max, rate, g_l', [
        (1e25, 0.1, 0.01),
        (1e25, 1e-4, 0.001),
        (5e22, 0.1, -0.01),
        (5e22, 1e-4, -0.001),
    ])
    def test_bounded_path_with_moving_threshold(self, q_max, rate, g_l):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=1e22, q_max=q_max, rate=rate), g_l=g_l)

        def threshold(t):
            return automation_thresholds(scenario.tasks, scenario.production_at(t), scenario.labor_at(t)).cognitive

        crossing = cognitive_automation_time(scenario)
        assert crossing is not None
        assert compute_at(scenario.compute_path, crossing) == pytest.approx(threshold(crossing), rel=1e-9)
        earlier = crossing * (1 - 1e-6)
        assert compute_at(scenario.compute_path, earlier) < threshold(earlier)

    def test_labor_growth_outruns_bounded_path(self):
        # Q_max is above the initial threshold, but effective labor grows faster than compute saturates.
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q0=1e22, q_max=2e23, rate=0.01), g_l=0.05)
        assert cognitive_automation_time(scenario) is None
        assert cognitive_automation_time(replace(scenario, g_l=0.0)) == pytest.approx(100.0 * math.log(1.9))

    def test_infinite_cost(self, unautomatable_scenario):
        assert physical_automation_time(unautomatable_scenario) is None

    def test_constant_compute(self):
        scenario = ScenarioFactory(compute_path__growth=0.0)
        assert physical_automation_time(scenario) is None

    def test_labor_growth_delays_crossing(self):
        scenario = ScenarioFactory(g_l=0.05, g_al=0.05)
        assert cognitive_automation_time(scenario) == pytest.approx(math.log(10.0) / 0.1)

    def test_cognitive_precedes_physical(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            alpha_c, alpha_p = sorted(float(a) for a in 10 ** rng.uniform(12, 24, size=2))
            scenario = ScenarioFactory(
                tasks__cognitive__cost=AutomationCost.finite(alpha_c),
                tasks__physical__cost=AutomationCost.finite(alpha_p),
                production__beta=float(rng.uniform(0.1, 0.9)),
                compute_path=ExponentialPathFactory(growth=float(rng.uniform(0.05, 0.5))),
                g_l=float(rng.uniform(0.0, 0.04)),
            )
            assert cognitive_automation_time(scenario) <= physical_automation_time(scenario)

    def test_general_beta(self):
        scenario = ScenarioFactory(production=ProductionSpec.cobb_douglas(0.2))
        # ((1 - beta) / beta) * alpha_c * L = 4e23
        assert cognitive_automation_time(scenario) == pytest.approx(math.log(40.0) / 0.2)


class TestPersistence:
    @pytest.mark.parametrize('q_max, expected', [
        (10 ** 29, True),
        (10 ** 30 - 1, True),
        (10 ** 31, False),
    ])
    def test_truth_table(self, q_max, expected):
        assert persistence_check(ALPHA_P, 1e9, q_max) is expected

    @pytest.mark.parametrize('q_max', [1e20, 1e30, 1e50])
    def test_infinite_cost_always_persists(self, q_max):
        assert persistence_check(AutomationCost.infinite(), 1e9, q_max) is True

    def test_monotone(self):
        assert persistence_check(ALPHA_P, 2e9, 1e30)
        assert not persistence_check(ALPHA_P, 5e8, 1e30)

    def test_rejects_bad_inputs(self):
        with pytest.raises(InvalidParameter):
            persistence_check(ALPHA_P, 0.0, 1e29)
        with pytest.raises(InvalidParameter):
            persistence_check(ALPHA_P, 1e9, 0.0)


class TestGrowthAccounting:
    @pytest.mark.parametrize('args, expected', [
        ((0.5, 0.2, 0.0, 0.0), 0.1),
        ((0.5, 0.0, 0.0, 0.0), 0.0),
        ((0.3, 0.1, 0.01, 0.02), 0.079),
    ])
    def test_decomposition(self, args, expected):
        assert growth_decomposition(*args) == pytest.approx(expected, abs=1e-15)

    def test_hicks_neutral_term(self):
        assert growth_decomposition(0.5, 0.2, 0.0, 0.0, g_a=0.01) == pytest.approx(0.11)

    def test_rejects_beta(self):
        with pytest.raises(InvalidParameter):
            growth_decomposition(1.0, 0.2, 0.0, 0.0)

    def test_numeric_matches_closed_form(self, baseline_scenario):
        rates = numeric_growth_rate(simulate(baseline_scenario, time_grid(20.0, 80.0, 0.1)))
        assert len(rates) == 599
        for _, rate in rates:
            assert rate == pytest.approx(0.1, abs=1e-3)

    def test_numeric_with_labor_growth(self):
        scenario = ScenarioFactory(g_l=0.01, g_al=0.02, production__beta=0.3, compute_path__growth=0.1,
                                   compute_path__q0=1e24)
        rates = numeric_growth_rate(simulate(scenario, time_grid(10.0, 20.0, 0.1)))
        for _, rate in rates:
            assert rate == pytest.approx(0.079, abs=1e-3)

    def test_stationary_economy(self):
        scenario = ScenarioFactory(compute_path=ExponentialPath(q0=0.0, growth=0.0))
        rates = numeric_growth_rate(simulate(scenario, time_grid(0.0, 5.0, 1.0)))
        assert all(rate == 0.0 for _, rate in rates)

    def test_pre_automation_growth(self, baseline_scenario):
        rates = numeric_growth_rate(simulate(baseline_scenario, time_grid(0.0, 5.0, 0.1)))
        assert all(0.0 < rate < 0.1 for _, rate in rates)

    def test_needs_three_points(self, baseline_scenario):
        with pytest.raises(InvalidParameter):
            numeric_growth_rate(simulate(baseline_scenario, [0.0, 1.0]))

    def test_needs_uniform_spacing(self, baseline_scenario):
        with pytest.raises(InvalidParameter):
            numeric_growth_rate(simulate(baseline_scenario, [0.0, 1.0, 3.0]))

    def test_non_positive_output(self, baseline_scenario):
        points = simulate(baseline_scenario, [0.0, 1.0, 2.0])
        points[1] = replace(points[1], result=replace(points[1].result, output=0.0))
        with pytest.raises(NonPositiveOutput):
            numeric_growth_rate(points)
