import math

import numpy as np
import pytest

from growth.analysis import (
    AsymptoticVerdict,
    Regime,
    VerdictReason,
    asymptotic_labor_share,
    ces_share,
    classify_bottleneck,
    uniform_cost_counterfactual,
)
from growth.dynamics import ExponentialPath, evaluate_at, physical_automation_time
from growth.exceptions import InvalidParameter
from growth.models import AutomationCost, ProductionSpec, TaskClass, aggregate_output, marginal_products

from .factories import BoundedPathFactory, ScenarioFactory


class TestAsymptoticLaborShare:
    def test_unautomatable_physical_work(self, unautomatable_scenario):
        verdict = asymptotic_labor_share(unautomatable_scenario)
        assert verdict.regime == Regime.UNBOUNDED
        assert verdict.limiting_labor_share == 0.5
        assert verdict.reason == VerdictReason.UNAUTOMATABLE_BOTTLENECK

    @pytest.mark.parametrize('beta', [0.2, 0.7])
    def test_bottleneck_weight(self, beta):
        scenario = ScenarioFactory(
            tasks__physical__cost=AutomationCost.infinite(),
            production__beta=beta,
        )
        assert asymptotic_labor_share(scenario).limiting_labor_share == beta

    def test_full_automation(self, baseline_scenario):
        verdict = asymptotic_labor_share(baseline_scenario)
        assert verdict.limiting_labor_share == 0.0
        assert verdict.reason == VerdictReason.FULL_AUTOMATION

    def test_saturating_compute(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q_max=1e25))
        verdict = asymptotic_labor_share(scenario)
        assert verdict.regime == Regime.FINITE
        assert verdict.reason == VerdictReason.SATURATION_POINT
        assert verdict.limiting_labor_share == pytest.approx(0.5, abs=1e-12)

    def test_saturating_past_physical_threshold(self):
        scenario = ScenarioFactory(compute_path=BoundedPathFactory(q_max=1e32))
        assert 0.0 < asymptotic_labor_share(scenario).limiting_labor_share < 0.5

    def test_nothing_automatable(self):
        scenario = ScenarioFactory(
            tasks__cognitive__cost=AutomationCost.infinite(),
            tasks__physical__cost=AutomationCost.infinite(),
        )
        verdict = asymptotic_labor_share(scenario)
        assert verdict.limiting_labor_share == 1.0
        assert verdict.reason == VerdictReason.NO_AUTOMATABLE_TASK

    def test_labor_outgrows_compute(self):
        scenario = ScenarioFactory(g_l=0.1, g_al=0.15)
        verdict = asymptotic_labor_share(scenario)
        assert verdict.limiting_labor_share == 1.0
        assert verdict.reason == VerdictReason.COMPUTE_NEGLIGIBLE

    def test_no_compute(self):
        scenario = ScenarioFactory(compute_path=ExponentialPath(q0=0.0, growth=0.0))
        assert asymptotic_labor_share(scenario).reason == VerdictReason.COMPUTE_NEGLIGIBLE

    def test_balanced_growth(self):
        scenario = ScenarioFactory(g_l=0.1, g_al=0.1)
        verdict = asymptotic_labor_share(scenario)
        assert verdict.reason == VerdictReason.BALANCED_GROWTH
        assert verdict.limiting_labor_share == pytest.approx(1 / 1.1, rel=1e-9)

    def test_ces_with_unautomatable_task(self):
        scenario = ScenarioFactory(
            tasks__physical__cost=AutomationCost.infinite(),
            production=ProductionSpec.ces(0.5, -1.0),
        )
        verdict = asymptotic_labor_share(scenario)
        assert not verdict.is_determined
        assert verdict.reason == VerdictReason.RATIO_DIVERGES

    def test_ces_full_automation(self):
        scenario = ScenarioFactory(production=ProductionSpec.ces(0.5, -1.0))
        assert asymptotic_labor_share(scenario).limiting_labor_share == 0.0

    def test_agrees_with_late_simulation(self, baseline_scenario, unautomatable_scenario):
        late = evaluate_at(unautomatable_scenario, 500.0).result.labor_share
        assert abs(late - asymptotic_labor_share(unautomatable_scenario).limiting_labor_share) <= 1e-6
        assert evaluate_at(baseline_scenario, 500.0).result.labor_share <= 1e-3

    def test_rejects_share_out_of_range(self):
        with pytest.raises(InvalidParameter):
            AsymptoticVerdict(Regime.FINITE, 1.5, VerdictReason.SATURATION_POINT)


class TestCesShare:
    @pytest.mark.parametrize('rho', [-3.0, -1.0, 0.3, 0.9])
    def test_symmetric_inputs(self, rho):
        assert ces_share(7e9, 7e9, 0.5, rho) == pytest.approx(0.5, abs=1e-15)

    def test_complements(self):
        expected = 1e12 / (1e12 + 1e9)
        assert ces_share(1e12, 1e9, 0.5, -1.0) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize('rho', [1e-9, -1e-9])
    def test_cobb_douglas_limit(self, rho):
        assert ces_share(1e12, 1e9, 0.3, rho) == pytest.approx(0.3, abs=1e-6)

    def test_scale_invariance(self):
        rng = np.random.default_rng(5)
        for x_c, x_p in 10 ** rng.uniform(0, 15, size=(30, 2)):
            for rho in (-2.0, -0.5, 0.5):
                base = ces_share(x_c, x_p, 0.4, rho)
                assert ces_share(1e3 * x_c, 1e3 * x_p, 0.4, rho) == pytest.approx(base, abs=1e-12)

    def test_extreme_ratio(self):
        assert ces_share(1e300, 1e-300, 0.5, -5.0) == pytest.approx(1.0)
        assert ces_share(1e-300, 1e300, 0.5, -5.0) >= 0.0

    @pytest.mark.parametrize('args', [
        (0.0, 1.0, 0.5, -1.0),
        (1.0, 1.0, 1.0, -1.0),
        (1.0, 1.0, 0.5, 0.0),
        (1.0, 1.0, 0.5, 1.0),
    ])
    def test_rejects(self, args):
        with pytest.raises(InvalidParameter):
            ces_share(*args)


class TestClassifyBottleneck:
    @pytest.mark.parametrize('spec, task_class, expected', [
        (ProductionSpec.cobb_douglas(0.5), TaskClass.PHYSICAL, True),
        (ProductionSpec.cobb_douglas(0.5), TaskClass.COGNITIVE, True),
        (ProductionSpec.ces(0.5, -1.0), TaskClass.COGNITIVE, True),
        (ProductionSpec.ces(0.5, 0.5), TaskClass.PHYSICAL, False),
    ])
    def test_families(self, spec, task_class, expected):
        assert classify_bottleneck(spec, task_class) is expected

    def test_complements_saturate(self):
        spec = ProductionSpec.ces(0.5, -1.0)
        outputs = [aggregate_output(10.0 ** k, 1.0, spec) for k in range(6, 16)]
        assert outputs[-1] == pytest.approx(outputs[0], rel=1e-5)
        # A * beta ** (1 / rho) with x_p = 1
        assert outputs[-1] == pytest.approx(2.0, rel=1e-5)

    def test_substitutes_grow_in_one_input(self):
        spec = ProductionSpec.ces(0.5, 0.5)
        outputs = [aggregate_output(10.0 ** k, 1.0, spec) for k in range(2, 14, 2)]
        physical_mp = [marginal_products(10.0 ** k, 1.0, spec)[1] for k in range(2, 14, 2)]
        assert all(later > 10 * earlier for earlier, later in zip(outputs, outputs[1:]))
        # mp_p rises only like sqrt(x_c), far slower than output
        assert all(mp / y <= 1.0 for mp, y in zip(physical_mp, outputs))


class TestUniformCost:
    def test_copies_cognitive_cost(self, baseline_scenario):
        benchmark = uniform_cost_counterfactual(baseline_scenario)
        assert benchmark.tasks.physical.cost == baseline_scenario.tasks.cognitive.cost
        assert benchmark.tasks.physical.id == baseline_scenario.tasks.physical.id
        assert benchmark.compute_path == baseline_scenario.compute_path

    def test_physical_work_automated_with_cognitive(self, unautomatable_scenario):
        benchmark = uniform_cost_counterfactual(unautomatable_scenario)
        assert physical_automation_time(benchmark) == pytest.approx(math.log(10.0) / 0.2)
        assert asymptotic_labor_share(benchmark).limiting_labor_share == 0.0
