import math

import numpy as np
from django.test import SimpleTestCase

from bg.functionals import bg_functionals
from measures.models import Measure1D
from numerics.exceptions import BudgetExceeded, IntegrandFailure, InvalidArgument
from numerics.fitting import growth_rate

from .exceptions import DegenerateFunction, NoValidCandidate
from .functionals import energy, entropy, optimize_ratio, ratio_lower_bound
from .models import TestFunction


class TestTestFunction(SimpleTestCase):
    def test_step(self):
        f = TestFunction.step(1, 0.5)
        np.testing.assert_allclose(f([-1, 0, 0.25, 0.5, 2]), [0, 0, 0.5, 1, 1])
        np.testing.assert_allclose(f.derivative([-1, 0.25, 2]), [0, 2, 0])
        self.assertEqual(f.kinks, (0.0, 0.5))

    def test_shifted_step(self):
        f = TestFunction.step(2, 0.5, shift=1)
        self.assertEqual(f.kinks, (1.0, 1.25))
        self.assertEqual(float(f(1.125)), 0.5)

    def test_table(self):
        f = TestFunction.table([(0, 0), (1, 2), (2, 2)])
        np.testing.assert_allclose(f([-1, 0.5, 1.5, 3]), [0, 1, 2, 2])
        np.testing.assert_allclose(f.derivative([-1, 0.5, 1.5, 3]), [0, 2, 0, 0])

    def test_exponential_log(self):
        f = TestFunction.exponential(0.5, scale=-2)
        np.testing.assert_allclose(f.log_abs([0, 2]), [math.log(2), math.log(2) + 1])

    def test_description(self):
        f = TestFunction.from_description({'kind': 'step', 'R': 1, 'delta': 0.5})
        self.assertEqual(f.to_dict(), {'kind': 'step', 'scale': 1.0, 'R': 1.0, 'delta': 0.5, 'shift': 0.0})
        g = TestFunction.from_description({'kind': 'table', 'knots': [[0, 1], [1, 3]]})
        self.assertEqual(g.to_dict()['knots'], [[0.0, 1.0], [1.0, 3.0]])

    def test_invalid(self):
        with self.assertRaises(InvalidArgument):
            TestFunction.table([(1, 0), (0, 1)])
        with self.assertRaises(InvalidArgument):
            TestFunction.step(1, 0)
        with self.assertRaises(InvalidArgument):
            TestFunction.from_description({'kind': 'sine'})
        with self.assertRaises(InvalidArgument):
            TestFunction.exponential(1, scale=0)


class TestFunctionals(SimpleTestCase):
    def test_constant(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        f = TestFunction.constant(3)
        self.assertAlmostEqual(entropy(f, m), 0, delta=1e-9)
        self.assertEqual(energy(f, m), 0)
        with self.assertRaises(DegenerateFunction):
            ratio_lower_bound(f, m)

    def test_gaussian_identities(self):
        m = Measure1D.point_mass(0).smoothed(1)
        for alpha in (0.25, 0.5, 1):
            f = TestFunction.exponential(alpha)
            growth = math.exp(2 * alpha ** 2)
            self.assertAlmostEqual(entropy(f, m) / (2 * alpha ** 2 * growth), 1, delta=1e-8)
            self.assertAlmostEqual(energy(f, m) / (alpha ** 2 * growth), 1, delta=1e-8)

    def test_gaussian_ratio(self):
        for delta in (0.5, 1, 2):
            m = Measure1D.point_mass(0).smoothed(delta)
            for alpha in (0.25, 0.5, 1):
                estimate = ratio_lower_bound(TestFunction.exponential(alpha), m)
                self.assertAlmostEqual(estimate.ratio / (2 * delta), 1, delta=1e-6)
                self.assertLessEqual(estimate.ratio_lower, estimate.ratio)

    def test_step_entropy(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        bound = math.log(2) / 4 - 1 / (2 * math.e * math.sqrt(2 * math.pi))
        self.assertGreaterEqual(entropy(TestFunction.step(1, 0.5), m), bound)

    def test_step_energy(self):
        for delta in (0.2, 0.5, 1):
            m = Measure1D.two_point(1).smoothed(delta)
            value = energy(TestFunction.step(1, delta), m)
            exact = (1 / delta) ** 2 * (m.cdf(delta) - m.cdf(0))
            self.assertAlmostEqual(value / exact, 1, delta=1e-8)
            bound = math.e / (math.sqrt(2 * math.pi) * delta ** 1.5) * math.exp(-1 / (2 * delta))
            self.assertLessEqual(value, bound)

    def test_step_ratio(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        estimate = ratio_lower_bound(TestFunction.step(1, 0.5), m)
        self.assertGreaterEqual(estimate.ratio_lower, 0.5 ** 1.5 * math.e / 11)
        self.assertEqual(estimate.ratio, estimate.entropy / estimate.energy)

    def test_table_matches_step(self):
        m = Measure1D.uniform().smoothed(0.25)
        step = ratio_lower_bound(TestFunction.step(1, 1, shift=-0.5), m)
        table = ratio_lower_bound(TestFunction.table([(-0.5, 0), (0.5, 1)]), m)
        self.assertAlmostEqual(table.ratio / step.ratio, 1, delta=1e-10)

    def test_scale_invariance(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        for f in (TestFunction.step(1, 0.5), TestFunction.exponential(0.7)):
            base = ratio_lower_bound(f, m).ratio
            for factor in (-3, 0.01, 40):
                self.assertAlmostEqual(ratio_lower_bound(f.scaled(factor), m).ratio / base, 1, delta=1e-10)

    def test_below_bg_upper(self):
        cases = (
            (Measure1D.two_point(1).smoothed(0.5), TestFunction.step(1, 0.5)),
            (Measure1D.point_mass(0).smoothed(1), TestFunction.exponential(1)),
            (Measure1D.uniform().smoothed(0.25), TestFunction.step(1, 0.25)),
        )
        for m, f in cases:
            report = bg_functionals(m, tol=1e-6)
            self.assertLessEqual(ratio_lower_bound(f, m).ratio, report.c_upper)

    def test_growth_rate(self):
        deltas = np.geomspace(0.05, 0.5, 8)
        ratios = [
            ratio_lower_bound(TestFunction.step(1, delta), Measure1D.two_point(1).smoothed(delta)).ratio
            for delta in deltas
        ]
        slope, naive_slope, _ = growth_rate(deltas, ratios)
        self.assertGreaterEqual(slope, 0.45)
        self.assertLessEqual(slope, 0.55)
        self.assertLess(naive_slope, slope)

    def test_bad_tol(self):
        m = Measure1D.point_mass(0).smoothed(1)
        with self.assertRaises(InvalidArgument):
            entropy(TestFunction.exponential(1), m, tol=0)


class TestOptimizeRatio(SimpleTestCase):
    def test_exponential_family(self):
        m = Measure1D.point_mass(0).smoothed(1)
        best = optimize_ratio('exponential', m, np.linspace(0.1, 2, 20))
        self.assertAlmostEqual(best.ratio / 2, 1, delta=1e-6)
        self.assertIn(best.parameter, [float(a) for a in np.linspace(0.1, 2, 20)])

    def test_shifted_steps(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        baseline = ratio_lower_bound(TestFunction.step(1, 0.5), m)
        best = optimize_ratio('step', m, [-0.2, -0.1, 0, 0.1, 0.2])
        self.assertGreaterEqual(best.ratio, baseline.ratio)

    def test_singleton(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        best = optimize_ratio('step', m, [0])
        self.assertEqual(best.parameter, 0)
        self.assertEqual(best.ratio, ratio_lower_bound(TestFunction.step(1, 0.5), m).ratio)

    def test_threads_deterministic(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        grid = [-0.3, -0.1, 0.1, 0.3]
        self.assertEqual(optimize_ratio('step', m, grid, threads=1), optimize_ratio('step', m, grid, threads=3))

    def test_tie_break(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        best = optimize_ratio(lambda p: TestFunction.step(1, 0.5), m, [3, 1, 2])
        self.assertEqual(best.parameter, 1)

    def test_no_candidate(self):
        m = Measure1D.point_mass(0).smoothed(1)
        with self.assertRaises(NoValidCandidate):
            optimize_ratio('exponential', m, [0])
        with self.assertRaises(InvalidArgument):
            optimize_ratio('exponential', m, [])
        with self.assertRaises(InvalidArgument):
            optimize_ratio('sine', m, [1])

    def test_failing_candidates_skipped(self):
        m = Measure1D.two_point(1).smoothed(0.5)

        def family(p):
            if p == 1:
                raise BudgetExceeded('quadrature ran out of panels')
            if p == 2:
                raise IntegrandFailure(0.0, math.nan)
            return TestFunction.step(1, 0.5)

        with self.assertLogs('variational.functionals', 'INFO') as logs:
            best = optimize_ratio(family, m, [1, 2, 3])
        self.assertEqual(best.parameter, 3)
        self.assertEqual(len(logs.output), 2)

    def test_every_candidate_over_budget(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        with self.assertRaises(BudgetExceeded):
            optimize_ratio('step', m, [-0.1, 0.0], tol=1e-16)
