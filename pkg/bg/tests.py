import math
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from bounds.closed_form import d_functional_bound, two_point_bounds, uniform_density_bound
from measures.loading import load_measure
from measures.models import Density, Measure1D
from numerics.exceptions import BudgetExceeded, InvalidArgument

from .functionals import _Side, bg_functionals
from .lemmas import gaussian_bound_slacks, verify_tail_lemmas
from .models import BGReport


def random_measure(rng):
    R = rng.uniform(0.5, 2)
    k = int(rng.integers(1, 5))
    density_mass = rng.choice([0.0, rng.uniform(0.1, 0.6)])
    weights = rng.dirichlet(np.ones(k)) * (1 - density_mass)
    atoms = list(zip(rng.uniform(-R, R, k), weights))
    density = None
    if density_mass:
        a, b = np.sort(rng.uniform(-R, R, 2))
        density = Density('uniform', (a, b), [density_mass / (b - a)])
    return Measure1D(R, atoms=atoms, density=density, center=0.0)


class TestFunctionals(SimpleTestCase):
    def test_symmetric_two_point(self):
        report = bg_functionals(Measure1D.two_point(1).smoothed(0.5))
        self.assertAlmostEqual(report.D0 / report.D1, 1, delta=1e-6)
        self.assertAlmostEqual(report.median, 0, delta=1e-12)
        self.assertTrue(report.complete)
        self.assertGreaterEqual(report.c_upper, 0.0874)

    def test_report_arithmetic(self):
        report = bg_functionals(load_measure('power').smoothed(0.1))
        self.assertEqual(report.c_upper, 468 * (report.D0 + report.D1))
        self.assertEqual(report.c_lower, (report.D0 + report.D1) / 150)
        self.assertLessEqual(report.c_lower, report.c_upper)
        self.assertLess(report.truncation_x_min, report.median)
        self.assertLess(report.median, report.truncation_x_max)
        self.assertLess(report.sides['D0'].argmax, report.median)
        self.assertGreater(report.sides['D1'].argmax, report.median)

    def test_gaussian_sandwich(self):
        for delta in (0.5, 1, 2):
            report = bg_functionals(Measure1D.point_mass(0).smoothed(delta), tol=1e-6)
            self.assertLessEqual(report.c_lower, 2 * delta)
            self.assertLessEqual(2 * delta, report.c_upper)

    def test_two_point_sandwich(self):
        for delta in (0.2, 0.5, 1.0):
            report = bg_functionals(Measure1D.two_point(1).smoothed(delta), tol=1e-6)
            lower, upper = two_point_bounds(1, delta)
            self.assertGreaterEqual(report.c_upper, lower.value)
            self.assertLessEqual(report.c_lower, upper.value)
            self.assertGreaterEqual(report.c_upper, delta ** 1.5 * math.exp(1 / (2 * delta)) / 11)

    def test_uniform_stays_bounded(self):
        m = Measure1D.uniform(-1, 1)
        for k in range(1, 9):
            delta = 2.0 ** -k
            report = bg_functionals(m.smoothed(delta), tol=1e-6)
            self.assertLessEqual(report.c_upper, uniform_density_bound(1, 0.5, delta).value)

    def test_reflection_swaps(self):
        m = load_measure('power').smoothed(0.1)
        report = bg_functionals(m)
        mirrored = bg_functionals(m.reflected())
        self.assertAlmostEqual(mirrored.D0 / report.D1, 1, delta=1e-6)
        self.assertAlmostEqual(mirrored.D1 / report.D0, 1, delta=1e-6)

    def test_functional_bound(self):
        for m in (Measure1D.two_point(1).smoothed(0.3), load_measure('mixed').smoothed(0.5)):
            report = bg_functionals(m)
            bound = d_functional_bound(m.base.R, m.delta).value
            self.assertLessEqual(report.D0, bound)
            self.assertLessEqual(report.D1, bound)

    def test_remark_bound(self):
        for m in (Measure1D.two_point(1).smoothed(0.3), Measure1D.uniform(-1, 1).smoothed(0.1)):
            report = bg_functionals(m)
            self.assertLessEqual(report.D1, report.remark_bound['D1'] * (1 + 1e-9))
            self.assertLessEqual(report.D0, report.remark_bound['D0'] * (1 + 1e-9))

    def test_truncation_monotone(self):
        m = Measure1D.two_point(1).smoothed(0.4)
        near = bg_functionals(m, tail_factor=1e-3)
        far = bg_functionals(m, tail_factor=1e-9)
        self.assertGreater(far.truncation_x_max, near.truncation_x_max)
        self.assertGreaterEqual(far.D1, near.D1 * (1 - 1e-6))

    def test_budget(self):
        with self.assertRaises(BudgetExceeded) as cm:
            bg_functionals(Measure1D.two_point(1).smoothed(0.5), max_evaluations=100)
        partial = cm.exception.partial
        self.assertIsInstance(partial, BGReport)
        self.assertFalse(partial.complete)
        self.assertFalse(partial.to_dict()['complete'])

    def test_unconverged_partial_integral(self):
        m = Measure1D.two_point(1).smoothed(0.5)
        side = _Side(m, 0.0, 4.0, 1e-8, 8, 10 ** 6)
        self.assertTrue(side.complete)
        with mock.patch('bg.functionals.log_inverse_density_integral', return_value=(0.0, 1, False)):
            side.log_integral(0.3)
        self.assertFalse(side.complete)
        self.assertFalse(side.run(1e-8).complete)

    def test_bad_tolerance(self):
        with self.assertRaises(InvalidArgument):
            bg_functionals(Measure1D.two_point(1).smoothed(0.5), tol=0)


class TestTailLemmas(SimpleTestCase):
    def test_two_point_at_edge(self):
        slacks = verify_tail_lemmas(Measure1D.two_point(1).smoothed(0.5), 1)
        self.assertTrue(slacks.holds(1e-8))
        self.assertEqual(slacks.slacks['inverse_integral'], 0)
        self.assertEqual(slacks.log_inverse_integral, -math.inf)

    def test_uniform(self):
        slacks = verify_tail_lemmas(Measure1D.uniform(-1, 1).smoothed(0.25), 2)
        self.assertTrue(slacks.holds(1e-8), msg=slacks.slacks)
        for value in slacks.slacks.values():
            self.assertGreaterEqual(value, -1e-8)

    def test_random_cases(self):
        rng = np.random.default_rng(2024)
        for i in range(200):
            base = random_measure(rng)
            delta = base.R ** 2 * rng.uniform(0.05, 1)
            x = base.R + 6 * math.sqrt(delta) * rng.uniform()
            slacks = verify_tail_lemmas(base.smoothed(delta), x)
            self.assertTrue(slacks.holds(1e-8), msg='case {}: {}'.format(i, slacks.slacks))

    def test_far_tail_small_delta(self):
        slacks = verify_tail_lemmas(Measure1D.two_point(1).smoothed(0.01), 5.0)
        self.assertLess(slacks.log_density, -700)
        for name, value in slacks.slacks.items():
            self.assertTrue(math.isfinite(value), msg=name)
        self.assertTrue(slacks.holds(1e-8), msg=slacks.slacks)
        self.assertGreater(slacks.slacks['inverse_integral'], 0.5)

    def test_off_center(self):
        shifted = Measure1D.two_point(1, center=3.0).smoothed(0.5)
        self.assertEqual(
            verify_tail_lemmas(shifted, 1.5).slacks,
            verify_tail_lemmas(Measure1D.two_point(1).smoothed(0.5), 1.5).slacks)

    def test_below_support(self):
        with self.assertRaises(InvalidArgument):
            verify_tail_lemmas(Measure1D.two_point(1).smoothed(0.5), 0.5)


class TestGaussianSlacks(SimpleTestCase):
    def test_grid(self):
        for x in np.linspace(0, 40, 401):
            slacks = gaussian_bound_slacks(x)
            self.assertGreaterEqual(slacks.tail, 0, msg=x)
            self.assertGreaterEqual(slacks.integral, 0, msg=x)

    def test_negative(self):
        with self.assertRaises(InvalidArgument):
            gaussian_bound_slacks(-1)
