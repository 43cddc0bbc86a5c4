import math

import numpy as np
from django.test import SimpleTestCase, override_settings
from scipy import special

from numerics.exceptions import InvalidArgument
from numerics.quadrature import adaptive_quadrature

from .loading import load_measure, measure_from_description
from .models import Density, Measure1D
from .smoothing import (
    smooth, smoothed_cdf, smoothed_log_density, smoothed_median, smoothed_second_moment,
)


def uniform_density(t, delta):
    # uniform on [-1, 1] convolved with N(0, delta)
    sigma = math.sqrt(delta)
    return 0.5 * (special.ndtr((1 - t) / sigma) - special.ndtr((-1 - t) / sigma))


def corpus():
    return [
        smooth(Measure1D.two_point(1.0), 0.5),
        smooth(Measure1D.uniform(-1, 1), 0.25),
        smooth(load_measure('power.json'), 0.1),
        smooth(load_measure('mixed.json'), 0.3),
    ]


class TestLogDensity(SimpleTestCase):
    def test_point_mass(self):
        m = smooth(Measure1D.point_mass(0.0), 1.0)
        self.assertAlmostEqual(smoothed_log_density(m, 0.0), -0.5 * math.log(2 * math.pi), places=12)
        self.assertAlmostEqual(-0.5 * math.log(2 * math.pi), -0.918939, places=6)

    def test_two_point(self):
        m = smooth(Measure1D.two_point(1.0), 1.0)
        self.assertAlmostEqual(smoothed_log_density(m, 0.0), -0.5 - 0.5 * math.log(2 * math.pi), places=12)

    def test_uniform_matches_closed_form(self):
        m = smooth(Measure1D.uniform(-1, 1), 0.25)
        for t in (0.0, 0.3, -0.99, 1.7, 3.0):
            self.assertAlmostEqual(math.exp(m.log_density(t)) / uniform_density(t, 0.25), 1, delta=1e-8)

    def test_uniform_matches_direct_convolution(self):
        m = smooth(Measure1D.uniform(-1, 1), 0.25)
        t = 0.7
        direct = adaptive_quadrature(
            lambda s: 0.5 * np.exp(-(t - s) ** 2 / 0.5) / math.sqrt(0.5 * math.pi), -1, 1, 1e-13)
        self.assertAlmostEqual(m.density(t), direct.value, delta=1e-8)

    def test_convolution_rule_small_delta(self):
        m = smooth(Measure1D.uniform(-1, 1), 1e-4)
        for t in (0.0, 0.97, 0.99, 1.0, 1.01, 1.02):
            self.assertAlmostEqual(m.density(t) / uniform_density(t, 1e-4), 1, delta=1e-10, msg=t)

    @override_settings(MEASURES_MAX_PANELS=4)
    def test_convolution_rule_capped(self):
        m = smooth(Measure1D.uniform(-1, 1), 1e-4)
        with self.assertLogs('measures.models', 'WARNING') as cm:
            m.density(0.0)
        self.assertIn('capped at 4 panels', cm.output[0])
        self.assertEqual(m.mixture[0].size, 4 * 20)

    def test_vectorized(self):
        m = smooth(Measure1D.uniform(-1, 1), 0.25)
        t = np.linspace(-3, 3, 7)
        np.testing.assert_allclose(m.log_density(t), [m.log_density(x) for x in t], rtol=1e-14)

    def test_far_tail_finite(self):
        m = smooth(Measure1D.two_point(1.0), 0.01)
        self.assertTrue(math.isfinite(m.log_density(50.0)))

    def test_normalization(self):
        for m in corpus():
            lo, hi = m.bracket
            q = adaptive_quadrature(m.density, lo, hi, 1e-11)
            self.assertAlmostEqual(q.value, 1, delta=1e-8, msg=repr(m))


class TestCdf(SimpleTestCase):
    def test_symmetry(self):
        for delta in (0.1, 0.5, 2.0):
            m = smooth(Measure1D.two_point(1.0), delta)
            self.assertAlmostEqual(smoothed_cdf(m, 0.0), 0.5, places=15)

    def test_point_mass(self):
        m = smooth(Measure1D.point_mass(0.0), 1.0)
        self.assertAlmostEqual(smoothed_cdf(m, 1.0), 1 - 0.15865525393145705, places=14)
        self.assertAlmostEqual(m.sf(10.0) / special.ndtr(-10.0), 1, delta=1e-10)
        self.assertAlmostEqual(m.cdf(-10.0) / special.ndtr(-10.0), 1, delta=1e-10)

    def test_monotone(self):
        for m in corpus():
            F = m.cdf(np.linspace(-2.5, 2.5, 100))
            self.assertTrue(np.all(np.diff(F) > 0))
            self.assertTrue(np.all((F > 0) & (F < 1)))

    def test_derivative_is_density(self):
        h = 1e-5
        for m in corpus():
            for x in np.linspace(-1.5, 1.5, 13):
                slope = (m.cdf(x + h) - m.cdf(x - h)) / (2 * h)
                self.assertAlmostEqual(slope, m.density(x), delta=1e-6)


class TestMedian(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(smoothed_median(smooth(Measure1D.two_point(1.0), 0.5)), 0.0, delta=1e-12)
        self.assertAlmostEqual(smoothed_median(smooth(Measure1D.point_mass(2.5), 0.3)), 2.5, delta=1e-12)
        self.assertAlmostEqual(smoothed_median(smooth(Measure1D.uniform(0, 1), 0.1)), 0.5, delta=1e-10)

    def test_half_mass(self):
        for m in corpus():
            self.assertAlmostEqual(m.cdf(m.median), 0.5, delta=1e-10)

    def test_translation(self):
        c = 1.75
        for m in corpus():
            moved = smooth(m.base.shifted(c), m.delta)
            self.assertAlmostEqual(moved.median, m.median + c, delta=1e-9)
            for t in (-1.0, 0.2, 2.0):
                self.assertAlmostEqual(moved.log_density(t + c), m.log_density(t), delta=1e-10)

    def test_reflection(self):
        m = smooth(load_measure('power.json'), 0.1)
        self.assertAlmostEqual(m.reflected().median, 1 - m.median, delta=1e-9)
        self.assertAlmostEqual(m.reflected().log_density(0.2), m.log_density(0.8), delta=1e-10)


class TestSecondMoment(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(smoothed_second_moment(smooth(Measure1D.point_mass(0.0), 0.7)), 0.7, places=15)
        self.assertAlmostEqual(smoothed_second_moment(smooth(Measure1D.two_point(1.0), 0.5)), 1.5, places=15)
        self.assertAlmostEqual(smoothed_second_moment(smooth(Measure1D.uniform(-1, 1), 0.25)), 1 / 3 + 0.25, places=14)

    def test_additivity(self):
        base = load_measure('mixed.json')
        moments = [smooth(base, delta).second_moment() - delta for delta in (1.0, 10.0, 1e4)]
        self.assertAlmostEqual(moments[0], moments[1], places=12)
        self.assertAlmostEqual(moments[0], moments[2], places=10)
        self.assertLessEqual(moments[0], base.R ** 2)


class TestValidation(SimpleTestCase):
    def test_mass(self):
        with self.assertRaises(InvalidArgument):
            Measure1D(1.0, atoms=[(0.0, 0.6)])
        with self.assertRaises(InvalidArgument):
            Measure1D(1.0, density=Density('uniform', (-1, 1), [1.0]))

    def test_support(self):
        with self.assertRaises(InvalidArgument):
            Measure1D(0.5, atoms=[(-1.0, 0.5), (1.0, 0.5)])
        with self.assertRaises(InvalidArgument):
            Measure1D(1.0, atoms=[(1.5, 1.0)], center=0.0)

    def test_density(self):
        with self.assertRaises(InvalidArgument):
            Density('polynomial', (0, 1), [1.0, -3.0])
        with self.assertRaises(InvalidArgument):
            Density('beta', (0, 1), [1.0])
        with self.assertRaises(InvalidArgument):
            Density('uniform', (1, 0), [1.0])

    def test_arguments(self):
        with self.assertRaises(InvalidArgument):
            Measure1D(0.0, atoms=[(0.0, 1.0)])
        with self.assertRaises(InvalidArgument):
            smooth(Measure1D.point_mass(), 0.0)
        with self.assertRaises(InvalidArgument):
            Measure1D(1.0)


class TestLoading(SimpleTestCase):
    def test_data_files(self):
        self.assertEqual(load_measure('two_point.json').atoms, Measure1D.two_point(1.0).atoms)
        self.assertAlmostEqual(load_measure('uniform').density.coeffs[0], 0.5)
        self.assertEqual(load_measure('point_mass.json').center, 0.0)

    def test_uniform_fills_remaining_mass(self):
        m = load_measure('mixed.json')
        self.assertAlmostEqual(m.density.mass, 0.5, places=15)

    def test_missing_key(self):
        with self.assertRaisesRegex(InvalidArgument, "'R'"):
            measure_from_description({'atoms': [{'x': 0, 'w': 1}]})
        with self.assertRaisesRegex(InvalidArgument, "'w'"):
            measure_from_description({'R': 1, 'atoms': [{'x': 0}]})
        with self.assertRaises(InvalidArgument):
            load_measure('no_such_measure.json')

    def test_round_trip(self):
        for name in ('two_point', 'uniform', 'power', 'mixed'):
            m = load_measure(name)
            self.assertEqual(measure_from_description(m.to_dict()).to_dict(), m.to_dict())
