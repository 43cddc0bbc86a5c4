import math

import numpy as np
from django.test import SimpleTestCase

from numerics.exceptions import InvalidArgument

from .cgw import D_CONST, cgw_chain, lyapunov_slack
from .models import CGWConstants, ChainStep
from .closed_form import (
    d_functional_bound, ensemble_lsi_bound, example_uniform_limit_bound, guionnet_tail,
    segal_product, thm_1d_bound, thm_nd_bound, two_point_bounds, uniform_density_bound,
    universality_tail_bound,
)


class TestThm1D(SimpleTestCase):
    def test_small_delta(self):
        general, small = thm_1d_bound(1, 1)
        self.assertAlmostEqual(small.value, 7803 * math.e ** 2, places=6)
        self.assertAlmostEqual(small.value, 57657, delta=1)
        self.assertGreaterEqual(general.value, 0)

    def test_general_only(self):
        general, small = thm_1d_bound(1, 4)
        self.assertIsNone(small)
        self.assertAlmostEqual(general.value, 6905 * math.exp(0.5) + 4989 * 16, places=6)
        self.assertAlmostEqual(general.value, 91208, delta=1)

    def test_scaling(self):
        _, small = thm_1d_bound(1.3, 0.4)
        for lam in (0.5, 2.0, 7.0):
            _, scaled = thm_1d_bound(1.3 * lam, 0.4 * lam ** 2)
            self.assertAlmostEqual(scaled.log_value - small.log_value, 2 * math.log(lam), places=12)

    def test_overflow(self):
        general, small = thm_1d_bound(1, 1e-3)
        self.assertEqual(small.value, math.inf)
        self.assertTrue(math.isfinite(small.log_value))
        self.assertEqual(general.value, math.inf)

    def test_d_functional(self):
        # twice the functional bound times 468 is below the rounded-up constants
        for R, delta in ((1, 1), (1, 0.1), (2, 0.5), (0.5, 1)):
            d = d_functional_bound(R, delta)
            general, _ = thm_1d_bound(R, delta)
            self.assertLessEqual(math.log(2 * 468) + d.log_value, general.log_value)


class TestThmND(SimpleTestCase):
    def test_values(self):
        self.assertAlmostEqual(thm_nd_bound(1, 1, 1).log_value, math.log(289) + 25, places=12)
        self.assertAlmostEqual(thm_nd_bound(1, 1, 1).value / (289 * math.exp(25)), 1, places=12)
        self.assertAlmostEqual(thm_nd_bound(1, 1, 2).value / (289 * math.exp(45)), 1, places=12)

    def test_precondition(self):
        with self.assertRaises(InvalidArgument):
            thm_nd_bound(1, 1.5, 1)
        with self.assertRaises(InvalidArgument):
            thm_nd_bound(1, 0, 1)


class TestExamples(SimpleTestCase):
    def test_uniform_density(self):
        b = uniform_density_bound(1, 0.5, 0.25)
        self.assertAlmostEqual(b.value, 4134 + 2254 + 1248 * 0.25 * math.log(16), places=9)
        self.assertAlmostEqual(b.value, 7253, delta=1)
        self.assertTrue(math.isfinite(uniform_density_bound(2, 0.25, 1).value))
        with self.assertRaises(InvalidArgument):
            uniform_density_bound(1, 0.6, 0.25)

    def test_uniform_density_continuous(self):
        at = uniform_density_bound(1, 0.5, 1).value
        near = uniform_density_bound(1, 0.5, 1 - 1e-9).value
        self.assertAlmostEqual(at, near, delta=1e-4)

    def test_uniform_limit(self):
        self.assertEqual(example_uniform_limit_bound(1, 0.5).value, 4134)
        for delta in (0.5, 1e-3, 1e-8):
            self.assertGreaterEqual(uniform_density_bound(1, 0.5, delta).value, 4134)

    def test_two_point(self):
        lower, upper = two_point_bounds(1, 0.5)
        self.assertAlmostEqual(lower.value, 0.0874, places=4)
        self.assertAlmostEqual(upper.value, 113357, delta=1)
        lower, upper = two_point_bounds(1, 1)
        self.assertAlmostEqual(lower.value, math.exp(0.5) / 11, places=12)
        for R, delta in ((1, 0.3), (2, 1.5), (0.5, 0.01)):
            lower, upper = two_point_bounds(R, delta)
            self.assertAlmostEqual(upper.log_value - lower.log_value, math.log(11 * 117942), places=10)
        with self.assertRaises(InvalidArgument):
            two_point_bounds(1, 2)


class TestRandomMatrixBounds(SimpleTestCase):
    def test_segal(self):
        self.assertEqual(segal_product([2, 3]), 3)
        self.assertEqual(segal_product([1.5]), 1.5)
        self.assertEqual(segal_product([1, 1, 1]), 1)
        with self.assertRaises(InvalidArgument):
            segal_product([])

    def test_guionnet(self):
        self.assertAlmostEqual(guionnet_tail(100, 0.1, 1, 1) / (2 * math.exp(-25)), 1, places=12)
        self.assertAlmostEqual(guionnet_tail(100, 1e-12, 1, 1), 2, places=12)
        exponent = math.log(guionnet_tail(100, 0.1, 1, 1) / 2)
        self.assertAlmostEqual(math.log(guionnet_tail(100, 0.1, 1, 2) / 2), exponent / 4, places=12)

    def test_ensemble(self):
        b = ensemble_lsi_bound(1, 0.5, 2)
        self.assertAlmostEqual(b.log_value, math.log(289) + 42 + 20, places=12)
        # one block of d entries with radius R sqrt(d) is covered
        nd = thm_nd_bound(math.sqrt(2), 0.5, 2)
        self.assertLessEqual(nd.log_value, b.log_value)

    def test_universality(self):
        value = universality_tail_bound(100, 0.3, 1, 0.01, 2)
        self.assertAlmostEqual(value, 9 * 0.01 / 0.09 + 2 * math.exp(-900 / 72), places=12)


class TestCGWChain(SimpleTestCase):
    def test_unit_values(self):
        k = cgw_chain(1, 1, 1)
        self.assertEqual(k.K_hess, -1)
        self.assertAlmostEqual(k.b, 5 / 32, places=15)
        self.assertAlmostEqual(k.c_lyap, 1 / 64, places=15)
        self.assertAlmostEqual(k.r0, math.sqrt(18), places=14)
        self.assertAlmostEqual(k.b_prime, 0.25 * math.exp(0.125), places=14)
        self.assertAlmostEqual(k.lam, 1 / 8, places=15)
        self.assertAlmostEqual(k.A, 88, places=12)
        self.assertEqual(k.A_relaxed, 128)
        self.assertEqual(k.epsilon, 16)
        self.assertEqual(k.D_const, D_CONST)

    def test_B_closed_form(self):
        for R, delta, n in ((1, 1, 1), (2, 0.5, 3), (0.5, 0.025, 2)):
            k = cgw_chain(R, delta, n)
            R2 = R * R
            closed = 18 * n * R2 / delta + 6 * R2 ** 2 / delta ** 2 - 63 * n / 8 - 21 * R2 / (8 * delta)
            self.assertAlmostEqual(k.B_bound / closed, 1, places=12)
            self.assertLessEqual(k.B_bound, k.B_relaxed)
            self.assertAlmostEqual(k.A, 128 * R2 - 40 * delta, places=9)

    def test_poincare_forms(self):
        k = cgw_chain(1, 0.5, 2)
        steps = k.chain('C_P')
        self.assertAlmostEqual(steps[0].log_value, steps[1].log_value, places=10)
        relaxed = math.log(8 + 36 * D_CONST / math.e) + 34 + 25 / 4
        self.assertAlmostEqual(k.log_C_P_relaxed, relaxed, places=12)

    def test_grid_audit(self):
        for R in (0.5, 1, 2):
            for ratio in np.linspace(0.1, 1, 5):
                for n in (1, 2, 3):
                    delta = ratio * R * R
                    k = cgw_chain(R, delta, n)
                    self.assertTrue(k.monotone, msg=k.violations())
                    self.assertLessEqual(k.K_hess, 0)
                    self.assertGreater(k.r0, 0)
                    self.assertLessEqual(
                        k.log_lsi_bound_chain, thm_nd_bound(R, delta, n).log_value * (1 + 1e-9))
                    self.assertLessEqual(k.log_lsi_bound_exact, k.log_lsi_bound_chain * (1 + 1e-9))

    def test_lyapunov_drift(self):
        for R, delta, n in ((1, 1, 1), (1, 0.2, 2), (2, 1, 3)):
            k = cgw_chain(R, delta, n)
            r = np.linspace(0, 2 * k.r0, 401)
            self.assertTrue(np.all(lyapunov_slack(k, r) >= -1e-12))

    def test_no_ordering_with_1d(self):
        # both are valid bounds for n = 1, neither dominates everywhere
        k = cgw_chain(1, 1, 1)
        _, small = thm_1d_bound(1, 1)
        self.assertTrue(math.isfinite(k.log_lsi_bound_final) and math.isfinite(small.log_value))

    def test_precondition(self):
        with self.assertRaises(InvalidArgument):
            cgw_chain(1, 2, 1)
        with self.assertRaises(InvalidArgument):
            cgw_chain(1, 0.5, 0)

    def test_to_dict(self):
        data = cgw_chain(1, 1, 1).to_dict()
        self.assertEqual(data['lambda'], 0.125)
        self.assertTrue(data['monotone'])
        self.assertEqual(len(data['steps']), 14)
        self.assertEqual(data['violations'], [])

    def test_violations_reported(self):
        steps = [
            ChainStep('lsi', 'exact', 2.0),
            ChainStep('lsi', 'relaxed', 1.0),
            ChainStep('A', 'exact', 0.0),
            ChainStep('A', 'relaxed', 0.5),
        ]
        k = CGWConstants(1, 1, 1, steps=steps, lam=0.125, log_lsi_bound_chain=1.0, log_lsi_bound_final=1.0)
        self.assertFalse(k.monotone)
        data = k.to_dict()
        self.assertFalse(data['monotone'])
        self.assertEqual(data['violations'], [{
            'chain': 'lsi', 'from': 'exact', 'to': 'relaxed', 'from_log_value': 2.0, 'to_log_value': 1.0,
        }])
