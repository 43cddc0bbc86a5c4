import math

import numpy as np
from django.test import SimpleTestCase

from .exceptions import BudgetExceeded, EvaluationFailure, IntegrandFailure, InvalidArgument
from .fitting import growth_rate
from .linalg import symmetric_eigenvalues
from .logspace import (
    LOG_SQRT_2PI, exp_or_inf, gaussian_upper_tail, log_exp_square_integral,
    log_gaussian_upper_tail, log_sum_exp,
)
from .quadrature import adaptive_quadrature
from .search import sup_search


def charpoly(M):
    # Faddeev-LeVerrier, highest degree first
    n = M.shape[0]
    coeffs = [1.0]
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = M @ Mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(M @ Mk) / k)
    return np.array(coeffs)


class TestLogSumExp(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(log_sum_exp([0, 0], [1, 1]), math.log(2), places=14)
        self.assertAlmostEqual(log_sum_exp([-1000, 0], [1, 1]), 0.0, delta=1e-12)
        exact = math.log(math.exp(-1) + 2 * math.exp(-2) + 3 * math.exp(-3))
        self.assertAlmostEqual(log_sum_exp([-1, -2, -3], [1, 2, 3]), exact, places=12)
        self.assertAlmostEqual(exact, -0.2768, places=4)

    def test_shift(self):
        terms = np.array([-1.5, 0.25, 3.0])
        weights = [0.2, 1, 4]
        base = log_sum_exp(terms, weights)
        for s in (-1e6, -37.5, 12.0, 1e6):
            self.assertAlmostEqual(log_sum_exp(terms + s, weights) - s, base, delta=1e-12 * max(1, abs(s)))

    def test_no_overflow(self):
        self.assertAlmostEqual(log_sum_exp([1e6, 1e6], [1, 1]), 1e6 + math.log(2))
        self.assertTrue(math.isfinite(log_sum_exp([-1e6, -1e6 + 1], [1, 1])))

    def test_errors(self):
        with self.assertRaises(InvalidArgument):
            log_sum_exp([], [])
        with self.assertRaises(InvalidArgument):
            log_sum_exp([1, 2], [0, 0])
        with self.assertRaises(InvalidArgument):
            log_sum_exp([1, 2], [1])


class TestGaussianTails(SimpleTestCase):
    def test_values(self):
        self.assertEqual(gaussian_upper_tail(0), 0.5)
        self.assertAlmostEqual(gaussian_upper_tail(1) / 0.15865525393145705, 1, delta=1e-12)
        self.assertGreaterEqual(gaussian_upper_tail(5), math.exp(-12.5) / (6 * math.sqrt(2 * math.pi)))

    def test_tail_lower_bound(self):
        for x in np.linspace(0, 40, 401):
            lhs = log_gaussian_upper_tail(x) + LOG_SQRT_2PI
            rhs = -x * x / 2 - math.log(x + 1)
            self.assertGreaterEqual(lhs, rhs, msg='x={}'.format(x))

    def test_exp_square_integral_bound(self):
        for x in np.linspace(0.1, 40, 400):
            lhs = log_exp_square_integral(x)
            rhs = math.log(2 * x) + x * x / 2 - math.log(x * x + 1)
            self.assertLessEqual(lhs, rhs, msg='x={}'.format(x))

    def test_exp_square_integral_matches_quadrature(self):
        q = adaptive_quadrature(lambda u: np.exp(u * u / 2), 0, 3)
        self.assertAlmostEqual(math.exp(log_exp_square_integral(3.0)) / q.value, 1, delta=1e-10)

    def test_exp_or_inf(self):
        self.assertEqual(exp_or_inf(0.0), 1.0)
        self.assertEqual(exp_or_inf(1000.0), math.inf)


class TestAdaptiveQuadrature(SimpleTestCase):
    def test_constant(self):
        q = adaptive_quadrature(lambda u: 1, 0, 1, 1e-10)
        self.assertAlmostEqual(q.value, 1.0, places=14)
        self.assertGreaterEqual(q.abs_error_estimate, 0)
        self.assertGreaterEqual(q.evaluations, 1)

    def test_exp_square(self):
        series = math.fsum(1 / (2 ** k * math.factorial(k) * (2 * k + 1)) for k in range(30))
        q = adaptive_quadrature(lambda u: np.exp(u * u / 2), 0, 1, 1e-10)
        self.assertAlmostEqual(q.value, series, delta=1e-10)
        self.assertAlmostEqual(q.value, 1.194958, places=6)

    def test_exp_square_bound(self):
        q = adaptive_quadrature(lambda u: np.exp(u * u / 2), 0, 2)
        self.assertLessEqual(q.value, 4 / 5 * math.exp(2))

    def test_polynomials_exact(self):
        rng = np.random.default_rng(11)
        for degree in range(11):
            p = np.polynomial.Polynomial(rng.uniform(-2, 2, degree + 1))
            P = p.integ()
            exact = P(2.0) - P(-1.0)
            q = adaptive_quadrature(p, -1.0, 2.0, 1e-12)
            self.assertAlmostEqual(q.value, exact, delta=1e-12 * max(1, abs(exact)))

    def test_breakpoints(self):
        q = adaptive_quadrature(lambda u: np.abs(u - 0.3), 0, 1, breakpoints=(0.3,))
        self.assertAlmostEqual(q.value, 0.29, places=13)

    def test_deterministic(self):
        f = lambda u: np.exp(-u) * np.sin(5 * u)
        self.assertEqual(adaptive_quadrature(f, 0, 7), adaptive_quadrature(f, 0, 7))

    def test_integrand_failure(self):
        with np.errstate(divide='ignore'):
            with self.assertRaises(IntegrandFailure) as cm:
                adaptive_quadrature(lambda u: 1 / u, -1, 1)
        self.assertEqual(cm.exception.location, 0.0)

    def test_budget(self):
        with self.assertRaises(BudgetExceeded) as cm:
            adaptive_quadrature(np.sqrt, 0, 1, tol=1e-15, limit=3)
        self.assertAlmostEqual(cm.exception.partial.value, 2 / 3, places=3)

    def test_bad_interval(self):
        with self.assertRaises(InvalidArgument):
            adaptive_quadrature(lambda u: 1, 1, 0)
        with self.assertRaises(InvalidArgument):
            adaptive_quadrature(lambda u: 1, 0, 1, tol=0)


class TestSupSearch(SimpleTestCase):
    def test_quadratic(self):
        r = sup_search(lambda u: -(u - 0.3) ** 2, 0, 1, 1e-8)
        self.assertAlmostEqual(r.argmax, 0.3, delta=1e-6)
        self.assertLessEqual(r.bracket_width, 1e-8)

    def test_entropy_shape(self):
        r = sup_search(lambda u: u * math.log(1 / u), 0, 1, 1e-8)
        self.assertAlmostEqual(r.value, 1 / math.e, places=12)
        self.assertAlmostEqual(r.argmax, 1 / math.e, delta=1e-6)

    def test_constant(self):
        r = sup_search(lambda u: 2.5, 0, 1, 1e-8)
        self.assertEqual(r.value, 2.5)
        self.assertTrue(0 < r.argmax < 1)

    def test_boundary_max(self):
        r = sup_search(lambda u: u, 0, 1, 1e-8)
        self.assertAlmostEqual(r.value, 1, delta=1e-7)

    def test_vectorized(self):
        r = sup_search(lambda u: np.sin(u), 0, 3, vectorized=True)
        self.assertAlmostEqual(r.value, 1, places=12)
        self.assertAlmostEqual(r.argmax, math.pi / 2, delta=1e-6)

    def test_picks_global_peak(self):
        g = lambda u: math.exp(-200 * (u - 0.1) ** 2) + 1.1 * math.exp(-200 * (u - 0.8) ** 2)
        self.assertAlmostEqual(sup_search(g, 0, 1).argmax, 0.8, delta=1e-6)

    def test_failure(self):
        with self.assertRaises(EvaluationFailure):
            sup_search(lambda u: math.inf if u > 0.5 else 0.0, 0, 1)


class TestSymmetricEigenvalues(SimpleTestCase):
    def test_examples(self):
        np.testing.assert_allclose(symmetric_eigenvalues(np.eye(3)), [1, 1, 1])
        np.testing.assert_allclose(symmetric_eigenvalues([[0, 1], [1, 0]]), [-1, 1], atol=1e-15)

    def test_asymmetric(self):
        with self.assertRaises(InvalidArgument):
            symmetric_eigenvalues([[0, 1], [0.5, 0]])
        with self.assertRaises(InvalidArgument):
            symmetric_eigenvalues(np.zeros((2, 3)))

    def test_charpoly_oracle(self):
        rng = np.random.default_rng(5)
        A = rng.standard_normal((5, 5))
        M = (A + A.T) / 2
        roots = np.sort(np.roots(charpoly(M)).real)
        np.testing.assert_allclose(symmetric_eigenvalues(M), roots, atol=1e-8)

    def test_trace_identities(self):
        rng = np.random.default_rng(6)
        for n in (1, 4, 9, 30):
            A = rng.standard_normal((n, n))
            M = A + A.T
            lam = symmetric_eigenvalues(M)
            scale = 1e-9 * n * np.linalg.norm(M, 2)
            self.assertTrue(np.all(np.diff(lam) >= 0))
            self.assertAlmostEqual(lam.sum(), np.trace(M), delta=scale)
            self.assertAlmostEqual((lam ** 2).sum(), np.trace(M @ M), delta=scale * max(1, np.linalg.norm(M, 2)))

    def test_shift_and_conjugation(self):
        rng = np.random.default_rng(7)
        for n in range(1, 7):
            A = rng.standard_normal((n, n))
            M = A + A.T
            lam = symmetric_eigenvalues(M)
            np.testing.assert_allclose(symmetric_eigenvalues(M + 2.5 * np.eye(n)), lam + 2.5, atol=1e-9)
            Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            C = Q @ M @ Q.T
            np.testing.assert_allclose(symmetric_eigenvalues((C + C.T) / 2), lam, atol=1e-8)


class TestGrowthRate(SimpleTestCase):
    def test_exact_law(self):
        deltas = np.geomspace(0.05, 0.5, 6)
        values = 3 * deltas ** 1.5 * np.exp(0.5 / deltas)
        slope, naive_slope, intercept = growth_rate(deltas, values)
        self.assertAlmostEqual(slope, 0.5, places=10)
        self.assertAlmostEqual(intercept, math.log(3), places=9)
        self.assertLess(naive_slope, 0.5)

    def test_without_prefactor(self):
        deltas = [0.1, 0.2, 0.4]
        values = [math.exp(2 / d) for d in deltas]
        slope, naive_slope, _ = growth_rate(deltas, values, prefactor_power=0)
        self.assertAlmostEqual(slope, 2, places=10)
        self.assertAlmostEqual(naive_slope, 2, places=10)

    def test_invalid(self):
        with self.assertRaises(InvalidArgument):
            growth_rate([0.1], [1.0])
        with self.assertRaises(InvalidArgument):
            growth_rate([0.1, -0.2], [1.0, 2.0])
