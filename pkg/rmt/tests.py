import math

import numpy as np
from django.test import SimpleTestCase

from numerics.exceptions import InvalidArgument

from .experiments import concentration_experiment, run_trial, size_trend
from .loading import load_ensemble
from .models import DeltaPolicy, EnsembleSpec, EntryLaw, Partition, PiecewiseLinear, SpectralSample
from .sampling import sample_matrix, smooth_matrix, symmetrize, truncate_entries
from .schedules import delta_schedule, practical_schedule, resolve_delta
from .spectra import (
    hw_check, lipschitz_statistic, perturbation_bound_check, semicircle_cdf, semicircle_distance,
    semicircle_quantile,
)


def two_point_spec(n, partition=None, delta=None):
    return EnsembleSpec(n, EntryLaw('two_point', R=1), partition or Partition('singletons'), delta=delta)


def random_symmetric(rng, n):
    return symmetrize(n, rng.standard_normal(n * (n + 1) // 2))


class TestEnsembleSpec(SimpleTestCase):
    def test_load(self):
        spec = load_ensemble('iid_two_point')
        self.assertEqual(spec.n, 200)
        self.assertEqual(spec.d_n, 1)
        self.assertEqual(spec.delta, DeltaPolicy('practical', scale=0.5))
        replicated = load_ensemble('replicated')
        self.assertEqual(replicated.d_n, 3)
        self.assertTrue(replicated.partition.replicated)
        cutoff = load_ensemble('gaussian_cutoff')
        self.assertEqual(cutoff.radius, 3)
        self.assertTrue(math.isinf(cutoff.entry_law.radius))

    def test_round_trip(self):
        for name in ('iid_two_point', 'replicated', 'gaussian_cutoff'):
            data = load_ensemble(name).to_dict()
            self.assertEqual(EnsembleSpec.from_description(data).to_dict(), data)

    def test_blocks_cover(self):
        for n in (1, 10, 50, 200):
            for partition in (Partition('independent_blocks', d=4), Partition('replicated_blocks', d='sqrt_log')):
                blocks = partition.resolve(n)
                self.assertEqual(blocks.rows.size, n * (n + 1) // 2)
                self.assertEqual(int(blocks.sizes.sum()), n * (n + 1) // 2)
                self.assertLessEqual(blocks.d_n, partition.block_bound(n))
                self.assertGreaterEqual(blocks.sizes.min(), 1)

    def test_sqrt_log(self):
        self.assertEqual(Partition('replicated_blocks', d='sqrt_log').block_bound(50), 2)
        self.assertEqual(Partition('replicated_blocks', d='sqrt_log').block_bound(400), 3)

    def test_explicit_validation(self):
        pairs = [[0, 0], [0, 1], [1, 1]]
        Partition('explicit', blocks=[pairs]).resolve(2)
        with self.assertRaises(InvalidArgument):
            Partition('explicit', blocks=[pairs, [[1, 0]]]).resolve(2)
        with self.assertRaises(InvalidArgument):
            Partition('explicit', blocks=[pairs[:2]]).resolve(2)
        with self.assertRaises(InvalidArgument):
            Partition('explicit', d=2, blocks=[pairs]).resolve(2)
        with self.assertRaises(InvalidArgument):
            Partition('explicit', blocks=[pairs + [[0, 2]]]).resolve(2)

    def test_invalid(self):
        with self.assertRaises(InvalidArgument):
            Partition('stripes')
        with self.assertRaises(InvalidArgument):
            Partition('independent_blocks', d=0)
        with self.assertRaises(InvalidArgument):
            EntryLaw('two_point', R=-1)
        with self.assertRaises(InvalidArgument):
            DeltaPolicy('fixed')
        with self.assertRaisesRegex(InvalidArgument, "'n'"):
            EnsembleSpec.from_description({'entry_law': {'kind': 'uniform', 'R': 1}, 'partition': {'kind': 'singletons'}})

    def test_entry_laws(self):
        self.assertEqual(EntryLaw('two_point', R=2).variance, 4)
        self.assertAlmostEqual(EntryLaw('uniform', R=3).variance, 3)
        self.assertEqual(EntryLaw('gaussian', sigma=2).variance, 4)


class TestSampling(SimpleTestCase):
    def test_singletons(self):
        Y = sample_matrix(two_point_spec(4), seed=1)
        np.testing.assert_array_equal(Y, Y.T)
        self.assertTrue(set(np.unique(Y)) <= {-1.0, 1.0})

    def test_replicated_explicit_block(self):
        blocks = [[[0, 1], [0, 2], [1, 2]], [[0, 0]], [[1, 1]], [[2, 2]]]
        spec = two_point_spec(3, Partition('explicit', d=3, blocks=blocks, mode='replicated'))
        for seed in range(10):
            Y = sample_matrix(spec, seed)
            self.assertEqual(Y[0, 1], Y[0, 2])
            self.assertEqual(Y[0, 2], Y[1, 2])

    def test_replicated_blocks(self):
        spec = EnsembleSpec(4, EntryLaw('uniform', R=1), Partition('replicated_blocks', d=3))
        i, j = np.triu_indices(4)
        for seed in range(5):
            values = sample_matrix(spec, seed)[i, j]
            self.assertEqual(values[0], values[4])
            self.assertEqual(values[4], values[8])
            self.assertEqual(len(np.unique(values)), 4)

    def test_deterministic(self):
        spec = load_ensemble('replicated')
        np.testing.assert_array_equal(sample_matrix(spec, 7, trial=3), sample_matrix(spec, 7, trial=3))
        self.assertFalse(np.array_equal(sample_matrix(spec, 7, trial=3), sample_matrix(spec, 7, trial=4)))

    def test_smooth(self):
        Y = sample_matrix(two_point_spec(5), seed=0)
        self.assertIs(smooth_matrix(Y, 0, seed=0), Y)
        Y_tilde = smooth_matrix(Y, 0.3, seed=0)
        np.testing.assert_array_equal(Y_tilde, Y_tilde.T)
        np.testing.assert_array_equal(Y_tilde, smooth_matrix(Y, 0.3, seed=0))

    def test_smoothing_energy(self):
        n, delta = 50, 0.3
        Y = np.zeros((n, n))
        values = [
            np.sum(((Y - smooth_matrix(Y, delta, seed=11, trial=t)) / math.sqrt(n)) ** 2)
            for t in range(500)
        ]
        self.assertAlmostEqual(np.mean(values) / (delta * n), 1, delta=0.05)

    def test_truncate(self):
        Y = sample_matrix(EnsembleSpec(6, EntryLaw('gaussian', sigma=2, mean=1), Partition('singletons')), 3)
        np.testing.assert_array_equal(truncate_entries(Y, 1, math.inf), Y)
        np.testing.assert_array_equal(truncate_entries(Y, 1, 0), np.ones((6, 6)))
        Y_hat = truncate_entries(Y, 1, 1.5)
        self.assertTrue(np.all(np.abs(Y_hat - 1) <= 1.5))
        kept = np.abs(Y - 1) <= 1.5
        np.testing.assert_array_equal(Y_hat[kept], Y[kept])
        bounded = sample_matrix(two_point_spec(6), 3)
        np.testing.assert_array_equal(truncate_entries(bounded, 0, 1), bounded)


class TestSchedules(SimpleTestCase):
    def test_asymptotic_schedule(self):
        self.assertAlmostEqual(delta_schedule(10 ** 12, 1, 1), 5 / (math.log(10 ** 12 / 289) - 21))
        self.assertAlmostEqual(delta_schedule(10 ** 12, 1, 1, K=289), 5.18, delta=0.01)
        self.assertIsNone(delta_schedule(10 ** 9, 1, 1))

    def test_asymptotic_schedule_vanishes(self):
        base = math.ceil(289 * math.exp(22))
        values = [delta_schedule(base * 2 ** k, 1, 1) for k in range(0, 60, 6)]
        self.assertTrue(all(a > b for a, b in zip(values, values[1:])))
        self.assertLess(values[-1], values[0] / 5)

    def test_practical_schedule(self):
        self.assertAlmostEqual(practical_schedule(math.e ** 2, 1, 1), 0.5)
        self.assertAlmostEqual(practical_schedule(200, 2, 0.5), 1 / math.log(200))
        values = [practical_schedule(n, 2, 0.5) for n in (10, 100, 1000)]
        self.assertGreater(values[0], values[1])
        self.assertGreater(values[1], values[2])
        with self.assertRaises(InvalidArgument):
            practical_schedule(2, 1, 1)

    def test_resolve(self):
        self.assertEqual(resolve_delta(DeltaPolicy(), 100, 1, 1), (0.0, True))
        self.assertEqual(resolve_delta(DeltaPolicy('fixed', value=0.2), 100, 1, 1), (0.2, True))
        with self.assertLogs('rmt.schedules', 'WARNING'):
            self.assertEqual(resolve_delta(DeltaPolicy('asymptotic'), 100, 1, 1), (None, False))


class TestSpectra(SimpleTestCase):
    def test_hw_trivial(self):
        A = random_symmetric(np.random.default_rng(0), 5)
        check = hw_check(A, A)
        self.assertEqual((check.lhs, check.rhs), (0, 0))
        check = hw_check(A, A + 0.5 * np.eye(5))
        self.assertAlmostEqual(check.lhs, 5 * 0.25, places=10)
        self.assertAlmostEqual(check.rhs, 5 * 0.25, places=12)

    def test_hw_random(self):
        rng = np.random.default_rng(43)
        for n in range(2, 13):
            for _ in range(1000):
                check = hw_check(random_symmetric(rng, n), random_symmetric(rng, n))
                self.assertTrue(check.holds(1e-8), check)

    def test_hw_shape(self):
        with self.assertRaises(InvalidArgument):
            hw_check(np.eye(2), np.eye(3))

    def test_statistics(self):
        X = np.array([[0, 1], [1, 0]]) / math.sqrt(2)
        sample = SpectralSample.from_matrix(X, scale=1)
        self.assertAlmostEqual(lipschitz_statistic(sample, PiecewiseLinear.absolute()), 1 / math.sqrt(2))
        self.assertAlmostEqual(lipschitz_statistic(sample, PiecewiseLinear.constant(3)), 3)
        Y = random_symmetric(np.random.default_rng(1), 6)
        sample = SpectralSample.from_matrix(Y)
        self.assertAlmostEqual(lipschitz_statistic(sample, PiecewiseLinear.identity()), np.trace(Y) / 6 ** 1.5)
        self.assertTrue(np.all(np.diff(sample.eigenvalues) >= 0))

    def test_piecewise_linear(self):
        f = PiecewiseLinear.from_description({'kind': 'table', 'knots': [[0, 0], [1, 2]], 'right_slope': -1})
        np.testing.assert_allclose(f([-1, 0.5, 3]), [0, 1, 0])
        self.assertEqual(f.lipschitz, 2)
        self.assertEqual(PiecewiseLinear.from_description('abs').lipschitz, 1)
        self.assertEqual(PiecewiseLinear.constant(2).lipschitz, 0)

    def test_perturbation(self):
        f = PiecewiseLinear.identity()
        X = random_symmetric(np.random.default_rng(2), 8) / math.sqrt(8)
        self.assertEqual(tuple(perturbation_bound_check(X, X, f)), (0, 0))
        check = perturbation_bound_check(X, X + 0.3 * np.eye(8), f)
        self.assertAlmostEqual(check.observed, 0.3)
        self.assertAlmostEqual(check.bound, 0.3)

    def test_perturbation_random(self):
        rng = np.random.default_rng(5)
        n, delta = 20, 0.3
        for f in (PiecewiseLinear.identity(), PiecewiseLinear.absolute()):
            for _ in range(500):
                X = random_symmetric(rng, n) / math.sqrt(n)
                X_tilde = X + math.sqrt(delta / n) * random_symmetric(rng, n)
                self.assertTrue(perturbation_bound_check(X, X_tilde, f).holds())

    def test_semicircle(self):
        self.assertEqual(float(semicircle_cdf(-3)), 0)
        self.assertEqual(float(semicircle_cdf(0)), 0.5)
        self.assertEqual(float(semicircle_cdf(2)), 1)
        self.assertAlmostEqual(float(semicircle_cdf(semicircle_quantile(0.3, 2), 2)), 0.3, places=12)
        self.assertEqual(semicircle_distance(SpectralSample(np.array([0.0]), 1, 1)), 0.5)
        n = 40
        grid = np.array([semicircle_quantile((i + 0.5) / n) for i in range(n)])
        self.assertLessEqual(semicircle_distance(SpectralSample(grid, n, 1)), 1 / n)


class TestExperiments(SimpleTestCase):
    def test_identity_std(self):
        for n in (50, 100):
            summary = concentration_experiment(two_point_spec(n), PiecewiseLinear.identity(), 200, seed=9)
            self.assertLess(summary.std, 1.5 / n)
            self.assertGreater(summary.std, 1 / (1.5 * n))

    def test_reproducible(self):
        spec = load_ensemble('replicated').with_size(30)
        f = PiecewiseLinear.absolute()
        first = concentration_experiment(spec, f, 2, seed=4, epsilons=[0.01])
        second = concentration_experiment(spec, f, 2, seed=4, epsilons=[0.01], threads=3)
        self.assertEqual(first.to_dict(), second.to_dict())
        self.assertEqual(first.trials, second.trials)

    def test_references(self):
        spec = load_ensemble('iid_two_point').with_size(40)
        summary = concentration_experiment(spec, PiecewiseLinear.identity(), 20, seed=2, epsilons=[0.001, 0.01])
        data = summary.to_dict()
        self.assertTrue(data['schedule_defined'])
        self.assertAlmostEqual(data['delta'], 0.5 / math.log(40))
        for epsilon in summary.epsilons:
            reference = summary.references(epsilon)['guionnet']
            if reference >= 1:
                self.assertLessEqual(summary.tail(epsilon), reference)
        self.assertTrue(data['smoothing_shift']['holds'])
        self.assertFalse(data['extremal_dependence'])

    def test_smoothing_shift(self):
        spec = two_point_spec(50, delta=DeltaPolicy('fixed', value=0.1))
        summary = concentration_experiment(spec, PiecewiseLinear.absolute(), 50, seed=8)
        mean, error = summary.smoothing_shift
        self.assertLessEqual(abs(mean), summary.smoothing_shift_bound + 3 * error)

    def test_undefined_schedule(self):
        spec = load_ensemble('gaussian_cutoff').with_size(20)
        with self.assertLogs('rmt.schedules', 'WARNING'):
            summary = concentration_experiment(spec, PiecewiseLinear.identity(), 3, seed=1)
        data = summary.to_dict()
        self.assertIsNone(data['delta'])
        self.assertFalse(data['schedule_defined'])
        self.assertIsNone(data['lsi_constant'])

    def test_cutoff_trial(self):
        spec = load_ensemble('gaussian_cutoff').with_size(10)
        result = run_trial(spec, PiecewiseLinear.identity(), 0, seed=3, trial=0)
        Y = truncate_entries(sample_matrix(spec, 3), 0, 3)
        self.assertAlmostEqual(result.statistic, np.trace(Y) / 10 ** 1.5)
        sigma = math.sqrt(spec.entry_law.truncated_variance(3.0))
        self.assertLess(sigma, 1)
        self.assertAlmostEqual(result.ks_distance, semicircle_distance(SpectralSample.from_matrix(Y), sigma))

    def test_truncated_variance(self):
        gaussian = EntryLaw('gaussian', sigma=2.0)
        self.assertEqual(gaussian.truncated_variance(None), 4.0)
        self.assertAlmostEqual(gaussian.truncated_variance(2.0), 4 * 0.1987480430987992, places=12)
        self.assertAlmostEqual(gaussian.truncated_variance(3.0) / 4, 0.4778, places=3)
        uniform = EntryLaw('uniform', R=1)
        self.assertAlmostEqual(uniform.truncated_variance(0.5), 0.125 / 3)
        self.assertAlmostEqual(uniform.truncated_variance(2.0), 1 / 3)
        two_point = EntryLaw('two_point', R=1)
        self.assertEqual(two_point.truncated_variance(0.5), 0.0)
        self.assertEqual(two_point.truncated_variance(1.0), 1.0)

    def test_invalid(self):
        spec = two_point_spec(5)
        with self.assertRaises(InvalidArgument):
            concentration_experiment(spec, PiecewiseLinear.identity(), 1, seed=1)
        with self.assertRaises(InvalidArgument):
            concentration_experiment(spec, PiecewiseLinear.identity(), 5, seed=None)

    def test_semicircle_trend(self):
        for name in ('iid_two_point', 'replicated'):
            trend = size_trend(load_ensemble(name), [50, 200], range(20))
            self.assertGreaterEqual(trend.improving, 0.8, name)

    def test_replicated_monotone(self):
        trend = size_trend(load_ensemble('replicated'), [50, 100, 200, 400], range(20))
        self.assertGreaterEqual(trend.monotone, 0.8)
