import io
import math
import os
import shutil
import tempfile

import pandas as pd
import simplejson
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from utils.io import read_csv_header

from .config import BGConfig, BoundConfig, LowerConfig, RmtConfig, SweepConfig
from .runner import run


def invoke(name, **options):
    out = io.StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


def invoke_json(name, **options):
    return simplejson.loads(invoke(name, **options))


class TestBound(SimpleTestCase):
    COLUMNS = ['R', 'delta', 'n', 'bound_name', 'log_value', 'value']

    def bounds(self, rows, **cell):
        return {
            row['bound_name']: row for row in rows
            if all(row[k] == v for k, v in cell.items())
        }

    def test_thm_nd_row(self):
        data = invoke_json('bound', R='1', delta='1', n='1')
        self.assertEqual(data['command'], 'bound')
        self.assertIsNone(data['seed'])
        bounds = self.bounds(data['results']['bounds'])
        self.assertEqual(sorted(bounds), [
            'cgw_chain', 'cgw_final', 'd_functional', 'thm_1d', 'thm_1d_small', 'thm_nd',
            'two_point_lower', 'two_point_upper',
        ])
        self.assertAlmostEqual(bounds['thm_nd']['log_value'], math.log(289) + 25)
        self.assertAlmostEqual(bounds['thm_1d_small']['value'] / (7803 * math.e ** 2), 1, delta=1e-12)
        self.assertLessEqual(bounds['cgw_chain']['log_value'], bounds['thm_nd']['log_value'] + 1e-9)
        self.assertAlmostEqual(bounds['cgw_final']['log_value'], bounds['thm_nd']['log_value'])
        chain, = data['results']['cgw']
        self.assertEqual(len(chain['steps']), 14)
        self.assertEqual(chain['violations'], [])
        self.assertTrue(data['summary']['cgw_monotone'])

    def test_large_delta(self):
        data = invoke_json('bound', R='1', delta='4')
        bounds = self.bounds(data['results']['bounds'])
        self.assertEqual(sorted(bounds), ['d_functional', 'thm_1d'])
        self.assertAlmostEqual(bounds['thm_1d']['value'], 6905 * math.exp(0.5) + 4989 * 16, delta=1e-6)
        self.assertEqual(data['results']['cgw'], [])
        self.assertIsNone(data['summary']['cgw_monotone'])

    def test_grid(self):
        data = invoke_json('bound', R='0.5,1,2', delta='0.1:1:3', n='1:3:3', a='0.25')
        self.assertEqual(data['config']['n'], [1, 2, 3])
        # 21 cells with delta <= R^2 carry 9 bounds each, the other 6 carry 2
        self.assertEqual(len(data['results']['bounds']), 21 * 9 + 6 * 2)
        self.assertEqual(len(data['results']['cgw']), 21)
        self.assertIn('uniform_density', self.bounds(data['results']['bounds'], R=2.0, n=1, delta=1.0))

    def test_csv(self):
        text = invoke('bound', R='1', delta='1', n='1,2', format='csv')
        header = read_csv_header(text.splitlines(True))
        self.assertIsNone(header['seed'])
        self.assertEqual(header['config.n'], [1, 2])
        self.assertTrue(header['summary.cgw_monotone'])
        frame = pd.read_csv(io.StringIO(text), comment='#')
        self.assertEqual(list(frame.columns), self.COLUMNS)
        self.assertEqual(len(frame), 16)
        self.assertEqual(sorted(set(frame['n'])), [1, 2])
        thm_nd = frame[(frame['bound_name'] == 'thm_nd') & (frame['n'] == 2)]
        self.assertAlmostEqual(thm_nd['log_value'].iloc[0], math.log(289) + 45)

    def test_csv_out_of_range(self):
        text = invoke('bound', R='1', delta='4', format='csv')
        frame = pd.read_csv(io.StringIO(text), comment='#')
        self.assertEqual(list(frame.columns), self.COLUMNS)
        self.assertEqual(sorted(frame['bound_name']), ['d_functional', 'thm_1d'])

    def test_usage_errors(self):
        with self.assertRaises(CommandError) as cm:
            invoke('bound', R='1', delta='-1')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            invoke('bound', R='1')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            invoke('bound', R='1', delta='1', format='xml')
        self.assertEqual(cm.exception.returncode, 2)


class TestBG(SimpleTestCase):
    def test_two_point(self):
        data = invoke_json('bg', measure='two_point.json', delta='0.5')
        report = data['results'][0]
        self.assertAlmostEqual(report['D0'] / report['D1'], 1, delta=1e-6)
        self.assertTrue(data['complete'])
        self.assertEqual(report['delta'], 0.5)

    def test_budget(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('bg', measure='two_point', delta='0.5', max_evaluations='100', stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        data = simplejson.loads(out.getvalue())
        self.assertFalse(data['complete'])
        self.assertFalse(data['results'][0]['complete'])

    def test_bad_measure(self):
        for options in ({'measure': 'nowhere', 'delta': '1'}, {'measure': 'two_point', 'delta': '0'}):
            with self.assertRaises(CommandError) as cm:
                invoke('bg', **options)
            self.assertEqual(cm.exception.returncode, 2)


class TestLower(SimpleTestCase):
    def test_gaussian(self):
        data = invoke_json('lower', measure='point_mass', delta='1', family='exponential', grid='0.5,1')
        row = data['results'][0]
        self.assertAlmostEqual(row['ratio'] / 2, 1, delta=1e-6)
        self.assertIn(row['parameter'], (0.5, 1.0))

    def test_step(self):
        row = invoke_json('lower', measure='two_point', delta='0.5')['results'][0]
        self.assertEqual(row['parameter'], 0)
        self.assertGreaterEqual(row['ratio'], 0.5 ** 1.5 * math.e / 11)

    def test_degenerate(self):
        with self.assertRaises(CommandError) as cm:
            invoke('lower', measure='point_mass', delta='1', family='exponential', grid='0')
        self.assertEqual(cm.exception.returncode, 2)

    def test_budget(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('lower', measure='two_point', delta='0.5', tol='1e-16', stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        data = simplejson.loads(out.getvalue())
        self.assertFalse(data['complete'])
        row, = data['results']
        self.assertFalse(row['complete'])
        self.assertEqual(row['ratio'], 'nan')
        self.assertEqual(row['delta'], 0.5)

    def test_sweep_budget(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('sweep', measure='two_point', deltas='0.2,0.5', estimator='lower', tol='1e-16', stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        self.assertFalse(simplejson.loads(out.getvalue())['complete'])


class TestLemmas(SimpleTestCase):
    def test_measure(self):
        data = invoke_json('lemmas', measure='two_point', delta='0.5,1')
        self.assertEqual(len(data['results']), 14)
        self.assertTrue(data['summary']['all_hold'])

    def test_gaussian(self):
        text = invoke('lemmas', gaussian=True, format='csv')
        frame = pd.read_csv(io.StringIO(text), comment='#')
        self.assertEqual(len(frame), 41)
        self.assertTrue(frame['holds'].all())

    def test_below_support(self):
        with self.assertRaises(CommandError) as cm:
            invoke('lemmas', measure='two_point', delta='0.5', x='0.5')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            invoke('lemmas', delta='0.5')
        self.assertEqual(cm.exception.returncode, 2)


class TestRmt(SimpleTestCase):
    def test_experiment(self):
        data = invoke_json('rmt', ensemble='iid_two_point', n='20', trials='5', seed='3', epsilons='0.01')
        self.assertEqual(data['seed'], 3)
        self.assertEqual(data['results']['trials'], 5)
        self.assertEqual([r['trial'] for r in data['results']['records']], list(range(5)))
        self.assertTrue(data['summary']['schedule_defined'])

    def test_asymptotic_policy(self):
        data = invoke_json('rmt', ensemble='gaussian_cutoff', n='10', trials='3', seed='1')
        self.assertIsNone(data['results']['delta'])
        self.assertFalse(data['results']['schedule_defined'])

    def test_fixed_policy(self):
        data = invoke_json('rmt', ensemble='replicated', n='12', trials='3', seed='1', policy='fixed', delta_value='0.2')
        self.assertEqual(data['results']['delta'], 0.2)
        self.assertTrue(data['summary']['extremal_dependence'])

    def test_sizes(self):
        data = invoke_json('rmt', ensemble='iid_two_point', sizes='10,20', trials='3', seed='0', format='json')
        self.assertEqual(data['results']['sizes'], [10, 20])
        self.assertEqual(len(data['results']['distances']), 3)

    def test_seed_required(self):
        with self.assertRaises(CommandError) as cm:
            invoke('rmt', ensemble='iid_two_point', n='20', trials='5')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            invoke('rmt', ensemble='iid_two_point', seed='1', policy='fixed')
        self.assertEqual(cm.exception.returncode, 2)


class TestSweep(SimpleTestCase):
    def test_bg_growth(self):
        data = invoke_json('sweep', measure='two_point.json', deltas='0.05:0.5:6', estimator='bg', tol='1e-6')
        self.assertGreaterEqual(data['summary']['slope'], 0.4)
        self.assertLessEqual(data['summary']['slope'], 0.6)
        self.assertLess(data['summary']['naive_slope'], data['summary']['slope'])
        self.assertEqual(len(data['results']), 6)

    def test_lower_growth(self):
        data = invoke_json('sweep', measure='two_point', deltas='0.05:0.5:6', estimator='lower')
        self.assertGreaterEqual(data['summary']['slope'], 0.45)
        self.assertLessEqual(data['summary']['slope'], 0.55)

    def test_single_delta(self):
        with self.assertRaises(CommandError) as cm:
            invoke('sweep', measure='two_point', deltas='0.5')
        self.assertEqual(cm.exception.returncode, 2)


class TestOutput(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def path(self, name):
        return os.path.join(self.directory, name)

    def test_deterministic_files(self):
        for fmt in ('json', 'csv'):
            for name in ('a', 'b'):
                call_command(
                    'rmt', ensemble='replicated', n='16', trials='4', seed='5', epsilons='0.01',
                    format=fmt, output=self.path(name + '.' + fmt),
                )
            with open(self.path('a.' + fmt), 'rb') as a, open(self.path('b.' + fmt), 'rb') as b:
                self.assertEqual(a.read(), b.read())
        with open(self.path('a.csv'), encoding='utf-8') as fp:
            self.assertEqual(read_csv_header(fp)['seed'], 5)

    def test_round_trip(self):
        cases = (
            (BoundConfig, 'bound', {'R': '1,2', 'delta': '0.1:1:4', 'n': '1'}),
            (BGConfig, 'bg', {'measure': 'uniform', 'delta': '0.25', 'tol': '1e-6'}),
            (LowerConfig, 'lower', {'measure': 'two_point', 'delta': '0.5', 'grid': '-0.1,0,0.1'}),
            (RmtConfig, 'rmt', {'ensemble': 'iid_two_point', 'n': '10', 'trials': '2', 'seed': '1'}),
            (SweepConfig, 'sweep', {'measure': 'two_point', 'deltas': '0.2,0.5', 'estimator': 'lower'}),
        )
        for config_class, name, options in cases:
            config = invoke_json(name, **options)['config']
            form = config_class(data=config)
            self.assertTrue(form.is_valid(), form.errors)
            self.assertEqual(simplejson.loads(simplejson.dumps(form.resolved())), config)


class TestRun(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(run(['bound', '--R', '1', '--delta', '1', '--output', os.devnull]), 0)
        self.assertEqual(run(['bound', '--R', '1', '--delta', '0', '--output', os.devnull]), 2)
        self.assertEqual(run(['bound', '--bogus', '1']), 2)
