import io
import unittest

import numpy as np
import pandas as pd

from numerics.exceptions import InvalidArgument

from .datastructures import NSDict, flatten
from .grids import parse_grid, parse_list, parse_range
from .io import dump_json, read_csv_header, to_jsonable, write_csv


class TestNSDict(unittest.TestCase):
    def test_basic(self):
        d = NSDict({'a': 1, 'b': 2})
        self.assertEqual(d['a'], 1)
        self.assertEqual(sorted(d.keys()), ['a', 'b'])

    def test_ns(self):
        d = NSDict({
            'ns1.a': 1,
            'ns1.b': 2,
            'ns2.a.x': 10,
            'seed': 7,
        })
        self.assertEqual(d.ns1, {'a': 1, 'b': 2})
        self.assertEqual(d.ns2, {'a': {'x': 10}})
        self.assertEqual(d.nested(), {'ns1': {'a': 1, 'b': 2}, 'ns2': {'a': {'x': 10}}, 'seed': 7})
        with self.assertRaises(AttributeError):
            d.ns3

    def test_flatten(self):
        nested = {'measure': {'R': 1.0, 'atoms': [1, 2]}, 'seed': 3}
        self.assertEqual(flatten(nested), {'measure.R': 1.0, 'measure.atoms': [1, 2], 'seed': 3})
        self.assertEqual(NSDict(flatten(nested)).nested(), nested)


class TestGrids(unittest.TestCase):
    def test_list(self):
        self.assertEqual(parse_list('1, 2,3'), [1.0, 2.0, 3.0])
        self.assertEqual(parse_grid('1,2', cast=int), [1, 2])

    def test_range(self):
        values = parse_range('0.05:0.5:10')
        self.assertEqual(len(values), 10)
        self.assertAlmostEqual(values[0], 0.05)
        self.assertAlmostEqual(values[-1], 0.5)
        np.testing.assert_allclose(np.diff(np.log(values)), np.log(10) / 9)
        self.assertEqual(parse_range('0:1:3', geometric=False), [0.0, 0.5, 1.0])

    def test_errors(self):
        for text in ('', 'a,b', '1:2', '0:1:3', '1:2:0'):
            with self.assertRaises(InvalidArgument):
                parse_grid(text)
        with self.assertRaises(InvalidArgument):
            parse_grid('-1,2', positive=True)


class TestIO(unittest.TestCase):
    def test_json(self):
        stream = io.StringIO()
        dump_json({'b': np.float64(np.inf), 'a': [np.int64(1), -np.inf, float('nan')]}, stream)
        self.assertEqual(stream.getvalue(), '{\n  "a": [\n    1,\n    "-inf",\n    "nan"\n  ],\n  "b": "inf"\n}\n')

    def test_jsonable_namedtuple(self):
        from collections import namedtuple
        Pair = namedtuple('Pair', 'x y')
        self.assertEqual(to_jsonable(Pair(1, np.float64(2.5))), {'x': 1, 'y': 2.5})

    def test_csv_header_round_trip(self):
        stream = io.StringIO()
        header = {'seed': 11, 'measure': {'R': 1.0}, 'tol': 1e-10}
        write_csv(pd.DataFrame({'x': [1.0, np.inf]}), stream, header)
        lines = stream.getvalue().splitlines(True)
        self.assertEqual(lines[0], '# measure.R: 1.0\n')
        self.assertEqual(lines[-1], 'inf\n')
        self.assertEqual(read_csv_header(lines).nested(), header)
