"""
Reading measure and ensemble descriptions, writing JSON and CSV results.
"""
import math
import os

import numpy as np
import simplejson
import yaml
from django.conf import settings

from numerics.exceptions import InvalidArgument

from .datastructures import NSDict, flatten


__all__ = (
    'resolve_path', 'read_description', 'to_jsonable', 'dump_json',
    'write_csv', 'read_csv_header',
)


def resolve_path(name, kind):
    """
    `name` as given, or else looked up under DATA_DIR/<kind>/.
    """
    if os.path.exists(name):
        return name
    candidate = os.path.join(settings.DATA_DIR, kind, name)
    if os.path.exists(candidate):
        return candidate
    if not name.endswith('.json') and os.path.exists(candidate + '.json'):
        return candidate + '.json'
    raise InvalidArgument('No such {} description: {}'.format(kind, name))


def read_description(path):
    with open(path, encoding='utf-8') as fp:
        try:
            data = yaml.safe_load(fp)
        except yaml.YAMLError as e:
            raise InvalidArgument('Cannot parse {}: {}'.format(path, e))
    if not isinstance(data, dict):
        raise InvalidArgument('{} does not hold a mapping'.format(path))
    return data


def _float(value):
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def to_jsonable(obj):
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    if hasattr(obj, '_asdict'):
        return to_jsonable(obj._asdict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    return obj


def dump_json(data, stream):
    simplejson.dump(to_jsonable(data), stream, sort_keys=True, indent=2)
    stream.write('\n')


def write_csv(frame, stream, header=None):
    """
    A `# key: value` line per (flattened) header entry, then the table.
    """
    for key, value in sorted(flatten(to_jsonable(header or {})).items()):
        stream.write('# {}: {}\n'.format(key, simplejson.dumps(value)))
    frame.to_csv(stream, index=False, na_rep='nan', lineterminator='\n')


def read_csv_header(lines):
    data = {}
    for line in lines:
        if not line.startswith('# '):
            break
        key, _, value = line[2:].rstrip('\n').partition(': ')
        data[key] = simplejson.loads(value)
    return NSDict(data)
