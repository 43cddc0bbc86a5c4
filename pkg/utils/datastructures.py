from collections import UserDict
from collections.abc import Mapping


__all__ = ('NSDict', 'flatten')


def flatten(data, prefix=''):
    """
    Nested mappings to a flat dict with dotted keys.

        >>> flatten({'a': {'b': 1}, 'c': 2})
        {'a.b': 1, 'c': 2}
    """
    out = {}
    for k, v in data.items():
        key = '{}.{}'.format(prefix, k) if prefix else str(k)
        if isinstance(v, Mapping) and v:
            out.update(flatten(v, key))
        else:
            out[key] = v
    return out


class NSDict(UserDict):
    """
    A flat dict with dotted keys whose namespaces are also reachable as
    nested dicts, `d.measure == {'R': 1.0}` for `{'measure.R': 1.0}`.
    """
    def __init__(self, data):
        self.data = dict(data)
        self.namespaces = {}
        for k, v in self.data.items():
            if '.' not in k:
                continue
            namespace, key = k.split('.', 1)
            self.namespaces.setdefault(namespace, {})[key] = v

    def __getattr__(self, name):
        namespaces = self.__dict__.get('namespaces', {})
        if name in namespaces:
            return NSDict(namespaces[name]).nested()
        raise AttributeError(name)

    def nested(self):
        out = {}
        for k, v in self.data.items():
            node = out
            parts = k.split('.')
            for part in parts[:-1]:
                node = node.setdefault(part, {})
            node[parts[-1]] = v
        return out
