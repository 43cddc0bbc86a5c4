from numerics.exceptions import InvalidArgument
from utils.io import read_description, resolve_path

from .models import Density, Measure1D


__all__ = ('measure_from_description', 'load_measure')


def _require(data, key, where):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise InvalidArgument('{} is missing {!r}'.format(where, key))


def measure_from_description(data):
    """
    Build a Measure1D from
    `{"R": 1.0, "atoms": [{"x": .., "w": ..}], "density": {"kind": .., "support": [a, b], "coeffs": [..]}}`.
    A uniform density without coeffs takes whatever mass the atoms leave.
    """
    if not isinstance(data, dict):
        raise InvalidArgument('Measure description must be a mapping')
    R = _require(data, 'R', 'measure description')
    atoms = [
        (_require(atom, 'x', 'atom'), _require(atom, 'w', 'atom'))
        for atom in data.get('atoms') or []
    ]
    density = None
    if data.get('density'):
        spec = data['density']
        kind = _require(spec, 'kind', 'density')
        support = _require(spec, 'support', 'density')
        coeffs = spec.get('coeffs')
        if coeffs is None:
            if kind != 'uniform':
                raise InvalidArgument("density is missing 'coeffs'")
            try:
                a, b = (float(v) for v in support)
            except (TypeError, ValueError):
                raise InvalidArgument('density support must be a pair [a, b]')
            coeffs = [(1 - sum(float(w) for _, w in atoms)) / (b - a)]
        density = Density(kind, support, coeffs)
    try:
        return Measure1D(R, atoms=atoms, density=density, center=data.get('center'))
    except (TypeError, ValueError) as e:
        if isinstance(e, InvalidArgument):
            raise
        raise InvalidArgument('Bad measure description: {}'.format(e))


def load_measure(name):
    return measure_from_description(read_description(resolve_path(name, 'measures')))
