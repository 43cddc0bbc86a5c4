from utils.io import read_description, resolve_path

from .models import EnsembleSpec


__all__ = ('load_ensemble',)


def load_ensemble(name):
    return EnsembleSpec.from_description(read_description(resolve_path(name, 'ensembles')))
