from django.conf import settings  # NOQA
from appconf import AppConf


class NumericsConf(AppConf):
    QUAD_TOL = 1e-10
    QUAD_LIMIT = 2000
    SUP_TOL = 1e-8
    SUP_POINTS = 256
    SUP_BRACKETS = 3
    EIG_TOL = 1e-9
    SYMMETRY_TOL = 1e-12

    class Meta:
        prefix = 'numerics'
