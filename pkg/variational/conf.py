from django.conf import settings  # NOQA
from appconf import AppConf


class VariationalConf(AppConf):
    TOL = 1e-10
    TINY = 1e-300
    # integration window half-width past the support hull, in sigmas
    WINDOW_SIGMAS = 12

    class Meta:
        prefix = 'variational'
