from django.conf import settings  # NOQA
from appconf import AppConf


class BgConf(AppConf):
    TOL = 1e-8
    GRID_POINTS = 512
    # integrand evaluations per report
    MAX_EVALUATIONS = 20000000
    TAIL_FACTOR = 1e-3
    LEMMA_TOL = 1e-8

    class Meta:
        prefix = 'bg'
