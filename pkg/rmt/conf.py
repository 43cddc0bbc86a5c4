from django.conf import settings  # NOQA
from appconf import AppConf


class RmtConf(AppConf):
    K = 289
    HW_TOL = 1e-8
    PRACTICAL_SCALE = 0.5
    # Philox stream purposes
    STREAMS = {'entries': 0, 'smoothing': 1}

    class Meta:
        prefix = 'rmt'
