from django.conf import settings  # NOQA
from appconf import AppConf


class MeasuresConf(AppConf):
    MASS_TOL = 1e-9
    BRACKET_SIGMAS = 12
    # Gauss-Legendre nodes per convolution panel
    PANEL_NODES = 20
    # panels per standard deviation of the smoothing kernel
    PANELS_PER_SIGMA = 2
    MAX_PANELS = 4096
    MEDIAN_ITERATIONS = 200
    CHUNK = 512

    class Meta:
        prefix = 'measures'
