from .models import SmoothedMeasure


__all__ = (
    'smooth', 'smoothed_log_density', 'smoothed_cdf', 'smoothed_median',
    'smoothed_second_moment',
)


def smooth(measure, delta):
    return SmoothedMeasure(measure, delta)


def smoothed_log_density(m, t):
    return m.log_density(t)


def smoothed_cdf(m, x):
    return m.cdf(x)


def smoothed_median(m):
    return m.median


def smoothed_second_moment(m):
    return m.second_moment()
