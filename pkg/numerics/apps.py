from django.apps import AppConfig


class NumericsConfig(AppConfig):
    name = 'numerics'
    verbose_name = 'numerical kernels'
