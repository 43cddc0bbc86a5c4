from django.apps import AppConfig


class VariationalConfig(AppConfig):
    name = 'variational'
    verbose_name = 'Variational lower bounds'
