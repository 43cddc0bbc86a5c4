from django.apps import AppConfig


class RmtConfig(AppConfig):
    name = 'rmt'
    verbose_name = 'Random matrix experiments'
