from django.apps import AppConfig


class BgConfig(AppConfig):
    name = 'bg'
    verbose_name = 'Bobkov-Gotze functionals'
