import os


BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEBUG = os.environ.get('SOBOLEV_ENV', 'development') == 'development'


DATABASES = {}
DATA_DIR = os.path.join(BASE_DIR, 'data')
INSTALLED_APPS = [
    'utils',
    'numerics',
    'measures',
    'bg',
    'bounds',
    'variational',
    'rmt',
    'cli',
]
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'terse': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'terse',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('SOBOLEV_LOG_LEVEL', 'WARNING'),
    },
}
SECRET_KEY = os.environ.get('SECRET_KEY', 'sobolevSOBOLEVsobolev')
SOBOLEV_THREADS = int(os.environ.get('SOBOLEV_THREADS', '1'))
TIME_ZONE = 'UTC'
USE_TZ = True
