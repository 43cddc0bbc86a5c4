import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sobolev.settings')
django.setup()
