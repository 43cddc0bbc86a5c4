#!/usr/bin/env python
"""
Entry point: `./manage.py <bound|bg|lower|lemmas|rmt|sweep> [options]`, or
`./manage.py test`.
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sobolev.settings')
    from django.core.management import execute_from_command_line
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
