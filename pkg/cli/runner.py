import os

from django.core.management import execute_from_command_line


def run(argv):
    """
    Run a subcommand, `run(['bound', '--R', '1', '--delta', '1'])`, and
    return its exit code.
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sobolev.settings')
    try:
        execute_from_command_line(['sobolev'] + list(argv))
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0
