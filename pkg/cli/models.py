from collections import namedtuple


class CommandResult(namedtuple('CommandResult', 'rows payload complete summary')):
    """
    `rows` feed the CSV table, `payload` the JSON results; `summary` goes
    into both headers.
    """
    __slots__ = ()

    def __new__(cls, rows, payload=None, complete=True, summary=None):
        return super().__new__(cls, rows, rows if payload is None else payload, complete, summary or {})
