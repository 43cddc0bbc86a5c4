from collections import namedtuple


class QuadResult(namedtuple('QuadResult', 'value abs_error_estimate evaluations')):
    __slots__ = ()

    def __float__(self):
        return float(self.value)


class SupResult(namedtuple('SupResult', 'argmax value bracket_width')):
    __slots__ = ()
