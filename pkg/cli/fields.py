from django import forms

from utils.grids import parse_grid


class GridField(forms.Field):
    """
    A parameter grid given as `1,2,3`, `start:stop:count` or an already
    resolved list.
    """
    def __init__(self, cast=float, geometric=True, positive=False, **kwargs):
        self.cast = cast
        self.geometric = geometric
        self.positive = positive
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        try:
            if isinstance(value, (list, tuple)):
                values = [self.cast(v) for v in value]
            else:
                values = [self.cast(v) for v in parse_grid(value, float, self.geometric)]
        except (TypeError, ValueError) as e:
            raise forms.ValidationError(str(e))
        if not values:
            raise forms.ValidationError('Empty grid')
        if self.positive and any(not v > 0 for v in values):
            raise forms.ValidationError('Grid values must be positive')
        return values
