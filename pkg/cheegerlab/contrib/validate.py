import marshmallow as ma
import numpy as np


class ValidationError(ma.ValidationError):
    def __init__(self, *args, level=None, **kwargs):
        self.level = level or "error"
        super().__init__(*args, **kwargs)


class Range(ma.validate.Range):
    """
    Implements the "range" validator of a setting declaration. Violations
    raise `ValidationError` carrying the declared level ("warn" or "error").
    """

    message_min = "{input} < min {min}"
    message_max = "{input} > max {max}"

    def __init__(
        self, min=None, max=None, error_min=None, error_max=None, level=None
    ):
        self.min = min
        self.max = max
        self.error_min = error_min
        self.error_max = error_max
        self.min_inclusive = True
        self.max_inclusive = True
        self.level = level or "error"

    def __call__(self, value):
        if value is None:
            return value
        msgs = []
        if self.min is not None and np.any(np.array(value) < self.min):
            msgs.append(
                (self.error_min or self.message_min).format(
                    input=value, min=self.min
                )
            )
        if self.max is not None and np.any(np.array(value) > self.max):
            msgs.append(
                (self.error_max or self.message_max).format(
                    input=value, max=self.max
                )
            )
        if msgs:
            raise ValidationError(
                msgs if len(msgs) > 1 else msgs[0], level=self.level
            )
        return value

