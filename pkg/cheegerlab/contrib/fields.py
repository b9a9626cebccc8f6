from fractions import Fraction

import numpy as np
from marshmallow import fields as marshmallow_fields

from cheegerlab import utils


class NumPySerializeMixin:
    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return value.tolist() if hasattr(value, "tolist") else value


class Float64(NumPySerializeMixin, marshmallow_fields.Number):
    """
    Implements the "float" setting type. Deserialized as `numpy.float64`,
    serialized as a plain float.
    """

    num_type = np_type = np.float64


class Int64(NumPySerializeMixin, marshmallow_fields.Number):
    """
    Implements the "int" setting type. Deserialized as `numpy.int64`,
    serialized as a plain int.
    """

    num_type = np_type = np.int64


class Rounded(marshmallow_fields.Float):
    """
    Float rounded to `places` decimals on output. Keeps report files stable
    across platforms since every tolerance in use is far above 1e-12.
    """

    def __init__(self, places=12, **kwargs):
        self.places = places
        super().__init__(**kwargs)

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        value = round(float(value), self.places)
        # no "-0.0" in reports
        return value + 0.0


class Rational(marshmallow_fields.Field):
    """
    `fractions.Fraction` serialized as "p/q".
    """

    default_error_messages = {"invalid": "Not a valid rational: {input}"}

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return utils.format_rational(Fraction(value))

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return Fraction(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise self.make_error("invalid", input=value)
