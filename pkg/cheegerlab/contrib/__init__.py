from cheegerlab.contrib.validate import Range
from cheegerlab.contrib.fields import (
    Float64,
    Int64,
    Rounded,
    Rational,
)


__all__ = [
    "Range",
    "Float64",
    "Int64",
    "Rounded",
    "Rational",
]
