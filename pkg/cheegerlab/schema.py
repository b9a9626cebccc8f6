from collections import defaultdict

from marshmallow import (
    Schema,
    fields,
    validate,
    validates_schema,
    ValidationError as MarshmallowValidationError,
)

from cheegerlab import contrib


class RangeSchema(Schema):
    """
    Schema for range object
    {
        "range": {"min": field, "max": field, "level": "warn" | "error"}
    }
    """

    _min = fields.Field(attribute="min", data_key="min")
    _max = fields.Field(attribute="max", data_key="max")
    level = fields.String(validate=[validate.OneOf(["warn", "error"])])


class ValueValidatorSchema(Schema):
    """
    Schema for the validators declared on each setting
    """

    _range = fields.Nested(
        RangeSchema(), attribute="range", data_key="range", required=False
    )


class SettingSchema(Schema):
    """
    Declaration of one lab setting:
    {
        "title": str,
        "description": str,
        "notes": str,
        "type": str (limited to 'int', 'float'),
        "value": default value, type depends on "type" key,
        "validators": {"range": ...},
    }
    """

    title = fields.Str(required=True)
    description = fields.Str(required=True)
    notes = fields.Str(required=False)
    _type = fields.Str(
        required=True,
        validate=validate.OneOf(choices=["float", "int"]),
        attribute="type",
        data_key="type",
    )
    value = fields.Field(required=True)  # will be specified later
    validators = fields.Nested(
        ValueValidatorSchema(), required=False, load_default={}
    )


class OrderedSchema(Schema):
    """
    Schema that preserves the order of its fields.
    """

    class Meta:
        ordered = True


class BaseValidatorSchema(Schema):
    """
    Schema that validates setting adjustments such as:
    ```
    {
        "tol": 1e-10,
        "max_n": 20
    }
    ```

    Fields are type-checked by marshmallow first. `validate_settings` then
    applies the range validators declared in the defaults and
    stores warn-level problems apart from errors.
    """

    class Meta:
        ordered = True

    WRAPPER_MAP = {"range": "_get_range_validator"}

    def load(self, data, ignore_warnings):
        self.ignore_warnings = ignore_warnings
        try:
            return super().load(data)
        finally:
            self.ignore_warnings = False

    @validates_schema
    def validate_settings(self, data, **kwargs):
        """
        Validate every adjusted setting. Errors are stored until all
        settings have been validated.
        """
        warnings = defaultdict(list)
        errors = defaultdict(list)
        for name, value in data.items():
            _warnings, _errors = self.validate_setting(name, value)
            if _warnings:
                warnings[name] += _warnings
            if _errors:
                errors[name] += _errors
        if warnings and not self.ignore_warnings:
            errors["warnings"] = dict(warnings)
        if errors:
            raise MarshmallowValidationError(dict(errors))

    def validate_setting(self, name, value):
        """
        Do range validation for one setting.
        """
        validator_spec = self.context["spec"]._data[name]["validators"]
        validators = [
            getattr(self, self.WRAPPER_MAP[vname])(name, vdata)
            for vname, vdata in validator_spec.items()
        ]
        warnings = []
        errors = []
        for validator in validators:
            try:
                validator(value)
            except contrib.validate.ValidationError as ve:
                if ve.level == "warn":
                    warnings += ve.messages
                else:
                    errors += ve.messages
        return warnings, errors

    def _get_range_validator(self, name, range_dict):
        return contrib.validate.Range(
            min=range_dict.get("min"),
            max=range_dict.get("max"),
            error_min=f"{name} {{input}} < min {{min}}",
            error_max=f"{name} {{input}} > max {{max}}",
            level=range_dict.get("level"),
        )


INVALID_NUMBER = {"invalid": "Not a valid number: {input}."}


def get_type(data):
    types = {
        "int": contrib.fields.Int64(error_messages=INVALID_NUMBER),
        "float": contrib.fields.Float64(error_messages=INVALID_NUMBER),
    }
    return types[data["type"]]


class VerdictSchema(OrderedSchema):
    name = fields.Str()
    anchor = fields.Str()
    status = fields.Function(lambda verdict: verdict.status.value)
    holds = fields.Boolean()
    direction = fields.Str()
    lhs = contrib.fields.Rounded(allow_none=True)
    rhs = contrib.fields.Rounded(allow_none=True)
    slack = contrib.fields.Rounded(allow_none=True)
    tol = fields.Float()
    reason = fields.Str()
    dependencies = fields.Dict(keys=fields.Str(), values=fields.Str())


class CutSchema(OrderedSchema):
    members = fields.List(fields.Integer())
    boundary_size = fields.Integer()
    vol_S = fields.Integer()
    vol_complement = fields.Integer()


class GraphRecordSchema(OrderedSchema):
    graph_id = fields.Str()
    source = fields.Str()
    name = fields.Str()
    n = fields.Integer()
    m = fields.Integer()
    regular_degree = fields.Integer(allow_none=True)
    connected = fields.Boolean()
    bipartite = fields.Boolean()
    vertex_transitive = fields.Str(allow_none=True)
    spectrum = fields.List(contrib.fields.Rounded())
    multiplicities = fields.List(fields.Integer())
    h = contrib.fields.Rational()
    h_decimal = contrib.fields.Rounded(attribute="h_value")
    witness = fields.Nested(CutSchema)
    h_out = contrib.fields.Rational(allow_none=True)
    h_out_witness = fields.List(fields.Integer(), allow_none=True)
    c = contrib.fields.Rounded(allow_none=True)
    ratios = fields.Dict(
        keys=fields.Str(), values=contrib.fields.Rounded(), allow_none=True
    )
    verdicts = fields.List(fields.Nested(VerdictSchema))


class SummarySchema(OrderedSchema):
    checks_total = fields.Integer()
    holds = fields.Integer()
    skipped = fields.Integer()
    failed = fields.Integer()


class RunReportSchema(OrderedSchema):
    config = fields.Dict(keys=fields.Str())
    summary = fields.Nested(SummarySchema)
    graphs = fields.List(fields.Nested(GraphRecordSchema))
