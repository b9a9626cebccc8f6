from marshmallow import fields

from cheegerlab.schema import (
    BaseValidatorSchema,
    OrderedSchema,
    SettingSchema,
    get_type,
)
from cheegerlab import utils


class SchemaFactory:
    """
    Uses data from a defaults file declaring every setting to build:
    - a schema that reads and validates the declarations themselves
    - a validator schema (`schema.BaseValidatorSchema`) that reads
      adjustments, checks their types and applies the declared validators.
    """

    def __init__(self, defaults):
        self.defaults = utils.read_json(defaults)

    def schemas(self):
        """
        For each declared setting, specialize `SettingSchema` so that its
        "value" is read with the setting's own field type, and add the same
        field to the validator schema.

        Returns:
            (defaults_schema, validator_schema, loaded declarations)
        """
        declaration_dict = {}
        validator_dict = {}
        for k, v in self.defaults.items():
            fieldtype = get_type(v)
            declaration_dict[k] = type(
                "IndividualSettingSchema",
                (SettingSchema,),
                {"value": fieldtype},
            )
            validator_dict[k] = get_type(v)

        classattrs = {
            k: fields.Nested(v) for k, v in declaration_dict.items()
        }
        DefaultsSchema = type("DefaultsSchema", (OrderedSchema,), classattrs)
        defaults_schema = DefaultsSchema()

        ValidatorSchema = type(
            "ValidatorSchema", (BaseValidatorSchema,), validator_dict
        )
        validator_schema = ValidatorSchema()

        return (
            defaults_schema,
            validator_schema,
            defaults_schema.load(self.defaults),
        )
