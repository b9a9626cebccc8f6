import json
import os
from collections import OrderedDict, defaultdict
from typing import Dict, Optional

from marshmallow import ValidationError as MarshmallowValidationError

from cheegerlab import utils
from cheegerlab.exceptions import (
    SettingNameCollisionException,
    ValidationError,
    collision_list,
)
from cheegerlab.schema_factory import SchemaFactory

DEFAULTS_PATH = os.path.join(
    os.path.abspath(os.path.dirname(__file__)), "defaults.json"
)


class LabConfig:
    """
    Tolerances, limits and seeds of a run. Every setting is declared in
    `defaults.json` with its type and validators and is exposed as an
    attribute:

    .. code-block:: python

        config = LabConfig({"tol": 1e-10})
        config.tol
        config.adjust({"max_n": 20})
    """

    defaults = DEFAULTS_PATH

    def __init__(self, overrides: Optional[dict] = None):
        schemafactory = SchemaFactory(self.defaults)
        _, self._validator_schema, self._data = schemafactory.schemas()
        self._validator_schema.context["spec"] = self
        self._warnings = {}
        self._errors = {}
        for name in self._data:
            if name in collision_list:
                raise SettingNameCollisionException(
                    f"The setting name, '{name}', is already used by the "
                    f"LabConfig object."
                )
        self._set_state()
        if overrides:
            self.adjust(overrides)

    def read_params(self, params_or_path):
        """
        Raises:
            ValidationError if the argument is neither a dict, a JSON
                string nor a readable JSON file.
        """
        try:
            if isinstance(params_or_path, str) and os.path.exists(
                params_or_path
            ):
                params = utils.read_json(params_or_path)
            elif isinstance(params_or_path, str):
                params = json.loads(params_or_path)
            elif isinstance(params_or_path, dict):
                params = params_or_path
            else:
                raise ValueError("params_or_path is not dict or file path")
        except (OSError, ValueError) as e:
            raise ValidationError(
                messages={
                    "errors": {"schema": [f"unreadable settings: {e}"]},
                    "warnings": {},
                }
            )
        return params

    def adjust(self, params_or_path, ignore_warnings=False, raise_errors=True):
        """
        Deserialize and validate setting adjustments. `params_or_path` can
        be a file path, a JSON string or a `dict`. The adjusted values
        replace the current values of the corresponding attributes.

        Returns: parsed, validated settings.

        Raises:
            ValidationError if any value has the wrong type, is out of
                range, or names an unknown setting. Warn-level problems
                count as errors unless `ignore_warnings` is set.
        """
        params = self.read_params(params_or_path)
        # keep values from an earlier call from leaking into this one
        self._errors, self._warnings = {}, {}

        parsed_params = {}
        try:
            parsed_params = self._validator_schema.load(
                params, ignore_warnings
            )
        except MarshmallowValidationError as ve:
            self._parse_validation_messages(ve.messages)

        has_errors = bool(self._errors.get("messages"))
        has_warnings = bool(self._warnings.get("messages"))
        if (raise_errors and has_errors) or (
            not ignore_warnings and has_warnings
        ):
            raise self.validation_error
        if has_errors:
            return {}

        for name, value in parsed_params.items():
            self._data[name]["value"] = value
        self._set_state(parsed_params.keys())
        return parsed_params

    @property
    def errors(self):
        if not self._errors:
            return {}
        return {
            name: utils.ravel(messages)
            for name, messages in self._errors["messages"].items()
        }

    @property
    def warnings(self):
        if not self._warnings:
            return {}
        return {
            name: utils.ravel(messages)
            for name, messages in self._warnings["messages"].items()
        }

    @property
    def validation_error(self):
        messages = {
            "errors": self._errors.get("messages", {}),
            "warnings": self._warnings.get("messages", {}),
        }
        return ValidationError(messages=messages)

    def dump(self) -> Dict:
        """Current values as plain Python scalars, in declaration order."""
        return OrderedDict((name, getattr(self, name)) for name in self)

    def _set_state(self, names=None):
        for name in names if names is not None else self._data:
            value = self._data[name]["value"]
            if hasattr(value, "tolist"):
                value = value.tolist()
            setattr(self, name, value)

    def _parse_validation_messages(self, messages):
        """Parse validation messages from marshmallow"""
        messages = dict(messages)
        if messages.get("warnings"):
            self._warnings = self._parse_errors(messages.pop("warnings"))
        self._errors = self._parse_errors(messages)

    def _parse_errors(self, messages):
        """
        Marshmallow reports type errors as {"name": [msg, ...]} and the
        validators' messages the same way; unknown settings arrive as
        {"name": ["Unknown field."]}.

        Returns:
            {"messages": {"name": [msg, ...], "schema": [...]}} or {} if
            there is nothing to report.
        """
        if not messages:
            return {}
        error_info = {"messages": defaultdict(list)}
        for name, data in messages.items():
            if name == "_schema":
                error_info["messages"]["schema"] += [
                    f"Data format error: {data}"
                ]
                continue
            if data == ["Unknown field."]:
                error_info["messages"]["schema"] += [
                    f"Unknown setting: {name}"
                ]
                continue
            error_info["messages"][name] += utils.ravel(list(data))
        return error_info

    def __iter__(self):
        return iter(self._data)

    def keys(self):
        """
        Return setting names.
        """
        return self._data.keys()

    def items(self):
        """
        Iterate using python dictionary .items() syntax.
        """
        for name in self:
            yield name, getattr(self, name)

    def to_dict(self):
        """
        Return instance as python dictionary.
        """
        return dict(self.items())
