import hashlib
import json
import os
from collections import OrderedDict
from fractions import Fraction

EXAMPLES = {
    "petersen": "petersen.txt",
    "z5": "z5.group",
    "z6": "z6.group",
    "z7": "z7.group",
    "z9": "z9.group",
}


def read_json(path):
    """
    Read JSON file shortcut
    """
    if isinstance(path, str) and os.path.exists(path):
        with open(path, "r") as f:
            r = json.loads(f.read(), object_pairs_hook=OrderedDict)
        return r
    elif isinstance(path, dict):
        return path
    else:
        return json.loads(path)


def read_text(path_or_text, error=ValueError):
    """
    Return the contents of a file if `path_or_text` names one, otherwise
    treat the argument as the document itself. A file that cannot be read
    as UTF-8 text raises `error` with one message.
    """
    if "\n" not in path_or_text and os.path.exists(path_or_text):
        try:
            with open(path_or_text, "r", encoding="utf-8") as f:
                return f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise error(f"cannot read {path_or_text}: {e}")
    return path_or_text


def get_example_paths(name):
    assert name in EXAMPLES, f"unknown example {name}"
    current_path = os.path.abspath(os.path.dirname(__file__))
    return os.path.join(current_path, "examples", EXAMPLES[name])


def ravel(nested):
    """ only up to 2D for now. """
    if not isinstance(nested, list):
        return nested
    raveled = []
    for maybe_list in nested:
        if isinstance(maybe_list, list):
            raveled.extend(maybe_list)
        else:
            raveled.append(maybe_list)
    return raveled


def content_lines(text):
    """
    Yield (line number, stripped line) for every line that is neither blank
    nor a '#' comment.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def is_integer(token: str, signed: bool = False) -> bool:
    """
    True for an ASCII decimal integer, with a leading minus if `signed`.
    `str.isdigit` alone also accepts digits such as "²" that `int` rejects.
    """
    if signed and token.startswith("-"):
        token = token[1:]
    return token.isascii() and token.isdecimal()


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def stable_seed(seed: int, key: str) -> int:
    """
    Derive a per-item seed from a run seed and a string key. The result does
    not depend on processing order, so concurrent runs stay reproducible.
    """
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
