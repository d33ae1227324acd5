from pathlib import Path
from typing import Dict, Union
from pointseg.errors import ValidationError

"""
Line-based `key = value` config files. `#` starts a comment; blank lines are ignored.
"""


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    """
    :param text: The config text.
    :param source: The name of the text's origin, used in error messages.

    :return: The values keyed by name, in file order.
    """

    values: Dict[str, str] = dict()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line == "":
            continue
        if "=" not in line:
            raise ValidationError(f"{source}:{number}: expected `key = value`, got: {line}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key == "":
            raise ValidationError(f"{source}:{number}: missing key")
        if key in values:
            raise ValidationError(f"{source}:{number}: duplicate key: {key}")
        values[key] = value.strip()
    return values


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    :param path: The path to the config file.

    :return: The values keyed by name.
    """

    path = Path(path)
    if not path.exists():
        raise ValidationError(f"Config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"), source=str(path))


def write_config_text(values: Dict[str, str]) -> str:
    """
    :param values: The values keyed by name.

    :return: The config text, one `key = value` line per entry.
    """

    return "".join(f"{key} = {value}\n" for key, value in values.items())
