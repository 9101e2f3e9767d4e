import os
import sys
import json
from typing import Any
from yaml import safe_load
from datetime import datetime
from src.exception import MyException


def get_current_timestamp() -> str:
    """
    Get the current timestamp formatted as 'day-month-year_hour-minute-second'.

    Returns:
        str: Formatted current timestamp.
    """
    return datetime.now().strftime("%d-%b-%y_%H-%M-%S")


def read_yaml_file(filepath: str, **kwargs) -> Any:
    """
    Read and parse a YAML file safely.

    Args:
        filepath (str): Full path to the YAML file.

    Returns:
        Any: Parsed data from YAML file.

    Raises:
        MyException: If reading or parsing fails.
    """
    try:
        with open(filepath, "r") as f:
            data = safe_load(f, **kwargs)
        return data

    except Exception as e:
        raise MyException(e, sys) from e


def read_json_file(filepath: str) -> Any:
    """
    Read and parse a JSON file.

    Args:
        filepath (str): Path to the JSON file.

    Returns:
        Any: Parsed data.

    Raises:
        MyException: If reading or parsing fails.
    """
    try:
        with open(filepath, "r") as f:
            return json.load(f)

    except Exception as e:
        raise MyException(e, sys) from e


def dump_json(data: Any) -> str:
    """
    Render data as deterministic JSON text (sorted keys, fixed indentation).

    Args:
        data (Any): JSON-serialisable data.

    Returns:
        str: The JSON document.
    """
    return json.dumps(data, sort_keys=True, indent=4)


def save_as_json(data: dict, filepath: str, **kwargs) -> None:
    """
    Save a dictionary as a JSON file with sorted keys.

    Args:
        data (dict): Dictionary to save.
        filepath (str): Location where the JSON file will be saved.
        **kwargs: Additional keyword arguments for json.dump().

    Raises:
        MyException: If saving fails.
    """
    try:
        dirpath = os.path.dirname(filepath)
        if dirpath:
            os.makedirs(dirpath, exist_ok=True)
        kwargs.setdefault("indent", 4)
        with open(filepath, "w") as f:
            json.dump(data, f, sort_keys=True, **kwargs)
    except Exception as e:
        raise MyException(e, sys) from e
