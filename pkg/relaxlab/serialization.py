import json

from typing import Any, Dict, List, Optional, TextIO, Union

from relaxlab.engine import NEVER, StepCount
from relaxlab.errors import FormatError


class JsonObjectReader:
    """Typed access to the fields of one decoded JSON object.

    Every accessor raises FormatError naming the document context and the
    offending key, so loaders never leak KeyError or TypeError."""

    def __init__(self, obj: Any, context: str) -> None:
        if not isinstance(obj, dict):
            raise FormatError("{}: expected a JSON object".format(context))
        self._obj = obj
        self._context = context

    @property
    def context(self) -> str:
        return self._context

    def has(self, key: str) -> bool:
        return key in self._obj

    def read_raw(self, key: str) -> Any:
        try:
            return self._obj[key]
        except KeyError:
            raise self._error(key, "missing") from None

    def read_int(self, key: str, minimum: Optional[int] = None) -> int:
        value = self.read_raw(key)
        if not _is_int(value):
            raise self._error(key, "expected an integer")
        if minimum is not None and value < minimum:
            raise self._error(key, "must be at least {}".format(minimum))
        return value

    def read_str(self, key: str) -> str:
        value = self.read_raw(key)
        if not isinstance(value, str):
            raise self._error(key, "expected a string")
        return value

    def read_int_list(self, key: str) -> List[int]:
        value = self.read_raw(key)
        if not isinstance(value, list) or not all(_is_int(v) for v in value):
            raise self._error(key, "expected a list of integers")
        return value

    def read_list(self, key: str) -> List[Any]:
        value = self.read_raw(key)
        if not isinstance(value, list):
            raise self._error(key, "expected a list")
        return value

    def read_optional_int_list(self, key: str) -> List[Optional[int]]:
        """List whose entries are integers or null"""
        value = self.read_list(key)
        if not all(v is None or _is_int(v) for v in value):
            raise self._error(key, "expected a list of integers or null")
        return value

    def read_int_rows(self, key: str, width: Optional[int] = None) -> List[List[int]]:
        """List of integer lists, optionally all of one width"""
        value = self.read_raw(key)
        if not isinstance(value, list):
            raise self._error(key, "expected a list of lists")
        for row in value:
            if not isinstance(row, list) or not all(_is_int(v) for v in row):
                raise self._error(key, "expected lists of integers")
            if width is not None and len(row) != width:
                raise self._error(key, "rows must have {} entries".format(width))
        return value

    def read_object(self, key: str) -> "JsonObjectReader":
        return JsonObjectReader(
            self.read_raw(key), "{}.{}".format(self._context, key)
        )

    def _error(self, key: str, problem: str) -> FormatError:
        return FormatError("{}: field '{}' {}".format(self._context, key, problem))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def read_document(f: TextIO, context: str) -> JsonObjectReader:
    try:
        obj = json.load(f)
    except json.JSONDecodeError as exc:
        raise FormatError("{}: invalid JSON ({})".format(context, exc)) from exc
    return JsonObjectReader(obj, context)


def write_document(obj: Dict[str, Any], f: TextIO) -> None:
    json.dump(obj, f, indent=None, separators=(",", ":"))
    f.write("\n")


def step_count_to_json(value: StepCount) -> Union[int, str]:
    return "NEVER" if value is NEVER else value


def step_count_from_json(value: Union[int, str]) -> StepCount:
    if value == "NEVER":
        return NEVER
    if not _is_int(value):
        raise FormatError("step count must be an integer or \"NEVER\"")
    return value
