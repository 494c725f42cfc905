import enum

from typing import Union

from relaxlab.errors import DistanceOverflowError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


class _Unreachable(enum.Enum):
    """Sentinel for the distance of a vertex no relaxation has reached"""

    UNREACHABLE = "unreachable"

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __str__(self) -> str:
        return "UNREACHABLE"


UNREACHABLE = _Unreachable.UNREACHABLE

ExtendedDistance = Union[int, _Unreachable]


def is_finite(d: ExtendedDistance) -> bool:
    return d is not UNREACHABLE


def check_int64(value: int) -> int:
    """Return value unchanged, or raise if it does not fit in 64 bits"""
    if value < INT64_MIN or value > INT64_MAX:
        raise DistanceOverflowError(
            "{} is outside the signed 64-bit range".format(value)
        )
    return value


def extended_add(d: ExtendedDistance, weight: int) -> ExtendedDistance:
    if d is UNREACHABLE:
        return UNREACHABLE
    return check_int64(d + weight)


def extended_min(a: ExtendedDistance, b: ExtendedDistance) -> ExtendedDistance:
    if a is UNREACHABLE:
        return b
    if b is UNREACHABLE:
        return a
    return min(a, b)


def to_json(d: ExtendedDistance) -> Union[int, None]:
    """UNREACHABLE is written as null"""
    return None if d is UNREACHABLE else d


def from_json(value: Union[int, None]) -> ExtendedDistance:
    return UNREACHABLE if value is None else value
