import itertools
import json
import logging
import typing

from . import config

logger = logging.getLogger(config.LOGGER_NAME)


class CurvelogError(RuntimeError):
    pass


class DomainError(CurvelogError):
    pass


class AlphabetMismatch(DomainError):
    pass


class PoleSetMismatch(DomainError):
    pass


class PoleEvaluation(DomainError):
    pass


class InexactPoles(DomainError):
    pass


class InfeasibleRadius(DomainError):
    pass


class RepeatedPoints(DomainError):
    pass


class DivergentWord(DomainError):
    pass


class OutsideDisk(DomainError):
    pass


class AugmentationError(DomainError):
    pass


class InsufficientLogDegree(DomainError):
    pass


class NumericFailure(CurvelogError):
    pass


class PathTooClose(NumericFailure):
    pass


class StepLimitExceeded(NumericFailure):
    pass


class MatchingFailure(NumericFailure):
    pass


def complex_to_json(value: complex) -> typing.List[float]:
    value = complex(value)
    return [value.real, value.imag]


def complex_from_json(data) -> complex:
    if isinstance(data, (list, tuple)):
        re, im = data
        return complex(float(re), float(im))
    return complex(data)


def dump_to_json(data) -> str:
    return json.dumps(data, indent=4, ensure_ascii=False)


def pairwise(iterable):
    a, b = itertools.tee(iterable)
    next(b, None)
    return zip(a, b)


def min_pairwise_distance(points: typing.Sequence[complex]) -> typing.Optional[float]:
    distances = [
        abs(complex(p) - complex(q))
        for p, q in itertools.combinations(points, 2)
    ]
    if not distances:
        return None
    return min(distances)


def pole_guard(points: typing.Sequence[complex]) -> float:
    nearest = min_pairwise_distance(points)
    if nearest is None:
        return config.POLE_GUARD_ABS
    return max(config.POLE_GUARD_ABS, config.POLE_GUARD_REL * nearest)
