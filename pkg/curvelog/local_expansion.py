"""Hyperlogarithms near a pole s as elements of O(D*)[log(z - s)]."""
import cmath
import logging
import math
import typing

from . import common
from . import config
from . import curve
from . import hyperlog
from . import iterint
from . import paths
from . import series
from .integrator import IntegratorConfig

logger = logging.getLogger(config.LOGGER_NAME)


class LogLaurentExpansion:
    """sum_{j <= J, k <= K} c_{j,k} (z - s)^j log^k(z - s), valid for 0 < |z - s| < radius."""

    def __init__(
            self,
            word: typing.Tuple,
            poles: curve.PoleSet,
            center,
            radius: float,
            coefficients: series.LogLaurentSeries,
            reference: typing.Optional[complex] = None,
    ):
        self.word = tuple(word)
        self.poles = poles
        self.center = poles.points[poles.index(center)]
        self.radius = radius
        self.series = coefficients
        self.reference = reference

    @property
    def order(self) -> int:
        return self.series.order

    @property
    def log_degree(self) -> int:
        return self.series.log_degree

    @property
    def min_power(self) -> int:
        return self.series.min_power

    @property
    def direction(self) -> complex:
        return self.series.direction

    def coefficient(self, j: int, k: int) -> complex:
        return self.series.coefficient(j, k)

    def items(self):
        return self.series.items()

    def _with_series(self, coefficients: series.LogLaurentSeries) -> 'LogLaurentExpansion':
        return LogLaurentExpansion(self.word, self.poles, self.center, self.radius, coefficients, self.reference)

    def __repr__(self):
        word = [self.poles.label(s) for s in self.word]
        return (
            f'LogLaurentExpansion({word} at {self.poles.label(self.center)}, '
            f'J={self.order}, K={self.log_degree}, radius={self.radius})'
        )

    def to_json(self) -> dict:
        return {
            'word': [self.poles.label(s) for s in self.word],
            'center': self.poles.label(self.center),
            'radius': self.radius if math.isfinite(self.radius) else None,
            'branch': common.complex_to_json(self.direction),
            'terms': [
                {'j': j, 'k': k, 'coeff': common.complex_to_json(c)}
                for (j, k), c in self.items()
                if abs(c) > config.COEFFICIENT_CUTOFF
            ],
        }


def _check_point(points: typing.Sequence[complex], center: complex, radius: float):
    for z in points:
        distance = abs(z - center)
        if distance <= 0 or distance >= radius:
            raise common.OutsideDisk(f'{z} is not in the punctured disk of radius {radius} at {center}')


def expand_at(
        word,
        s,
        poles: curve.PoleSet,
        order: int = config.DEFAULT_EXPANSION_ORDER,
        log_degree: typing.Optional[int] = None,
        sigma: typing.Optional[curve.Section] = None,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> LogLaurentExpansion:
    """Expansion of L_w at the pole s up to (z - s)^order and log^log_degree.

    The constants are matched against L_w at one reference point and checked
    at a second point a quarter turn away on the same circle.
    """
    if sigma is not None and not sigma.is_sigma0:
        raise common.DomainError('Hyperlogarithm expansions are taken for the section sigma_0')
    if order < 0 or (log_degree is not None and log_degree < 0):
        raise ValueError(f'Truncation orders must be >= 0, got J={order}, K={log_degree}')
    word = hyperlog._as_word(poles, word)
    log_degree = len(word) if log_degree is None else log_degree
    working_order = max(order, config.DEFAULT_EXPANSION_ORDER)
    expansions, reference = hyperlog.matched_expansions([word], s, poles, working_order, path, cfg)
    full = expansions[word]
    if full.log_degree > log_degree:
        raise common.InsufficientLogDegree(
            f'L_w at {poles.label(s)} has log degree {full.log_degree}, asked for K={log_degree}',
        )
    center = complex(poles.points[poles.index(s)])
    radius = hyperlog.expansion_radius(poles, s)
    _matching_check(word, full, center, radius, reference, poles, path, cfg)
    truncated = full.truncate(order, log_degree)
    return LogLaurentExpansion(word, poles, s, radius, truncated, reference)


def _matching_check(word, full, center, radius, reference, poles, path, cfg):
    if reference is None:
        distance = min(0.5 * radius, hyperlog.seed_point(poles))
        angle = 0.0
        start = center + distance
        base_path = None
    else:
        distance = abs(reference - center)
        angle = cmath.phase(reference - center)
        start = reference
        base_path = path or hyperlog.default_path_class(reference, poles)
    arc = paths.Path(start, [paths.ArcSegment(center, distance, angle, angle + math.pi / 4)])
    check_point = arc.endpoint
    if base_path is None:
        check_path = hyperlog.default_path_class(start, poles).concat(arc)
    else:
        check_path = base_path.concat(arc)
    direct = hyperlog.eval_L_many([word], check_point, poles, check_path, cfg)[word]
    expanded = full.evaluate(check_point)
    residual = abs(direct - expanded)
    logger.info(f'Expansion of {[poles.label(s) for s in word]} at {center}: matching residual {residual:.3e}')
    if residual > config.MATCHING_CHECK_TOLERANCE * max(1.0, abs(direct)):
        raise common.MatchingFailure(f'Expansion at {center} disagrees by {residual:.3e} at {check_point}')


def evaluate_expansion(expansion: LogLaurentExpansion, z) -> complex:
    z = complex(z)
    _check_point([z], complex(expansion.center), expansion.radius)
    return expansion.series.evaluate(z)


def shift_sheet(expansion: LogLaurentExpansion, turns: int = 1) -> LogLaurentExpansion:
    """log(z - s) -> log(z - s) + 2 pi i turns: the continuation after `turns` loops around s."""
    return expansion._with_series(expansion.series.shift_sheet(turns))


def unipotence_degree(expansion: LogLaurentExpansion, tolerance: float = config.UNIPOTENCE_TOLERANCE) -> int:
    """Smallest n with (shift - 1)^{n+1} e below the tolerance, relative to the size of e."""
    scale = max(1.0, expansion.series.max_abs())
    difference = expansion.series
    for n in range(expansion.log_degree + 1):
        difference = difference.shift_sheet(1) - difference
        if difference.max_abs() < tolerance * scale:
            return n
    return expansion.log_degree
