"""Loops, the pairing p_{sigma,x0}, monodromy operators and the period matrix."""
import logging
import math
import typing

import numpy as np

from . import common
from . import config
from . import curve
from . import exact
from . import iterint
from . import paths
from . import reduce
from . import shuffle
from .integrator import IntegratorConfig

logger = logging.getLogger(config.LOGGER_NAME)


def default_radius(s, x0, poles: curve.PoleSet) -> float:
    s, x0 = complex(s), complex(x0)
    nearest = poles.nearest_other_distance(s)
    candidates = [nearest] if math.isfinite(nearest) else []
    if x0 != s:
        candidates.append(abs(x0 - s))
    return 0.25 * min(candidates) if candidates else 0.25


def loop_around(s, x0, radius: typing.Optional[float] = None, poles: typing.Optional[curve.PoleSet] = None) -> paths.Loop:
    """x0 -> entry point on the circle |z - s| = radius -> one counterclockwise turn -> back to x0."""
    center, base = complex(exact.coerce(s)), complex(exact.coerce(x0))
    others = [complex(p) for p in poles if complex(p) != center] if poles is not None else []
    if radius is None:
        radius = default_radius(center, base, poles) if poles is not None else 0.25 * max(abs(base - center), 1.0)
    radius = float(radius)
    if radius <= 0:
        raise common.InfeasibleRadius(f'Loop radius must be positive, got {radius}')
    if others:
        nearest = min(abs(center - p) for p in others)
        if radius >= nearest / 2:
            raise common.InfeasibleRadius(
                f'Radius {radius} around {center} must stay below half the distance {nearest} to the next pole',
            )
    if base != center and radius >= abs(base - center):
        raise common.InfeasibleRadius(f'Radius {radius} reaches the basepoint {base} from {center}')

    # a basepoint at the center itself gets the stick along the positive real direction
    direction = (base - center) / abs(base - center) if base != center else 1.0 + 0j
    entry = center + radius * direction
    stick = paths.straight_path(base, entry, others)
    theta = math.atan2(direction.imag, direction.real)
    circle = paths.Path(entry, [paths.ArcSegment(center, radius, theta, theta + 2 * math.pi)])
    loop = stick.concat(circle).concat(stick.reversed())
    label = f'gamma[{exact.to_string(exact.coerce(s))}]'
    return paths.Loop.from_path(loop, label)


def compose(first: paths.Loop, second: paths.Loop) -> paths.Loop:
    return first.compose(second)


def inverse(loop: paths.Loop) -> paths.Loop:
    return loop.inverse()


def pairing(
        loop: paths.Loop,
        sigma: curve.Section,
        weight: typing.Optional[int] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> iterint.GroupLikeSeries:
    """a -> p_{sigma,x0}(loop, a) = I_{x0}(sigma(a)) at the end of the loop."""
    if not loop.is_closed():
        raise ValueError(f'Pairing needs a closed loop, {loop!r} ends at {loop.endpoint}')
    return iterint.j_element(loop, sigma, cfg, weight=weight)


class MonodromyOperator:
    """Weight-truncated operator on the word basis, rows and columns in (weight, lex) order.

    Entry (w, w'') is the series value at w' when w = w'w'', zero otherwise.
    For a loop this is the continuation L_w -> sum p(loop, w') L_{w''}.
    """

    def __init__(self, alphabet: shuffle.Alphabet, weight: int, words: typing.Sequence, matrix: np.ndarray, label: str = ''):
        self.alphabet = alphabet
        self.weight = weight
        self.words = [tuple(word) for word in words]
        self.position = {word: i for i, word in enumerate(self.words)}
        self.matrix = np.asarray(matrix, dtype=complex)
        self.label = label

    @classmethod
    def from_series(cls, series: iterint.GroupLikeSeries, letters: typing.Sequence, label: str = '') -> 'MonodromyOperator':
        words = shuffle.words_up_to(letters, series.weight)
        position = {word: i for i, word in enumerate(words)}
        matrix = np.zeros((len(words), len(words)), dtype=complex)
        for word, row in position.items():
            for cut in range(len(word) + 1):
                matrix[row, position[word[cut:]]] = series.value(word[:cut])
        return cls(series.alphabet, series.weight, words, matrix, label)

    @classmethod
    def identity(cls, alphabet: shuffle.Alphabet, letters: typing.Sequence, weight: int) -> 'MonodromyOperator':
        words = shuffle.words_up_to(letters, weight)
        return cls(alphabet, weight, words, np.eye(len(words), dtype=complex), 'id')

    def entry(self, word, suffix) -> complex:
        return complex(self.matrix[self.position[tuple(word)], self.position[tuple(suffix)]])

    def __matmul__(self, other: 'MonodromyOperator') -> 'MonodromyOperator':
        if self.words != other.words:
            raise common.AlphabetMismatch('Operators over different word bases')
        return MonodromyOperator(
            self.alphabet, self.weight, self.words, self.matrix @ other.matrix, f'{self.label}*{other.label}',
        )

    def distance(self, other: 'MonodromyOperator') -> float:
        return float(np.max(np.abs(self.matrix - other.matrix)))

    def apply(self, tensor: shuffle.ShuffleTensor) -> typing.Dict[shuffle.Word, complex]:
        """Continuation of L_t expressed in the basis L_w."""
        if tensor.alphabet.id != self.alphabet.id:
            raise common.AlphabetMismatch(f'{tensor.alphabet!r} vs {self.alphabet!r}')
        row = np.zeros(len(self.words), dtype=complex)
        for word, coeff in tensor.items():
            if word not in self.position:
                raise ValueError(f'Word of weight {len(word)} beyond truncation {self.weight}')
            row[self.position[word]] += complex(coeff)
        image = row @ self.matrix
        return {word: complex(value) for word, value in zip(self.words, image) if value}

    def to_json(self) -> dict:
        return {
            'label': self.label,
            'weight': self.weight,
            'words': [[self.alphabet.letter_to_json(letter) for letter in word] for word in self.words],
            'matrix': [[common.complex_to_json(value) for value in row] for row in self.matrix],
        }


def monodromy_operator(
        loop: paths.Loop,
        sigma: curve.Section,
        weight: typing.Optional[int] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> MonodromyOperator:
    series = pairing(loop, sigma, weight, cfg)
    return MonodromyOperator.from_series(series, sigma.poles.points, loop.label)


def transport_operator(
        path: paths.Path,
        sigma: curve.Section,
        weight: typing.Optional[int] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> MonodromyOperator:
    """Basepoint change x0 -> x1: t -> sum I_{x0}(sigma(t'))(x1) t''."""
    series = iterint.j_element(path, sigma, cfg, weight=weight)
    return MonodromyOperator.from_series(series, sigma.poles.points, f'transport[{path.base}->{path.endpoint}]')


def _is_suffix(suffix: tuple, word: tuple) -> bool:
    return len(suffix) <= len(word) and word[len(word) - len(suffix):] == suffix


def unipotence_check(operator: MonodromyOperator, tolerance: float = config.UNIPOTENCE_TOLERANCE) -> bool:
    """(M - Id)^{N+1} = 0: exact weight structure, then the numeric power."""
    words = operator.words
    matrix = operator.matrix
    for i, word in enumerate(words):
        for j, other in enumerate(words):
            value = matrix[i, j]
            if i == j:
                if value != 1:
                    return False
            elif len(other) >= len(word) and value != 0:
                return False
    nilpotent = matrix - np.eye(len(words))
    power = np.linalg.matrix_power(nilpotent, operator.weight + 1)
    residual = float(np.max(np.abs(power))) if power.size else 0.0
    logger.debug(f'Unipotence residual of {operator.label}: {residual:.3e}')
    return residual < tolerance


def suffix_structure_holds(operator: MonodromyOperator) -> bool:
    """Entries vanish unless the column word is a suffix of the row word."""
    for i, word in enumerate(operator.words):
        for j, other in enumerate(operator.words):
            if operator.matrix[i, j] != 0 and not _is_suffix(other, word):
                return False
    return True


def period_matrix(
        poles: curve.PoleSet,
        sigma: typing.Optional[curve.Section] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
        x0=None,
) -> np.ndarray:
    """Entry (s, t) = integral of sigma(h_t) over the loop around s."""
    sigma = sigma or curve.section_sigma0(poles)
    x0 = reduce.default_basepoint(poles) if x0 is None else exact.coerce(x0)
    matrix = np.zeros((len(poles), len(poles)), dtype=complex)
    for row, s in enumerate(poles):
        series = pairing(loop_around(s, x0, poles=poles), sigma, 1, cfg)
        for column, t in enumerate(poles):
            matrix[row, column] = series.value((t,))
    logger.info(f'Period matrix over {poles!r}: determinant {np.linalg.det(matrix):.6g}')
    return matrix
