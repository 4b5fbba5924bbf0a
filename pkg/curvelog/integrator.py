"""Adaptive Dormand-Prince 5(4) integration of linear word systems along paths."""
import logging
import typing

import numpy as np
import pydantic

from . import common
from . import config
from . import curve
from . import paths

logger = logging.getLogger(config.LOGGER_NAME)

# Dormand-Prince tableau
C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
E = B5 - B4


class IntegratorConfig(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    rtol: float = config.DEFAULT_RTOL
    atol: float = config.DEFAULT_ATOL
    max_steps: int = config.DEFAULT_MAX_STEPS
    weight: int = config.DEFAULT_WEIGHT

    @pydantic.field_validator('rtol', 'atol')
    @classmethod
    def tolerance_positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError(f'Tolerance must be positive, got {value}')
        return value

    @pydantic.field_validator('max_steps')
    @classmethod
    def steps_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f'max_steps must be >= 1, got {value}')
        return value

    @pydantic.field_validator('weight')
    @classmethod
    def weight_non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f'Truncation weight must be >= 0, got {value}')
        return value

    def with_overrides(self, **overrides) -> 'IntegratorConfig':
        data = self.model_dump()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return IntegratorConfig(**data)


class LetterBank:
    """Vectorized evaluation of a list of differentials at a point.

    Each differential is expanded into unit monomials z^n dz and (z - s)^-k dz;
    the values are a fixed linear combination of the monomial values.
    """

    def __init__(self, forms: typing.Sequence[curve.Differential]):
        monomials = {}
        rows = []
        for form in forms:
            row = {}
            for monomial, coeff in form.monomials():
                (key, _), = monomial.function.terms()
                index = monomials.setdefault(key, len(monomials))
                row[index] = row.get(index, 0) + complex(coeff)
            rows.append(row)
        self.size = len(forms)
        self.monomials = [
            (key[1], None, 0) if key[0] == 'power' else (0, complex(key[1]), key[2])
            for key in monomials
        ]
        self.matrix = np.zeros((len(forms), len(self.monomials)), dtype=complex)
        for i, row in enumerate(rows):
            for j, value in row.items():
                self.matrix[i, j] = value

    def evaluate(self, z: complex) -> np.ndarray:
        if not self.monomials:
            return np.zeros(self.size, dtype=complex)
        monomial_values = np.array(
            [z ** n if center is None else (z - center) ** -k for n, center, k in self.monomials],
            dtype=complex,
        )
        return self.matrix @ monomial_values


class WordSystem:
    """The triangular linear system dF_w = F_{w minus last letter} * omega_last over a prefix trie."""

    def __init__(
            self,
            words: typing.Iterable[typing.Sequence],
            letter_form: typing.Callable[[typing.Any], curve.Differential],
    ):
        self.nodes = [()]
        self.index = {(): 0}
        parents = [0]
        letter_ids = [0]
        letters = {}
        for word in words:
            word = tuple(word)
            for i in range(1, len(word) + 1):
                prefix = word[:i]
                if prefix in self.index:
                    continue
                self.index[prefix] = len(self.nodes)
                self.nodes.append(prefix)
                parents.append(self.index[prefix[:-1]])
                letter_ids.append(letters.setdefault(prefix[-1], len(letters)))
        self.parents = np.array(parents, dtype=int)
        self.letter_ids = np.array(letter_ids, dtype=int)
        self.letters = list(letters)
        self.bank = LetterBank([letter_form(letter) for letter in self.letters])

    @property
    def dimension(self) -> int:
        return len(self.nodes)

    def initial_state(self, initial: typing.Optional[typing.Mapping] = None) -> np.ndarray:
        y = np.zeros(self.dimension, dtype=complex)
        y[0] = 1.0
        if initial:
            for word, value in initial.items():
                position = self.index.get(tuple(word))
                if position is not None:
                    y[position] = value
        return y

    def derivative(self, z: complex, velocity: complex, y: np.ndarray) -> np.ndarray:
        dy = np.zeros_like(y)
        if self.dimension > 1:
            values = self.bank.evaluate(z)
            dy[1:] = y[self.parents[1:]] * values[self.letter_ids[1:]] * velocity
        return dy

    def values(self, y: np.ndarray) -> typing.Dict[typing.Tuple, complex]:
        return {word: complex(y[i]) for i, word in enumerate(self.nodes)}


class StepCounter:
    def __init__(self, limit: int):
        self.limit = limit
        self.accepted = 0
        self.rejected = 0

    def tick(self, accepted: bool):
        if accepted:
            self.accepted += 1
        else:
            self.rejected += 1
        if self.accepted + self.rejected > self.limit:
            raise common.StepLimitExceeded(
                f'Step limit {self.limit} exceeded ({self.accepted} accepted, {self.rejected} rejected)',
            )


def integrate_segment(
        rhs: typing.Callable[[float, np.ndarray], np.ndarray],
        y0: np.ndarray,
        cfg: IntegratorConfig,
        counter: StepCounter,
        trace: typing.Optional[typing.Callable[[float, np.ndarray], None]] = None,
) -> np.ndarray:
    """Integrate y' = rhs(t, y) over t in [0, 1]."""
    t = 0.0
    h = 1.0 / config.INITIAL_STEPS_PER_SEGMENT
    y = y0
    k1 = rhs(t, y)
    while t < 1.0:
        h = min(h, 1.0 - t)
        k = [k1]
        for stage in range(1, 7):
            increment = sum(a * k[j] for j, a in enumerate(A[stage]) if a)
            k.append(rhs(t + C[stage] * h, y + h * increment))
        y_new = y + h * sum(b * k[j] for j, b in enumerate(B5) if b)
        error = h * sum(e * k[j] for j, e in enumerate(E) if e)
        scale = cfg.atol + cfg.rtol * np.maximum(np.abs(y), np.abs(y_new))
        error_norm = float(np.max(np.abs(error) / scale)) if len(y) else 0.0

        if error_norm <= 1.0:
            counter.tick(True)
            t = 1.0 if h >= 1.0 - t else t + h
            y = y_new
            k1 = k[6]
            if trace is not None:
                trace(t, y)
        else:
            counter.tick(False)
        if error_norm == 0.0:
            factor = config.MAX_STEP_FACTOR
        else:
            factor = config.SAFETY_FACTOR * error_norm ** -0.2
        h *= min(config.MAX_STEP_FACTOR, max(config.MIN_STEP_FACTOR, factor))
        if h < 1e-14:
            raise common.NumericFailure(f'Step size underflow at t={t}')
    return y


def integrate_path(
        system: WordSystem,
        path: paths.Path,
        cfg: IntegratorConfig,
        initial: typing.Optional[typing.Mapping] = None,
        trace: typing.Optional[typing.Callable[[float, typing.Dict], None]] = None,
) -> typing.Dict[typing.Tuple, complex]:
    """Values of all tracked words at the endpoint of the path."""
    y = system.initial_state(initial)
    counter = StepCounter(cfg.max_steps)
    for index, segment in enumerate(path.segments):

        def rhs(t, state, segment=segment):
            return system.derivative(segment.point(t), segment.velocity(t), state)

        segment_trace = None
        if trace is not None:
            def segment_trace(t, state, index=index):
                trace(index + t, system.values(state))

        y = integrate_segment(rhs, y, cfg, counter, segment_trace)
    logger.debug(
        f'Integrated {system.dimension} words over {len(path.segments)} segments: '
        f'{counter.accepted} steps accepted, {counter.rejected} rejected',
    )
    return system.values(y)
