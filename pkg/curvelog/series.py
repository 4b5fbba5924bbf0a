"""Truncated log-Laurent series sum c_{j,k} (z - s)^j log^k(z - s).

The branch of log(z - s) is fixed by a reference direction u: it is
Log(u) + Log((z - s) / u), continuous on the disk slit along -u.
"""
import cmath
import logging
import math
import typing

from . import common
from . import config
from . import curve
from . import exact

logger = logging.getLogger(config.LOGGER_NAME)

Key = typing.Tuple[int, int]


class LogLaurentSeries:
    def __init__(
            self,
            center: complex,
            order: int,
            coefficients: typing.Optional[typing.Mapping[Key, complex]] = None,
            direction: complex = 1.0,
    ):
        self.center = complex(center)
        self.order = order
        self.direction = complex(direction) / abs(complex(direction))
        self.coefficients = {
            (int(j), int(k)): complex(c)
            for (j, k), c in (coefficients or {}).items()
            if c and j <= order
        }

    @classmethod
    def one(cls, center: complex, order: int, direction: complex = 1.0) -> 'LogLaurentSeries':
        return cls(center, order, {(0, 0): 1.0}, direction)

    def _new(self, coefficients) -> 'LogLaurentSeries':
        return LogLaurentSeries(self.center, self.order, coefficients, self.direction)

    def coefficient(self, j: int, k: int) -> complex:
        return self.coefficients.get((j, k), 0j)

    @property
    def log_degree(self) -> int:
        return max((k for (_, k) in self.coefficients), default=0)

    @property
    def min_power(self) -> int:
        return min((j for (j, _) in self.coefficients), default=0)

    def __add__(self, other: 'LogLaurentSeries') -> 'LogLaurentSeries':
        merged = dict(self.coefficients)
        for key, c in other.coefficients.items():
            merged[key] = merged.get(key, 0j) + c
        return self._new(merged)

    def __sub__(self, other: 'LogLaurentSeries') -> 'LogLaurentSeries':
        return self + other.scale(-1)

    def scale(self, factor: complex) -> 'LogLaurentSeries':
        return self._new({key: c * factor for key, c in self.coefficients.items()})

    def add_constant(self, value: complex) -> 'LogLaurentSeries':
        merged = dict(self.coefficients)
        merged[(0, 0)] = merged.get((0, 0), 0j) + value
        return self._new(merged)

    def multiply(self, laurent: typing.Mapping[int, complex]) -> 'LogLaurentSeries':
        """Product with a Laurent series without logs, truncated at the order."""
        product = {}
        for (j, k), c in self.coefficients.items():
            for i, d in laurent.items():
                if j + i <= self.order:
                    key = (j + i, k)
                    product[key] = product.get(key, 0j) + c * d
        return self._new(product)

    def multiply_series(self, other: 'LogLaurentSeries') -> 'LogLaurentSeries':
        product = {}
        for (j, k), c in self.coefficients.items():
            for (i, l), d in other.coefficients.items():
                if j + i <= self.order:
                    key = (j + i, k + l)
                    product[key] = product.get(key, 0j) + c * d
        return self._new(product)

    def integrate(self) -> 'LogLaurentSeries':
        """Termwise antiderivative with zero constant term."""
        result = {}
        for (j, k), c in self.coefficients.items():
            if j == -1:
                key = (0, k + 1)
                result[key] = result.get(key, 0j) + c / (k + 1)
                continue
            m = j + 1
            falling = 1
            for i in range(k + 1):
                key = (m, k - i)
                result[key] = result.get(key, 0j) + c * (-1) ** i * falling / m ** (i + 1)
                falling *= k - i
        return self._new(result)

    def shift_sheet(self, turns: int) -> 'LogLaurentSeries':
        """Substitute log(z - s) -> log(z - s) + 2 pi i turns."""
        shift = 2j * math.pi * turns
        result = {}
        for (j, k), c in self.coefficients.items():
            for l in range(k + 1):
                key = (j, l)
                result[key] = result.get(key, 0j) + c * exact.binomial(k, l) * shift ** (k - l)
        return self._new(result)

    def log(self, z: complex) -> complex:
        x = complex(z) - self.center
        if not x:
            raise common.PoleEvaluation(f'log(z - s) at the center {self.center}')
        return 1j * cmath.phase(self.direction) + cmath.log(x / self.direction)

    def evaluate(self, z: complex) -> complex:
        x = complex(z) - self.center
        log_value = self.log(z) if any(k for (_, k) in self.coefficients) else 0j
        total = 0j
        for (j, k), c in self.coefficients.items():
            total += c * x ** j * log_value ** k
        return total

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coefficients.values()), default=0.0)

    def truncate(self, order: int, log_degree: typing.Optional[int] = None) -> 'LogLaurentSeries':
        kept = {
            (j, k): c for (j, k), c in self.coefficients.items()
            if j <= order and (log_degree is None or k <= log_degree)
        }
        return LogLaurentSeries(self.center, order, kept, self.direction)

    def items(self) -> typing.List[typing.Tuple[Key, complex]]:
        return sorted(self.coefficients.items())

    def __repr__(self):
        return f'LogLaurentSeries(center={self.center}, order={self.order}, terms={len(self.coefficients)})'


def letter_laurent(form: curve.Differential, center: complex, order: int) -> typing.Dict[int, complex]:
    return form.function.laurent_coefficients(center, order)


def max_pole_order(forms: typing.Iterable[curve.Differential]) -> int:
    orders = [key[2] for form in forms for key, _ in form.function.terms() if key[0] == 'pole']
    return max(orders, default=1)


def prefix_expansions(
        words: typing.Iterable[typing.Sequence],
        letter_form: typing.Callable[[typing.Any], curve.Differential],
        center: complex,
        order: int,
        direction: complex = 1.0,
        reference_point: typing.Optional[complex] = None,
        reference_values: typing.Optional[typing.Mapping] = None,
) -> typing.Dict[typing.Tuple, LogLaurentSeries]:
    """Expansions E_w of every prefix w of the words: E_{wa} = int E_w omega_a + C_{wa}.

    Without reference values the constants are zero (the regularized choice at
    the basepoint); otherwise C_{wa} makes E_{wa}(reference_point) equal the
    reference value, prefix by prefix.
    """
    prefixes = set()
    for word in words:
        word = tuple(word)
        prefixes.update(word[:i] for i in range(1, len(word) + 1))
    letters = {p[-1] for p in prefixes}
    forms = {letter: letter_form(letter) for letter in letters}
    depth = max((len(p) for p in prefixes), default=0)
    extra = (max_pole_order(forms.values()) - 1) * depth + config.EXPANSION_ORDER_SLACK
    internal = order + extra
    laurent = {letter: letter_laurent(form, center, internal + max_pole_order([form])) for letter, form in forms.items()}

    expansions = {(): LogLaurentSeries.one(center, internal, direction)}
    for prefix in sorted(prefixes, key=len):
        parent = expansions[prefix[:-1]]
        expansion = parent.multiply(laurent[prefix[-1]]).integrate().truncate(internal)
        if reference_values is not None:
            constant = reference_values[prefix] - expansion.evaluate(reference_point)
            expansion = expansion.add_constant(constant)
        expansions[prefix] = expansion
    return {word: expansion.truncate(order) for word, expansion in expansions.items()}
