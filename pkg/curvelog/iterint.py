"""Numerical iterated integrals I_{x0} along paths, the J-element and the connection checks."""
import itertools
import logging
import typing

import sympy

from . import common
from . import config
from . import curve
from . import exact
from . import forms
from . import integrator
from . import paths
from . import shuffle
from .forms import nabla_sigma  # noqa: F401  re-exported
from .integrator import IntegratorConfig

logger = logging.getLogger(config.LOGGER_NAME)

DEFAULT_CONFIG = IntegratorConfig()


def _identity(letter):
    return letter


def _poles_of_letters(letters: typing.Iterable) -> typing.Optional[curve.PoleSet]:
    poles = None
    for letter in letters:
        if poles is None:
            poles = letter.poles
        elif letter.poles != poles:
            raise common.PoleSetMismatch(f'Letters over {poles!r} and {letter.poles!r}')
    return poles


def check_path(path: paths.Path, poles: typing.Optional[curve.PoleSet]):
    if poles is None:
        return
    path.check_clearance(poles.points, poles.guard())


def integrate_words(
        path: paths.Path,
        words: typing.Iterable[typing.Sequence],
        poles: typing.Optional[curve.PoleSet],
        cfg: IntegratorConfig = DEFAULT_CONFIG,
        letter_form: typing.Callable = _identity,
        initial: typing.Optional[typing.Mapping] = None,
        trace: typing.Optional[typing.Callable] = None,
) -> typing.Dict[typing.Tuple, complex]:
    """Endpoint values of every tracked word and all of its prefixes."""
    check_path(path, poles)
    system = integrator.WordSystem(words, letter_form)
    return integrator.integrate_path(system, path, cfg, initial=initial, trace=trace)


def integrate_word(
        path: paths.Path,
        word: typing.Sequence[curve.Differential],
        cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> typing.Tuple[complex, typing.Dict[typing.Tuple, complex]]:
    word = tuple(word)
    values = integrate_words(path, [word], _poles_of_letters(word), cfg)
    return values[word], values


def tensor_value(tensor: shuffle.ShuffleTensor, values: typing.Mapping) -> complex:
    total = 0j
    for word, coeff in tensor.items():
        total += complex(coeff) * values[word]
    return total


def integrate_tensor(path: paths.Path, tensor: shuffle.ShuffleTensor, cfg: IntegratorConfig = DEFAULT_CONFIG) -> complex:
    values = integrate_words(path, tensor.words(), _poles_of_letters(tensor.letters()), cfg)
    return tensor_value(tensor, values)


def trace(
        path: paths.Path,
        words: typing.Sequence[typing.Sequence],
        poles: curve.PoleSet,
        cfg: IntegratorConfig = DEFAULT_CONFIG,
        letter_form: typing.Callable = _identity,
) -> typing.List[typing.Tuple[float, typing.List[complex]]]:
    """Rows (t, values of the words) at every accepted step; t = segment index + local parameter."""
    words = [tuple(word) for word in words]
    rows = [(0.0, [1.0 + 0j if not word else 0j for word in words])]

    def record(t, values):
        rows.append((t, [values[word] for word in words]))

    integrate_words(path, words, poles, cfg, letter_form=letter_form, trace=record)
    return rows


class GroupLikeSeries:
    """Weight-truncated word -> complex assignment (J-elements, pairings)."""

    def __init__(self, alphabet: shuffle.Alphabet, weight: int, values: typing.Mapping):
        self.alphabet = alphabet
        self.weight = weight
        self.values = {tuple(word): complex(value) for word, value in values.items() if len(word) <= weight}
        self.values.setdefault((), 1.0 + 0j)

    def __getitem__(self, word) -> complex:
        return self.value(word)

    def value(self, word) -> complex:
        word = tuple(word)
        if len(word) > self.weight:
            raise ValueError(f'Word of weight {len(word)} beyond truncation {self.weight}')
        return self.values.get(word, 0j)

    def words(self) -> typing.List[shuffle.Word]:
        return sorted(self.values, key=self.alphabet.word_key)

    def evaluate(self, tensor: shuffle.ShuffleTensor) -> complex:
        if tensor.alphabet.id != self.alphabet.id:
            raise common.AlphabetMismatch(f'{tensor.alphabet!r} vs {self.alphabet!r}')
        return sum((complex(c) * self.value(word) for word, c in tensor.items()), 0j)

    def group_like_residual(self, letters: typing.Optional[typing.Sequence] = None) -> float:
        """max |value(u shuffle v) - value(u) value(v)| over nonempty u, v with |u| + |v| <= weight."""
        letters = letters or sorted({letter for word in self.values for letter in word}, key=self.alphabet.letter_key)
        worst = 0.0
        for total in range(2, self.weight + 1):
            for left in range(1, total):
                for u in itertools.product(letters, repeat=left):
                    for v in itertools.product(letters, repeat=total - left):
                        product = sum(
                            (count * self.value(word) for word, count in shuffle.shuffle_words(u, v).items()),
                            0j,
                        )
                        worst = max(worst, abs(product - self.value(u) * self.value(v)))
        return worst

    def convolve(self, other: 'GroupLikeSeries') -> 'GroupLikeSeries':
        """Series of the concatenated paths: a -> sum value(a') other(a'')."""
        if other.alphabet.id != self.alphabet.id:
            raise common.AlphabetMismatch(f'{other.alphabet!r} vs {self.alphabet!r}')
        weight = min(self.weight, other.weight)
        letters = sorted(
            {letter for word in itertools.chain(self.values, other.values) for letter in word},
            key=self.alphabet.letter_key,
        )
        values = {}
        for word in shuffle.words_up_to(letters, weight):
            values[word] = sum(
                (self.value(word[:i]) * other.value(word[i:]) for i in range(len(word) + 1)),
                0j,
            )
        return GroupLikeSeries(self.alphabet, weight, values)

    def distance(self, other: 'GroupLikeSeries') -> float:
        words = set(self.values) | set(other.values)
        return max((abs(self.values.get(w, 0j) - other.values.get(w, 0j)) for w in words), default=0.0)

    def to_json(self) -> dict:
        return {
            'weight': self.weight,
            'values': [
                {
                    'word': [self.alphabet.letter_to_json(letter) for letter in word],
                    'value': common.complex_to_json(self.values[word]),
                }
                for word in self.words()
            ],
        }


def hdr_words(poles: curve.PoleSet, weight: int) -> typing.List[shuffle.Word]:
    return shuffle.words_up_to(poles.points, weight)


def j_element(
        path: paths.Path,
        sigma: curve.Section,
        cfg: IntegratorConfig = DEFAULT_CONFIG,
        weight: typing.Optional[int] = None,
        initial: typing.Optional[typing.Mapping] = None,
) -> GroupLikeSeries:
    """w -> I_{x0}(sigma(w)) at the endpoint, for all H^dR words of weight <= N."""
    weight = cfg.weight if weight is None else weight
    poles = sigma.poles
    values = integrate_words(path, hdr_words(poles, weight), poles, cfg, letter_form=sigma.apply, initial=initial)
    return GroupLikeSeries(poles.hdr_alphabet, weight, values)


def shuffle_identity_check(
        path: paths.Path,
        a: shuffle.ShuffleTensor,
        b: shuffle.ShuffleTensor,
        cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """|I(a shuffle b) - I(a) I(b)| at the endpoint."""
    product = a.shuffle(b)
    words = set(a.words()) | set(b.words()) | set(product.words())
    poles = _poles_of_letters(a.letters() | b.letters())
    values = integrate_words(path, sorted(words, key=a.alphabet.word_key), poles, cfg)
    residual = abs(tensor_value(product, values) - tensor_value(a, values) * tensor_value(b, values))
    logger.debug(f'Shuffle identity residual {residual:.3e}')
    return residual


def chain_rule_check(
        first: paths.Path,
        second: paths.Path,
        tensor: shuffle.ShuffleTensor,
        cfg: IntegratorConfig = DEFAULT_CONFIG,
) -> float:
    """|I_{x0}(w)(x2) - sum I_{x0}(w')(x1) I_{x1}(w'')(x2)| for composable paths x0 -> x1 -> x2."""
    poles = _poles_of_letters(tensor.letters())
    whole = first.concat(second)
    split = tensor.deconcat().items()
    direct = integrate_words(whole, tensor.words(), poles, cfg)
    left = integrate_words(first, [key[0] for key, _ in split], poles, cfg)
    right = integrate_words(second, [key[1] for key, _ in split], poles, cfg)
    combined = sum((complex(c) * left[key[0]] * right[key[1]] for key, c in split), 0j)
    residual = abs(tensor_value(tensor, direct) - combined)
    logger.debug(f'Chain rule residual {residual:.3e}')
    return residual


def connection_numeric_check(
        element: forms.FunctionTensor,
        sigma: curve.Section,
        x0,
        z,
        cfg: IntegratorConfig = DEFAULT_CONFIG,
        step: float = 1e-5,
        path: typing.Optional[paths.Path] = None,
) -> float:
    """Central difference of sum f_u I(sigma(u)) against the evaluated nabla_sigma output at z."""
    poles = element.poles
    z = complex(z)
    path = path or paths.straight_path(x0, z, poles.points)
    words = list(element.terms)
    at_z = integrate_words(path, words, poles, cfg, letter_form=sigma.apply)
    below = integrate_words(
        paths.Path.through([z, z - step]), words, poles, cfg, letter_form=sigma.apply, initial=at_z,
    )
    above = integrate_words(
        paths.Path.through([z - step, z + step]), words, poles, cfg, letter_form=sigma.apply, initial=below,
    )
    difference = (element.evaluate(z + step, above) - element.evaluate(z - step, below)) / (2 * step)
    expected = nabla_sigma(element, sigma).evaluate(z, at_z)
    residual = abs(difference - expected)
    logger.debug(f'Connection residual at {z}: {residual:.3e}')
    return residual


def kz_specialization_check(points: typing.Sequence) -> bool:
    """A_sigma0 with h^i -> t_{i,n+1} equals A_KZ restricted to the fiber over the points."""
    points = [exact.coerce(p) for p in points]
    if len(points) < 2:
        raise common.DomainError(f'KZ check needs at least two points, got {len(points)}')
    if len(set(points)) != len(points):
        raise common.RepeatedPoints(f'Repeated points: {[exact.to_string(p) for p in points]}')
    z = sympy.Symbol('z')
    n = len(points)
    coordinates = [p.to_sympy() if exact.is_exact(p) else sympy.nsimplify(p) for p in points] + [z]
    t = {
        (i, j): sympy.Symbol(f't_{i + 1}_{j + 1}')
        for i in range(n + 1) for j in range(i + 1, n + 1)
    }
    # unordered pairs, t_ij = t_ji; only pairs involving the moving point have dz components
    kz = sum(
        (t[(i, j)] * sympy.diff(sympy.log(coordinates[i] - coordinates[j]), z) for (i, j) in t),
        sympy.Integer(0),
    )
    sigma0 = sum((t[(i, n)] / (z - coordinates[i]) for i in range(n)), sympy.Integer(0))
    difference = sympy.cancel(sympy.together(kz - sigma0))
    result = difference == 0
    logger.info(f'KZ specialization over {[exact.to_string(p) for p in points]}: {result}')
    return bool(result)
