"""Regularized hyperlogarithms L_w with basepoint 0 and multiple zeta values.

Words are tuples of poles, the letter s standing for dz/(z - s). The last
letter is the outermost integration, so L_{[1|0]} = -Li_2.
"""
import dataclasses
import functools
import logging
import math
import typing

from . import common
from . import config
from . import curve
from . import exact
from . import iterint
from . import paths
from . import series
from . import shuffle
from .integrator import IntegratorConfig

logger = logging.getLogger(config.LOGGER_NAME)

Word = typing.Tuple


def zero_pole(poles: curve.PoleSet):
    if 0 not in poles:
        raise common.DomainError(f'Hyperlogarithms at basepoint 0 need 0 among the poles, got {poles!r}')
    return poles.points[poles.index(0)]


def is_admissible(word: Word, zero) -> bool:
    return not word or word[0] != zero


def _as_word(poles: curve.PoleSet, word) -> Word:
    if isinstance(word, shuffle.ShuffleTensor):
        (letters, coeff), = word.items()
        if coeff != 1:
            raise ValueError(f'Expected a single word, got {word!r}')
        return letters
    if isinstance(word, str):
        return curve.parse_word_labels(poles, word).words()[0]
    return tuple(poles.points[poles.index(letter)] for letter in word)


@functools.lru_cache(maxsize=None)
def _components(poles: curve.PoleSet, word: Word) -> typing.Dict[int, typing.Dict[Word, exact.Scalar]]:
    """word = sum_k u_k shuffle X^{shuffle k}, X = [0], with admissible u_k."""
    zero = poles.points[poles.index(0)]
    m = next((i for i, letter in enumerate(word) if letter != zero), len(word))
    if m == 0:
        return {0: {word: exact.ONE}}
    u = word[m:]
    # X shuffle 0^{m-1}u = m 0^m u + sum over the zeros inserted after the first letter of u
    result = {k + 1: dict(terms) for k, terms in _components(poles, word[1:]).items()}
    for j in range(1, len(u) + 1):
        inserted = word[:m - 1] + u[:j] + (zero,) + u[j:]
        for k, terms in _components(poles, inserted).items():
            target = result.setdefault(k, {})
            for v, c in terms.items():
                target[v] = target.get(v, exact.ZERO) - c
    scale = exact.GaussianRational(1) / m
    return {
        k: {v: c * scale for v, c in terms.items() if c}
        for k, terms in result.items()
    }


class RegularizedWord:
    """A word written as a shuffle polynomial in X = [0] with admissible coefficients."""

    def __init__(self, poles: curve.PoleSet, word: Word, components: typing.Mapping[int, shuffle.ShuffleTensor]):
        self.poles = poles
        self.word = tuple(word)
        self.components = {k: t for k, t in components.items() if not t.is_zero()}

    @property
    def degree(self) -> int:
        return max(self.components, default=0)

    def component(self, k: int) -> shuffle.ShuffleTensor:
        return self.components.get(k, shuffle.ShuffleTensor.zero(self.poles.hdr_alphabet))

    def admissible_words(self) -> typing.Set[Word]:
        return {word for t in self.components.values() for word in t.words()}

    def reassemble(self) -> shuffle.ShuffleTensor:
        alphabet = self.poles.hdr_alphabet
        x = shuffle.ShuffleTensor.word(alphabet, [zero_pole(self.poles)])
        power = shuffle.ShuffleTensor.unit(alphabet)
        result = shuffle.ShuffleTensor.zero(alphabet)
        for k in range(self.degree + 1):
            result = result + self.component(k).shuffle(power)
            power = power.shuffle(x)
        return result

    def __repr__(self):
        return f'RegularizedWord({[self.poles.label(s) for s in self.word]}, degree={self.degree})'

    def to_json(self) -> dict:
        return {
            'word': [self.poles.label(s) for s in self.word],
            'components': [{'power': k, 'tensor': t.to_json()} for k, t in sorted(self.components.items())],
        }


def regularize(word, poles: curve.PoleSet) -> RegularizedWord:
    zero_pole(poles)
    word = _as_word(poles, word)
    alphabet = poles.hdr_alphabet
    components = {
        k: shuffle.ShuffleTensor(alphabet, terms)
        for k, terms in _components(poles, word).items()
    }
    return RegularizedWord(poles, word, components)


def reassemble(regularized: RegularizedWord) -> shuffle.ShuffleTensor:
    return regularized.reassemble()


@dataclasses.dataclass(frozen=True)
class HyperlogValue:
    value: complex
    word: Word
    point: complex
    path_class: str

    def to_json(self, poles: curve.PoleSet) -> dict:
        return {
            'value': common.complex_to_json(self.value),
            'word': [poles.label(s) for s in self.word],
            'point': common.complex_to_json(self.point),
            'path': self.path_class,
        }


def seed_point(poles: curve.PoleSet) -> float:
    """z1 = r0/2 with r0 the distance from 0 to the nearest other pole."""
    zero_pole(poles)
    others = [abs(complex(s)) for s in poles if complex(s) != 0]
    r0 = min(others) if others else 1.0
    return r0 / 2


def default_path_class(z, poles: curve.PoleSet) -> paths.Path:
    """Straight from the seed point, passing above poles met on the way."""
    return paths.straight_path(seed_point(poles), complex(z), poles.points)


def _resolve_path(poles: curve.PoleSet, z: complex, path: typing.Optional[paths.Path]) -> paths.Path:
    if path is None:
        return default_path_class(z, poles)
    z1 = seed_point(poles)
    base = path.base
    if abs(base.imag) > config.CONTIGUITY_TOLERANCE or not 0 < base.real < 2 * z1:
        raise common.DomainError(
            f'Hyperlogarithm paths start on the real interval (0, {2 * z1}) next to 0, got {base}',
        )
    if abs(path.endpoint - z) > config.CONTIGUITY_TOLERANCE * max(1.0, abs(z)):
        raise ValueError(f'Path ends at {path.endpoint}, evaluation point is {z}')
    if abs(base - z1) > config.CONTIGUITY_TOLERANCE:
        return paths.Path.through([z1, base.real]).concat(path)
    return path


def _check_point(poles: curve.PoleSet, z: complex):
    for s in poles:
        if abs(complex(s) - z) <= poles.guard():
            raise common.PoleEvaluation(f'Hyperlogarithm evaluated at the pole {exact.to_string(s)}')


def seed_values(words: typing.Iterable[Word], poles: curve.PoleSet, point: float) -> typing.Dict[Word, complex]:
    """Values of the words and their prefixes at a point of (0, r0), from the expansions at 0."""
    sigma = curve.section_sigma0(poles)
    expansions = series.prefix_expansions(words, sigma.apply, 0j, config.DEFAULT_EXPANSION_ORDER)
    return {word: expansion.evaluate(point) for word, expansion in expansions.items()}


def eval_L_many(
        words: typing.Iterable,
        z,
        poles: curve.PoleSet,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> typing.Dict[Word, complex]:
    """L_w(z) for several words, continued jointly along one path."""
    zero = zero_pole(poles)
    z = complex(z)
    _check_point(poles, z)
    path = _resolve_path(poles, z, path)
    regularized = [regularize(word, poles) for word in words]
    admissible = sorted(
        {word for r in regularized for word in r.admissible_words() if word},
        key=poles.hdr_alphabet.word_key,
    )
    z1 = path.base
    initial = seed_values(admissible, poles, z1.real)
    initial[(zero,)] = complex(math.log(z1.real))
    sigma = curve.section_sigma0(poles)
    values = iterint.integrate_words(path, admissible + [(zero,)], poles, cfg, letter_form=sigma.apply, initial=initial)
    log_z = values[(zero,)]
    result = {}
    for r in regularized:
        total = 0j
        for k, component in r.components.items():
            total += iterint.tensor_value(component, values) * log_z ** k
        result[r.word] = total
    return result


def eval_L(
        word,
        z,
        poles: curve.PoleSet,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> HyperlogValue:
    word = _as_word(poles, word)
    value = eval_L_many([word], z, poles, path, cfg)[word]
    path_class = 'default' if path is None else common.dump_to_json(path.to_json())
    logger.debug(f'L_{[poles.label(s) for s in word]}({complex(z)}) = {value}')
    return HyperlogValue(value, word, complex(z), path_class)


def eval_L_tensor(
        tensor: shuffle.ShuffleTensor,
        z,
        poles: curve.PoleSet,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> complex:
    if tensor.alphabet.id != poles.hdr_alphabet.id:
        raise common.AlphabetMismatch(f'Expected an H^dR tensor over {poles!r}')
    values = eval_L_many(tensor.words(), z, poles, path, cfg)
    return iterint.tensor_value(tensor, values)


def shuffle_law_residual(
        a: shuffle.ShuffleTensor,
        b: shuffle.ShuffleTensor,
        z,
        poles: curve.PoleSet,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> float:
    """|L_{a shuffle b}(z) - L_a(z) L_b(z)|."""
    product = a.shuffle(b)
    words = set(a.words()) | set(b.words()) | set(product.words())
    values = eval_L_many(sorted(words, key=poles.hdr_alphabet.word_key), z, poles, cfg=cfg)
    return abs(
        iterint.tensor_value(product, values)
        - iterint.tensor_value(a, values) * iterint.tensor_value(b, values)
    )


def epsilon_limit_residual(
        word,
        z,
        poles: curve.PoleSet,
        epsilon: float,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> float:
    """|L_w(z) - sum_{w = w'w''} P_{w'}(log eps) I_eps(w'')(z)|, P_{w'} the log part of L_{w'} at 0.

    The residual is O(eps log^n eps).
    """
    word = _as_word(poles, word)
    z = complex(z)
    z1 = seed_point(poles)
    if not 0 < epsilon < z1:
        raise common.DomainError(f'epsilon must lie in (0, {z1}), got {epsilon}')
    sigma = curve.section_sigma0(poles)
    expansions = series.prefix_expansions([word], sigma.apply, 0j, config.DEFAULT_EXPANSION_ORDER)
    log_eps = math.log(epsilon)
    suffixes = [word[cut:] for cut in range(len(word) + 1)]
    path = paths.Path.through([epsilon, z1]).concat(default_path_class(z, poles))
    from_eps = iterint.integrate_words(path, suffixes, poles, cfg, letter_form=sigma.apply)
    approximation = 0j
    for cut in range(len(word) + 1):
        prefix_log_part = sum(
            (c * log_eps ** k for (j, k), c in expansions[word[:cut]].items() if j == 0),
            0j,
        )
        approximation += prefix_log_part * from_eps[word[cut:]]
    exact_value = eval_L_many([word], z, poles, cfg=cfg)[word]
    return abs(exact_value - approximation)


def expansion_radius(poles: curve.PoleSet, s) -> float:
    """Half the distance from s to the nearest other pole."""
    return 0.5 * poles.nearest_other_distance(complex(s))


def matched_expansions(
        words: typing.Iterable,
        s,
        poles: curve.PoleSet,
        order: int,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> typing.Tuple[typing.Dict[Word, series.LogLaurentSeries], typing.Optional[complex]]:
    """Expansions at the pole s of every prefix of the words, with branch-matched constants.

    At 0 the constants are zero. Elsewhere the reference point is the end of
    the given path, by default the point at distance radius/2 from s towards
    the seed point; log(z - s) is continuous on the disk slit opposite to it.
    """
    zero = zero_pole(poles)
    s = poles.points[poles.index(s)]
    words = [_as_word(poles, word) for word in words]
    sigma = curve.section_sigma0(poles)
    if s == zero:
        return series.prefix_expansions(words, sigma.apply, 0j, order, direction=1.0), None
    center = complex(s)
    radius = expansion_radius(poles, s)
    if path is None:
        towards_seed = seed_point(poles) - center
        reference = center + 0.5 * radius * towards_seed / abs(towards_seed)
    else:
        reference = path.endpoint
        if not 0 < abs(reference - center) < radius:
            raise common.OutsideDisk(f'Reference point {reference} is outside the disk of radius {radius} at {center}')
    prefixes = {word[:i] for word in words for i in range(1, len(word) + 1)}
    reference_values = eval_L_many(sorted(prefixes, key=len), reference, poles, path, cfg)
    expansions = series.prefix_expansions(
        words, sigma.apply, center, order,
        direction=reference - center,
        reference_point=reference,
        reference_values=reference_values,
    )
    return expansions, reference


def mzv(word, cfg: IntegratorConfig = iterint.DEFAULT_CONFIG) -> complex:
    """L_w(1) over the poles {0, 1}; -L_{[1|0]}(1) = zeta(2)."""
    poles = curve.PoleSet.from_strings(list(config.MZV_POLES))
    word = _as_word(poles, word)
    one = poles.points[poles.index(1)]
    if word and word[-1] == one:
        raise common.DivergentWord(f'L_w diverges at 1 when the last letter is 1: {[poles.label(s) for s in word]}')
    if not word:
        return 1.0 + 0j
    expansions, reference = matched_expansions([word], one, poles, config.DEFAULT_EXPANSION_ORDER, cfg=cfg)
    expansion = expansions[word]
    singular = max((abs(c) for (j, k), c in expansion.items() if j <= 0 and (j, k) != (0, 0)), default=0.0)
    if singular > config.MATCHING_CHECK_TOLERANCE:
        raise common.DivergentWord(f'Expansion at 1 has singular terms of size {singular:.3e}')
    value = expansion.coefficient(0, 0)
    logger.info(f'MZV {[poles.label(s) for s in word]} = {value} (matched at {reference})')
    return value


