"""Randomized self-test of the acceptance criteria.

Sample sizes are the acceptance counts; --quick runs a reduced set.
The random builders are shared with the test suite.
"""
import cmath
import fractions
import logging
import math
import random
import time
import typing

import mpmath
import numpy as np

from app.configs import cli as config
from app.configs import messages
from curvelog import curve
from curvelog import exact
from curvelog import forms
from curvelog import hyperlog
from curvelog import iterint
from curvelog import local_expansion
from curvelog import monodromy
from curvelog import paths
from curvelog import reduce
from curvelog import shuffle
from curvelog.integrator import IntegratorConfig

logger = logging.getLogger(__name__)

TIGHT = IntegratorConfig(rtol=config.SELFTEST_RTOL, atol=config.SELFTEST_ATOL)
MZV_POLES = curve.PoleSet.from_strings('0,1')


# Random builders

def random_rational(rng: random.Random, low: int = -2, high: int = 2, denominator: int = 2) -> fractions.Fraction:
    return fractions.Fraction(rng.randint(low * denominator, high * denominator), denominator)


def random_poles(rng: random.Random, size: int, spacing: float = 0.5) -> curve.PoleSet:
    """Exact poles on a half-integer grid, pairwise at least `spacing` apart."""
    points = []
    while len(points) < size:
        candidate = exact.GaussianRational(random_rational(rng), random_rational(rng, -1, 1))
        if all(abs(complex(candidate) - complex(p)) >= spacing for p in points):
            points.append(candidate)
    return curve.PoleSet(points)


def random_point(rng: random.Random, poles: curve.PoleSet, clearance: float = 0.3) -> complex:
    """Point of the box around the poles, at least `clearance` away from all of them."""
    reals = [complex(p).real for p in poles]
    imags = [complex(p).imag for p in poles]
    while True:
        z = complex(
            rng.uniform(min(reals) - 1.0, max(reals) + 1.0),
            rng.uniform(min(imags) - 1.0, max(imags) + 1.0),
        )
        if poles.distance(z) >= clearance:
            return z


def random_function(rng: random.Random, poles: curve.PoleSet, terms: int = 2) -> curve.RationalFunction:
    """Small integer combination of 1, z and (z - s)^-k, never zero."""
    result = curve.RationalFunction.zero(poles)
    while result.is_zero():
        for _ in range(terms):
            coeff = rng.choice([-2, -1, 1, 2])
            kind = rng.choice(['constant', 'z', 'pole'])
            if kind == 'constant':
                result = result + curve.RationalFunction.constant(poles, coeff)
            elif kind == 'z':
                result = result + curve.RationalFunction.monomial(poles, 1, coeff)
            else:
                s = rng.choice(poles.points)
                result = result + curve.RationalFunction.pole_term(poles, s, rng.randint(1, 2), coeff)
    return result


def random_letter(rng: random.Random, poles: curve.PoleSet) -> curve.Differential:
    kind = rng.choice(['dlog', 'dlog', 'pole', 'power'])
    coeff = rng.choice([-1, 1, 2])
    s = rng.choice(poles.points)
    if kind == 'dlog':
        return curve.Differential.pole(poles, s, 1, coeff)
    if kind == 'pole':
        return curve.Differential.pole(poles, s, 2, coeff)
    return curve.Differential.power(poles, rng.randint(0, 1), coeff)


def random_omega_word(rng: random.Random, poles: curve.PoleSet, weight: int) -> shuffle.ShuffleTensor:
    return curve.omega_word(poles, [random_letter(rng, poles) for _ in range(weight)])


def random_omega_tensor(rng: random.Random, poles: curve.PoleSet, max_weight: int, terms: int = 2) -> shuffle.ShuffleTensor:
    result = shuffle.ShuffleTensor.zero(poles.omega_alphabet)
    for _ in range(terms):
        result = result + random_omega_word(rng, poles, rng.randint(1, max_weight)).scale(rng.choice([-1, 1, 2]))
    return result


def random_hdr_word(rng: random.Random, poles: curve.PoleSet, weight: int) -> shuffle.Word:
    return tuple(rng.choice(poles.points) for _ in range(weight))


def random_section(rng: random.Random, poles: curve.PoleSet) -> curve.Section:
    corrections = {s: random_function(rng, poles) for s in poles if rng.random() < 0.7}
    if not corrections:
        corrections = {poles.points[0]: curve.RationalFunction.monomial(poles, 1)}
    return curve.section_from_corrections(poles, corrections)


def random_path(rng: random.Random, poles: curve.PoleSet, start, end) -> paths.Path:
    """Polygonal start -> random vertex -> end, stepping around the poles."""
    middle = random_point(rng, poles)
    return paths.polygonal_path([complex(start), middle, complex(end)], poles.points)


def random_homotopic_pair(
        rng: random.Random,
        poles: curve.PoleSet,
        start,
        end,
        attempts: int = 1000,
) -> typing.Tuple[paths.Path, paths.Path]:
    """Two different polygonal paths start -> end in the same homotopy class."""
    first = random_path(rng, poles, start, end)
    for _ in range(attempts):
        vertices = [complex(start), random_point(rng, poles), random_point(rng, poles), complex(end)]
        second = paths.polygonal_path(vertices, poles.points)
        if paths.homotopic(first, second, poles.points):
            return first, second
    raise ValueError(f'No homotopic deformation found for {first!r} after {attempts} attempts')


# Reference values by direct summation

def zeta_series(s: int, terms: int = config.ZETA_SERIES_TERMS) -> float:
    """sum_{n <= N} n^-s plus the Euler-Maclaurin tail."""
    n = np.arange(terms, 0, -1, dtype=float)
    tail = terms ** (1 - s) / (s - 1) - terms ** -s / 2 + s * terms ** (-s - 1) / 12
    return float(np.sum(n ** -s)) + tail


def double_zeta_series(terms: int = config.ZETA_SERIES_TERMS) -> float:
    """zeta(2, 1) = sum_{n > m >= 1} 1 / (n^2 m) = sum_n H_{n-1} / n^2."""
    n = np.arange(1, terms + 1, dtype=float)
    harmonic_before = np.cumsum(1 / n) - 1 / n
    head = float(np.sum((harmonic_before / n ** 2)[::-1]))
    log_n = math.log(terms)
    tail = (log_n + np.euler_gamma + 1) / terms - (log_n + np.euler_gamma) / (2 * terms ** 2)
    return head + tail


# Criteria

Sizes = typing.Mapping[str, int]


def _close(a: complex, b: complex, tolerance: float) -> bool:
    return abs(a - b) <= tolerance * max(1.0, abs(b))


def check_mzv(rng: random.Random, sizes: Sizes) -> bool:
    zeta2, zeta3, zeta4 = (zeta_series(s) for s in (2, 3, 4))
    expected = {
        '1,0': -zeta2,
        '1,0,0': -zeta3,
        '1,1,0': double_zeta_series(),
        '1,0,1,0': (zeta2 ** 2 - zeta4) / 2,
    }
    passed = all(_close(hyperlog.mzv(word, TIGHT), value, 1e-7) for word, value in expected.items())
    for _ in range(sizes['points']):
        z = cmath.rect(rng.uniform(0.2, 0.8), rng.uniform(-2.5, 2.5))
        value = hyperlog.eval_L('1,0', z, MZV_POLES, cfg=TIGHT).value
        passed = passed and _close(value, -complex(mpmath.polylog(2, z)), 1e-9)
    return passed


def check_shuffle_identity(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    x0 = reduce.default_basepoint(poles)
    for _ in range(sizes['pairs']):
        weight_a = rng.randint(1, 3)
        a = random_omega_word(rng, poles, weight_a)
        b = random_omega_word(rng, poles, rng.randint(1, 4 - weight_a))
        path = random_path(rng, poles, x0, random_point(rng, poles))
        product_scale = max(1.0, abs(iterint.integrate_tensor(path, a, TIGHT) * iterint.integrate_tensor(path, b, TIGHT)))
        if iterint.shuffle_identity_check(path, a, b, TIGHT) > 1e-9 * product_scale:
            return False
    return True


def check_chain_rule(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    x0 = reduce.default_basepoint(poles)
    for _ in range(sizes['pairs']):
        x1, x2 = random_point(rng, poles), random_point(rng, poles)
        tensor = random_omega_tensor(rng, poles, 3)
        first = random_path(rng, poles, x0, x1)
        second = paths.straight_path(x1, x2, poles.points)
        if iterint.chain_rule_check(first, second, tensor, TIGHT) > 1e-9:
            return False
    return True


def check_periods(rng: random.Random, sizes: Sizes) -> bool:
    for size in range(1, 5):
        poles = random_poles(rng, size)
        matrix = monodromy.period_matrix(poles, cfg=TIGHT)
        if np.max(np.abs(matrix - 2j * math.pi * np.eye(size))) > 1e-9:
            return False
    for _ in range(sizes['sections']):
        sigma = random_section(rng, MZV_POLES)
        if abs(np.linalg.det(monodromy.period_matrix(MZV_POLES, sigma, TIGHT))) < 1e-6:
            return False
    return True


def check_monodromy(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    sigma = curve.section_sigma0(poles)
    x0 = reduce.default_basepoint(poles)
    zero, one = poles.points
    loop_zero = monodromy.loop_around(zero, x0, poles=poles)
    loop_one = monodromy.loop_around(one, x0, poles=poles)
    if not _close(monodromy.pairing(loop_zero, sigma, 1, TIGHT).value((zero,)), 2j * math.pi, 1e-9):
        return False
    weight = 3
    m_zero = monodromy.monodromy_operator(loop_zero, sigma, weight, TIGHT)
    m_one = monodromy.monodromy_operator(loop_one, sigma, weight, TIGHT)
    composite = monodromy.monodromy_operator(monodromy.compose(loop_zero, loop_one), sigma, weight, TIGHT)
    if composite.distance(m_zero @ m_one) > 1e-8:
        return False
    section = random_section(rng, poles)
    twisted = monodromy.monodromy_operator(loop_one, section, weight, TIGHT)
    return all(monodromy.unipotence_check(op) for op in (m_zero, m_one, composite, twisted))


def check_reduction(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    x0 = reduce.default_basepoint(poles)
    for _ in range(sizes['tensors']):
        sigma = curve.section_sigma0(poles) if rng.random() < 0.5 else random_section(rng, poles)
        tensor = random_omega_tensor(rng, poles, 3)
        nf = reduce.normal_form(tensor, sigma, x0)
        if not reduce.filtration_bound_holds(tensor, nf):
            return False
        for _ in range(sizes['points']):
            z = random_point(rng, poles)
            path = paths.straight_path(complex(x0), z, poles.points)
            direct = iterint.integrate_tensor(path, tensor, TIGHT)
            if not _close(reduce.eval_normal_form(nf, z, path, TIGHT), direct, 1e-8):
                return False
    return True


def check_kernel(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    x0 = reduce.default_basepoint(poles)
    alphabet = poles.omega_alphabet
    for _ in range(sizes['generators']):
        sigma = curve.section_sigma0(poles) if rng.random() < 0.5 else random_section(rng, poles)
        s = random_omega_word(rng, poles, rng.randint(0, 1)) if rng.random() < 0.7 else shuffle.ShuffleTensor.unit(alphabet)
        s_prime = random_omega_word(rng, poles, rng.randint(1, 2))
        generator = reduce.d_map(s, random_function(rng, poles), s_prime, x0)
        if not reduce.kernel_member(generator, sigma, x0):
            return False
        if not reduce.kernel_witness(generator, sigma, x0).verify():
            return False
        path = paths.straight_path(complex(x0), random_point(rng, poles), poles.points)
        if abs(iterint.integrate_tensor(path, generator, TIGHT)) > 1e-9:
            return False
        tensor = random_omega_tensor(rng, poles, 3)
        sub, ker = reduce.decompose_subker(tensor, sigma, x0)
        if sub + ker != tensor or not reduce.kernel_member(ker, sigma, x0):
            return False
        if not reduce.sub_sigma_member(sub, sigma, x0):
            return False
    return True


def check_coradical(rng: random.Random, sizes: Sizes) -> bool:
    alphabet = MZV_POLES.hdr_alphabet
    words = shuffle.words_up_to(MZV_POLES.points, 4)
    for word in words:
        tensor = shuffle.ShuffleTensor.word(alphabet, word)
        for n in range(6):
            if tensor.coradical_member(n) != (len(word) <= n):
                return False
    for _ in range(sizes['tensors']):
        a, b = rng.sample(words[1:], 2)
        tensor = shuffle.ShuffleTensor.from_words(alphabet, [(a, 1), (b, rng.choice([-1, 2]))])
        for n in range(6):
            if tensor.coradical_member(n) != (max(len(a), len(b)) <= n):
                return False
    return True


def check_kz(rng: random.Random, sizes: Sizes) -> bool:
    for n in (2, 3):
        points = random_poles(rng, n).points
        if not iterint.kz_specialization_check(points):
            return False
    return True


def _point_near(rng: random.Random, center: complex, reference_angle: float, distance: float) -> complex:
    """Point on the circle |z - center| = distance, away from the slit opposite to the reference direction."""
    return center + cmath.rect(distance, reference_angle + rng.uniform(-0.75 * math.pi, 0.75 * math.pi))


def check_local_expansions(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    words = [word for word in shuffle.words_up_to(poles.points, sizes['expansion_weight']) if word]
    z1 = hyperlog.seed_point(poles)
    for s in poles:
        center = complex(s)
        radius = hyperlog.expansion_radius(poles, s)
        angle = cmath.phase(z1 - center) if center != 0 else 0.0
        for word in words:
            expansion = local_expansion.expand_at(word, s, poles, cfg=TIGHT)
            if expansion.log_degree > len(word) or local_expansion.unipotence_degree(expansion) > len(word):
                return False
            z = _point_near(rng, center, angle, 0.4 * radius)
            direct = hyperlog.eval_L(word, z, poles, cfg=TIGHT).value
            if not _close(local_expansion.evaluate_expansion(expansion, z), direct, 1e-6):
                return False
            theta = cmath.phase(z - center)
            circle = paths.Path(z, [paths.ArcSegment(center, abs(z - center), theta, theta + 2 * math.pi)])
            continued = hyperlog.eval_L_many([word], z, poles, hyperlog.default_path_class(z, poles).concat(circle), TIGHT)
            shifted = local_expansion.shift_sheet(expansion)
            if not _close(local_expansion.evaluate_expansion(shifted, z), continued[word], 1e-6):
                return False
    zero = poles.points[0]
    return local_expansion.expand_at((zero, zero), zero, poles, cfg=TIGHT).log_degree == 2


def check_connection(rng: random.Random, sizes: Sizes) -> bool:
    poles = MZV_POLES
    x0 = reduce.default_basepoint(poles)
    for _ in range(sizes['tensors']):
        sigma = curve.section_sigma0(poles) if rng.random() < 0.5 else random_section(rng, poles)
        terms = {
            random_hdr_word(rng, poles, rng.randint(0, 3)): random_function(rng, poles)
            for _ in range(2)
        }
        element = forms.FunctionTensor(poles, terms)
        z = random_point(rng, poles, clearance=0.5)
        if iterint.connection_numeric_check(element, sigma, x0, z, TIGHT) > 1e-6:
            return False
    return True


def check_homotopy(rng: random.Random, sizes: Sizes) -> bool:
    """Hyperlogarithms and Omega-integrals agree along deformed paths with fixed ends."""
    for case in range(sizes['homotopy']):
        if case % 2 == 0:
            poles = MZV_POLES
            z = random_point(rng, poles)
            first, second = random_homotopic_pair(rng, poles, hyperlog.seed_point(poles), z)
            word = random_hdr_word(rng, poles, rng.randint(1, 3))
            values = [hyperlog.eval_L(word, z, poles, path, TIGHT).value for path in (first, second)]
        else:
            poles = random_poles(rng, 3)
            x0 = reduce.default_basepoint(poles)
            first, second = random_homotopic_pair(rng, poles, x0, random_point(rng, poles))
            tensor = random_omega_tensor(rng, poles, 3)
            values = [iterint.integrate_tensor(path, tensor, TIGHT) for path in (first, second)]
        if not _close(values[0], values[1], 1e-8):
            return False
    return True


CRITERIA: typing.List[typing.Tuple[int, str, typing.Callable[[random.Random, Sizes], bool]]] = [
    (1, 'multiple zeta values', check_mzv),
    (2, 'shuffle identity', check_shuffle_identity),
    (3, 'chain rule', check_chain_rule),
    (4, 'period matrix', check_periods),
    (5, 'monodromy', check_monodromy),
    (6, 'reduction soundness', check_reduction),
    (7, 'kernel exactness', check_kernel),
    (8, 'coradical filtration', check_coradical),
    (9, 'KZ specialization', check_kz),
    (10, 'local expansions', check_local_expansions),
    (11, 'connection', check_connection),
    (12, 'homotopy invariance', check_homotopy),
]


def run_suite(seed: int = config.DEFAULT_SEED, quick: bool = False) -> dict:
    sizes = config.SELFTEST_QUICK_SIZES if quick else config.SELFTEST_SIZES
    results = []
    for number, name, check in CRITERIA:
        rng = random.Random(seed * 1000 + number)
        started = time.monotonic()
        try:
            passed = bool(check(rng, sizes))
        except Exception as exc:
            logger.exception(messages.CRITERION_ERROR_TEMPLATE.format(number, name, exc))
            passed = False
        logger.info(messages.CRITERION_TEMPLATE.format(number, name, passed, time.monotonic() - started))
        results.append({'id': number, 'name': name, 'passed': passed})
    return {'criteria': results, 'quick': quick, 'passed': all(item['passed'] for item in results)}
