import cmath
import math

import mpmath
import pytest

from curvelog import common
from curvelog import curve
from curvelog import exact
from curvelog import hyperlog
from curvelog import paths
from curvelog import shuffle

ZETA2 = 1.6449340668482264
ZETA3 = 1.2020569031595942


def words(poles, text):
    return curve.parse_word_labels(poles, text).words()[0]


def test_regularization_of_pure_zero_words(poles_01):
    assert hyperlog.regularize('0', poles_01).components == {1: shuffle.ShuffleTensor.unit(poles_01.hdr_alphabet)}
    regularized = hyperlog.regularize('0,0', poles_01)
    assert regularized.degree == 2
    assert regularized.component(2) == shuffle.ShuffleTensor.unit(poles_01.hdr_alphabet, exact.coerce('1/2'))


def test_regularization_splits_off_the_leading_zeros(poles_01):
    regularized = hyperlog.regularize('0,1', poles_01)
    assert regularized.component(1) == curve.parse_word_labels(poles_01, '1')
    assert regularized.component(0) == -curve.parse_word_labels(poles_01, '1,0')
    assert all(hyperlog.is_admissible(word, 0) for word in regularized.admissible_words())


def test_regularization_is_inverted_by_reassembly(poles_complex, rng):
    points = poles_complex.points
    for _ in range(20):
        word = tuple(rng.choice(points) for _ in range(rng.randint(0, 4)))
        regularized = hyperlog.regularize(word, poles_complex)
        assert hyperlog.reassemble(regularized) == shuffle.ShuffleTensor.word(poles_complex.hdr_alphabet, word)


def test_regularization_needs_zero_among_the_poles():
    poles = curve.PoleSet.from_strings('1,2')
    with pytest.raises(common.DomainError):
        hyperlog.regularize('1', poles)


@pytest.mark.parametrize('z', [0.3 + 0.2j, -0.6 + 0.1j, 2 + 0.5j, -1.5 - 2j, 0.8j])
def test_weight_one_and_two_closed_forms(poles_01, tight, z):
    values = hyperlog.eval_L_many(
        [words(poles_01, text) for text in ('0', '1', '0,0', '1,1', '1,0')], z, poles_01, cfg=tight,
    )
    log_z, log_1mz = cmath.log(z), cmath.log(1 - z)
    assert values[words(poles_01, '0')] == pytest.approx(log_z, rel=1e-9)
    assert values[words(poles_01, '1')] == pytest.approx(log_1mz, rel=1e-9)
    assert values[words(poles_01, '0,0')] == pytest.approx(log_z ** 2 / 2, rel=1e-9)
    assert values[words(poles_01, '1,1')] == pytest.approx(log_1mz ** 2 / 2, rel=1e-9)
    assert values[words(poles_01, '1,0')] == pytest.approx(-complex(mpmath.polylog(2, z)), rel=1e-9)


def test_path_class_below_the_pole_changes_the_branch(poles_01, tight):
    z = 2 + 0.5j
    above = paths.Path.through([0.25, 0.25 + 1j, z])
    below = paths.Path.through([0.25, 1 - 0.5j, z])
    default = hyperlog.eval_L('1', z, poles_01, cfg=tight).value
    assert hyperlog.eval_L('1', z, poles_01, above, tight).value == pytest.approx(default, rel=1e-9)
    assert hyperlog.eval_L('1', z, poles_01, below, tight).value == pytest.approx(default + 2j * math.pi, rel=1e-9)


def test_homotopic_user_paths_agree(poles_01, tight):
    z = 2 + 0.5j
    first = paths.polygonal_path([0.5, 0.5 + 1j, z], poles_01.points)
    second = paths.polygonal_path([0.5, -1 + 2j, 3 + 2j, z], poles_01.points)
    assert paths.homotopic(first, second, poles_01.points)
    for word in ('1', '1,0', '0,1,1'):
        value = hyperlog.eval_L(word, z, poles_01, first, tight).value
        assert hyperlog.eval_L(word, z, poles_01, second, tight).value == pytest.approx(value, rel=1e-8, abs=1e-10)


def test_user_paths_start_next_to_zero(poles_01):
    with pytest.raises(common.DomainError):
        hyperlog.eval_L('1', 2j, poles_01, paths.Path.through([-1, 2j]))
    with pytest.raises(ValueError):
        hyperlog.eval_L('1', 2j, poles_01, paths.Path.through([0.25, 3j]))


def test_evaluation_at_a_pole(poles_01):
    with pytest.raises(common.PoleEvaluation):
        hyperlog.eval_L('1,0', 1, poles_01)


def test_shuffle_law(poles_complex, tight):
    a = curve.parse_word_labels(poles_complex, '0,1')
    b = curve.parse_word_labels(poles_complex, '1/2+i') + curve.parse_word_labels(poles_complex, '0')
    assert hyperlog.shuffle_law_residual(a, b, 1.5 - 0.5j, poles_complex, tight) < 1e-9


def test_tensor_evaluation_is_linear(poles_01, tight):
    tensor = curve.parse_word_labels(poles_01, '1,0').scale(2) - curve.parse_word_labels(poles_01, '0')
    z = 0.4 - 0.3j
    expected = -2 * complex(mpmath.polylog(2, z)) - cmath.log(z)
    assert hyperlog.eval_L_tensor(tensor, z, poles_01, cfg=tight) == pytest.approx(expected, rel=1e-9)
    with pytest.raises(common.AlphabetMismatch):
        hyperlog.eval_L_tensor(shuffle.ShuffleTensor.unit(poles_01.omega_alphabet), z, poles_01)


def test_epsilon_limit(poles_01, tight):
    small = hyperlog.epsilon_limit_residual('0,1', 1 + 1j, poles_01, 2e-3, tight)
    large = hyperlog.epsilon_limit_residual('0,1', 1 + 1j, poles_01, 1e-2, tight)
    assert small < 0.03
    assert small < large
    with pytest.raises(common.DomainError):
        hyperlog.epsilon_limit_residual('0,1', 1 + 1j, poles_01, 0.7)


@pytest.mark.parametrize('word, expected', [
    ('', 1),
    ('0', 0),
    ('1,0', -ZETA2),
    ('1,0,0', -ZETA3),
    ('1,1,0', ZETA3),
    ('1,0,1,0', (ZETA2 ** 2 - math.pi ** 4 / 90) / 2),
])
def test_multiple_zeta_values(tight, word, expected):
    assert hyperlog.mzv(word, tight) == pytest.approx(expected, rel=1e-8, abs=1e-10)


def test_divergent_multiple_zeta_values():
    with pytest.raises(common.DivergentWord):
        hyperlog.mzv('0,1')


def test_seed_point():
    assert hyperlog.seed_point(curve.PoleSet.from_strings('0,1')) == 0.5
    assert hyperlog.seed_point(curve.PoleSet.from_strings('0,2i,3')) == 1
    assert hyperlog.seed_point(curve.PoleSet.from_strings('0')) == 0.5


def test_value_json(poles_01):
    value = hyperlog.eval_L('1,0', 0.5j, poles_01)
    data = value.to_json(poles_01)
    assert data['word'] == ['1', '0']
    assert data['path'] == 'default'
    assert data['point'] == [0.0, 0.5]
