import cmath
import math

import pydantic
import pytest

from curvelog import common
from curvelog import curve
from curvelog import forms
from curvelog import iterint
from curvelog import paths
from curvelog import shuffle
from curvelog.integrator import IntegratorConfig


@pytest.fixture
def letters(poles_01):
    return {
        'dz': curve.Differential.power(poles_01, 0),
        'zdz': curve.Differential.power(poles_01, 1),
        'dlog0': curve.Differential.dlog(poles_01, 0),
        'dlog1': curve.Differential.dlog(poles_01, 1),
    }


def test_single_letter_is_the_logarithm(letters, tight):
    z = -0.5 + 2j
    path = paths.straight_path(2, z, [0, 1])
    value, _ = iterint.integrate_word(path, [letters['dlog0']], tight)
    assert value == pytest.approx(cmath.log(z) - math.log(2), rel=1e-11)


def test_polynomial_words_follow_the_last_letter_outermost_convention(letters, tight):
    z = 1.5 - 0.5j
    path = paths.Path.through([0, z])
    values = iterint.integrate_words(
        path, [(letters['dz'], letters['zdz']), (letters['zdz'], letters['dz'])], None, tight,
    )
    assert values[(letters['dz'], letters['zdz'])] == pytest.approx(z ** 3 / 3, rel=1e-11)
    assert values[(letters['zdz'], letters['dz'])] == pytest.approx(z ** 3 / 6, rel=1e-11)
    assert values[(letters['dz'],)] == pytest.approx(z, rel=1e-11)


def test_loop_integral_of_dlog(letters, tight):
    loop = paths.Path(1.5, [paths.ArcSegment(1, 0.5, 0, 2 * math.pi)])
    value, _ = iterint.integrate_word(loop, [letters['dlog1']], tight)
    assert value == pytest.approx(2j * math.pi, rel=1e-11)
    dlog0, _ = iterint.integrate_word(loop, [letters['dlog0']], tight)
    assert abs(dlog0) < 1e-10


def test_empty_tensor_and_unit(poles_01, tight):
    path = paths.straight_path(2, 3j, poles_01.points)
    unit = shuffle.ShuffleTensor.unit(poles_01.omega_alphabet, 3)
    assert iterint.integrate_tensor(path, unit, tight) == pytest.approx(3)


def test_shuffle_identity(poles_01, letters, tight):
    a = curve.omega_word(poles_01, [letters['dlog1'], letters['dlog0']])
    b = curve.omega_word(poles_01, [letters['zdz'], curve.Differential.pole(poles_01, 1, 2)])
    path = paths.polygonal_path([2, 1 + 1j, -1 + 0.5j], poles_01.points)
    assert iterint.shuffle_identity_check(path, a, b, tight) < 1e-9


def test_chain_rule(poles_01, letters, tight):
    tensor = curve.omega_word(poles_01, [letters['dlog0'], letters['dlog1'], letters['zdz']])
    first = paths.straight_path(2, 0.5 + 1j, poles_01.points)
    second = paths.straight_path(0.5 + 1j, -1 - 1j, poles_01.points)
    assert iterint.chain_rule_check(first, second, tensor, tight) < 1e-9


def test_path_too_close_to_a_pole(letters):
    with pytest.raises(common.PathTooClose):
        iterint.integrate_words(paths.Path.through([-1, 1]), [(letters['dlog0'],)], letters['dlog0'].poles)


def test_step_limit(letters):
    cfg = IntegratorConfig(max_steps=3)
    path = paths.straight_path(2, -2 + 1j, [0, 1])
    with pytest.raises(common.StepLimitExceeded):
        iterint.integrate_word(path, [letters['dlog0'], letters['dlog1']], cfg)


def test_config_validation():
    with pytest.raises(pydantic.ValidationError):
        IntegratorConfig(rtol=-1.0)
    with pytest.raises(pydantic.ValidationError):
        IntegratorConfig(max_steps=0)
    cfg = IntegratorConfig().with_overrides(rtol=1e-6, atol=None)
    assert cfg.rtol == 1e-6
    assert cfg.atol == IntegratorConfig().atol


def test_trace_ends_at_the_endpoint_values(poles_01, letters, tight):
    path = paths.straight_path(2, 1j, poles_01.points)
    words = [(letters['dlog0'],), (letters['dlog0'], letters['dlog1'])]
    rows = iterint.trace(path, words, poles_01, tight)
    assert rows[0] == (0.0, [0j, 0j])
    values = iterint.integrate_words(path, words, poles_01, tight)
    t, last = rows[-1]
    assert t == pytest.approx(len(path.segments))
    assert last[1] == pytest.approx(values[words[1]], rel=1e-12)


def test_j_element_is_group_like_and_convolves(poles_01, tight):
    sigma = curve.section_sigma0(poles_01)
    first = paths.straight_path(2, 0.5 + 1j, poles_01.points)
    second = paths.straight_path(0.5 + 1j, -1 + 0.5j, poles_01.points)
    j_first = iterint.j_element(first, sigma, tight, weight=3)
    j_second = iterint.j_element(second, sigma, tight, weight=3)
    j_whole = iterint.j_element(first.concat(second), sigma, tight, weight=3)
    assert j_whole.group_like_residual(poles_01.points) < 1e-9
    assert j_first.convolve(j_second).distance(j_whole) < 1e-9
    assert j_whole[()] == 1


def test_connection_matches_the_derivative(poles_01, tight):
    z = curve.RationalFunction.z(poles_01)
    sigma = curve.section_from_corrections(poles_01, {1: z})
    element = forms.FunctionTensor(poles_01, {
        (poles_01.points[1], poles_01.points[0]): z * z + 1,
        (poles_01.points[0],): curve.RationalFunction.pole_term(poles_01, 1),
    })
    assert iterint.connection_numeric_check(element, sigma, 2, 0.5 + 1j, tight) < 1e-6


def test_connection_is_a_derivation(poles_01):
    zero, one = poles_01.points
    z = curve.RationalFunction.z(poles_01)
    sigma = curve.section_from_corrections(poles_01, {0: curve.RationalFunction.pole_term(poles_01, 1, 2)})
    a = forms.FunctionTensor(poles_01, {(one, zero): z, (): curve.RationalFunction.pole_term(poles_01, 0)})
    b = forms.FunctionTensor(poles_01, {(zero,): z * z, (one,): curve.RationalFunction.constant(poles_01, 2)})
    assert forms.derivation_residual(a, b, sigma).is_zero()
    f = curve.RationalFunction.pole_term(poles_01, 1, 2)
    constant_word = forms.FunctionTensor(poles_01, {(): f})
    assert forms.nabla_sigma(constant_word, sigma) == forms.FormTensor(poles_01, {(): f.d()})


@pytest.mark.parametrize('points', [['0', '1'], ['0', '1', '1/2+i'], ['-1', '2i', '3', '1/3']])
def test_kz_specialization(points):
    assert iterint.kz_specialization_check(points)


def test_kz_rejects_degenerate_configurations():
    with pytest.raises(common.RepeatedPoints):
        iterint.kz_specialization_check(['0', '0'])
    with pytest.raises(common.DomainError):
        iterint.kz_specialization_check(['0'])


def test_homotopic_paths_give_equal_integrals(poles_01, letters, tight):
    tensor = curve.omega_word(poles_01, [letters['dlog0'], letters['dlog1'], letters['zdz']])
    tensor = tensor + curve.omega_word(poles_01, [curve.Differential.pole(poles_01, 1, 2), letters['dlog0']])
    direct = paths.straight_path(2, -0.5 + 2j, poles_01.points)
    deformed = paths.polygonal_path([2, 3 + 3j, -2 + 1j, -0.5 + 2j], poles_01.points)
    assert paths.homotopic(direct, deformed, poles_01.points)
    value = iterint.integrate_tensor(direct, tensor, tight)
    assert iterint.integrate_tensor(deformed, tensor, tight) == pytest.approx(value, rel=1e-8, abs=1e-10)


def test_paths_around_another_pole_are_not_homotopic(poles_01, letters, tight):
    direct = paths.straight_path(2, -0.5 + 2j, poles_01.points)
    below = paths.polygonal_path([2, 0.5 - 1j, -0.5 + 2j], poles_01.points)
    assert not paths.homotopic(direct, below, poles_01.points)
    assert not paths.homotopic(direct, paths.straight_path(2, 3j, poles_01.points), poles_01.points)
    gap, _ = iterint.integrate_word(below, [letters['dlog1']], tight)
    value, _ = iterint.integrate_word(direct, [letters['dlog1']], tight)
    assert abs(gap - value) == pytest.approx(2 * math.pi, rel=1e-9)
