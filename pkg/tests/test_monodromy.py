import math

import numpy as np
import pytest

from curvelog import common
from curvelog import curve
from curvelog import iterint
from curvelog import monodromy
from curvelog import paths

TWO_PI_I = 2j * math.pi


@pytest.fixture
def sigma0(poles_01):
    return curve.section_sigma0(poles_01)


@pytest.fixture
def loops(poles_01):
    zero, one = poles_01.points
    return monodromy.loop_around(zero, 2, poles=poles_01), monodromy.loop_around(one, 2, poles=poles_01)


def test_loops_wind_once_around_their_pole(loops):
    loop_zero, loop_one = loops
    assert loop_zero.is_closed()
    assert loop_zero.winding_number(0) == pytest.approx(1)
    assert loop_zero.winding_number(1) == pytest.approx(0, abs=1e-9)
    assert loop_one.winding_number(1) == pytest.approx(1)
    assert loop_zero.compose(loop_one).winding_number(1) == pytest.approx(1)
    assert monodromy.inverse(loop_one).winding_number(1) == pytest.approx(-1)


def test_infeasible_radii(poles_01):
    with pytest.raises(common.InfeasibleRadius):
        monodromy.loop_around(0, 2, radius=0.6, poles=poles_01)
    with pytest.raises(common.InfeasibleRadius):
        monodromy.loop_around(0, 0.1, radius=0.2)
    with pytest.raises(common.InfeasibleRadius):
        monodromy.loop_around(0, 2, radius=-1.0)


def test_loop_based_at_its_own_center():
    loop = monodromy.loop_around(0, 0, radius=0.5)
    assert loop.is_closed()
    circle = next(segment for segment in loop.segments if isinstance(segment, paths.ArcSegment))
    assert circle.center == 0
    assert circle.start == pytest.approx(0.5)
    assert circle.sweep == pytest.approx(2 * math.pi)


def test_pairing_of_small_loops(loops, sigma0, tight):
    loop_zero, _ = loops
    zero, one = sigma0.poles.points
    series = monodromy.pairing(loop_zero, sigma0, 2, tight)
    assert series.value((zero,)) == pytest.approx(TWO_PI_I, rel=1e-10)
    assert abs(series.value((one,))) < 1e-10
    assert series.value((zero, zero)) == pytest.approx(TWO_PI_I ** 2 / 2, rel=1e-10)


def test_pairing_needs_a_closed_loop(sigma0):
    with pytest.raises(ValueError):
        monodromy.pairing(paths.Path.through([2, 3j]), sigma0, 1)


def test_operators_compose_and_are_unipotent(loops, sigma0, tight):
    loop_zero, loop_one = loops
    m_zero = monodromy.monodromy_operator(loop_zero, sigma0, 3, tight)
    m_one = monodromy.monodromy_operator(loop_one, sigma0, 3, tight)
    composite = monodromy.monodromy_operator(monodromy.compose(loop_zero, loop_one), sigma0, 3, tight)
    assert composite.distance(m_zero @ m_one) < 1e-8
    for operator in (m_zero, m_one, composite):
        assert monodromy.unipotence_check(operator)
        assert monodromy.suffix_structure_holds(operator)
    inverse = monodromy.monodromy_operator(monodromy.inverse(loop_zero), sigma0, 3, tight)
    assert np.max(np.abs(inverse.matrix @ m_zero.matrix - np.eye(len(m_zero.words)))) < 1e-8


def test_operator_apply(loops, sigma0, tight):
    loop_zero, _ = loops
    zero = sigma0.poles.points[0]
    operator = monodromy.monodromy_operator(loop_zero, sigma0, 2, tight)
    image = operator.apply(curve.hdr_word(sigma0.poles, ['0']))
    assert image[(zero,)] == 1
    assert image[()] == pytest.approx(TWO_PI_I, rel=1e-10)
    with pytest.raises(ValueError):
        operator.apply(curve.hdr_word(sigma0.poles, ['0', '0', '1']))


def test_non_unipotent_matrix_is_detected(loops, sigma0, tight):
    operator = monodromy.monodromy_operator(loops[0], sigma0, 1, tight)
    broken = monodromy.MonodromyOperator(operator.alphabet, 1, operator.words, 2 * operator.matrix)
    assert not monodromy.unipotence_check(broken)


@pytest.mark.parametrize('labels', ['0', '0,1', '0,1,1/2+i', '-1,1,2i,-2i'])
def test_period_matrix_is_diagonal(labels, tight):
    poles = curve.PoleSet.from_strings(labels)
    matrix = monodromy.period_matrix(poles, cfg=tight)
    assert np.max(np.abs(matrix - TWO_PI_I * np.eye(len(poles)))) < 1e-8


def test_period_matrix_ignores_exact_corrections(poles_01, tight):
    z = curve.RationalFunction.z(poles_01)
    sigma = curve.section_from_corrections(poles_01, {
        0: z * z,
        1: curve.RationalFunction.pole_term(poles_01, 0, 2, 3),
    })
    matrix = monodromy.period_matrix(poles_01, sigma, tight)
    assert np.max(np.abs(matrix - TWO_PI_I * np.eye(2))) < 1e-8
    assert abs(np.linalg.det(matrix)) > 1


def test_transport_changes_the_basepoint(poles_01, sigma0, tight):
    first = paths.straight_path(2, 0.5 + 1j, poles_01.points)
    second = paths.straight_path(0.5 + 1j, -1 - 0.5j, poles_01.points)
    transport = monodromy.transport_operator(first, sigma0, 3, tight)
    from_x1 = iterint.j_element(second, sigma0, tight, weight=3)
    from_x0 = iterint.j_element(first.concat(second), sigma0, tight, weight=3)
    vector = np.array([from_x1.value(word) for word in transport.words])
    combined = transport.matrix @ vector
    expected = np.array([from_x0.value(word) for word in transport.words])
    assert np.max(np.abs(combined - expected)) < 1e-8


def test_operator_depends_only_on_the_homotopy_class(loops, sigma0, tight):
    loop_zero, loop_one = loops
    m_zero = monodromy.monodromy_operator(loop_zero, sigma0, 3, tight)
    smaller = monodromy.loop_around(0, 2, radius=0.3, poles=sigma0.poles)
    assert monodromy.monodromy_operator(smaller, sigma0, 3, tight).distance(m_zero) < 1e-8
    cancelled = monodromy.compose(monodromy.compose(loop_zero, loop_one), monodromy.inverse(loop_one))
    assert monodromy.monodromy_operator(cancelled, sigma0, 3, tight).distance(m_zero) < 1e-8
    assert monodromy.monodromy_operator(loop_one, sigma0, 3, tight).distance(m_zero) > 1
