import pytest

from curvelog import common
from curvelog import curve
from curvelog import exact
from curvelog import shuffle


def rf(poles, poly=(), principal=None):
    return curve.RationalFunction(poles, poly, principal)


def test_pole_set_contract():
    with pytest.raises(common.RepeatedPoints):
        curve.PoleSet.from_strings('0,1,0')
    with pytest.raises(common.DomainError):
        curve.PoleSet([])
    poles = curve.PoleSet.from_strings('0, 1/2+i')
    assert poles.labels() == ['0', '1/2+i']
    assert poles.parse_label('1/2+i') == exact.coerce('1/2+i')
    with pytest.raises(common.PoleSetMismatch):
        poles.parse_label('2')
    assert poles.nearest_other_distance(0) == pytest.approx(abs(0.5 + 1j))


def test_partial_fractions_of_products(poles_01):
    one_over_z = curve.RationalFunction.pole_term(poles_01, 0)
    one_over_z_minus_1 = curve.RationalFunction.pole_term(poles_01, 1)
    assert one_over_z * one_over_z_minus_1 == one_over_z_minus_1 - one_over_z
    assert curve.RationalFunction.z(poles_01) * one_over_z == 1
    z_squared = curve.RationalFunction.monomial(poles_01, 2)
    assert z_squared * one_over_z_minus_1 == rf(poles_01, [1, 1], {(1, 1): 1})


def test_partial_fractions_with_complex_poles(poles_complex, rng):
    s = exact.coerce('1/2+i')
    f = curve.RationalFunction.pole_term(poles_complex, s, 2, 3) + curve.RationalFunction.monomial(poles_complex, 1)
    g = curve.RationalFunction.pole_term(poles_complex, 0, 1, exact.I) + 2
    product = f * g
    for _ in range(5):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        assert product.evaluate(z) == pytest.approx(f.evaluate(z) * g.evaluate(z), rel=1e-12)


def test_derivative_and_antiderivative(poles_01):
    f = rf(poles_01, [3, 0, 1], {(0, 2): 1, (1, 3): -2})
    assert f.antiderivative().derivative() == f
    assert f.derivative().antiderivative() == f - f.constant_term()
    with pytest.raises(common.DomainError):
        curve.RationalFunction.pole_term(poles_01, 1).antiderivative()


def test_exact_and_numeric_evaluation_agree(poles_complex):
    f = rf(poles_complex, [1, exact.I], {(1, 2): '1/3', (exact.coerce('1/2+i'), 1): -1})
    x = exact.coerce('2-i')
    assert complex(f.value_at(x)) == pytest.approx(f.evaluate(complex(x)), rel=1e-14)
    with pytest.raises(common.PoleEvaluation):
        f.value_at(1)
    with pytest.raises(common.PoleEvaluation):
        f.evaluate(1.0)


def test_laurent_coefficients(poles_01):
    f = curve.RationalFunction.pole_term(poles_01, 1) + curve.RationalFunction.pole_term(poles_01, 0, 2)
    coefficients = f.laurent_coefficients(0, 5)
    assert coefficients[-2] == 1
    for j in range(6):
        assert coefficients[j] == pytest.approx(-1)


def test_decompose_with_sigma0(poles_01):
    sigma = curve.section_sigma0(poles_01)
    omega = (
        curve.Differential.pole(poles_01, 0, 2)
        + curve.Differential.pole(poles_01, 1, 1, 2)
        + curve.Differential.power(poles_01, 1)
    )
    h, f = curve.decompose(omega, sigma)
    assert h == curve.DeRhamClass(poles_01, {1: 2})
    assert f == rf(poles_01, [0, 0, '1/2'], {(0, 1): -1})
    assert sigma.apply(h) + f.d() == omega


def test_decompose_with_corrected_section(poles_01):
    z = curve.RationalFunction.z(poles_01)
    sigma = curve.section_from_corrections(poles_01, {1: z})
    assert not sigma.is_sigma0
    omega = curve.Differential.dlog(poles_01, 1)
    h, f = curve.decompose(omega, sigma)
    assert h == curve.DeRhamClass.basis(poles_01, 1)
    assert f == -z
    assert sigma.apply(h) + f.d() == omega


def test_constant_corrections_keep_sigma0(poles_01):
    sigma = curve.section_from_corrections(poles_01, {0: curve.RationalFunction.constant(poles_01, 5)})
    assert sigma.is_sigma0


def test_project_deRham_reads_residues(poles_complex):
    s = exact.coerce('1/2+i')
    omega = curve.Differential.pole(poles_complex, s, 1, 3) + curve.Differential.pole(poles_complex, 0, 3)
    assert curve.project_deRham(omega).vector() == [0, 0, 3]


def test_section_on_words(poles_01):
    sigma = curve.section_sigma0(poles_01)
    image = sigma.apply_word(curve.parse_word_labels(poles_01, '1,0'))
    expected = curve.omega_word(poles_01, [curve.Differential.dlog(poles_01, 1), curve.Differential.dlog(poles_01, 0)])
    assert image == expected
    with pytest.raises(common.AlphabetMismatch):
        sigma.apply_word(expected)


def test_omega_words_expand_into_monomials(poles_01):
    letter = curve.Differential.dlog(poles_01, 0) + curve.Differential.power(poles_01, 0, 2)
    tensor = curve.omega_word(poles_01, [letter])
    assert len(tensor) == 2
    assert tensor.coefficient((curve.Differential.power(poles_01, 0),)) == 2


def test_parse_word_labels(poles_01):
    assert curve.parse_word_labels(poles_01, '1,0').words() == [(exact.ONE, exact.ZERO)]
    assert curve.parse_word_labels(poles_01, '').words() == [()]
    assert curve.parse_word_labels(poles_01, '1,0').alphabet is poles_01.hdr_alphabet


def test_json_codecs(poles_complex):
    f = rf(poles_complex, ['1/2', 0, exact.I], {(exact.coerce('1/2+i'), 2): '-3'})
    assert curve.RationalFunction.from_json(f.to_json(), poles_complex) == f
    sigma = curve.section_from_corrections(poles_complex, {0: f})
    decoded = curve.Section.from_json(sigma.to_json())
    assert decoded.correction(0) == f
    omega = curve.Differential(f)
    assert curve.Differential.from_json(omega.to_json(), poles_complex) == omega
    tensor = curve.omega_word(poles_complex, [omega, curve.Differential.dlog(poles_complex, 1)])
    assert shuffle.ShuffleTensor.from_json(tensor.to_json(), poles_complex.omega_alphabet) == tensor


def test_mismatched_pole_sets(poles_01, poles_complex):
    with pytest.raises(common.PoleSetMismatch):
        curve.RationalFunction.z(poles_01) + curve.RationalFunction.z(poles_complex)
