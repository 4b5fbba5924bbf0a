"""Exact Gaussian rationals: a + b*i with a, b in Q.

Complex pole locations with rational parts stay exact, so the rewriting
code in :mod:`curvelog.reduce` can rely on exact zero tests.
"""
import fractions
import numbers
import re
import typing

import sympy

_IMAGINARY_AFTER_FACTOR = re.compile(r'(?<=[0-9).])\s*[ij]\b')
_IMAGINARY_UNIT = re.compile(r'\b[ij]\b')


class GaussianRational:
    __slots__ = ('re', 'im')

    def __init__(self, re_part=0, im_part=0):
        self.re = fractions.Fraction(re_part)
        self.im = fractions.Fraction(im_part)

    @classmethod
    def from_string(cls, text: str) -> 'GaussianRational':
        prepared = _IMAGINARY_AFTER_FACTOR.sub('*I', text.strip())
        prepared = _IMAGINARY_UNIT.sub('I', prepared)
        try:
            expr = sympy.sympify(prepared, rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError(f'Cannot parse exact complex number {text!r}') from exc
        re_part, im_part = sympy.expand(expr).as_real_imag()
        if not (re_part.is_Rational and im_part.is_Rational):
            raise ValueError(f'Not a Gaussian rational: {text!r}')
        instance = cls(
            fractions.Fraction(int(re_part.p), int(re_part.q)),
            fractions.Fraction(int(im_part.p), int(im_part.q)),
        )
        return instance

    def to_sympy(self):
        return sympy.Rational(self.re.numerator, self.re.denominator) + sympy.I * sympy.Rational(
            self.im.numerator, self.im.denominator,
        )

    def to_string(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            im_text = 'i'
        elif self.im == -1:
            im_text = '-i'
        else:
            im_text = f'{self.im}i'
        if not self.re:
            return im_text
        sign = '' if im_text.startswith('-') else '+'
        return f'{self.re}{sign}{im_text}'

    def to_json(self) -> dict:
        return {'re': str(self.re), 'im': str(self.im)}

    @classmethod
    def from_json(cls, data) -> 'GaussianRational':
        if isinstance(data, dict):
            return cls(fractions.Fraction(data.get('re', '0')), fractions.Fraction(data.get('im', '0')))
        if isinstance(data, str):
            return cls.from_string(data)
        return coerce(data)

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def norm(self) -> fractions.Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f'GaussianRational({self.to_string()!r})'

    def __str__(self):
        return self.to_string()

    def __hash__(self):
        # equal to the hash of any int, Fraction, float or complex that compares equal
        if not self.im:
            return hash(self.re)
        return hash(complex(self))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (numbers.Rational, int)):
            return not self.im and self.re == other
        if isinstance(other, numbers.Complex):
            # exact comparison, as Fraction does with floats
            other = complex(other)
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) + other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) - other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) * other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) / other
        denominator = other.norm()
        if not denominator:
            raise ZeroDivisionError('Division by exact zero')
        numerator = self * other.conjugate()
        return GaussianRational(numerator.re / denominator, numerator.im / denominator)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return other / complex(self)
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return complex(self) ** exponent
        if exponent < 0:
            return ONE / self ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


def _lift(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, fractions.Fraction)):
        return GaussianRational(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    return NotImplemented


Scalar = typing.Union[GaussianRational, complex]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def coerce(value) -> Scalar:
    """Exact inputs become GaussianRational, floating inputs become complex."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        return GaussianRational(int(value))
    if isinstance(value, (int, fractions.Fraction)):
        return GaussianRational(value)
    if isinstance(value, str):
        return GaussianRational.from_string(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    if isinstance(value, numbers.Complex):
        return complex(value)
    raise TypeError(f'Cannot use {value!r} as a scalar')


def is_exact(value) -> bool:
    return isinstance(value, GaussianRational)


def to_string(value: Scalar) -> str:
    if isinstance(value, GaussianRational):
        return value.to_string()
    value = complex(value)
    return repr(value)


def scalar_to_json(value: Scalar) -> dict:
    if isinstance(value, GaussianRational):
        return value.to_json()
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def scalar_from_json(data) -> Scalar:
    """Strings are exact, JSON numbers with a fractional part are floating."""
    if isinstance(data, dict):
        re_part, im_part = data.get('re', '0'), data.get('im', '0')
        if isinstance(re_part, float) or isinstance(im_part, float):
            return complex(float(re_part), float(im_part))
        return GaussianRational(fractions.Fraction(str(re_part)), fractions.Fraction(str(im_part)))
    if isinstance(data, (list, tuple)) and len(data) == 2:
        return complex(float(data[0]), float(data[1]))
    return coerce(data)


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient; n may be negative."""
    if k < 0:
        return 0
    result = fractions.Fraction(1)
    for i in range(k):
        result = result * (n - i) / (i + 1)
    return int(result)
