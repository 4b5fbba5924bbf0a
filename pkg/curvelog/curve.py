"""Exact genus-0 curve C = P^1 minus S, S = S_inf + {infinity}.

Rational functions are kept in partial-fraction normal form: a polynomial
in z plus principal parts c * (z - s)^-k at the finite poles. Differentials
are f * dz. The de Rham space has the basis h_s (one class per finite pole),
read off through residues.
"""
import functools
import logging
import typing

import numpy as np

from . import common
from . import config
from . import exact
from . import shuffle

logger = logging.getLogger(config.LOGGER_NAME)

Point = exact.Scalar


class PoleSet:
    __slots__ = ('points', '_index')

    def __init__(self, points: typing.Iterable):
        converted = tuple(exact.coerce(p) for p in points)
        if not converted:
            raise common.DomainError('Pole set must contain at least one finite point')
        if len(set(converted)) != len(converted):
            raise common.RepeatedPoints(f'Pole set has repeated points: {[exact.to_string(p) for p in converted]}')
        self.points = converted
        self._index = {p: i for i, p in enumerate(converted)}

    @classmethod
    def from_strings(cls, text: typing.Union[str, typing.Sequence[str]]) -> 'PoleSet':
        if isinstance(text, str):
            text = [part for part in text.split(',') if part.strip()]
        return cls(exact.coerce(part.strip()) for part in text)

    @property
    def exact(self) -> bool:
        return all(exact.is_exact(p) for p in self.points)

    def require_exact(self):
        if not self.exact:
            raise common.InexactPoles(f'Exact arithmetic needs exact poles, got {self!r}')

    @property
    def numeric(self) -> np.ndarray:
        return np.array([complex(p) for p in self.points], dtype=complex)

    def index(self, point) -> int:
        try:
            return self._index[exact.coerce(point)]
        except KeyError:
            raise common.PoleSetMismatch(f'{exact.to_string(exact.coerce(point))} is not a pole of {self!r}') from None

    def __contains__(self, point):
        try:
            return exact.coerce(point) in self._index
        except (TypeError, ValueError):
            return False

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, PoleSet):
            return NotImplemented
        return self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f'PoleSet({self.labels()!r})'

    def labels(self) -> typing.List[str]:
        return [exact.to_string(p) for p in self.points]

    def label(self, point) -> str:
        return exact.to_string(self.points[self.index(point)])

    def parse_label(self, text: str):
        return self.points[self.index(exact.coerce(text.strip()))]

    def nearest_other_distance(self, point) -> float:
        point = complex(point)
        distances = [abs(point - complex(p)) for p in self.points if complex(p) != point]
        return min(distances) if distances else float('inf')

    def distance(self, z: complex) -> float:
        return float(np.min(np.abs(self.numeric - complex(z))))

    def guard(self) -> float:
        return common.pole_guard([complex(p) for p in self.points])

    def to_json(self) -> typing.List[str]:
        return self.labels()

    @property
    def hdr_alphabet(self) -> shuffle.Alphabet:
        return _hdr_alphabet(self)

    @property
    def omega_alphabet(self) -> shuffle.Alphabet:
        return _omega_alphabet(self)


def _check_poles(a, b):
    if a.poles != b.poles:
        raise common.PoleSetMismatch(f'Pole set mismatch: {a.poles!r} vs {b.poles!r}')


def _strip(coeffs: typing.List) -> typing.Tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _shift_to(poly: typing.Sequence, s) -> typing.List:
    """Coefficients of p(z) in powers of (z - s)."""
    result = []
    for m in range(len(poly)):
        total = exact.ZERO
        for n in range(m, len(poly)):
            if poly[n]:
                total = total + poly[n] * exact.binomial(n, m) * s ** (n - m)
        result.append(total)
    return result


def _power_of_shift(m: int, s) -> typing.List:
    """Coefficients of (z - s)^m in powers of z, m >= 0."""
    return [exact.binomial(m, n) * (-s) ** (m - n) for n in range(m + 1)]


def _add_into(target: dict, key, value):
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class RationalFunction:
    __slots__ = ('poles', 'poly', 'principal', '_hash')

    def __init__(self, poles: PoleSet, poly: typing.Sequence = (), principal: typing.Optional[typing.Mapping] = None):
        self.poles = poles
        self.poly = _strip(exact.coerce(c) for c in poly)
        cleaned = {}
        for (s, k), coeff in (principal or {}).items():
            s = exact.coerce(s)
            if s not in poles:
                raise common.PoleSetMismatch(f'{exact.to_string(s)} is not a pole of {poles!r}')
            if k < 1:
                raise ValueError(f'Principal part order must be >= 1, got {k}')
            coeff = exact.coerce(coeff)
            if coeff:
                cleaned[(poles.points[poles.index(s)], int(k))] = coeff
        self.principal = cleaned
        self._hash = None

    # Builders

    @classmethod
    def zero(cls, poles: PoleSet) -> 'RationalFunction':
        return cls(poles)

    @classmethod
    def constant(cls, poles: PoleSet, value) -> 'RationalFunction':
        return cls(poles, [value])

    @classmethod
    def z(cls, poles: PoleSet) -> 'RationalFunction':
        return cls(poles, [0, 1])

    @classmethod
    def monomial(cls, poles: PoleSet, n: int, coeff=1) -> 'RationalFunction':
        return cls(poles, [0] * n + [coeff])

    @classmethod
    def pole_term(cls, poles: PoleSet, s, k: int = 1, coeff=1) -> 'RationalFunction':
        """coeff * (z - s)^-k."""
        return cls(poles, (), {(s, k): coeff})

    # Inspection

    def is_zero(self) -> bool:
        return not self.poly and not self.principal

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self) -> bool:
        return not self.principal and len(self.poly) <= 1

    def constant_term(self):
        return self.poly[0] if self.poly else exact.ZERO

    def max_pole_order(self, s) -> int:
        s = exact.coerce(s)
        orders = [k for (t, k) in self.principal if t == s]
        return max(orders) if orders else 0

    def residue(self, s):
        return self.principal.get((exact.coerce(s), 1), exact.ZERO)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def terms(self) -> typing.List[typing.Tuple[typing.Tuple, exact.Scalar]]:
        """(('power', n) | ('pole', s, k), coeff) in canonical order."""
        result = [(('power', n), c) for n, c in enumerate(self.poly) if c]
        for (s, k), c in sorted(self.principal.items(), key=lambda item: (self.poles.index(item[0][0]), item[0][1])):
            result.append((('pole', s, k), c))
        return result

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.poles == other.poles and self.poly == other.poly and self.principal == other.principal
        if isinstance(other, (int, exact.GaussianRational)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.poles, self.poly, frozenset(self.principal.items())))
        return self._hash

    def __repr__(self):
        return f'RationalFunction({self.to_string()})'

    def to_string(self) -> str:
        if self.is_zero():
            return '0'
        parts = []
        for key, c in self.terms():
            coeff = exact.to_string(c)
            if key[0] == 'power':
                n = key[1]
                base = '' if n == 0 else ('z' if n == 1 else f'z^{n}')
            else:
                _, s, k = key
                shifted = 'z' if not s else f'(z-({exact.to_string(s)}))'
                base = f'{shifted}^-{k}'
            parts.append(f'({coeff})*{base}' if base else f'({coeff})')
        return ' + '.join(parts)

    # Ring structure

    def __add__(self, other) -> 'RationalFunction':
        other = self._lift(other)
        _check_poles(self, other)
        n = max(len(self.poly), len(other.poly))
        poly = [
            (self.poly[i] if i < len(self.poly) else exact.ZERO)
            + (other.poly[i] if i < len(other.poly) else exact.ZERO)
            for i in range(n)
        ]
        principal = dict(self.principal)
        for key, c in other.principal.items():
            _add_into(principal, key, c)
        return RationalFunction(self.poles, poly, principal)

    __radd__ = __add__

    def __neg__(self) -> 'RationalFunction':
        return self.scale(-1)

    def __sub__(self, other) -> 'RationalFunction':
        return self + (-self._lift(other))

    def __rsub__(self, other) -> 'RationalFunction':
        return self._lift(other) - self

    def scale(self, scalar) -> 'RationalFunction':
        scalar = exact.coerce(scalar)
        return RationalFunction(
            self.poles,
            [c * scalar for c in self.poly],
            {key: c * scalar for key, c in self.principal.items()},
        )

    def __mul__(self, other) -> 'RationalFunction':
        if isinstance(other, Differential):
            return NotImplemented
        if not isinstance(other, RationalFunction):
            return self.scale(other)
        _check_poles(self, other)
        poly = {}
        principal = {}
        for key_a, a in self.terms():
            for key_b, b in other.terms():
                _multiply_terms(poly, principal, key_a, key_b, a * b)
        size = max(poly) + 1 if poly else 0
        return RationalFunction(self.poles, [poly.get(n, exact.ZERO) for n in range(size)], principal)

    __rmul__ = __mul__

    def _lift(self, other) -> 'RationalFunction':
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction.constant(self.poles, other)

    def derivative(self) -> 'RationalFunction':
        poly = [c * n for n, c in enumerate(self.poly)][1:]
        principal = {(s, k + 1): c * (-k) for (s, k), c in self.principal.items()}
        return RationalFunction(self.poles, poly, principal)

    def d(self) -> 'Differential':
        return Differential(self.derivative())

    def antiderivative(self) -> 'RationalFunction':
        """F with F' = f, zero constant term in the polynomial part; f must be residue-free."""
        residues = {s: c for (s, k), c in self.principal.items() if k == 1}
        if residues:
            raise common.DomainError(
                f'No rational antiderivative: residues at {[exact.to_string(s) for s in residues]}',
            )
        poly = [exact.ZERO] + [c / (n + 1) for n, c in enumerate(self.poly)]
        principal = {(s, k - 1): c / (1 - k) for (s, k), c in self.principal.items()}
        return RationalFunction(self.poles, poly, principal)

    # Evaluation

    def value_at(self, x):
        """Exact value at an exact point off the poles."""
        x = exact.coerce(x)
        if x in self.poles and any(s == x for (s, _) in self.principal):
            raise common.PoleEvaluation(f'{self.to_string()} has a pole at {exact.to_string(x)}')
        total = exact.ZERO
        for n, c in enumerate(self.poly):
            if c:
                total = total + c * x ** n
        for (s, k), c in self.principal.items():
            total = total + c / (x - s) ** k
        return total

    def evaluate(self, z):
        """Numeric value at complex z, or elementwise on a numpy array."""
        array = np.asarray(z, dtype=complex)
        for (s, _) in self.principal:
            if np.any(array == complex(s)):
                raise common.PoleEvaluation(f'{self.to_string()} has a pole at {exact.to_string(s)}')
        total = np.zeros_like(array)
        for c in reversed(self.poly):
            total = total * array + complex(c)
        for (s, k), c in self.principal.items():
            total = total + complex(c) / (array - complex(s)) ** k
        if np.ndim(z) == 0:
            return complex(total)
        return total

    def __call__(self, z):
        return self.evaluate(z)

    def laurent_coefficients(self, s, order: int) -> typing.Dict[int, complex]:
        """Coefficients of (z - s)^j, j <= order, of the expansion at the point s."""
        center = complex(exact.coerce(s))
        result = {}
        shifted = _shift_to([complex(c) for c in self.poly], center)
        for m, c in enumerate(shifted):
            if m <= order and c:
                result[m] = result.get(m, 0) + c
        for (t, k), c in self.principal.items():
            t_value = complex(t)
            c = complex(c)
            if t_value == center:
                result[-k] = result.get(-k, 0) + c
                continue
            d = center - t_value
            for m in range(order + 1):
                term = c * exact.binomial(-k, m) * d ** (-k - m)
                result[m] = result.get(m, 0) + term
        return {j: v for j, v in result.items() if v}

    # Serialization

    def to_json(self) -> dict:
        return {
            'poly': [exact.to_string(c) for c in self.poly],
            'principal': [
                {'pole': exact.to_string(s), 'order': k, 'coeff': exact.to_string(c)}
                for (_, s, k), c in (item for item in self.terms() if item[0][0] == 'pole')
            ],
        }

    @classmethod
    def from_json(cls, data: dict, poles: PoleSet) -> 'RationalFunction':
        principal = {}
        for entry in data.get('principal', []):
            key = (exact.coerce(str(entry['pole'])), int(entry.get('order', 1)))
            _add_into(principal, key, exact.coerce(str(entry.get('coeff', '1'))))
        instance = cls(poles, [exact.coerce(str(c)) for c in data.get('poly', [])], principal)
        return instance


def _multiply_terms(poly: dict, principal: dict, key_a, key_b, coeff):
    if key_a[0] == 'power' and key_b[0] == 'power':
        _add_into(poly, key_a[1] + key_b[1], coeff)
        return
    if key_a[0] == 'power':
        key_a, key_b = key_b, key_a
    if key_b[0] == 'power':
        # (z - s)^-k * z^n, with z^n rewritten around s
        _, s, k = key_a
        shifted = _shift_to([exact.ZERO] * key_b[1] + [exact.ONE], s)
        for m, b in enumerate(shifted):
            if not b:
                continue
            if m < k:
                _add_into(principal, (s, k - m), coeff * b)
            else:
                for n, e in enumerate(_power_of_shift(m - k, s)):
                    _add_into(poly, n, coeff * b * e)
        return
    _, s, k = key_a
    _, t, l = key_b
    if s == t:
        _add_into(principal, (s, k + l), coeff)
        return
    for m in range(k):
        _add_into(principal, (s, k - m), coeff * exact.binomial(-l, m) * (s - t) ** (-l - m))
    for m in range(l):
        _add_into(principal, (t, l - m), coeff * exact.binomial(-k, m) * (t - s) ** (-k - m))


class Differential:
    """f * dz."""
    __slots__ = ('function',)

    def __init__(self, function: RationalFunction):
        self.function = function

    @property
    def poles(self) -> PoleSet:
        return self.function.poles

    @classmethod
    def dlog(cls, poles: PoleSet, s) -> 'Differential':
        return cls(RationalFunction.pole_term(poles, s, 1))

    @classmethod
    def pole(cls, poles: PoleSet, s, k: int = 1, coeff=1) -> 'Differential':
        return cls(RationalFunction.pole_term(poles, s, k, coeff))

    @classmethod
    def power(cls, poles: PoleSet, n: int = 0, coeff=1) -> 'Differential':
        return cls(RationalFunction.monomial(poles, n, coeff))

    @classmethod
    def zero(cls, poles: PoleSet) -> 'Differential':
        return cls(RationalFunction.zero(poles))

    def is_zero(self) -> bool:
        return self.function.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Differential):
            return NotImplemented
        return self.function == other.function

    def __hash__(self):
        return hash(('dz', self.function))

    def __repr__(self):
        return f'Differential(({self.function.to_string()}) dz)'

    def __str__(self):
        return f'({self.function.to_string()})dz'

    def __add__(self, other: 'Differential') -> 'Differential':
        return Differential(self.function + other.function)

    def __neg__(self):
        return Differential(-self.function)

    def __sub__(self, other: 'Differential') -> 'Differential':
        return Differential(self.function - other.function)

    def scale(self, scalar) -> 'Differential':
        return Differential(self.function.scale(scalar))

    def __mul__(self, other) -> 'Differential':
        """Product with a function or a scalar."""
        return Differential(self.function * other)

    __rmul__ = __mul__

    def residue(self, s):
        return self.function.residue(s)

    def evaluate(self, z):
        return self.function.evaluate(z)

    def monomials(self) -> typing.List[typing.Tuple['Differential', exact.Scalar]]:
        """Decomposition into unit monomials z^n dz and (z - s)^-k dz."""
        result = []
        for key, c in self.function.terms():
            if key[0] == 'power':
                result.append((Differential.power(self.poles, key[1]), c))
            else:
                result.append((Differential.pole(self.poles, key[1], key[2]), c))
        return result

    def is_unit_monomial(self) -> bool:
        terms = self.function.terms()
        return len(terms) == 1 and terms[0][1] == exact.ONE

    def monomial_key(self):
        """Sort key of a unit monomial: powers first, then poles in declared order."""
        (key, _), = self.function.terms()
        if key[0] == 'power':
            return 0, key[1], 0
        return 1, self.poles.index(key[1]), key[2]

    def to_json(self):
        if self.is_unit_monomial():
            (key, _), = self.function.terms()
            if key[0] == 'power':
                return {'power': key[1]}
            return {'pole': exact.to_string(key[1]), 'order': key[2]}
        return {'rf': self.function.to_json()}

    @classmethod
    def from_json(cls, data, poles: PoleSet) -> 'Differential':
        if isinstance(data, str):
            return cls.dlog(poles, exact.coerce(data))
        if 'rf' in data:
            return cls(RationalFunction.from_json(data['rf'], poles))
        if 'power' in data:
            return cls.power(poles, int(data['power']), exact.coerce(str(data.get('coeff', '1'))))
        if 'pole' in data:
            return cls.pole(
                poles,
                exact.coerce(str(data['pole'])),
                int(data.get('order', 1)),
                exact.coerce(str(data.get('coeff', '1'))),
            )
        raise ValueError(f'Cannot decode differential from {data!r}')


class DeRhamClass:
    """sum_s c_s h_s in H^dR."""
    __slots__ = ('poles', 'coefficients')

    def __init__(self, poles: PoleSet, coefficients: typing.Optional[typing.Mapping] = None):
        self.poles = poles
        cleaned = {}
        for s, c in (coefficients or {}).items():
            c = exact.coerce(c)
            if c:
                cleaned[poles.points[poles.index(s)]] = c
        self.coefficients = cleaned

    @classmethod
    def basis(cls, poles: PoleSet, s) -> 'DeRhamClass':
        return cls(poles, {s: 1})

    def coefficient(self, s):
        return self.coefficients.get(exact.coerce(s), exact.ZERO)

    def vector(self) -> typing.List[exact.Scalar]:
        return [self.coefficient(s) for s in self.poles]

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, DeRhamClass):
            return NotImplemented
        return self.poles == other.poles and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.poles, frozenset(self.coefficients.items())))

    def __repr__(self):
        parts = [f'({exact.to_string(c)})h[{self.poles.label(s)}]' for s, c in self.coefficients.items()]
        return 'DeRhamClass(' + (' + '.join(parts) or '0') + ')'

    def __add__(self, other: 'DeRhamClass') -> 'DeRhamClass':
        _check_poles(self, other)
        merged = dict(self.coefficients)
        for s, c in other.coefficients.items():
            _add_into(merged, s, c)
        return DeRhamClass(self.poles, merged)


def project_deRham(omega: Differential) -> DeRhamClass:
    """Residues at the finite poles; the kernel is exactly d(O(C))."""
    poles = omega.poles
    return DeRhamClass(poles, {s: omega.residue(s) for s in poles})


class Section:
    """sigma(h_s) = dz/(z - s) + d(g_s)."""

    def __init__(self, poles: PoleSet, corrections: typing.Optional[typing.Mapping] = None):
        self.poles = poles
        self.corrections = {}
        for s, g in (corrections or {}).items():
            if g.poles != poles:
                raise common.PoleSetMismatch(f'Correction for {exact.to_string(s)} lives over {g.poles!r}')
            if not g.is_zero():
                self.corrections[poles.points[poles.index(s)]] = g
        self._images = {}

    @property
    def is_sigma0(self) -> bool:
        return not any(not g.is_constant() for g in self.corrections.values())

    def correction(self, s) -> RationalFunction:
        return self.corrections.get(exact.coerce(s), RationalFunction.zero(self.poles))

    def apply(self, h) -> Differential:
        if isinstance(h, DeRhamClass):
            result = Differential.zero(self.poles)
            for s, c in h.coefficients.items():
                result = result + self.apply(s).scale(c)
            return result
        s = self.poles.points[self.poles.index(h)]
        if s not in self._images:
            self._images[s] = Differential.dlog(self.poles, s) + self.correction(s).d()
        return self._images[s]

    def apply_word(self, tensor: shuffle.ShuffleTensor) -> shuffle.ShuffleTensor:
        """Sh(sigma): H^dR-tensor to Omega-tensor."""
        if tensor.alphabet.id != self.poles.hdr_alphabet.id:
            raise common.AlphabetMismatch(f'Expected an H^dR tensor over {self.poles!r}')
        return tensor.map_letters(
            lambda s: dict(self.apply(s).monomials()),
            self.poles.omega_alphabet,
        )

    def __repr__(self):
        corrections = {self.poles.label(s): g.to_string() for s, g in self.corrections.items()}
        return f'Section({self.poles!r}, corrections={corrections!r})'

    def to_json(self) -> dict:
        return {
            'poles': self.poles.to_json(),
            'corrections': {self.poles.label(s): g.to_json() for s, g in self.corrections.items()},
        }

    @classmethod
    def from_json(cls, data: dict, poles: typing.Optional[PoleSet] = None) -> 'Section':
        poles = poles or PoleSet.from_strings(data['poles'])
        corrections = {
            poles.parse_label(label): RationalFunction.from_json(rf, poles)
            for label, rf in data.get('corrections', {}).items()
        }
        return cls(poles, corrections)


def section_sigma0(poles: PoleSet) -> Section:
    return Section(poles)


def section_from_corrections(poles: PoleSet, corrections: typing.Mapping) -> Section:
    return Section(poles, corrections)


def decompose(omega: Differential, sigma: Section) -> typing.Tuple[DeRhamClass, RationalFunction]:
    """omega = sigma(h) + df with f normalized by a zero constant term."""
    if omega.poles != sigma.poles:
        raise common.PoleSetMismatch(f'{omega.poles!r} vs {sigma.poles!r}')
    h = project_deRham(omega)
    remainder = omega - sigma.apply(h)
    f = remainder.function.antiderivative()
    return h, f


# Alphabets

def _hdr_sort_key(poles: PoleSet):
    return poles.index


def _hdr_letter_to_json(poles: PoleSet):
    return lambda s: {'class': poles.label(s)}


def _hdr_letter_from_json(poles: PoleSet):
    def decode(data):
        if isinstance(data, dict):
            data = data.get('class', data.get('pole'))
        return poles.parse_label(str(data))
    return decode


def _omega_expand(letter):
    if isinstance(letter, Differential):
        if letter.is_unit_monomial():
            return {letter: exact.ONE}
        return dict(letter.monomials())
    raise TypeError(f'Omega letters must be differentials, got {letter!r}')


@functools.lru_cache(maxsize=None)
def _hdr_alphabet(poles: PoleSet) -> shuffle.Alphabet:
    return shuffle.Alphabet(
        f'H_dR{poles.labels()}',
        sort_key=_hdr_sort_key(poles),
        letter_to_json=_hdr_letter_to_json(poles),
        letter_from_json=_hdr_letter_from_json(poles),
    )


@functools.lru_cache(maxsize=None)
def _omega_alphabet(poles: PoleSet) -> shuffle.Alphabet:
    return shuffle.Alphabet(
        f'Omega{poles.labels()}',
        sort_key=lambda letter: letter.monomial_key(),
        expand_letter=_omega_expand,
        letter_to_json=lambda letter: letter.to_json(),
        letter_from_json=lambda data: Differential.from_json(data, poles),
    )


def hdr_word(poles: PoleSet, labels: typing.Iterable, coeff=1) -> shuffle.ShuffleTensor:
    letters = [poles.parse_label(label) if isinstance(label, str) else poles.points[poles.index(label)]
               for label in labels]
    return shuffle.ShuffleTensor.word(poles.hdr_alphabet, letters, coeff)


def omega_word(poles: PoleSet, letters: typing.Iterable[Differential], coeff=1) -> shuffle.ShuffleTensor:
    return shuffle.ShuffleTensor.word(poles.omega_alphabet, list(letters), coeff)


def parse_word_labels(poles: PoleSet, text: str) -> shuffle.ShuffleTensor:
    """'1,0' means [h_1|h_0]; an empty string is the empty word."""
    labels = [part for part in text.split(',') if part.strip()]
    return hdr_word(poles, labels)
