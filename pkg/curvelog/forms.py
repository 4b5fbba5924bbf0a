"""Elements of O(C) (x) Sh(H^dR) and Sh(H^dR) (x) Omega(C).

FunctionTensor is the carrier of normal forms and of the algebra on which
the connection nabla_sigma acts; FormTensor holds its 1-form valued output.
"""
import typing

from . import common
from . import curve
from . import shuffle


class FunctionTensor:
    """sum_u f_u (x) u with f_u in O(C) and u an H^dR word."""

    def __init__(self, poles: curve.PoleSet, terms: typing.Optional[typing.Mapping] = None):
        self.poles = poles
        cleaned = {}
        for word, f in (terms or {}).items():
            if f.poles != poles:
                raise common.PoleSetMismatch(f'{f.poles!r} vs {poles!r}')
            if not f.is_zero():
                cleaned[tuple(word)] = f
        self.terms = cleaned

    @property
    def alphabet(self) -> shuffle.Alphabet:
        return self.poles.hdr_alphabet

    @classmethod
    def from_parts(cls, poles: curve.PoleSet, function: curve.RationalFunction, tensor: shuffle.ShuffleTensor):
        """function (x) tensor."""
        terms = {word: function.scale(c) for word, c in tensor.items()}
        return cls(poles, terms)

    @classmethod
    def scalar_word(cls, poles: curve.PoleSet, word, coeff=1):
        return cls(poles, {tuple(word): curve.RationalFunction.constant(poles, coeff)})

    def _new(self, terms):
        return FunctionTensor(self.poles, terms)

    def items(self) -> typing.List[typing.Tuple[shuffle.Word, curve.RationalFunction]]:
        return sorted(self.terms.items(), key=lambda item: self.alphabet.word_key(item[0]))

    def coefficient(self, word) -> curve.RationalFunction:
        return self.terms.get(tuple(word), curve.RationalFunction.zero(self.poles))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_weight(self) -> int:
        return max((len(word) for word in self.terms), default=0)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FunctionTensor):
            return NotImplemented
        return self.poles == other.poles and self.terms == other.terms

    def __hash__(self):
        return hash((self.poles, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return '0'
        parts = []
        for word, f in self.items():
            letters = '|'.join(self.poles.label(s) for s in word)
            parts.append(f'({f.to_string()})[{letters}]')
        return ' + '.join(parts)

    def __add__(self, other: 'FunctionTensor') -> 'FunctionTensor':
        if self.poles != other.poles:
            raise common.PoleSetMismatch(f'{self.poles!r} vs {other.poles!r}')
        terms = dict(self.terms)
        for word, f in other.terms.items():
            terms[word] = terms[word] + f if word in terms else f
        return self._new(terms)

    def __neg__(self):
        return self._new({word: -f for word, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> 'FunctionTensor':
        """Multiply by a scalar or a function."""
        return self._new({word: f * factor for word, f in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FunctionTensor):
            return self.product(other)
        return self.scale(other)

    __rmul__ = scale

    def product(self, other: 'FunctionTensor') -> 'FunctionTensor':
        """(f (x) u)(g (x) v) = fg (x) (u shuffle v)."""
        if self.poles != other.poles:
            raise common.PoleSetMismatch(f'{self.poles!r} vs {other.poles!r}')
        terms = {}
        for u, f in self.terms.items():
            for v, g in other.terms.items():
                fg = f * g
                for word, count in shuffle.shuffle_words(u, v).items():
                    piece = fg.scale(count)
                    terms[word] = terms[word] + piece if word in terms else piece
        return self._new(terms)

    def constant_part(self) -> shuffle.ShuffleTensor:
        """The words whose coefficient is a constant, as an H^dR tensor."""
        return shuffle.ShuffleTensor(
            self.alphabet,
            {word: f.constant_term() for word, f in self.terms.items() if f.is_constant()},
        )

    def evaluate(self, z: complex, word_values: typing.Mapping[shuffle.Word, complex]) -> complex:
        """sum_u f_u(z) * value(u), given the values I(sigma(u))(z)."""
        total = 0j
        for word, f in self.terms.items():
            total += f.evaluate(z) * word_values[word]
        return total

    def to_json(self) -> dict:
        return {
            'poles': self.poles.to_json(),
            'terms': [
                {
                    'word': [self.alphabet.letter_to_json(s) for s in word],
                    'rf': f.to_json(),
                }
                for word, f in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, poles: typing.Optional[curve.PoleSet] = None) -> 'FunctionTensor':
        poles = poles or curve.PoleSet.from_strings(data['poles'])
        alphabet = poles.hdr_alphabet
        result = cls(poles)
        for entry in data.get('terms', []):
            word = tuple(alphabet.letter_from_json(raw) for raw in entry['word'])
            result = result + cls(poles, {word: curve.RationalFunction.from_json(entry['rf'], poles)})
        return result


class FormTensor:
    """sum_u u (x) omega_u with omega_u in Omega(C)."""

    def __init__(self, poles: curve.PoleSet, terms: typing.Optional[typing.Mapping] = None):
        self.poles = poles
        self.terms = {tuple(word): omega for word, omega in (terms or {}).items() if not omega.is_zero()}

    def items(self):
        return sorted(self.terms.items(), key=lambda item: self.poles.hdr_alphabet.word_key(item[0]))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FormTensor):
            return NotImplemented
        return self.poles == other.poles and self.terms == other.terms

    def __hash__(self):
        return hash((self.poles, frozenset(self.terms.items())))

    def __repr__(self):
        parts = [
            f'[{"|".join(self.poles.label(s) for s in word)}] (x) {omega}'
            for word, omega in self.items()
        ]
        return ' + '.join(parts) or '0'

    def __add__(self, other: 'FormTensor') -> 'FormTensor':
        terms = dict(self.terms)
        for word, omega in other.terms.items():
            terms[word] = terms[word] + omega if word in terms else omega
        return FormTensor(self.poles, terms)

    def __neg__(self):
        return FormTensor(self.poles, {word: -omega for word, omega in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def evaluate(self, z: complex, word_values: typing.Mapping[shuffle.Word, complex]) -> complex:
        """Coefficient of dz at z."""
        total = 0j
        for word, omega in self.terms.items():
            total += omega.evaluate(z) * word_values[word]
        return total


def nabla_sigma(element: FunctionTensor, sigma: curve.Section) -> FormTensor:
    """u (x) f -> u (x) df + sum_i R_{h^i}(u) (x) sigma(h_i) f."""
    if element.poles != sigma.poles:
        raise common.PoleSetMismatch(f'{element.poles!r} vs {sigma.poles!r}')
    result = FormTensor(element.poles)
    for word, f in element.terms.items():
        result = result + FormTensor(element.poles, {word: f.d()})
        if word:
            result = result + FormTensor(element.poles, {word[:-1]: sigma.apply(word[-1]) * f})
    return result


def form_product(left: FunctionTensor, right: FormTensor) -> FormTensor:
    """(f (x) u) . (v (x) omega) = (u shuffle v) (x) f omega."""
    terms = FormTensor(left.poles)
    for u, f in left.terms.items():
        for v, omega in right.terms.items():
            product = omega * f
            for word, count in shuffle.shuffle_words(u, v).items():
                terms = terms + FormTensor(left.poles, {word: product.scale(count)})
    return terms


def derivation_residual(a: FunctionTensor, b: FunctionTensor, sigma: curve.Section) -> FormTensor:
    """nabla(ab) - a nabla(b) - b nabla(a); zero exactly."""
    return nabla_sigma(a.product(b), sigma) - form_product(a, nabla_sigma(b, sigma)) - form_product(
        b, nabla_sigma(a, sigma),
    )
