"""The shuffle Hopf algebra Sh(V) over a declared alphabet.

A word is a tuple of letters; the empty tuple is the unit. Letters are
basis vectors of V. When V carries a preferred basis that differs from the
letters handed in by callers (differentials, say), the alphabet expands
every letter into that basis, so that tensors stay canonical.
"""
import collections
import functools
import itertools
import logging
import typing

from . import common
from . import config
from . import exact

logger = logging.getLogger(config.LOGGER_NAME)

Letter = typing.Hashable
Word = typing.Tuple[Letter, ...]
EMPTY_WORD: Word = ()


class Alphabet:
    _ids = itertools.count(1)

    def __init__(
            self,
            name: str,
            sort_key: typing.Optional[typing.Callable[[Letter], typing.Any]] = None,
            expand_letter: typing.Optional[typing.Callable[[Letter], typing.Mapping]] = None,
            letter_to_json: typing.Optional[typing.Callable[[Letter], typing.Any]] = None,
            letter_from_json: typing.Optional[typing.Callable[[typing.Any], Letter]] = None,
    ):
        self.name = name
        self.id = next(Alphabet._ids)
        self._sort_key = sort_key or repr
        self._expand_letter = expand_letter
        self._letter_to_json = letter_to_json or (lambda letter: letter)
        self._letter_from_json = letter_from_json or (lambda data: data)

    def __repr__(self):
        return f'Alphabet({self.name!r}, id={self.id})'

    def letter_key(self, letter: Letter):
        return self._sort_key(letter)

    def word_key(self, word: Word):
        return len(word), tuple(self._sort_key(letter) for letter in word)

    def expand(self, letter: Letter) -> typing.Mapping[Letter, exact.Scalar]:
        if self._expand_letter is None:
            return {letter: exact.ONE}
        return self._expand_letter(letter)

    def letter_to_json(self, letter: Letter):
        return self._letter_to_json(letter)

    def letter_from_json(self, data) -> Letter:
        return self._letter_from_json(data)


def _check_same_alphabet(a: 'ShuffleTensor', b: 'ShuffleTensor'):
    if a.alphabet.id != b.alphabet.id:
        raise common.AlphabetMismatch(
            f'Alphabet mismatch: {a.alphabet!r} vs {b.alphabet!r}',
        )


def _accumulate(terms: dict, key, coeff):
    total = terms.get(key)
    total = coeff if total is None else total + coeff
    if total:
        terms[key] = total
    else:
        terms.pop(key, None)


@functools.lru_cache(maxsize=65536)
def shuffle_words(u: Word, v: Word) -> typing.Dict[Word, int]:
    """Multiplicities of the shuffles of two words."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    result = collections.Counter()
    for word, count in shuffle_words(u[:-1], v).items():
        result[word + (u[-1],)] += count
    for word, count in shuffle_words(u, v[:-1]).items():
        result[word + (v[-1],)] += count
    return dict(result)


class ShuffleTensor:
    __slots__ = ('alphabet', '_terms', '_hash')

    def __init__(self, alphabet: Alphabet, terms: typing.Optional[typing.Mapping[Word, exact.Scalar]] = None):
        self.alphabet = alphabet
        cleaned = {}
        for word, coeff in (terms or {}).items():
            coeff = exact.coerce(coeff)
            if coeff:
                cleaned[tuple(word)] = coeff
        self._terms = cleaned
        self._hash = None

    # Constructors

    @classmethod
    def zero(cls, alphabet: Alphabet) -> 'ShuffleTensor':
        return cls(alphabet)

    @classmethod
    def unit(cls, alphabet: Alphabet, coeff=1) -> 'ShuffleTensor':
        return cls(alphabet, {EMPTY_WORD: coeff})

    @classmethod
    def word(cls, alphabet: Alphabet, letters: typing.Iterable[Letter], coeff=1) -> 'ShuffleTensor':
        """[l_1|...|l_n], expanded multilinearly into the alphabet's basis."""
        terms = {EMPTY_WORD: exact.coerce(coeff)}
        for letter in letters:
            expansion = alphabet.expand(letter)
            updated = {}
            for word, c in terms.items():
                for basis_letter, e in expansion.items():
                    _accumulate(updated, word + (basis_letter,), c * e)
            terms = updated
        return cls(alphabet, terms)

    @classmethod
    def from_words(cls, alphabet: Alphabet, items: typing.Iterable[typing.Tuple[typing.Iterable[Letter], typing.Any]]):
        result = cls.zero(alphabet)
        for letters, coeff in items:
            result = result + cls.word(alphabet, letters, coeff)
        return result

    # Inspection

    def items(self) -> typing.List[typing.Tuple[Word, exact.Scalar]]:
        return sorted(self._terms.items(), key=lambda item: self.alphabet.word_key(item[0]))

    def words(self) -> typing.List[Word]:
        return [word for word, _ in self.items()]

    def coefficient(self, word: Word) -> exact.Scalar:
        return self._terms.get(tuple(word), exact.ZERO)

    def counit(self) -> exact.Scalar:
        return self.coefficient(EMPTY_WORD)

    @property
    def weight(self) -> int:
        if not self._terms:
            return 0
        return max(len(word) for word in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({len(word) for word in self._terms}) <= 1

    def letters(self) -> typing.Set[Letter]:
        return {letter for word in self._terms for letter in word}

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        if not isinstance(other, ShuffleTensor):
            return NotImplemented
        return self.alphabet.id == other.alphabet.id and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.id, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return '0'
        parts = []
        for word, coeff in self.items():
            letters = '|'.join(str(letter) for letter in word)
            parts.append(f'({exact.to_string(coeff)})[{letters}]')
        return ' + '.join(parts)

    # Vector space structure

    def __add__(self, other: 'ShuffleTensor') -> 'ShuffleTensor':
        _check_same_alphabet(self, other)
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            _accumulate(terms, word, coeff)
        return ShuffleTensor(self.alphabet, terms)

    def __neg__(self) -> 'ShuffleTensor':
        return ShuffleTensor(self.alphabet, {word: -coeff for word, coeff in self._terms.items()})

    def __sub__(self, other: 'ShuffleTensor') -> 'ShuffleTensor':
        return self + (-other)

    def scale(self, scalar) -> 'ShuffleTensor':
        scalar = exact.coerce(scalar)
        return ShuffleTensor(self.alphabet, {word: coeff * scalar for word, coeff in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, ShuffleTensor):
            return NotImplemented
        return self.scale(scalar)

    __rmul__ = __mul__

    def truncate(self, max_weight: int) -> 'ShuffleTensor':
        return ShuffleTensor(
            self.alphabet,
            {word: coeff for word, coeff in self._terms.items() if len(word) <= max_weight},
        )

    def homogeneous_part(self, weight: int) -> 'ShuffleTensor':
        return ShuffleTensor(
            self.alphabet,
            {word: coeff for word, coeff in self._terms.items() if len(word) == weight},
        )

    # Algebra and coalgebra structure

    def shuffle(self, other: 'ShuffleTensor') -> 'ShuffleTensor':
        _check_same_alphabet(self, other)
        terms = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                product = a * b
                for word, count in shuffle_words(u, v).items():
                    _accumulate(terms, word, product * count)
        return ShuffleTensor(self.alphabet, terms)

    def concat(self, other: 'ShuffleTensor') -> 'ShuffleTensor':
        _check_same_alphabet(self, other)
        terms = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                _accumulate(terms, u + v, a * b)
        return ShuffleTensor(self.alphabet, terms)

    def deconcat(self) -> 'WordTensor':
        terms = {}
        for word, coeff in self._terms.items():
            for i in range(len(word) + 1):
                _accumulate(terms, (word[:i], word[i:]), coeff)
        return WordTensor(self.alphabet, 2, terms)

    def coproduct_iterated(self, k: int) -> 'WordTensor':
        """Delta^(k): every split of each word into k consecutive (possibly empty) pieces."""
        if k < 1:
            raise ValueError(f'Iterated coproduct needs k >= 1, got {k}')
        terms = {}
        for word, coeff in self._terms.items():
            n = len(word)
            for cuts in itertools.combinations_with_replacement(range(n + 1), k - 1):
                bounds = (0,) + cuts + (n,)
                pieces = tuple(word[bounds[i]:bounds[i + 1]] for i in range(k))
                _accumulate(terms, pieces, coeff)
        return WordTensor(self.alphabet, k, terms)

    def antipode(self) -> 'ShuffleTensor':
        return ShuffleTensor(
            self.alphabet,
            {tuple(reversed(word)): coeff if len(word) % 2 == 0 else -coeff for word, coeff in self._terms.items()},
        )

    def deriv_right(self) -> 'WordTensor':
        """The derivation [v_1|...|v_n] -> [v_1|...|v_{n-1}] (x) v_n, into Sh(V) (x) V."""
        terms = {}
        for word, coeff in self._terms.items():
            if word:
                _accumulate(terms, (word[:-1], word[-1:]), coeff)
        return WordTensor(self.alphabet, 2, terms)

    def r_xi(self, xi: typing.Union[typing.Mapping[Letter, typing.Any], typing.Callable[[Letter], typing.Any]]) -> 'ShuffleTensor':
        evaluate = xi if callable(xi) else (lambda letter: xi.get(letter, 0))
        terms = {}
        for word, coeff in self._terms.items():
            if not word:
                continue
            value = exact.coerce(evaluate(word[-1]))
            if value:
                _accumulate(terms, word[:-1], coeff * value)
        return ShuffleTensor(self.alphabet, terms)

    def coradical_member(self, n: int) -> bool:
        """Whether the tensor lies in Ker((id - eta eps)^{(x) n+1} o Delta^(n+1))."""
        if n < 0:
            raise ValueError(f'Coradical degree must be >= 0, got {n}')
        reduced = self.coproduct_iterated(n + 1).reduce_legs()
        return reduced.is_zero()

    def map_letters(self, phi: typing.Callable[[Letter], typing.Any], target: Alphabet) -> 'ShuffleTensor':
        """Sh(phi) for a linear map given on letters; phi may return a letter or {letter: coeff}."""
        cache = {}

        def image(letter):
            if letter not in cache:
                value = phi(letter)
                if not isinstance(value, typing.Mapping):
                    value = {value: exact.ONE}
                expanded = {}
                for target_letter, coeff in value.items():
                    for basis_letter, e in target.expand(target_letter).items():
                        _accumulate(expanded, basis_letter, exact.coerce(coeff) * e)
                cache[letter] = expanded
            return cache[letter]

        terms = {}
        for word, coeff in self._terms.items():
            partial = {EMPTY_WORD: coeff}
            for letter in word:
                updated = {}
                for prefix, c in partial.items():
                    for target_letter, e in image(letter).items():
                        _accumulate(updated, prefix + (target_letter,), c * e)
                partial = updated
            for target_word, c in partial.items():
                _accumulate(terms, target_word, c)
        return ShuffleTensor(target, terms)

    # Serialization

    def to_json(self) -> dict:
        terms = [
            {
                'word': [self.alphabet.letter_to_json(letter) for letter in word],
                'coeff': exact.scalar_to_json(coeff),
            }
            for word, coeff in self.items()
        ]
        return {'terms': terms}

    @classmethod
    def from_json(cls, data: dict, alphabet: Alphabet) -> 'ShuffleTensor':
        result = cls.zero(alphabet)
        for term in data.get('terms', []):
            letters = [alphabet.letter_from_json(raw) for raw in term['word']]
            coeff = exact.scalar_from_json(term.get('coeff', {'re': '1', 'im': '0'}))
            result = result + cls.word(alphabet, letters, coeff)
        return result


class WordTensor:
    """An element of Sh(V)^{(x) k}: tuples of k words with scalar coefficients."""

    def __init__(self, alphabet: Alphabet, arity: int, terms: typing.Optional[dict] = None):
        self.alphabet = alphabet
        self.arity = arity
        self._terms = {key: exact.coerce(c) for key, c in (terms or {}).items() if c}

    def items(self):
        return sorted(
            self._terms.items(),
            key=lambda item: tuple(self.alphabet.word_key(word) for word in item[0]),
        )

    def coefficient(self, *words: Word) -> exact.Scalar:
        return self._terms.get(tuple(tuple(w) for w in words), exact.ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, WordTensor):
            return NotImplemented
        return (
            self.alphabet.id == other.alphabet.id
            and self.arity == other.arity
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.alphabet.id, self.arity, frozenset(self._terms.items())))

    def __repr__(self):
        return f'WordTensor(arity={self.arity}, terms={self.items()!r})'

    def __add__(self, other: 'WordTensor') -> 'WordTensor':
        if self.alphabet.id != other.alphabet.id or self.arity != other.arity:
            raise common.AlphabetMismatch('Cannot add tensors of different alphabets or arity')
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(terms, key, coeff)
        return WordTensor(self.alphabet, self.arity, terms)

    def __neg__(self):
        return WordTensor(self.alphabet, self.arity, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def shuffle(self, other: 'WordTensor') -> 'WordTensor':
        """Componentwise shuffle product in Sh(V)^{(x) k}."""
        if self.alphabet.id != other.alphabet.id or self.arity != other.arity:
            raise common.AlphabetMismatch('Cannot multiply tensors of different alphabets or arity')
        terms = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                legs = [shuffle_words(u, v).items() for u, v in zip(left, right)]
                for combination in itertools.product(*legs):
                    key = tuple(word for word, _ in combination)
                    count = 1
                    for _, multiplicity in combination:
                        count *= multiplicity
                    _accumulate(terms, key, a * b * count)
        return WordTensor(self.alphabet, self.arity, terms)

    def shuffle_left(self, tensor: ShuffleTensor) -> 'WordTensor':
        """(t (x) 1 (x) ... (x) 1) * self: shuffles the first leg only."""
        if tensor.alphabet.id != self.alphabet.id:
            raise common.AlphabetMismatch('Alphabet mismatch in shuffle_left')
        terms = {}
        for key, a in self._terms.items():
            for word, b in tensor.items():
                for product, count in shuffle_words(word, key[0]).items():
                    _accumulate(terms, (product,) + key[1:], a * b * count)
        return WordTensor(self.alphabet, self.arity, terms)

    def reduce_legs(self) -> 'WordTensor':
        """Apply (id - eta eps) on every leg: drop terms with an empty leg."""
        return WordTensor(
            self.alphabet,
            self.arity,
            {key: c for key, c in self._terms.items() if all(key)},
        )

    def multiply_legs(self) -> ShuffleTensor:
        """Shuffle the legs together (the multiplication map)."""
        result = ShuffleTensor.zero(self.alphabet)
        for key, coeff in self._terms.items():
            product = ShuffleTensor.unit(self.alphabet, coeff)
            for word in key:
                product = product.shuffle(ShuffleTensor(self.alphabet, {word: 1}))
            result = result + product
        return result

    def apply_legs(self, *maps: typing.Callable[[ShuffleTensor], ShuffleTensor]) -> 'WordTensor':
        if len(maps) != self.arity:
            raise ValueError(f'Expected {self.arity} maps, got {len(maps)}')
        result = WordTensor(self.alphabet, self.arity)
        for key, coeff in self._terms.items():
            images = [f(ShuffleTensor(self.alphabet, {word: 1})).items() for f, word in zip(maps, key)]
            terms = {}
            for combination in itertools.product(*images):
                product = coeff
                for _, c in combination:
                    product = product * c
                _accumulate(terms, tuple(word for word, _ in combination), product)
            result = result + WordTensor(self.alphabet, self.arity, terms)
        return result


def shuffle(a: ShuffleTensor, b: ShuffleTensor) -> ShuffleTensor:
    return a.shuffle(b)


def deconcat(a: ShuffleTensor) -> WordTensor:
    return a.deconcat()


def antipode(a: ShuffleTensor) -> ShuffleTensor:
    return a.antipode()


def deriv_right(a: ShuffleTensor) -> WordTensor:
    return a.deriv_right()


def r_xi(a: ShuffleTensor, xi) -> ShuffleTensor:
    return a.r_xi(xi)


def coradical_member(t: ShuffleTensor, n: int) -> bool:
    return t.coradical_member(n)


def counit_map(a: ShuffleTensor) -> ShuffleTensor:
    return ShuffleTensor.unit(a.alphabet, a.counit())


def identity_map(a: ShuffleTensor) -> ShuffleTensor:
    return a


def convolution(
        phi: typing.Callable[[ShuffleTensor], ShuffleTensor],
        psi: typing.Callable[[ShuffleTensor], ShuffleTensor],
) -> typing.Callable[[ShuffleTensor], ShuffleTensor]:
    """phi * psi = shuffle o (phi (x) psi) o Delta."""

    def convolved(a: ShuffleTensor) -> ShuffleTensor:
        return a.deconcat().apply_legs(phi, psi).multiply_legs()

    return convolved


def words_up_to(letters: typing.Sequence[Letter], max_weight: int) -> typing.List[Word]:
    """All words of weight <= max_weight, ordered by (weight, lexicographic in the given letter order)."""
    words = []
    for weight in range(max_weight + 1):
        words.extend(itertools.product(letters, repeat=weight))
    return words
