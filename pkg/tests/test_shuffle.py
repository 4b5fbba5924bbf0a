import pytest

from curvelog import common
from curvelog import exact
from curvelog import shuffle

LETTERS = ['a', 'b', 'c']


@pytest.fixture
def alphabet():
    return shuffle.Alphabet('abc')


def word(alphabet, text, coeff=1):
    return shuffle.ShuffleTensor.word(alphabet, list(text), coeff)


def random_tensor(rng, alphabet, max_weight=3, terms=3):
    result = shuffle.ShuffleTensor.zero(alphabet)
    for _ in range(terms):
        letters = [rng.choice(LETTERS) for _ in range(rng.randint(0, max_weight))]
        result = result + shuffle.ShuffleTensor.word(alphabet, letters, rng.randint(-3, 3))
    return result


def test_shuffle_of_letters():
    assert shuffle.shuffle_words(('a',), ('b',)) == {('a', 'b'): 1, ('b', 'a'): 1}
    assert shuffle.shuffle_words(('a',), ('a',)) == {('a', 'a'): 2}
    assert sum(shuffle.shuffle_words(('a', 'b'), ('c', 'a')).values()) == 6


def test_shuffle_example(alphabet):
    product = word(alphabet, 'ab').shuffle(word(alphabet, 'c'))
    assert product == word(alphabet, 'abc') + word(alphabet, 'acb') + word(alphabet, 'cab')


def test_shuffle_is_commutative_associative_and_unital(rng, alphabet):
    unit = shuffle.ShuffleTensor.unit(alphabet)
    for _ in range(10):
        a, b, c = (random_tensor(rng, alphabet, 2) for _ in range(3))
        assert a.shuffle(b) == b.shuffle(a)
        assert a.shuffle(b).shuffle(c) == a.shuffle(b.shuffle(c))
        assert a.shuffle(unit) == a


def test_coproduct_is_an_algebra_morphism(rng, alphabet):
    for _ in range(10):
        a, b = random_tensor(rng, alphabet, 2), random_tensor(rng, alphabet, 2)
        assert a.shuffle(b).deconcat() == a.deconcat().shuffle(b.deconcat())


def test_deconcatenation(alphabet):
    coproduct = word(alphabet, 'ab').deconcat()
    assert len(coproduct) == 3
    assert coproduct.coefficient((), ('a', 'b')) == 1
    assert coproduct.coefficient(('a',), ('b',)) == 1
    assert coproduct.coefficient(('a', 'b'), ()) == 1


def test_iterated_coproduct_counts_splits(alphabet):
    # 3 letters into 3 consecutive pieces: C(5, 2) splits
    assert len(word(alphabet, 'abc').coproduct_iterated(3)) == 10
    with pytest.raises(ValueError):
        word(alphabet, 'a').coproduct_iterated(0)


def test_antipode_is_the_convolution_inverse_of_identity(rng, alphabet):
    convolved = shuffle.convolution(shuffle.antipode, shuffle.identity_map)
    for _ in range(10):
        t = random_tensor(rng, alphabet)
        assert convolved(t) == shuffle.counit_map(t)


def test_antipode_reverses_with_sign(alphabet):
    assert word(alphabet, 'abc').antipode() == word(alphabet, 'cba', -1)
    assert word(alphabet, 'ab').antipode() == word(alphabet, 'ba')


def test_right_derivative_is_a_derivation(rng, alphabet):
    for _ in range(10):
        a, b = random_tensor(rng, alphabet, 2), random_tensor(rng, alphabet, 2)
        left = a.shuffle(b).deriv_right()
        right = b.deriv_right().shuffle_left(a) + a.deriv_right().shuffle_left(b)
        assert left == right


def test_r_xi_strips_the_last_letter(rng, alphabet):
    xi = {'a': 2, 'b': exact.I}
    assert word(alphabet, 'cab').r_xi(xi) == word(alphabet, 'ca', exact.I)
    assert word(alphabet, 'bc').r_xi(xi).is_zero()
    for _ in range(10):
        a, b = random_tensor(rng, alphabet, 2), random_tensor(rng, alphabet, 2)
        assert a.shuffle(b).r_xi(xi) == a.shuffle(b.r_xi(xi)) + a.r_xi(xi).shuffle(b)


@pytest.mark.parametrize('text, n, member', [
    ('', 0, True),
    ('a', 0, False),
    ('a', 1, True),
    ('abc', 2, False),
    ('abc', 3, True),
    ('abca', 5, True),
])
def test_coradical_filtration(alphabet, text, n, member):
    assert word(alphabet, text).coradical_member(n) is member


def test_coradical_filtration_of_sums_follows_the_top_weight(alphabet):
    tensor = word(alphabet, 'ab') + word(alphabet, 'c', 3) + shuffle.ShuffleTensor.unit(alphabet, 2)
    assert not tensor.coradical_member(1)
    assert tensor.coradical_member(2)


def test_alphabets_do_not_mix(alphabet):
    other = shuffle.Alphabet('abc')
    with pytest.raises(common.AlphabetMismatch):
        word(alphabet, 'a') + word(other, 'a')
    with pytest.raises(common.AlphabetMismatch):
        word(alphabet, 'a').shuffle(word(other, 'a'))


def test_map_letters_expands_linearly(alphabet):
    target = shuffle.Alphabet('xy')
    image = word(alphabet, 'ab').map_letters(lambda letter: {'x': 1, 'y': 2} if letter == 'a' else 'x', target)
    expected = shuffle.ShuffleTensor(target, {('x', 'x'): 1, ('y', 'x'): 2})
    assert image == expected


def test_words_up_to():
    words = shuffle.words_up_to(['a', 'b'], 2)
    assert words == [(), ('a',), ('b',), ('a', 'a'), ('a', 'b'), ('b', 'a'), ('b', 'b')]


def test_json_codec(alphabet):
    tensor = word(alphabet, 'ab', exact.coerce('1/2')) - word(alphabet, 'c')
    assert shuffle.ShuffleTensor.from_json(tensor.to_json(), alphabet) == tensor
