"""Exact normal forms in O(C) (x) Sh(H^dR), the kernel map D_{x0} and Sub_sigma.

Every Omega letter splits as sigma(h) + df. Letters df are removed by the
rewrites, each of which lowers the weight by one:

    leading   [df|a|..]     -> [f.a|..] - f(x0) [a|..]
    interior  [..|b|df|a|..] -> [..|b|f.a|..] - [..|b.f|a|..]
    trailing  [..|b|df]     -> f (x) [..|b] - [..|b.f]
"""
import fractions
import logging
import math
import typing

from . import common
from . import config
from . import curve
from . import exact
from . import forms
from . import iterint
from . import paths
from . import shuffle
from .integrator import IntegratorConfig

logger = logging.getLogger(config.LOGGER_NAME)

OmegaWord = typing.Tuple[curve.Differential, ...]


class NormalForm(forms.FunctionTensor):
    """sum f_u (x) u, read as sum f_u(z) I_{x0}(sigma(u))(z)."""

    def __init__(self, poles: curve.PoleSet, terms=None, basepoint=None, section: typing.Optional[curve.Section] = None):
        super().__init__(poles, terms)
        self.basepoint = exact.coerce(basepoint) if basepoint is not None else None
        self.section = section

    @classmethod
    def from_tensor(cls, tensor: forms.FunctionTensor, basepoint, section: curve.Section) -> 'NormalForm':
        return cls(tensor.poles, tensor.terms, basepoint, section)

    def _new(self, terms):
        return NormalForm(self.poles, terms, self.basepoint, self.section)

    def to_json(self) -> dict:
        data = super().to_json()
        data['basepoint'] = exact.to_string(self.basepoint) if self.basepoint is not None else None
        if self.section is not None and not self.section.is_sigma0:
            data['section'] = self.section.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict, poles: typing.Optional[curve.PoleSet] = None) -> 'NormalForm':
        tensor = forms.FunctionTensor.from_json(data, poles)
        section = curve.Section.from_json(data['section'], tensor.poles) if data.get('section') else \
            curve.section_sigma0(tensor.poles)
        basepoint = data.get('basepoint')
        return cls.from_tensor(tensor, exact.coerce(str(basepoint)) if basepoint is not None else None, section)


def _require_exact(poles: curve.PoleSet, x0):
    poles.require_exact()
    x0 = exact.coerce(x0)
    if not exact.is_exact(x0):
        raise common.InexactPoles(f'Basepoint {x0!r} must be exact')
    if x0 in poles:
        raise common.PoleEvaluation(f'Basepoint {exact.to_string(x0)} is a pole')
    return x0


def _hdr_tensor(poles: curve.PoleSet, classes: typing.Sequence[curve.DeRhamClass]) -> shuffle.ShuffleTensor:
    """h_1 (x) ... (x) h_n expanded in the basis words."""
    terms = {(): exact.ONE}
    for h in classes:
        updated = {}
        for word, c in terms.items():
            for s, e in h.coefficients.items():
                key = word + (s,)
                updated[key] = updated.get(key, exact.ZERO) + c * e
        terms = updated
    return shuffle.ShuffleTensor(poles.hdr_alphabet, terms)


class Reducer:
    """Memoized rewriting for one (sigma, x0)."""

    def __init__(self, sigma: curve.Section, x0):
        self.sigma = sigma
        self.poles = sigma.poles
        self.x0 = _require_exact(self.poles, x0)
        self._decomposed = {}
        self._reduced = {}
        self.rewrites = 0

    def decompose(self, omega: curve.Differential) -> typing.Tuple[curve.DeRhamClass, curve.RationalFunction]:
        if omega not in self._decomposed:
            self._decomposed[omega] = curve.decompose(omega, self.sigma)
        return self._decomposed[omega]

    def const(self, value) -> curve.RationalFunction:
        return curve.RationalFunction.constant(self.poles, value)

    def reduce_word(self, word: OmegaWord) -> forms.FunctionTensor:
        if word in self._reduced:
            return self._reduced[word]
        parts = [self.decompose(letter) for letter in word]
        position = next((i for i, (_, f) in enumerate(parts) if not f.is_zero()), None)
        if position is None:
            result = forms.FunctionTensor.from_parts(
                self.poles, self.const(1), _hdr_tensor(self.poles, [h for h, _ in parts]),
            )
        else:
            h, f = parts[position]
            closed = word[:position] + (self.sigma.apply(h),) + word[position + 1:]
            result = self.reduce_word(closed) + self.reduce_exact(word[:position], f, word[position + 1:])
        self._reduced[word] = result
        return result

    def reduce_exact(self, before: OmegaWord, f: curve.RationalFunction, after: OmegaWord) -> forms.FunctionTensor:
        """Normal form of [before|df|after]."""
        self.rewrites += 1
        f_x0 = f.value_at(self.x0)
        if not before and not after:
            return forms.FunctionTensor(self.poles, {(): f - f_x0})
        if not before:
            moved = (after[0] * f,) + after[1:]
            return self.reduce_word(moved) - self.reduce_word(after).scale(f_x0)
        if not after:
            lowered = before[:-1] + (before[-1] * f,)
            return self.reduce_word(before).scale(f) - self.reduce_word(lowered)
        moved = before + (after[0] * f,) + after[1:]
        lowered = before[:-1] + (before[-1] * f,) + after
        return self.reduce_word(moved) - self.reduce_word(lowered)

    def reduce_tensor(self, tensor: shuffle.ShuffleTensor) -> NormalForm:
        if tensor.alphabet.id != self.poles.omega_alphabet.id:
            raise common.AlphabetMismatch(f'Expected an Omega tensor over {self.poles!r}')
        result = forms.FunctionTensor(self.poles)
        for word, coeff in tensor.items():
            result = result + self.reduce_word(word).scale(coeff)
        logger.debug(f'Normal form of {len(tensor)} words: {self.rewrites} rewrites, {len(result)} terms')
        return NormalForm.from_tensor(result, self.x0, self.sigma)


def normal_form(tensor: shuffle.ShuffleTensor, sigma: curve.Section, x0) -> NormalForm:
    return Reducer(sigma, x0).reduce_tensor(tensor)


def eval_normal_form(
        nf: NormalForm,
        z,
        path: typing.Optional[paths.Path] = None,
        cfg: IntegratorConfig = iterint.DEFAULT_CONFIG,
) -> complex:
    """sum f_u(z) I_{x0}(sigma(u))(z) along the path (straight with detours by default)."""
    z = complex(z)
    if nf.is_zero():
        return 0j
    for s in nf.poles:
        if complex(s) == z:
            raise common.PoleEvaluation(f'Normal form evaluated at the pole {exact.to_string(s)}')
    base = complex(nf.basepoint)
    path = path or paths.straight_path(base, z, nf.poles.points)
    if abs(path.base - base) > config.CONTIGUITY_TOLERANCE or abs(path.endpoint - z) > config.CONTIGUITY_TOLERANCE:
        raise ValueError(f'Path must run from {base} to {z}')
    sigma = nf.section or curve.section_sigma0(nf.poles)
    values = iterint.integrate_words(path, list(nf.terms), nf.poles, cfg, letter_form=sigma.apply)
    return nf.evaluate(z, values)


def filtration_bound_holds(tensor: shuffle.ShuffleTensor, nf: forms.FunctionTensor) -> bool:
    """Words of nf have weight <= weight(t), and those of weight exactly weight(t) carry constants."""
    top = tensor.weight
    for word, f in nf.terms.items():
        if len(word) > top:
            return False
        if len(word) == top and not f.is_constant():
            return False
    return True


# D_{x0}

def _times_first(tensor: shuffle.ShuffleTensor, f: curve.RationalFunction) -> shuffle.ShuffleTensor:
    result = shuffle.ShuffleTensor.zero(tensor.alphabet)
    for word, coeff in tensor.items():
        result = result + shuffle.ShuffleTensor.word(tensor.alphabet, (word[0] * f,) + word[1:], coeff)
    return result


def _times_last(tensor: shuffle.ShuffleTensor, f: curve.RationalFunction, x0) -> shuffle.ShuffleTensor:
    """s . f, with 1 . f = f(x0) 1."""
    result = shuffle.ShuffleTensor.zero(tensor.alphabet)
    for word, coeff in tensor.items():
        if word:
            result = result + shuffle.ShuffleTensor.word(tensor.alphabet, word[:-1] + (word[-1] * f,), coeff)
        else:
            result = result + shuffle.ShuffleTensor.unit(tensor.alphabet, coeff * f.value_at(x0))
    return result


def d_map(
        s: shuffle.ShuffleTensor,
        f: curve.RationalFunction,
        s_prime: shuffle.ShuffleTensor,
        x0,
) -> shuffle.ShuffleTensor:
    """D_{x0}(s, f, s') = [s|df|s'] - [s|f.s'] + [s.f|s']."""
    x0 = exact.coerce(x0)
    if s_prime.counit():
        raise common.AugmentationError('Right argument of D must not contain the empty word')
    if s.alphabet.id != s_prime.alphabet.id:
        raise common.AlphabetMismatch(f'{s.alphabet!r} vs {s_prime.alphabet!r}')
    alphabet = s.alphabet
    df = shuffle.ShuffleTensor.word(alphabet, [f.d()])
    return (
        s.concat(df).concat(s_prime)
        - s.concat(_times_first(s_prime, f))
        + _times_last(s, f, x0).concat(s_prime)
    )


def kernel_member(tensor: shuffle.ShuffleTensor, sigma: curve.Section, x0) -> bool:
    return normal_form(tensor, sigma, x0).is_zero()


class KernelWitness:
    """A tensor written as sum c * D_{x0}(s, f, s')."""

    def __init__(self, tensor: shuffle.ShuffleTensor, generators: typing.Mapping, x0):
        self.tensor = tensor
        self.generators = dict(generators)
        self.x0 = exact.coerce(x0)

    def __len__(self):
        return len(self.generators)

    def reassemble(self) -> shuffle.ShuffleTensor:
        alphabet = self.tensor.alphabet
        result = shuffle.ShuffleTensor.zero(alphabet)
        for (before, f, after), coeff in self.generators.items():
            s = shuffle.ShuffleTensor.word(alphabet, before)
            s_prime = shuffle.ShuffleTensor.word(alphabet, after)
            result = result + d_map(s, f, s_prime, self.x0).scale(coeff)
        return result

    def verify(self) -> bool:
        return self.reassemble() == self.tensor

    def to_json(self) -> dict:
        alphabet = self.tensor.alphabet
        return {
            'tensor': self.tensor.to_json(),
            'generators': [
                {
                    's': [alphabet.letter_to_json(letter) for letter in before],
                    'f': f.to_json(),
                    's_prime': [alphabet.letter_to_json(letter) for letter in after],
                    'coeff': exact.scalar_to_json(coeff),
                }
                for (before, f, after), coeff in self.generators.items()
            ],
        }


class SubSigmaRewriter:
    """Rewrites inside Sh(Omega) until only a trailing letter may be non-closed.

    What is left lies in Sub_sigma = Sh(sigma(H)) + [Sh(sigma(H))|dO(C)]; every
    step taken is recorded as a D_{x0} generator (s, f, s').
    """

    def __init__(self, sigma: curve.Section, x0):
        self.sigma = sigma
        self.poles = sigma.poles
        self.x0 = _require_exact(self.poles, x0)
        self.alphabet = self.poles.omega_alphabet
        self._memo = {}

    def _word(self, letters, coeff=1) -> shuffle.ShuffleTensor:
        return shuffle.ShuffleTensor.word(self.alphabet, letters, coeff)

    def rewrite_word(self, word: OmegaWord) -> typing.Tuple[shuffle.ShuffleTensor, typing.Dict]:
        """Letters are kept unexpanded while rewriting so that a closed letter sigma(h) stays closed."""
        if word in self._memo:
            return self._memo[word]
        parts = [curve.decompose(letter, self.sigma) for letter in word[:-1]]
        position = next((i for i, (_, f) in enumerate(parts) if not f.is_zero()), None)
        if position is None:
            result = (self._word(word), {})
        else:
            h, f = parts[position]
            before, after = word[:position], word[position + 1:]
            # [s|df|s'] = D(s, f, s') + [s|f.s'] - [s.f|s']
            generators = {(before, f, after): exact.ONE}
            closed_sub, closed_generators = self.rewrite_word(before + (self.sigma.apply(h),) + after)
            moved_sub, moved_generators = self.rewrite_word(before + (after[0] * f,) + after[1:])
            if before:
                lowered_sub, lowered_generators = self.rewrite_word(before[:-1] + (before[-1] * f,) + after)
            else:
                f_x0 = f.value_at(self.x0)
                lowered_sub, lowered_generators = self.rewrite_word(after)
                lowered_sub = lowered_sub.scale(f_x0)
                lowered_generators = {key: c * f_x0 for key, c in lowered_generators.items()}
            _merge(generators, closed_generators, exact.ONE)
            _merge(generators, moved_generators, exact.ONE)
            _merge(generators, lowered_generators, -exact.ONE)
            result = (closed_sub + moved_sub - lowered_sub, generators)
        self._memo[word] = result
        return result

    def rewrite_tensor(self, tensor: shuffle.ShuffleTensor) -> typing.Tuple[shuffle.ShuffleTensor, typing.Dict]:
        sub = shuffle.ShuffleTensor.zero(self.alphabet)
        generators = {}
        for word, coeff in tensor.items():
            word_sub, word_generators = self.rewrite_word(word)
            sub = sub + word_sub.scale(coeff)
            _merge(generators, word_generators, coeff)
        return sub, generators


def _merge(target: dict, source: typing.Mapping, factor):
    for key, coeff in source.items():
        total = target.get(key, exact.ZERO) + coeff * factor
        if total:
            target[key] = total
        else:
            target.pop(key, None)


def kernel_witness(tensor: shuffle.ShuffleTensor, sigma: curve.Section, x0) -> KernelWitness:
    """Explicit D_{x0} generators for a kernel element."""
    sub, generators = SubSigmaRewriter(sigma, x0).rewrite_tensor(tensor)
    if not sub.is_zero():
        raise common.DomainError(f'Tensor is not in the kernel, Sub_sigma part {sub!r}')
    return KernelWitness(tensor, generators, x0)


def sub_sigma_member(tensor: shuffle.ShuffleTensor, sigma: curve.Section, x0=None) -> bool:
    """Membership in Sh(sigma(H)) + [Sh(sigma(H))|dO(C)]; the answer does not depend on x0."""
    x0 = default_basepoint(sigma.poles) if x0 is None else x0
    sub, _ = SubSigmaRewriter(sigma, x0).rewrite_tensor(tensor)
    return sub == tensor


def decompose_subker(
        tensor: shuffle.ShuffleTensor,
        sigma: curve.Section,
        x0,
) -> typing.Tuple[shuffle.ShuffleTensor, shuffle.ShuffleTensor]:
    """t = sub + ker with sub in Sub_sigma, computed by inverting map_{sigma,x0} weight by weight."""
    reducer = Reducer(sigma, x0)
    poles = sigma.poles
    alphabet = poles.omega_alphabet
    target = reducer.reduce_tensor(tensor)
    sub = shuffle.ShuffleTensor.zero(alphabet)
    residual = forms.FunctionTensor(poles, target.terms)
    for weight in range(target.max_weight, -1, -1):
        for _ in range(3):
            top = [(word, f) for word, f in residual.items() if len(word) == weight]
            if not top:
                break
            for word, f in top:
                hdr = shuffle.ShuffleTensor(poles.hdr_alphabet, {word: 1})
                closed = sigma.apply_word(hdr)
                c = f.value_at(reducer.x0)
                g = f - c
                candidate = closed.scale(c)
                if not g.is_zero():
                    candidate = candidate + closed.concat(shuffle.ShuffleTensor.word(alphabet, [g.d()]))
                sub = sub + candidate
                residual = residual - reducer.reduce_tensor(candidate)
        else:
            raise common.NumericFailure(f'Sub_sigma inversion did not settle at weight {weight}')
    if not residual.is_zero():
        raise common.NumericFailure(f'Sub_sigma inversion left {residual!r}')
    ker = tensor - sub
    logger.debug(f'Sub/ker split: {len(sub)} sub terms, {len(ker)} kernel terms')
    return sub, ker


def default_basepoint(poles: curve.PoleSet):
    """Grid point maximizing min(distance to the poles, margin).

    The grid has step BASEPOINT_GRID_STEP and spans the pole box widened by
    BASEPOINT_GRID_MARGIN. The distance is capped at the margin, so every grid
    point at least the margin away from all poles ties, and the result is in
    general not the grid point farthest from the poles. Ties prefer small |Im|,
    then large Re, then Im > 0. For {0} this gives 1, for {0, 1} it gives 2.
    """
    step = fractions.Fraction(config.BASEPOINT_GRID_STEP)
    margin = config.BASEPOINT_GRID_MARGIN
    exact_points = [exact.coerce(p) for p in poles]
    reals = [p.re if exact.is_exact(p) else complex(p).real for p in exact_points]
    imags = [p.im if exact.is_exact(p) else complex(p).imag for p in exact_points]
    low_re, high_re = math.floor((min(reals) - margin) / step), math.ceil((max(reals) + margin) / step)
    low_im, high_im = math.floor((min(imags) - margin) / step), math.ceil((max(imags) + margin) / step)
    best, best_key = None, None
    for a in range(low_re, high_re + 1):
        for b in range(low_im, high_im + 1):
            candidate = exact.GaussianRational(a * step, b * step)
            if candidate in poles:
                continue
            distance = min(poles.distance(complex(candidate)), float(margin))
            key = (round(distance, 12), -abs(candidate.im), candidate.re, candidate.im > 0)
            if best_key is None or key > best_key:
                best, best_key = candidate, key
    return best
