"""Finite words, morphisms and deterministic generators for infinite words.

Words are dense sequences of small integer symbol indices stored as bytes;
binary words use indices {0, 1}.  Every generator is a pure function of its
parameters and is prefix-coherent: expand(spec, n) is a prefix of
expand(spec, m) whenever n <= m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParameterError, PrecisionError

__all__ = [
    "Word",
    "Morphism",
    "BlockSequence",
    "WordSpec",
    "FixedPointSpec",
    "MorphicImageSpec",
    "MechanicalSpec",
    "UWordSpec",
    "UltimatelyPeriodicSpec",
    "ChampernowneSpec",
    "StaircaseSpec",
    "THUE_MORSE",
    "PERIOD_DOUBLING",
    "FIBONACCI",
    "CHAMPERNOWNE",
    "TAU_CHAMPERNOWNE",
    "STAIRCASE",
    "thue_morse_morphism",
    "period_doubling_morphism",
    "fibonacci_morphism",
    "perlin_morphism",
    "expand",
    "apply_morphism",
    "fixed_point_prefix",
    "u_word_prefix",
    "phi_map",
    "mechanical_word",
    "slow_sequence_from_budget",
    "parse_spec",
    "spec_text",
    "parse_word",
]


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., alphabet_size - 1}."""

    symbols: bytes = b""
    alphabet_size: int = 2

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ParameterError("alphabet_size must be positive")
        if self.symbols and max(self.symbols) >= self.alphabet_size:
            raise ParameterError("symbol index out of alphabet")

    @classmethod
    def from_text(cls, text: str, alphabet_size: int | None = None) -> "Word":
        """Parse a word from ASCII digits or comma-separated indices."""
        if "," in text:
            symbols = bytes(int(t) for t in text.split(","))
        elif text:
            if not text.isdigit():
                raise ParameterError(f"not a word: {text!r}")
            symbols = bytes(int(c) for c in text)
        else:
            symbols = b""
        if alphabet_size is None:
            alphabet_size = max(2, max(symbols) + 1) if symbols else 2
        return cls(symbols, alphabet_size)

    def to_text(self) -> str:
        if self.alphabet_size <= 10:
            return "".join(str(c) for c in self.symbols)
        return ",".join(str(c) for c in self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i], self.alphabet_size)
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def prefix(self, n: int) -> "Word":
        return Word(self.symbols[:n], self.alphabet_size)

    def suffix(self, n: int) -> "Word":
        return Word(self.symbols[len(self.symbols) - n:] if n else b"", self.alphabet_size)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols,
                    max(self.alphabet_size, other.alphabet_size))

    @property
    def is_binary(self) -> bool:
        return not self.symbols or max(self.symbols) <= 1

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Morphism:
    """A non-erasing morphism given by one image word per letter."""

    images: tuple[bytes, ...]

    def __post_init__(self):
        if not self.images:
            raise ParameterError("morphism needs at least one letter")
        for img in self.images:
            if len(img) == 0:
                raise ParameterError("erasing images are not supported")
            if max(img) >= len(self.images):
                raise ParameterError("image symbol out of alphabet")

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    def image(self, letter: int) -> Word:
        return Word(self.images[letter], self.alphabet_size)

    def uniform_length(self) -> int | None:
        """The common image length, or None if not uniform."""
        lengths = {len(img) for img in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    def is_prolongable_on(self, seed: int) -> bool:
        if not 0 <= seed < len(self.images):
            return False
        img = self.images[seed]
        return len(img) >= 2 and img[0] == seed

    @classmethod
    def from_text(cls, text: str) -> "Morphism":
        """Parse e.g. '0=01,1=00' into a morphism."""
        entries = {}
        for part in text.split(","):
            letter, _, image = part.partition("=")
            if not letter.isdigit():
                raise ParameterError(f"bad morphism entry: {part!r}")
            entries[int(letter)] = bytes(int(c) for c in image) if image else b""
        size = max(entries) + 1
        if sorted(entries) != list(range(size)):
            raise ParameterError("morphism must define every letter 0..max")
        return cls(tuple(entries[i] for i in range(size)))

    def to_text(self) -> str:
        return ",".join(
            f"{i}={''.join(str(c) for c in img)}" for i, img in enumerate(self.images)
        )


def thue_morse_morphism() -> Morphism:
    return Morphism((b"\x00\x01", b"\x01\x00"))


def period_doubling_morphism() -> Morphism:
    return Morphism((b"\x00\x01", b"\x00\x00"))


def fibonacci_morphism() -> Morphism:
    return Morphism((b"\x00\x01", b"\x00"))


def perlin_morphism(k: int) -> Morphism:
    """Binary morphism whose two images are k-Abelian equivalent blocks.

    0 maps to 0^(k+1) 1 0^(k-1) 1 and 1 maps to 0^k 1 0^k 1; both images
    have length 2k + 2 and Parikh vector (2k zeros, 2 ones).
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    zero = bytes(k + 1) + b"\x01" + bytes(k - 1) + b"\x01"
    one = bytes(k) + b"\x01" + bytes(k) + b"\x01"
    return Morphism((zero, one))


@dataclass(frozen=True)
class BlockSequence:
    """Block sizes n_1, n_2, ... (each >= 2); the final entry repeats forever.

    m(j) is the product n_1 * ... * n_j with m(0) = 1.
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks:
            raise ParameterError("block sequence must be nonempty")
        if any(b < 2 for b in self.blocks):
            raise ParameterError("every block size must be >= 2")

    def n(self, i: int) -> int:
        if i < 1:
            raise ParameterError("block index is 1-based")
        return self.blocks[min(i, len(self.blocks)) - 1]

    def m(self, j: int) -> int:
        if j < 0:
            raise ParameterError("m index must be >= 0")
        out = 1
        for i in range(1, j + 1):
            out *= self.n(i)
        return out


# --- word specs -------------------------------------------------------------

@dataclass(frozen=True)
class WordSpec:
    """A named, parameterized recipe for an infinite word."""

    name: str | None = field(default=None, compare=False, kw_only=True)

    def _expand(self, length: int) -> bytes:
        raise NotImplementedError

    @property
    def alphabet_size(self) -> int:
        return 2


@dataclass(frozen=True)
class FixedPointSpec(WordSpec):
    morphism: Morphism
    seed: int = 0

    def __post_init__(self):
        if not self.morphism.is_prolongable_on(self.seed):
            raise ParameterError("morphism is not prolongable on the seed letter")

    @property
    def alphabet_size(self):
        return self.morphism.alphabet_size

    def _expand(self, length):
        # w = h(w): stream images letter by letter, consuming already
        # produced output.  Linear in the requested length.
        images = self.morphism.images
        out = bytearray(images[self.seed])
        pos = 1
        while len(out) < length:
            out.extend(images[out[pos]])
            pos += 1
        return bytes(out[:length])


@dataclass(frozen=True)
class MorphicImageSpec(WordSpec):
    morphism: Morphism
    inner: WordSpec

    @property
    def alphabet_size(self):
        return self.morphism.alphabet_size

    def _expand(self, length):
        if length == 0:
            return b""
        # non-erasing images: `length` inner letters always suffice
        inner = self.inner._expand(length)
        images = self.morphism.images
        out = bytearray()
        for c in inner:
            out.extend(images[c])
            if len(out) >= length:
                break
        return bytes(out[:length])


@dataclass(frozen=True)
class ChampernowneSpec(WordSpec):
    """Binary representations of 0, 1, 2, ... concatenated."""

    def _expand(self, length):
        out = bytearray()
        i = 0
        while len(out) < length:
            out.extend(int(c) for c in bin(i)[2:])
            i += 1
        return bytes(out[:length])


@dataclass(frozen=True)
class StaircaseSpec(WordSpec):
    """The block word 0 1 00 11 000 111 ...; its Abelian complexity is n + 1
    for every n small relative to the expanded prefix."""

    def _expand(self, length):
        out = bytearray()
        i = 1
        while len(out) < length:
            out.extend(bytes(i))
            out.extend(b"\x01" * i)
            i += 1
        return bytes(out[:length])


@dataclass(frozen=True)
class MechanicalSpec(WordSpec):
    slope: Fraction
    intercept: Fraction = Fraction(0)
    slope_error: Fraction = Fraction(0)
    intercept_error: Fraction = Fraction(0)

    def __post_init__(self):
        if not 0 < self.slope < 1:
            raise ParameterError("slope must satisfy 0 < slope < 1")
        if self.slope_error < 0 or self.intercept_error < 0:
            raise ParameterError("error bounds must be >= 0")

    def _expand(self, length):
        return _mechanical_symbols(self.slope, self.intercept, length,
                                   self.slope_error, self.intercept_error)


@dataclass(frozen=True)
class UWordSpec(WordSpec):
    blocks: BlockSequence

    def _expand(self, length):
        return _u_word_symbols(self.blocks, length)


@dataclass(frozen=True)
class UltimatelyPeriodicSpec(WordSpec):
    preperiod: bytes
    period: bytes

    def __post_init__(self):
        if not self.period:
            raise ParameterError("period must be nonempty")

    @property
    def alphabet_size(self):
        both = self.preperiod + self.period
        return max(2, max(both) + 1)

    def _expand(self, length):
        if length <= len(self.preperiod):
            return self.preperiod[:length]
        reps = (length - len(self.preperiod)) // len(self.period) + 1
        return (self.preperiod + self.period * reps)[:length]


THUE_MORSE = FixedPointSpec(thue_morse_morphism(), 0, name="thue-morse")
PERIOD_DOUBLING = FixedPointSpec(period_doubling_morphism(), 0, name="period-doubling")
FIBONACCI = FixedPointSpec(fibonacci_morphism(), 0, name="fibonacci")
CHAMPERNOWNE = ChampernowneSpec(name="champernowne")
TAU_CHAMPERNOWNE = MorphicImageSpec(thue_morse_morphism(), CHAMPERNOWNE,
                                    name="tau-champernowne")
STAIRCASE = StaircaseSpec(name="staircase")


# --- operations -------------------------------------------------------------

def expand(spec: WordSpec, length: int) -> Word:
    """The first `length` symbols of the infinite word described by `spec`."""
    if not isinstance(length, int) or length < 0:
        raise ParameterError("length must be a non-negative integer")
    return Word(spec._expand(length), spec.alphabet_size)


def apply_morphism(m: Morphism, w: Word) -> Word:
    """Concatenation of the images of w's letters, in order."""
    if len(w) and max(w.symbols) >= m.alphabet_size:
        raise ParameterError("word symbol out of the morphism's alphabet")
    return Word(b"".join(m.images[c] for c in w.symbols), m.alphabet_size)


def fixed_point_prefix(m: Morphism, seed: int, length: int) -> Word:
    """Prefix of the unique fixed point of m starting with the seed letter."""
    return expand(FixedPointSpec(m, seed), length)


def _u_word_symbols(blocks: BlockSequence, length: int) -> bytes:
    # symbol at 1-based position i is (greatest j with m_j | i) mod 2
    greatest = np.zeros(length + 1, dtype=np.int64)
    j = 1
    while True:
        mj = blocks.m(j)
        if mj > length:
            break
        greatest[mj::mj] = j
        j += 1
    return (greatest[1:] % 2).astype(np.uint8).tobytes()


def u_word_prefix(blocks: BlockSequence, length: int) -> Word:
    """Prefix of the block-division word driven by m_j = n_1 ... n_j."""
    if not isinstance(length, int) or length < 0:
        raise ParameterError("length must be a non-negative integer")
    return Word(_u_word_symbols(blocks, length), 2)


def phi_map(w: Word) -> Word:
    """Adjacent-pair derivative: unequal pairs map to 0, equal pairs to 1.

    The output is one symbol shorter than the input.
    """
    if not w.is_binary:
        raise ParameterError("phi_map needs a binary word")
    if len(w) < 1:
        raise ParameterError("phi_map needs a nonempty word")
    a = np.frombuffer(w.symbols, dtype=np.uint8)
    return Word((a[:-1] == a[1:]).astype(np.uint8).tobytes(), 2)


def _mechanical_symbols(slope, intercept, length, slope_error, intercept_error):
    # floor((a*n + b) / d) in pure integer arithmetic
    d = slope.denominator * intercept.denominator // math.gcd(
        slope.denominator, intercept.denominator)
    a = slope.numerator * (d // slope.denominator)
    b = intercept.numerator * (d // intercept.denominator)
    if slope_error or intercept_error:
        for n in range(length + 1):
            frac = Fraction((a * n + b) % d, d)
            err = slope_error * n + intercept_error
            if frac < err or 1 - frac <= err:
                raise PrecisionError(n)
    floors = [(a * n + b) // d for n in range(length + 1)]
    return bytes(floors[n + 1] - floors[n] for n in range(length))


def mechanical_word(slope: Fraction, intercept: Fraction, length: int,
                    slope_error: Fraction = Fraction(0),
                    intercept_error: Fraction = Fraction(0)) -> Word:
    """Binary word s(n) = floor(slope*(n+1)+intercept) - floor(slope*n+intercept).

    When error bounds are given, the generator refuses to produce a prefix on
    which the floors could differ between the rational approximant and any
    irrational within the stated error (PrecisionError).
    """
    spec = MechanicalSpec(slope, intercept,
                          slope_error=slope_error, intercept_error=intercept_error)
    return expand(spec, length)


def slow_sequence_from_budget(budget) -> BlockSequence:
    """Greedy block sizes keeping the complexity bound n' + 1 within a budget.

    `budget` holds sampled values f(1), ..., f(N) of an increasing unbounded
    integer function.  The returned blocks guarantee that over the sampled
    range the level bound n' + 1 (with m_{n'-1} < n <= m_{n'}) never exceeds
    f(n); the last block repeats beyond the sample.
    """
    budget = list(budget)
    n_samples = len(budget)
    if n_samples < 2:
        raise ParameterError("budget must sample at least two values")
    if any(b < 1 for b in budget):
        raise ParameterError("budget values must be positive integers")
    if any(y < x for x, y in zip(budget, budget[1:])) or budget[-1] == budget[0]:
        raise ParameterError("budget must be non-decreasing and unbounded over the range")
    if n_samples >= 2 and budget[1] < 2:
        raise ParameterError("budget below the minimum complexity bound")

    def f(n):
        return budget[n - 1]

    blocks = []
    m_prev = 1
    j = 1
    while m_prev < n_samples:
        t = 2
        while m_prev * t + 1 <= n_samples and f(m_prev * t + 1) < j + 2:
            t += 1
        blocks.append(t)
        m_prev *= t
        j += 1
    return BlockSequence(tuple(blocks))


# --- textual spec forms -----------------------------------------------------

_NAMED = {
    "thue-morse": THUE_MORSE,
    "period-doubling": PERIOD_DOUBLING,
    "fibonacci": FIBONACCI,
    "champernowne": CHAMPERNOWNE,
    "tau-champernowne": TAU_CHAMPERNOWNE,
    "staircase": STAIRCASE,
}


def parse_word(text: str, alphabet_size: int | None = None) -> Word:
    return Word.from_text(text, alphabet_size)


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational: {text!r}") from exc


def parse_spec(text: str) -> WordSpec:
    """Parse the canonical textual form of a word spec."""
    text = text.strip()
    if text in _NAMED:
        return _NAMED[text]
    head, _, rest = text.partition(":")
    if head == "fixed-point":
        images, _, seed = rest.partition(";seed=")
        if not seed:
            raise ParameterError("fixed-point needs ';seed=<letter>'")
        return FixedPointSpec(Morphism.from_text(images), int(seed))
    if head == "uword":
        try:
            blocks = tuple(int(t) for t in rest.split(","))
        except ValueError as exc:
            raise ParameterError(f"bad block list: {rest!r}") from exc
        return UWordSpec(BlockSequence(blocks))
    if head == "ult-periodic":
        pre = b""
        per = None
        for part in rest.split(";"):
            key, _, val = part.partition("=")
            if key == "pre":
                pre = Word.from_text(val).symbols if val else b""
            elif key == "per":
                per = Word.from_text(val).symbols
            else:
                raise ParameterError(f"bad ult-periodic field: {part!r}")
        if per is None:
            raise ParameterError("ult-periodic needs 'per=<word>'")
        return UltimatelyPeriodicSpec(pre, per)
    if head == "mechanical":
        parts = rest.split(";")
        if len(parts) < 2:
            raise ParameterError("mechanical needs 'slope;intercept'")
        slope = _parse_fraction(parts[0])
        intercept = _parse_fraction(parts[1])
        err = Fraction(0)
        for extra in parts[2:]:
            key, _, val = extra.partition("=")
            if key != "err":
                raise ParameterError(f"bad mechanical field: {extra!r}")
            err = _parse_fraction(val)
        return MechanicalSpec(slope, intercept, slope_error=err, intercept_error=err)
    if head == "image":
        images, sep, inner = rest.partition(";of=")
        if not sep:
            raise ParameterError("image needs ';of=<inner spec>'")
        return MorphicImageSpec(Morphism.from_text(images), parse_spec(inner))
    raise ParameterError(f"unknown word spec: {text!r}")


def spec_text(spec: WordSpec) -> str:
    """Canonical textual form, inverse of parse_spec."""
    if spec.name:
        return spec.name
    if isinstance(spec, FixedPointSpec):
        return f"fixed-point:{spec.morphism.to_text()};seed={spec.seed}"
    if isinstance(spec, UWordSpec):
        return "uword:" + ",".join(str(b) for b in spec.blocks.blocks)
    if isinstance(spec, UltimatelyPeriodicSpec):
        pre = "".join(str(c) for c in spec.preperiod)
        per = "".join(str(c) for c in spec.period)
        return f"ult-periodic:pre={pre};per={per}"
    if isinstance(spec, MechanicalSpec):
        out = f"mechanical:{spec.slope};{spec.intercept}"
        if spec.slope_error or spec.intercept_error:
            out += f";err={max(spec.slope_error, spec.intercept_error)}"
        return out
    if isinstance(spec, MorphicImageSpec):
        return f"image:{spec.morphism.to_text()};of={spec_text(spec.inner)}"
    if isinstance(spec, ChampernowneSpec):
        return "champernowne"
    if isinstance(spec, StaircaseSpec):
        return "staircase"
    raise ParameterError(f"spec has no textual form: {spec!r}")
