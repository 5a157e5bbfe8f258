"""Free-group words over a signed integer alphabet.

A word is a sequence of nonzero integers: ``i`` (1-based) stands for the
i-th generator, ``-i`` for its inverse.  Words are kept freely reduced, so
equality of words is equality in the free group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInputError

__all__ = [
    "Word",
    "reduce_word",
    "identity",
    "generator",
    "inverse",
    "concat",
    "power",
    "conjugate",
    "commutator",
    "exponent_vector",
]


@dataclass(frozen=True)
class Word:
    """A freely reduced word.

    ``letters`` holds signed 1-based generator indices; ``alphabet_size``
    is the number of generators in scope.
    """

    letters: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        for let in self.letters:
            if let == 0 or abs(let) > self.alphabet_size:
                raise InvalidInputError(
                    f"letter {let} outside alphabet of size {self.alphabet_size}"
                )
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise InvalidInputError("word is not freely reduced; use reduce_word")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet_size != other.alphabet_size:
            raise InvalidInputError("cannot multiply words over different alphabets")
        return reduce_word(self.letters + other.letters, self.alphabet_size)

    def __invert__(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.alphabet_size)

    def is_identity(self) -> bool:
        return not self.letters

    def to_json(self) -> list[int]:
        return list(self.letters)

    @classmethod
    def from_json(cls, data: Sequence[int], alphabet_size: int) -> "Word":
        return reduce_word(data, alphabet_size)


def reduce_word(letters: Iterable[int], alphabet_size: int) -> Word:
    """Freely reduce a raw signed sequence.

    >>> reduce_word([1, -1], 2).letters
    ()
    >>> reduce_word([1, 2, -2, 1], 2).letters
    (1, 1)
    """
    stack: list[int] = []
    for let in letters:
        if let == 0 or abs(let) > alphabet_size:
            raise InvalidInputError(
                f"letter {let} outside alphabet of size {alphabet_size}"
            )
        if stack and stack[-1] == -let:
            stack.pop()
        else:
            stack.append(let)
    return Word(tuple(stack), alphabet_size)


def identity(alphabet_size: int) -> Word:
    return Word((), alphabet_size)


def generator(i: int, alphabet_size: int) -> Word:
    """The one-letter word g_i (or its inverse for negative i)."""
    return reduce_word([i], alphabet_size)


def inverse(w: Word) -> Word:
    return ~w


def concat(*words: Word) -> Word:
    """Product of words over a common alphabet."""
    if not words:
        raise InvalidInputError("concat needs at least one word")
    out = words[0]
    for w in words[1:]:
        out = out * w
    return out


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(~w, -k)
    out = identity(w.alphabet_size)
    base = w
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def conjugate(w: Word, by: Word) -> Word:
    """by^-1 * w * by."""
    return ~by * w * by


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v.

    >>> commutator(generator(1, 2), generator(2, 2)).letters
    (-1, -2, 1, 2)
    """
    if u.alphabet_size != v.alphabet_size:
        raise InvalidInputError("commutator of words over different alphabets")
    return ~u * ~v * u * v


def exponent_vector(w: Word, n: int | None = None) -> tuple[int, ...]:
    """Signed letter counts, one entry per generator.

    This is the image of ``w`` in the free abelianisation Z^n.
    """
    if n is None:
        n = w.alphabet_size
    if n < w.alphabet_size:
        raise InvalidInputError("exponent_vector target smaller than word alphabet")
    out = [0] * n
    for let in w.letters:
        out[abs(let) - 1] += 1 if let > 0 else -1
    return tuple(out)
