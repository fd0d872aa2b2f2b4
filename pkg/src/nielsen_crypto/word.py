"""Freely reduced words in a free group of finite rank.

A letter ``i > 0`` stands for the generator ``x_i`` and ``-i`` for its
inverse, so ``Word([1, -2, -2])`` is ``x1 x2^-2``. Indexing is 1-based
everywhere. Words do not store the ambient rank; callers that care pass it
to :meth:`Word.check_rank` or to the functions that take ``rank``.

>>> u = Word([1, 2, -2, 3])
>>> u
Word([1, 3])
>>> u * u.inverse()
Word([])
>>> len(Word([2, -1, -2, 3, -2, -2, -2]))
7
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import MalformedWordError, RankMismatchError


def reduce_free(letters: Iterable[int]) -> tuple[int, ...]:
    """Return the freely reduced form of a raw letter sequence (stack scan)."""
    out: list[int] = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise MalformedWordError("0 is not a letter; generators are numbered from 1")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class Word:
    """Immutable freely reduced word. All constructors reduce."""

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[int] = ()):
        object.__setattr__(self, "_letters", reduce_free(letters))

    @classmethod
    def _trusted(cls, letters: tuple[int, ...]) -> Word:
        # caller guarantees `letters` is already reduced
        w = object.__new__(cls)
        object.__setattr__(w, "_letters", letters)
        return w

    @classmethod
    def generator(cls, i: int, power: int = 1) -> Word:
        """``x_i ** power``."""
        if i < 1:
            raise MalformedWordError(f"generator index must be >= 1, got {i}")
        return cls._trusted((i,) * power if power >= 0 else (-i,) * -power)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self):
        return iter(self._letters)

    def __bool__(self) -> bool:
        return bool(self._letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._letters == other._letters
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Word", self._letters))

    def __repr__(self) -> str:
        return f"Word({list(self._letters)})"

    def __str__(self) -> str:
        return format_word(self)

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return mul(self, other)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = mul(out, base)
        return out

    def inverse(self) -> Word:
        return Word._trusted(tuple(-x for x in reversed(self._letters)))

    def max_generator(self) -> int:
        return max((abs(x) for x in self._letters), default=0)

    def check_rank(self, rank: int) -> Word:
        if self.max_generator() > rank:
            raise RankMismatchError(
                f"word {list(self._letters)} uses x{self.max_generator()} but rank is {rank}"
            )
        return self


def mul(u: Word, v: Word) -> Word:
    """Group product ``u v``; cancellation only happens at the seam."""
    a, b = u.letters, v.letters
    k = 0
    n = min(len(a), len(b))
    while k < n and a[-1 - k] == -b[k]:
        k += 1
    return Word._trusted(a[: len(a) - k] + b[k:])


def inv(u: Word) -> Word:
    return u.inverse()


def length(u: Word) -> int:
    return len(u)


def product(words: Iterable[Word]) -> Word:
    out = Word()
    for w in words:
        out = mul(out, w)
    return out


def identity_images(rank: int) -> tuple[Word, ...]:
    return tuple(Word.generator(i) for i in range(1, rank + 1))


def format_word(u: Word) -> str:
    """Human-readable form, e.g. ``x2 x1^-1 x2^-3``; ``1`` for the identity."""
    if not u:
        return "1"
    parts: list[str] = []
    letters = u.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        exp = (j - i) * (1 if letters[i] > 0 else -1)
        g = f"x{abs(letters[i])}"
        parts.append(g if exp == 1 else f"{g}^{exp}")
        i = j
    return " ".join(parts)


class Endomorphism:
    """Substitution endomorphism of a free group given by generator images."""

    __slots__ = ("_images",)

    def __init__(self, images: Sequence[Word | Iterable[int]]):
        imgs = tuple(w if isinstance(w, Word) else Word(w) for w in images)
        rank = len(imgs)
        for w in imgs:
            w.check_rank(rank)
        object.__setattr__(self, "_images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Endomorphism is immutable")

    @classmethod
    def identity(cls, rank: int) -> Endomorphism:
        return cls(identity_images(rank))

    @property
    def images(self) -> tuple[Word, ...]:
        return self._images

    @property
    def rank(self) -> int:
        return len(self._images)

    def __eq__(self, other) -> bool:
        if isinstance(other, Endomorphism):
            return self._images == other._images
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Endomorphism", self._images))

    def __repr__(self) -> str:
        return f"Endomorphism({[list(w.letters) for w in self._images]})"

    def __call__(self, u: Word) -> Word:
        return apply_endo(self, u)

    def is_identity(self) -> bool:
        return self._images == identity_images(self.rank)


def apply_endo(f: Endomorphism, u: Word) -> Word:
    u.check_rank(f.rank)
    images = f.images
    inverses: dict[int, Word] = {}
    out: list[int] = []
    for x in u.letters:
        if x > 0:
            piece = images[x - 1].letters
        else:
            if x not in inverses:
                inverses[x] = images[-x - 1].inverse()
            piece = inverses[x].letters
        for y in piece:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word._trusted(tuple(out))


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """``f o g``: apply ``g`` first, then ``f``."""
    if f.rank != g.rank:
        raise RankMismatchError(f"cannot compose rank {f.rank} with rank {g.rank}")
    return Endomorphism([apply_endo(f, w) for w in g.images])


def endo_power(f: Endomorphism, n: int) -> Endomorphism:
    """n-fold composite of ``f`` by repeated squaring; ``f^0`` is the identity."""
    if n < 0:
        raise ValueError("endomorphism powers must be non-negative")
    result = Endomorphism.identity(f.rank)
    base = f
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result
