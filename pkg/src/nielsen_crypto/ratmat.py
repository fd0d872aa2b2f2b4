"""Exact 2x2 matrices over Q with determinant 1.

Scalars are :class:`fractions.Fraction`, which keeps numerator and
denominator as Python ints in lowest terms with a positive denominator.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import DeterminantError, FormatError, LehnerParameterError, RankMismatchError
from .nielsen import Transcript, replay
from .word import Word

Rational = Fraction


def parse_rational(s: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Floats are refused to keep values exact."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, bool) or isinstance(s, float):
        raise FormatError(f"rationals must be given exactly, not as {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    num, sep, den = text.partition("/")
    try:
        if sep and int(den) == 0:
            raise FormatError(f"zero denominator in {s!r}")
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except ValueError as exc:
        raise FormatError(f"not a rational: {s!r}") from exc
    return value


def format_rational(x: Fraction) -> str:
    # Fraction.__str__ already gives "p" for integers and "p/q" otherwise
    return str(Fraction(x))


@dataclass(frozen=True)
class RatMatrix:
    """``[[a, b], [c, d]]`` in SL(2, Q)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, parse_rational(v))
        if self.a * self.d - self.b * self.c != 1:
            raise DeterminantError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def _trusted(cls, a, b, c, d) -> RatMatrix:
        # skips the determinant check; only for products/inverses of SL(2) elements
        m = object.__new__(cls)
        object.__setattr__(m, "a", a)
        object.__setattr__(m, "b", b)
        object.__setattr__(m, "c", c)
        object.__setattr__(m, "d", d)
        return m

    @classmethod
    def identity(cls) -> RatMatrix:
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(one, zero, zero, one)

    @classmethod
    def from_rows(cls, rows) -> RatMatrix:
        (a, b), (c, d) = rows
        return cls(parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d))

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        return mat_mul(self, other)

    def inverse(self) -> RatMatrix:
        return mat_inv(self)

    def __repr__(self) -> str:
        return "RatMatrix(" + repr([[format_rational(x) for x in r] for r in self.rows()]) + ")"


def mat_mul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    return RatMatrix._trusted(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def mat_inv(A: RatMatrix) -> RatMatrix:
    # adjugate, since det = 1
    return RatMatrix._trusted(A.d, -A.b, -A.c, A.a)


def trace(A: RatMatrix) -> Fraction:
    return A.a + A.d


def commutator(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """``[A, B] = A^-1 B^-1 A B``."""
    return mat_inv(A) @ mat_inv(B) @ A @ B


def is_identity(A: RatMatrix) -> bool:
    return A == RatMatrix.identity()


def lehner_generators(r: Sequence[Fraction | int | str]) -> list[RatMatrix]:
    """Matrices ``[[-r, r^2 - 1], [1, -r]]`` generating a free group.

    Requires ``r_1 >= 2`` and ``r_{j+1} - r_j >= 3``.

    >>> lehner_generators([2])
    [RatMatrix([['-2', '3'], ['1', '-2']])]
    """
    rs = [parse_rational(x) for x in r]
    check_lehner_params(rs)
    return [RatMatrix._trusted(-x, x * x - 1, Fraction(1), -x) for x in rs]


def check_lehner_params(rs: Sequence[Fraction]) -> None:
    if not rs:
        raise LehnerParameterError("at least one Lehner parameter is required", 0)
    if rs[0] < 2:
        raise LehnerParameterError(f"r_1 = {rs[0]} must be at least 2", 1)
    for j in range(1, len(rs)):
        if rs[j] - rs[j - 1] < 3:
            raise LehnerParameterError(
                f"r_{j + 1} - r_{j} = {rs[j] - rs[j - 1]} must be at least 3", j + 1
            )


def default_lehner_params(q: int) -> list[Fraction]:
    """``r_j = 3j - 1``: the smallest integer parameters allowed."""
    return [Fraction(3 * j - 1) for j in range(1, q + 1)]


class Representation:
    """Homomorphism from the free group of rank q into SL(2, Q)."""

    def __init__(self, images: Sequence[RatMatrix], params: Sequence[Fraction] | None = None):
        self.images = tuple(images)
        self.params = None if params is None else tuple(params)
        self._inverses = tuple(mat_inv(M) for M in self.images)

    @classmethod
    def lehner(cls, r: Sequence[Fraction | int | str]) -> Representation:
        rs = [parse_rational(x) for x in r]
        return cls(lehner_generators(rs), rs)

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, u: Word) -> RatMatrix:
        return eval_word(self, u)


def eval_word(rep: Representation, u: Word) -> RatMatrix:
    if u.max_generator() > rep.rank:
        raise RankMismatchError(f"word uses x{u.max_generator()} but the representation has rank {rep.rank}")
    out = RatMatrix.identity()
    for x in u.letters:
        out = mat_mul(out, rep.images[x - 1] if x > 0 else rep._inverses[-x - 1])
    return out


def apply_transcript_mat(mats: Sequence[RatMatrix], transcript: Transcript) -> list[RatMatrix]:
    return replay(mats, transcript, mat_mul, mat_inv, is_identity)


def matrix_to_rows(A: RatMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in A.rows()]


def matrix_from_rows(rows) -> RatMatrix:
    try:
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise FormatError(f"matrix must be 2x2, got {rows!r}")
        for r in rows:
            for x in r:
                if not isinstance(x, str):
                    raise FormatError(f"matrix entries must be rational strings, got {x!r}")
    except TypeError as exc:
        raise FormatError(f"malformed matrix {rows!r}") from exc
    return RatMatrix.from_rows(rows)


def eval_tuple(rep: Representation, words: Iterable[Word]) -> list[RatMatrix]:
    return [eval_word(rep, w) for w in words]
