"""Nielsen transformations on finite tuples of words.

Moves use 1-based positions: ``Invert(i)`` replaces ``u_i`` by its inverse,
``MultiplyRight(i, j)`` replaces ``u_i`` by ``u_i u_j`` and ``Delete(i)``
drops a trivial ``u_i``. A :class:`Transcript` is an ordered list of moves;
it is regular when it contains no deletions.

The same transcript can be replayed on any group-like tuple (words here,
matrices in :mod:`nielsen_crypto.ratmat`) through :func:`replay`.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import TypeVar

from .errors import ReductionStallError, TranscriptError
from .word import Word, mul

T = TypeVar("T")


@dataclass(frozen=True)
class Invert:
    i: int


@dataclass(frozen=True)
class MultiplyRight:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise TranscriptError(f"T2 needs distinct positions, got i = j = {self.i}")


@dataclass(frozen=True)
class Delete:
    i: int


Move = Invert | MultiplyRight | Delete


@dataclass(frozen=True)
class Transcript:
    moves: tuple[Move, ...] = ()
    declared_regular: bool = True

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))
        for mv in self.moves:
            if not isinstance(mv, (Invert, MultiplyRight, Delete)):
                raise TranscriptError(f"not an elementary move: {mv!r}")
            if isinstance(mv, MultiplyRight):
                if mv.i < 1 or mv.j < 1:
                    raise TranscriptError(f"positions are 1-based: {mv!r}")
            elif mv.i < 1:
                raise TranscriptError(f"positions are 1-based: {mv!r}")
        if self.declared_regular and not self.is_regular:
            raise TranscriptError("transcript declared regular but contains a T3 deletion")

    @property
    def is_regular(self) -> bool:
        return not any(isinstance(mv, Delete) for mv in self.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __add__(self, other: Transcript) -> Transcript:
        return Transcript(self.moves + other.moves, self.declared_regular and other.declared_regular)

    def __mul__(self, k: int) -> Transcript:
        return Transcript(self.moves * k, self.declared_regular)

    def max_index(self) -> int:
        out = 0
        for mv in self.moves:
            out = max(out, mv.i, getattr(mv, "j", 0))
        return out


def replay(
    items: Sequence[T],
    transcript: Transcript,
    product: Callable[[T, T], T],
    inverse: Callable[[T], T],
    is_identity: Callable[[T], bool],
) -> list[T]:
    """Run ``transcript`` move by move over ``items`` in any group."""
    out = list(items)
    for step, mv in enumerate(transcript.moves, 1):
        n = len(out)
        if isinstance(mv, Invert):
            _check_pos(mv.i, n, step)
            out[mv.i - 1] = inverse(out[mv.i - 1])
        elif isinstance(mv, MultiplyRight):
            _check_pos(mv.i, n, step)
            _check_pos(mv.j, n, step)
            out[mv.i - 1] = product(out[mv.i - 1], out[mv.j - 1])
        else:
            if transcript.declared_regular:
                raise TranscriptError("T3 deletion in a transcript declared regular")
            _check_pos(mv.i, n, step)
            if not is_identity(out[mv.i - 1]):
                raise TranscriptError(f"move {step}: T3 deletes only trivial elements, u_{mv.i} is not")
            del out[mv.i - 1]
    return out


def _check_pos(i: int, n: int, step: int) -> None:
    if not 1 <= i <= n:
        raise TranscriptError(f"move {step}: position {i} out of range for a {n}-tuple")


def apply_transcript(words: Sequence[Word], transcript: Transcript) -> list[Word]:
    return replay(words, transcript, mul, Word.inverse, lambda w: not w)


def invert_transcript(transcript: Transcript) -> Transcript:
    """Regular transcript undoing ``transcript``.

    ``(T1)_i`` is its own inverse and ``(T2)_ij`` is undone by
    ``(T1)_j (T2)_ij (T1)_j``.
    """
    if not transcript.is_regular:
        raise TranscriptError("only regular transcripts can be inverted")
    moves: list[Move] = []
    for mv in reversed(transcript.moves):
        if isinstance(mv, Invert):
            moves.append(mv)
        else:
            moves += [Invert(mv.j), mv, Invert(mv.j)]
    return Transcript(tuple(moves))


# --- wire format -----------------------------------------------------------

def move_to_record(mv: Move) -> dict:
    if isinstance(mv, Invert):
        return {"op": "T1", "i": mv.i}
    if isinstance(mv, MultiplyRight):
        return {"op": "T2", "i": mv.i, "j": mv.j}
    return {"op": "T3", "i": mv.i}


def transcript_to_records(transcript: Transcript) -> list[dict]:
    return [move_to_record(mv) for mv in transcript.moves]


def transcript_from_records(records: Iterable[dict], declared_regular: bool = True) -> Transcript:
    """Parse move records; ``{"op": "T2", ..., "pow": t}`` expands to t copies."""
    moves: list[Move] = []
    for rec in records:
        try:
            op = rec["op"]
            i = _as_index(rec["i"])
            if op == "T1":
                mv: Move = Invert(i)
            elif op == "T2":
                mv = MultiplyRight(i, _as_index(rec["j"]))
            elif op == "T3":
                mv = Delete(i)
            else:
                raise TranscriptError(f"unknown move op {op!r}")
        except (KeyError, TypeError) as exc:
            raise TranscriptError(f"malformed move record {rec!r}") from exc
        reps = rec.get("pow", 1)
        if op != "T2" and "pow" in rec:
            raise TranscriptError("the pow shorthand is only defined for T2")
        if isinstance(reps, bool) or not isinstance(reps, int) or reps < 1:
            raise TranscriptError(f"pow must be a positive integer, got {reps!r}")
        moves.extend([mv] * reps)
    return Transcript(tuple(moves), declared_regular)


def _as_index(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TranscriptError(f"move positions must be integers, got {x!r}")
    return x


# --- Nielsen-reduced predicate ---------------------------------------------

@dataclass(frozen=True)
class ReducedCheck:
    """Outcome of :func:`is_nielsen_reduced`; truthy when reduced.

    ``triple`` holds the offending ``v``'s as ``(index, sign)`` pairs.
    """

    reduced: bool
    condition: str | None = None
    triple: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.reduced


def is_nielsen_reduced(words: Sequence[Word]) -> ReducedCheck:
    """Exhaustive N0/N1/N2 scan over all ``v`` in ``{u_i, u_i^-1}``."""
    vs: list[tuple[tuple[int, int], Word]] = []
    for i, w in enumerate(words, 1):
        vs.append(((i, 1), w))
        vs.append(((i, -1), w.inverse()))
    for tag, v in vs:
        if not v:
            return ReducedCheck(False, "N0", (tag,))
    pairs: dict[tuple[int, int], Word] = {}
    for (a, (ta, va)), (b, (tb, vb)) in itertools.product(enumerate(vs), repeat=2):
        p = mul(va, vb)
        pairs[a, b] = p
        if p and (len(p) < len(va) or len(p) < len(vb)):
            return ReducedCheck(False, "N1", (ta, tb))
    for (a, (ta, va)), (b, (tb, vb)), (c, (tc, vc)) in itertools.product(enumerate(vs), repeat=3):
        if not pairs[a, b] or not pairs[b, c]:
            continue
        if len(mul(pairs[a, b], vc)) <= len(va) - len(vb) + len(vc):
            return ReducedCheck(False, "N2", (ta, tb, tc))
    return ReducedCheck(True)


# --- reduction -------------------------------------------------------------

# Composite replacements of u_i, compiled to elementary moves:
#   0: u_i u_j    1: u_i u_j^-1    2: u_j u_i    3: u_j^-1 u_i
def _compile(variant: int, i: int, j: int) -> list[Move]:
    if variant == 0:
        return [MultiplyRight(i, j)]
    if variant == 1:
        return [Invert(j), MultiplyRight(i, j), Invert(j)]
    if variant == 2:
        return [Invert(i), Invert(j), MultiplyRight(i, j), Invert(j), Invert(i)]
    return [Invert(i), MultiplyRight(i, j), Invert(i)]


def _replacement(variant: int, ui: Word, uj: Word) -> Word:
    if variant == 0:
        return mul(ui, uj)
    if variant == 1:
        return mul(ui, uj.inverse())
    if variant == 2:
        return mul(uj, ui)
    return mul(uj.inverse(), ui)


def _letter_rank(x: int) -> int:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return 2 * abs(x) - (x > 0)


def _half_key(w: Word) -> tuple:
    """Order key: length, then the sorted pair of left halves of w and w^-1."""
    half = (len(w) + 1) // 2
    left = tuple(_letter_rank(x) for x in w.letters[:half])
    right = tuple(_letter_rank(x) for x in w.inverse().letters[:half])
    return (len(w), min(left, right), max(left, right))


@dataclass(frozen=True)
class ReductionResult:
    reduced_tuple: tuple[Word, ...]
    transcript: Transcript = field(default_factory=Transcript)


def nielsen_reduce(words: Sequence[Word], max_steps: int = 1_000_000) -> ReductionResult:
    """Carry ``words`` to a Nielsen-reduced tuple by regular moves.

    Phase 1 applies the composite replacement with the largest drop in total
    length. When none shortens the tuple and it is not yet reduced, Phase 2
    applies a length-preserving replacement that strictly lowers the tuple
    in the half-word order of :func:`_half_key`; that order makes every N2
    failure repairable and is
    well-founded at fixed lengths, so the loop terminates. The result is
    checked against N0-N2 before returning.
    """
    cur = list(words)
    for k, w in enumerate(cur, 1):
        if not isinstance(w, Word):
            raise TypeError(f"element {k} is not a Word")
        if not w:
            raise ReductionStallError(f"element {k} is trivial; only regular reduction is supported")
    m = len(cur)
    moves: list[Move] = []
    keys = [_half_key(w) for w in cur]

    for _ in range(max_steps):
        best = None  # (-drop, i, j, variant, new word)
        for i, j in itertools.permutations(range(m), 2):
            for variant in range(4):
                new = _replacement(variant, cur[i], cur[j])
                if not new:
                    continue
                drop = len(cur[i]) - len(new)
                if drop > 0 and (best is None or (-drop, i, j, variant) < best[:4]):
                    best = (-drop, i, j, variant, new)
        if best is None:
            if is_nielsen_reduced(cur):
                break
            best = _phase_two(cur, keys)
        if best is None:
            break
        _, i, j, variant, new = best
        cur[i] = new
        keys[i] = _half_key(new)
        moves += _compile(variant, i + 1, j + 1)
    else:
        raise ReductionStallError(f"no Nielsen-reduced tuple after {max_steps} steps")

    check = is_nielsen_reduced(cur)
    if not check:
        raise ReductionStallError(
            f"reduction stalled with {check.condition} violated by {check.triple}"
        )
    return ReductionResult(tuple(cur), Transcript(tuple(moves)))


def _phase_two(cur: list[Word], keys: list[tuple]):
    m = len(cur)
    base = sorted(keys)
    best = None
    for i, j in itertools.permutations(range(m), 2):
        for variant in range(4):
            new = _replacement(variant, cur[i], cur[j])
            if len(new) != len(cur[i]):
                continue
            new_key = _half_key(new)
            if new_key >= keys[i]:
                continue
            total = sorted(keys[:i] + [new_key] + keys[i + 1:])
            if total < base and (best is None or (total, i, j, variant) < best[0]):
                best = ((total, i, j, variant), new)
    if best is None:
        return None
    (_, i, j, variant), new = best
    return (0, i, j, variant, new)
