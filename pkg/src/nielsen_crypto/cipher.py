"""Polyalphabetic symmetric cipher over SL(2, Q).

Letter a_t of the alphabet corresponds to a word u_t of a free basis U of a
rank-N subgroup; its matrix image U'_t is the ciphertext symbol before any
scrambling. The message is cut into pieces of lengths p_1..p_k and the i-th
piece is read through the table row f_i(U'), where f_i is a regular Nielsen
transcript on N-tuples. Decryption is exact table lookup.
"""

from __future__ import annotations

import functools
import random
import string
from collections.abc import Sequence
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import CipherKeyError, DecryptionError
from .nielsen import Invert, MultiplyRight, Transcript, is_nielsen_reduced, nielsen_reduce
from .ratmat import (
    RatMatrix,
    Representation,
    apply_transcript_mat,
    check_lehner_params,
    default_lehner_params,
    eval_word,
    parse_rational,
)
from .word import Word

DEFAULT_ALPHABET_SIZE = 26
MIN_ALPHABET_SIZE = 5
MAX_BLOCK = 4


def default_basis(n_letters: int) -> tuple[Word, ...]:
    """``u_j = x1^j x2 x1^-j`` for j = 1..N, a free basis of a rank-N subgroup."""
    return tuple(Word([1] * j + [2] + [-1] * j) for j in range(1, n_letters + 1))


@dataclass(frozen=True)
class CipherKey:
    n_letters: int
    rank: int
    lehner_r: tuple[Fraction, ...]
    basis: tuple[Word, ...]
    blocks: tuple[int, ...]
    transcripts: tuple[Transcript, ...]
    sigma: tuple[int, ...] | None = None
    evolution: Transcript | None = None
    counter: int = 0

    @property
    def block_length(self) -> int:
        return sum(self.blocks)

    @property
    def alphabet(self) -> str | None:
        if self.n_letters <= len(string.ascii_uppercase):
            return string.ascii_uppercase[: self.n_letters]
        return None

    def effective_transcripts(self) -> tuple[Transcript, ...]:
        if self.evolution is None or self.counter == 0:
            return self.transcripts
        tail = self.evolution * self.counter
        return tuple(f + tail for f in self.transcripts)

    def representation(self) -> Representation:
        return Representation.lehner(self.lehner_r)


@functools.lru_cache(maxsize=256)
def _certify_basis(basis: tuple[Word, ...]) -> None:
    for k, w in enumerate(basis, 1):
        if not w:
            raise CipherKeyError(f"basis word {k} is trivial")
    reduced = basis if is_nielsen_reduced(basis) else nielsen_reduce(basis).reduced_tuple
    seen = set()
    for w in reduced:
        key = min(w.letters, w.inverse().letters)
        if key in seen:
            raise CipherKeyError("basis words are not free: two reduce to the same element up to inversion")
        seen.add(key)


def validate_key(key: CipherKey) -> CipherKey:
    N, q = key.n_letters, key.rank
    if N < MIN_ALPHABET_SIZE:
        raise CipherKeyError(f"alphabet size must be at least {MIN_ALPHABET_SIZE}, got {N}")
    if q < 2:
        raise CipherKeyError(f"ambient rank must be at least 2, got {q}")
    if len(key.lehner_r) != q:
        raise CipherKeyError(f"need {q} Lehner parameters, got {len(key.lehner_r)}")
    check_lehner_params(key.lehner_r)
    if len(key.basis) != N:
        raise CipherKeyError(f"need {N} basis words, got {len(key.basis)}")
    for w in key.basis:
        if w.max_generator() > q:
            raise CipherKeyError(f"basis word {w} uses a generator beyond rank {q}")
    _certify_basis(key.basis)
    if len(key.blocks) < 2:
        raise CipherKeyError("the block sequence needs at least two entries")
    if any(not 1 <= p <= MAX_BLOCK for p in key.blocks):
        raise CipherKeyError(f"block lengths must lie in 1..{MAX_BLOCK}")
    if len(key.transcripts) != len(key.blocks):
        raise CipherKeyError("need exactly one transcript per block")
    if len({f.moves for f in key.transcripts}) != len(key.transcripts):
        raise CipherKeyError("block transcripts must be pairwise different")
    for f in list(key.transcripts) + ([key.evolution] if key.evolution is not None else []):
        if not f.is_regular:
            raise CipherKeyError("cipher transcripts must be regular")
        if f.max_index() > N:
            raise CipherKeyError(f"a transcript addresses position {f.max_index()} of an {N}-tuple")
    if key.sigma is not None and sorted(key.sigma) != list(range(1, len(key.sigma) + 1)):
        raise CipherKeyError(f"sigma {list(key.sigma)} is not a permutation of 1..{len(key.sigma)}")
    if key.counter < 0:
        raise CipherKeyError("the evolution counter cannot be negative")
    if key.counter and key.evolution is None:
        raise CipherKeyError("nonzero evolution counter without an evolution transcript")
    build_tables(key)
    return key


def random_transcript(rng: random.Random, size: int, moves: int) -> Transcript:
    out = []
    for _ in range(moves):
        if rng.random() < 0.25:
            out.append(Invert(rng.randint(1, size)))
        else:
            i, j = rng.sample(range(1, size + 1), 2)
            out.append(MultiplyRight(i, j))
    return Transcript(tuple(out))


def keygen(
    n_letters: int = DEFAULT_ALPHABET_SIZE,
    rank: int = 2,
    blocks: Sequence[int] = (1, 2, 3, 4),
    seed: int | None = None,
    transcripts: Sequence[Transcript] | None = None,
    *,
    lehner_r: Sequence | None = None,
    basis: Sequence[Word] | None = None,
    sigma: Sequence[int] | None = None,
    evolution: Transcript | None = None,
    moves_per_transcript: int = 4,
) -> CipherKey:
    """Build and validate a key.

    Without explicit ``transcripts`` the block transcripts are drawn from
    ``random.Random(seed)``; the same seed always yields the same key.
    """
    r = tuple(parse_rational(x) for x in lehner_r) if lehner_r is not None else tuple(default_lehner_params(rank))
    basis = tuple(basis) if basis is not None else default_basis(n_letters)
    if transcripts is None:
        rng = random.Random(seed)
        chosen: list[Transcript] = []
        while len(chosen) < len(blocks):
            f = random_transcript(rng, n_letters, moves_per_transcript)
            if all(f.moves != g.moves for g in chosen):
                chosen.append(f)
        transcripts = chosen
    key = CipherKey(
        n_letters=n_letters,
        rank=rank,
        lehner_r=r,
        basis=basis,
        blocks=tuple(int(p) for p in blocks),
        transcripts=tuple(transcripts),
        sigma=None if sigma is None else tuple(int(s) for s in sigma),
        evolution=evolution,
    )
    return validate_key(key)


@functools.lru_cache(maxsize=64)
def _base_row(basis: tuple[Word, ...], lehner_r: tuple[Fraction, ...]) -> tuple[RatMatrix, ...]:
    rep = Representation.lehner(lehner_r)
    return tuple(eval_word(rep, w) for w in basis)


@functools.lru_cache(maxsize=64)
def build_tables(key: CipherKey) -> tuple[tuple[RatMatrix, ...], ...]:
    """Row i is f_i(U'); both parties compute it independently from the key."""
    base = _base_row(key.basis, key.lehner_r)
    rows = []
    for i, f in enumerate(key.effective_transcripts(), 1):
        row = tuple(apply_transcript_mat(base, f))
        if len(set(row)) != len(row):
            raise CipherKeyError(f"table row {i} repeats a matrix; lookup would be ambiguous")
        rows.append(row)
    return tuple(rows)


@functools.lru_cache(maxsize=64)
def _lookup(key: CipherKey) -> tuple[dict[RatMatrix, int], ...]:
    return tuple({A: t for t, A in enumerate(row, 1)} for row in build_tables(key))


def _block_pattern(key: CipherKey) -> list[int]:
    pattern: list[int] = []
    for i, p in enumerate(key.blocks):
        pattern += [i] * p
    return pattern


@dataclass(frozen=True)
class Ciphertext:
    matrices: tuple[RatMatrix, ...]
    segments: int = 0
    sigma: tuple[int, ...] | None = None


def _to_indices(key: CipherKey, message: str | Sequence[int]) -> list[int]:
    if isinstance(message, str):
        alphabet = key.alphabet
        if alphabet is None:
            raise CipherKeyError("alphabets beyond 26 letters take index sequences, not strings")
        out = []
        for pos, ch in enumerate(message):
            t = alphabet.find(ch)
            if t < 0:
                raise CipherKeyError(f"letter {ch!r} at position {pos} is outside the alphabet {alphabet}")
            out.append(t + 1)
        return out
    out = [int(t) for t in message]
    for pos, t in enumerate(out):
        if not 1 <= t <= key.n_letters:
            raise CipherKeyError(f"letter index {t} at position {pos} is outside 1..{key.n_letters}")
    return out


def _segment_order(key: CipherKey, z: int) -> list[int] | None:
    if key.sigma is None:
        return None
    L = key.block_length
    if z != len(key.sigma) * L:
        raise CipherKeyError(
            f"with sigma over {len(key.sigma)} segments the message must have exactly "
            f"{len(key.sigma)} x {L} = {len(key.sigma) * L} letters, got {z}"
        )
    return [s - 1 for s in key.sigma]


def encrypt_indices(key: CipherKey, letters: Sequence[int]) -> Ciphertext:
    letters = _to_indices(key, letters)
    L = key.block_length
    order = _segment_order(key, len(letters))
    if order is not None:
        segs = [letters[k * L:(k + 1) * L] for k in range(len(order))]
        letters = [t for k in order for t in segs[k]]
    table = build_tables(key)
    pattern = _block_pattern(key)
    mats = tuple(table[pattern[p % L]][t - 1] for p, t in enumerate(letters))
    return Ciphertext(mats, -(-len(letters) // L), key.sigma)


def encrypt(key: CipherKey, message: str | Sequence[int]) -> Ciphertext:
    return encrypt_indices(key, _to_indices(key, message))


def decrypt_indices(key: CipherKey, c: Ciphertext) -> list[int]:
    if c.sigma != key.sigma:
        raise DecryptionError("ciphertext segment permutation does not match the key")
    L = key.block_length
    lookup = _lookup(key)
    pattern = _block_pattern(key)
    letters = []
    for p, A in enumerate(c.matrices):
        t = lookup[pattern[p % L]].get(A)
        if t is None:
            raise DecryptionError(f"matrix at position {p} (block {pattern[p % L] + 1}) is not in its table row", p)
        letters.append(t)
    order = _segment_order(key, len(letters))
    if order is not None:
        segs: list[list[int]] = [[] for _ in order]
        for k, src in enumerate(order):
            segs[src] = letters[k * L:(k + 1) * L]
        letters = [t for seg in segs for t in seg]
    return letters


def decrypt(key: CipherKey, c: Ciphertext) -> str:
    alphabet = key.alphabet
    if alphabet is None:
        raise CipherKeyError("alphabets beyond 26 letters decrypt to index sequences; use decrypt_indices")
    return "".join(alphabet[t - 1] for t in decrypt_indices(key, c))


def evolve_key(key: CipherKey, steps: int = 1) -> CipherKey:
    """Advance the message counter: every f_i becomes f_i followed by f^counter."""
    if key.evolution is None:
        raise CipherKeyError("no evolution transcript configured")
    if steps < 0:
        raise CipherKeyError("cannot evolve backwards")
    return replace(key, counter=key.counter + steps)


def rekey_basis(key: CipherKey, basis: Sequence[Word]) -> CipherKey:
    """Swap in a different subgroup basis, keeping everything else."""
    return validate_key(replace(key, basis=tuple(basis)))
