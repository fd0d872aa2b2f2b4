"""Threshold secret sharing on top of :mod:`nielsen_crypto.shares`.

Three schemes:

* combinatorial: the slots carry positive integers a_j and the secret is
  the sum of their reciprocals;
* nielsen: the slots carry the images U of the basis x_1..x_m under a
  secret regular Nielsen transcript, plus the simultaneous images N of
  Lehner matrices; pooled shares are Nielsen reduced back to the basis and
  the same moves, replayed on N, expose the original matrices;
* length: the slots carry a scrambled Nielsen-reduced tuple, and the secret
  depends only on the lengths of any Nielsen-reduced form.
"""

from __future__ import annotations

import enum
import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BasisCertificateError, SchemeError
from .nielsen import Transcript, apply_transcript, is_nielsen_reduced, nielsen_reduce
from .ratmat import (
    RatMatrix,
    Representation,
    apply_transcript_mat,
    commutator,
    mat_inv,
    mat_mul,
    trace,
)
from .shares import build_distribution, reconstruct, split
from .word import Word, identity_images


class SecretFn(str, enum.Enum):
    SUM_INV_ABS_TRACE = "sum-inv-abs-trace"
    SUM_INV = "sum-inv"
    PROD_ABS_TRACE = "prod-abs-trace"
    SUM_ABS_TRACE = "sum-abs-trace"
    PROD_TRACE_SQ = "prod-trace-sq"
    SUM_TRACE_SQ = "sum-trace-sq"
    PROD_COMMUTATOR_TRACE = "prod-commutator-trace"
    SUM_TRACE_OF_SQUARES = "sum-trace-of-squares"
    SUM_INV_LENGTH = "sum-inv-length"


MATRIX_FNS = frozenset(
    {
        SecretFn.SUM_INV_ABS_TRACE,
        SecretFn.PROD_ABS_TRACE,
        SecretFn.SUM_ABS_TRACE,
        SecretFn.PROD_TRACE_SQ,
        SecretFn.SUM_TRACE_SQ,
        SecretFn.PROD_COMMUTATOR_TRACE,
        SecretFn.SUM_TRACE_OF_SQUARES,
    }
)


def _reciprocal_sum(values: Sequence[Fraction | int], what: str) -> Fraction:
    total = Fraction(0)
    for v in values:
        if v == 0:
            raise SchemeError(f"secret undefined: a {what} is zero")
        total += Fraction(1, 1) / v
    return total


def evaluate_secret(fn: SecretFn | str, values: Sequence) -> Fraction:
    """Evaluate a secret-derivation function.

    ``values`` are matrices for the trace-based functions, positive integers
    for ``sum-inv`` and words for ``sum-inv-length``. Only
    ``prod-commutator-trace`` depends on the order of ``values``.
    """
    fn = SecretFn(fn)
    if fn is SecretFn.SUM_INV:
        if any(v <= 0 for v in values):
            raise SchemeError("sum-inv needs positive values")
        return _reciprocal_sum(values, "value")
    if fn is SecretFn.SUM_INV_LENGTH:
        return _reciprocal_sum([len(w) for w in values], "word length")

    traces = [trace(M) for M in values]
    if fn is SecretFn.SUM_INV_ABS_TRACE:
        return _reciprocal_sum([abs(x) for x in traces], "trace")
    if fn is SecretFn.PROD_ABS_TRACE:
        return math.prod((abs(x) for x in traces), start=Fraction(1))
    if fn is SecretFn.SUM_ABS_TRACE:
        return sum((abs(x) for x in traces), Fraction(0))
    if fn is SecretFn.PROD_TRACE_SQ:
        return math.prod((x * x for x in traces), start=Fraction(1))
    if fn is SecretFn.SUM_TRACE_SQ:
        return sum((x * x for x in traces), Fraction(0))
    if fn is SecretFn.SUM_TRACE_OF_SQUARES:
        return sum((trace(mat_mul(M, M)) for M in values), Fraction(0))
    # PROD_COMMUTATOR_TRACE
    if len(values) % 2:
        raise SchemeError("prod-commutator-trace needs an even number of matrices")
    return math.prod(
        (trace(commutator(values[2 * i], values[2 * i + 1])) for i in range(len(values) // 2)),
        start=Fraction(1),
    )


@dataclass(frozen=True)
class CombinatorialShare:
    participant: int
    n: int
    t: int
    items: dict[int, int]
    factor: Fraction | None = None


@dataclass(frozen=True)
class NielsenShare:
    """``(R_i, S_j)``: word slots of row i and matrix slots of row j."""

    participant: int
    n: int
    t: int
    words: dict[int, Word]
    matrices: dict[int, RatMatrix]
    pairing: int
    secret_fn: SecretFn = SecretFn.SUM_INV_ABS_TRACE
    factor: Fraction | None = None


@dataclass(frozen=True)
class LengthShare:
    participant: int
    n: int
    t: int
    rank: int
    words: dict[int, Word]


@dataclass(frozen=True)
class DealerPackage3:
    n: int
    t: int
    m: int
    lehner_params: tuple[Fraction, ...]
    transcript: Transcript
    generators: tuple[RatMatrix, ...]
    u: tuple[Word, ...]
    big_n: tuple[RatMatrix, ...]
    secret_fn: SecretFn
    special_secret_factor: Fraction | None = None


@dataclass(frozen=True)
class Deal:
    shares: list
    secret: Fraction
    package: object = field(default=None, repr=False)


def _special_factor(secret: Fraction, special) -> Fraction | None:
    if special is None:
        return None
    if secret == 0:
        raise SchemeError("a special secret needs a nonzero base secret")
    return Fraction(special) / secret


def _check_same_scheme(shares: Sequence) -> tuple[int, int]:
    if not shares:
        raise SchemeError("no shares supplied")
    n, t = shares[0].n, shares[0].t
    for s in shares:
        if (s.n, s.t) != (n, t):
            raise SchemeError("shares come from different (n, t) schemes")
    return n, t


def _common_factor(shares: Sequence) -> Fraction | None:
    factors = {s.factor for s in shares}
    if len(factors) > 1:
        raise SchemeError("shares disagree on the special-secret factor")
    return factors.pop()


# --- combinatorial ---------------------------------------------------------

def deal_combinatorial(n: int, t: int, values: Sequence[int], special=None) -> Deal:
    dist = build_distribution(n, t)
    values = [int(v) for v in values]
    if len(values) != dist.m:
        raise SchemeError(f"(n, t) = ({n}, {t}) needs C({n}, {t - 1}) = {dist.m} values, got {len(values)}")
    if any(v < 1 for v in values):
        raise SchemeError("values must be positive integers")
    secret = evaluate_secret(SecretFn.SUM_INV, values)
    factor = _special_factor(secret, special)
    shares = [
        CombinatorialShare(s.participant, n, t, dict(s.items), factor) for s in split(dist, values)
    ]
    return Deal(shares, secret if factor is None else secret * factor, dist)


def reconstruct_combinatorial(shares: Sequence[CombinatorialShare]) -> Fraction:
    n, t = _check_same_scheme(shares)
    m = math.comb(n, t - 1)
    pooled = reconstruct(m, [(s.participant, s.items) for s in shares]).ordered()
    secret = evaluate_secret(SecretFn.SUM_INV, pooled)
    factor = _common_factor(shares)
    return secret if factor is None else secret * factor


# --- simultaneous Nielsen transformation -----------------------------------

def _pairing(i: int, n: int) -> int:
    return i % n + 1


def deal_nielsen(
    n: int,
    t: int,
    r: Sequence,
    transcript: Transcript,
    secret_fn: SecretFn | str = SecretFn.SUM_INV_ABS_TRACE,
    special=None,
) -> Deal:
    secret_fn = SecretFn(secret_fn)
    if secret_fn not in MATRIX_FNS:
        raise SchemeError(f"{secret_fn.value} is not a matrix secret function")
    dist = build_distribution(n, t)
    m = dist.m
    rep = Representation.lehner(r)
    if rep.rank != m:
        raise SchemeError(f"need m = C({n}, {t - 1}) = {m} Lehner parameters, got {rep.rank}")
    if not transcript.is_regular:
        raise SchemeError("the dealer transcript must be regular")
    if transcript.max_index() > m:
        raise SchemeError(f"transcript addresses position {transcript.max_index()} of an {m}-tuple")
    if secret_fn is SecretFn.PROD_COMMUTATOR_TRACE and m % 2:
        raise SchemeError("prod-commutator-trace needs an even m")
    if not transcript.moves:
        warnings.warn("empty dealer transcript: shares expose the generators directly", stacklevel=2)

    M = list(rep.images)
    U = apply_transcript(identity_images(m), transcript)
    N = apply_transcript_mat(M, transcript)
    secret = evaluate_secret(secret_fn, M)
    factor = _special_factor(secret, special)

    word_shares = split(dist, U)
    mat_shares = split(dist, N)
    shares = [
        NielsenShare(
            participant=i,
            n=n,
            t=t,
            words=dict(word_shares[i - 1].items),
            matrices=dict(mat_shares[_pairing(i, n) - 1].items),
            pairing=_pairing(i, n),
            secret_fn=secret_fn,
            factor=factor,
        )
        for i in range(1, n + 1)
    ]
    package = DealerPackage3(
        n, t, m, tuple(rep.params), transcript, tuple(M), tuple(U), tuple(N), secret_fn, factor
    )
    return Deal(shares, secret if factor is None else secret * factor, package)


@dataclass(frozen=True)
class NielsenRecovery:
    reduced_words: tuple[Word, ...]
    reduced_matrices: tuple[RatMatrix, ...]
    generators: tuple[RatMatrix, ...]
    """Dealer's generators in their original order, read off the reduced words."""


def recover_generators(shares: Sequence[NielsenShare]) -> NielsenRecovery:
    n, t = _check_same_scheme(shares)
    m = math.comb(n, t - 1)
    U = reconstruct(m, [(s.participant, s.words) for s in shares]).ordered()
    N = reconstruct(m, [(s.participant, s.matrices) for s in shares]).ordered()
    result = nielsen_reduce(U)
    mats = apply_transcript_mat(N, result.transcript)

    generators: list[RatMatrix | None] = [None] * m
    for w, A in zip(result.reduced_tuple, mats):
        if len(w) != 1 or generators[abs(w.letters[0]) - 1] is not None:
            raise BasisCertificateError("pooled words do not reduce to the free basis")
        k = w.letters[0]
        generators[abs(k) - 1] = A if k > 0 else mat_inv(A)
    return NielsenRecovery(result.reduced_tuple, tuple(mats), tuple(generators))


def reconstruct_nielsen(shares: Sequence[NielsenShare], secret_fn: SecretFn | str | None = None) -> Fraction:
    fns = {s.secret_fn for s in shares}
    if secret_fn is None:
        if len(fns) != 1:
            raise SchemeError("shares disagree on the secret function")
        secret_fn = fns.pop()
    recovered = recover_generators(shares)
    secret = evaluate_secret(secret_fn, recovered.generators)
    factor = _common_factor(shares)
    return secret if factor is None else secret * factor


# --- length-based variant --------------------------------------------------

def deal_length(n: int, t: int, rank: int, u: Sequence[Word], transcript: Transcript) -> Deal:
    dist = build_distribution(n, t)
    u = list(u)
    if len(u) != dist.m:
        raise SchemeError(f"need m = C({n}, {t - 1}) = {dist.m} words, got {len(u)}")
    for w in u:
        w.check_rank(rank)
        if not w:
            raise SchemeError("the dealer tuple contains the trivial word")
    for i in range(len(u)):
        for j in range(i):
            if u[i] == u[j] or u[i] == u[j].inverse():
                raise SchemeError(f"u_{j + 1} and u_{i + 1} agree up to inversion; the tuple is not a basis")
    check = is_nielsen_reduced(u)
    if not check:
        raise SchemeError(f"dealer tuple is not Nielsen reduced ({check.condition} fails at {check.triple})")
    if not transcript.is_regular:
        raise SchemeError("the dealer transcript must be regular")
    if transcript.max_index() > dist.m:
        raise SchemeError(f"transcript addresses position {transcript.max_index()} of an {dist.m}-tuple")
    v = apply_transcript(u, transcript)
    shares = [LengthShare(s.participant, n, t, rank, dict(s.items)) for s in split(dist, v)]
    return Deal(shares, evaluate_secret(SecretFn.SUM_INV_LENGTH, u), tuple(v))


def reduce_pooled_length(shares: Sequence[LengthShare]) -> tuple[Word, ...]:
    n, t = _check_same_scheme(shares)
    m = math.comb(n, t - 1)
    v = reconstruct(m, [(s.participant, s.words) for s in shares]).ordered()
    return nielsen_reduce(v).reduced_tuple


def reconstruct_length(shares: Sequence[LengthShare]) -> Fraction:
    return evaluate_secret(SecretFn.SUM_INV_LENGTH, reduce_pooled_length(shares))
