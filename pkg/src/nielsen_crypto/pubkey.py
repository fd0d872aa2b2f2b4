"""ElGamal-style public-key encryption with powers of a free-group automorphism.

Public data: rank q, a word ``a`` and an automorphism ``f``; Alice also
publishes ``c = f^n(a)`` and keeps ``n``. Bob sends
``(m * f^t(c), f^t(a))`` and Alice strips the mask with ``f^n`` of the
second component, because ``f^t`` and ``f^n`` commute.

In matrix mode the message is a single letter ``x_i^{+-1}`` and the first
component is sent as a matrix through a Lehner representation.
"""

from __future__ import annotations

import functools
import warnings
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import BasisCertificateError, DecryptionError, NielsenCryptoError
from .nielsen import Transcript, apply_transcript, nielsen_reduce
from .ratmat import (
    RatMatrix,
    Representation,
    default_lehner_params,
    eval_word,
    mat_inv,
    mat_mul,
    parse_rational,
)
from .word import Endomorphism, Word, apply_endo, endo_power, identity_images, mul

DEFAULT_EXPONENT_CAP = 64
DEFAULT_ORDER_PROBE = 12


class DegenerateKeyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PkPublic:
    rank: int
    a: Word
    f: Endomorphism
    c: Word
    mode: str = "word"
    lehner_r: tuple[Fraction, ...] | None = None

    def representation(self) -> Representation:
        if self.lehner_r is None:
            raise NielsenCryptoError("word-mode keys carry no representation")
        return Representation.lehner(self.lehner_r)


@dataclass(frozen=True)
class PkPrivate:
    n: int


@dataclass(frozen=True)
class PkCiphertext:
    c1: Word | RatMatrix
    c2: Word


def endo_from_transcript(rank: int, transcript: Transcript) -> Endomorphism:
    """Automorphism sending the basis tuple to its image under ``transcript``."""
    if not transcript.is_regular:
        raise BasisCertificateError("only regular transcripts define automorphisms")
    return Endomorphism(apply_transcript(identity_images(rank), transcript))


@functools.lru_cache(maxsize=1024)
def certify_automorphism(f: Endomorphism) -> None:
    """Check that the images of f form a free basis of F.

    Nielsen reduction of a basis must end at single letters covering every
    generator exactly once.
    """
    images = f.images
    if any(not w for w in images):
        raise BasisCertificateError("an image is trivial, so f is not an automorphism")
    reduced = nielsen_reduce(images).reduced_tuple
    gens = sorted(abs(w.letters[0]) for w in reduced if len(w) == 1)
    if len(gens) != f.rank or gens != list(range(1, f.rank + 1)):
        raise BasisCertificateError(f"images {f!r} do not reduce to a basis")


def _check_exponent(name: str, value: int, cap: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise NielsenCryptoError(f"{name} must be a non-negative integer, got {value!r}")
    if value > cap:
        raise NielsenCryptoError(f"{name} = {value} exceeds the exponent cap {cap}")


def keygen(
    rank: int,
    a: Word,
    f: Endomorphism,
    n: int,
    *,
    matrix: bool = False,
    lehner_r: Sequence | None = None,
    exponent_cap: int = DEFAULT_EXPONENT_CAP,
    order_probe: int = DEFAULT_ORDER_PROBE,
) -> tuple[PkPublic, PkPrivate]:
    if f.rank != rank:
        raise NielsenCryptoError(f"automorphism has rank {f.rank}, expected {rank}")
    a.check_rank(rank)
    if not a:
        raise NielsenCryptoError("the public base word must be nontrivial")
    _check_exponent("n", n, exponent_cap)
    certify_automorphism(f)
    for k in range(1, order_probe + 1):
        if endo_power(f, k).is_identity():
            warnings.warn(f"f has order {k}; the key is degenerate", DegenerateKeyWarning, stacklevel=2)
            break
    if n == 0:
        warnings.warn("n = 0 publishes c = a", DegenerateKeyWarning, stacklevel=2)

    r = None
    if matrix:
        r = tuple(parse_rational(x) for x in lehner_r) if lehner_r is not None else tuple(default_lehner_params(rank))
        candidates = _candidates(Representation.lehner(r))
        if len(set(candidates)) != len(candidates):
            raise NielsenCryptoError("matrix candidates for the letters are not distinct")
    pub = PkPublic(rank, a, f, apply_endo(endo_power(f, n), a), "matrix" if matrix else "word", r)
    return pub, PkPrivate(n)


def _candidates(rep: Representation) -> list[RatMatrix]:
    out = []
    for M in rep.images:
        out += [M, mat_inv(M)]
    return out


def encrypt(pub: PkPublic, m: Word, t: int, exponent_cap: int = DEFAULT_EXPONENT_CAP) -> PkCiphertext:
    _check_exponent("t", t, exponent_cap)
    m.check_rank(pub.rank)
    ft = endo_power(pub.f, t)
    mask = apply_endo(ft, pub.c)
    c2 = apply_endo(ft, pub.a)
    if pub.mode == "word":
        return PkCiphertext(mul(m, mask), c2)
    if len(m) != 1:
        raise NielsenCryptoError(f"matrix mode sends a single letter, got a word of length {len(m)}")
    rep = pub.representation()
    return PkCiphertext(mat_mul(eval_word(rep, m), eval_word(rep, mask)), c2)


def decrypt(pub: PkPublic, priv: PkPrivate, ct: PkCiphertext) -> Word:
    ct.c2.check_rank(pub.rank)
    unmask = apply_endo(endo_power(pub.f, priv.n), ct.c2)
    if pub.mode == "word":
        if not isinstance(ct.c1, Word):
            raise DecryptionError("word-mode ciphertext must carry a word")
        return mul(ct.c1, unmask.inverse())
    if not isinstance(ct.c1, RatMatrix):
        raise DecryptionError("matrix-mode ciphertext must carry a matrix")
    rep = pub.representation()
    G = mat_mul(ct.c1, mat_inv(eval_word(rep, unmask)))
    for i, M in enumerate(rep.images, 1):
        if G == M:
            return Word.generator(i)
        if G == mat_inv(M):
            return Word.generator(i, -1)
    raise DecryptionError("recovered matrix is not the image of a letter")
