"""Canonical JSON documents.

Every document is a JSON object with a ``"schema"`` tag such as
``"nielsen-crypto/share/1"``. Serialization sorts keys, uses no whitespace
and ends with a newline, so equal documents are byte-identical. Numbers are
integers only: rationals travel as ``"p/q"`` strings, words as arrays of
signed 1-based generator indices, matrices as ``[["a","b"],["c","d"]]``.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .cipher import Ciphertext, CipherKey, validate_key
from .errors import FormatError
from .nielsen import Transcript, transcript_from_records, transcript_to_records
from .pubkey import PkCiphertext, PkPrivate, PkPublic, certify_automorphism
from .ratmat import RatMatrix, format_rational, matrix_from_rows, matrix_to_rows, parse_rational
from .sss import CombinatorialShare, LengthShare, NielsenShare, SecretFn
from .word import Endomorphism, Word

SCHEMA_PREFIX = "nielsen-crypto/"
VERSION = 1


def schema(kind: str) -> str:
    return f"{SCHEMA_PREFIX}{kind}/{VERSION}"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _no_floats(text: str):
    raise FormatError(f"floating-point number {text} in a canonical document")


def loads(text: str, kind: str | None = None) -> dict:
    try:
        doc = json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if kind is not None:
        expect_kind(doc, kind)
    return doc


def expect_kind(doc, kind: str) -> None:
    if not isinstance(doc, dict) or doc.get("schema") != schema(kind):
        got = doc.get("schema") if isinstance(doc, dict) else type(doc).__name__
        raise FormatError(f"expected a {schema(kind)} document, got {got!r}")


def write_atomic(path: str | os.PathLike, doc: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read(path: str | os.PathLike, kind: str | None = None) -> dict:
    return loads(Path(path).read_text(encoding="utf-8"), kind)


# --- scalar encodings ------------------------------------------------------

def enc_word(w: Word) -> list[int]:
    return list(w.letters)


def dec_word(x) -> Word:
    if not isinstance(x, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in x):
        raise FormatError(f"a word is an array of nonzero integers, got {x!r}")
    w = Word(x)
    if list(w.letters) != x:
        raise FormatError(f"word {x} is not freely reduced")
    return w


def enc_rational(x: Fraction) -> str:
    return format_rational(x)


def dec_rational(x) -> Fraction:
    if not isinstance(x, str):
        raise FormatError(f"rationals are strings, got {x!r}")
    value = parse_rational(x)
    if format_rational(value) != x:
        raise FormatError(f"rational {x!r} is not in canonical lowest terms")
    return value


def enc_matrix(A: RatMatrix) -> list[list[str]]:
    return matrix_to_rows(A)


def dec_matrix(x) -> RatMatrix:
    A = matrix_from_rows(x)
    for row in x:
        for v in row:
            dec_rational(v)
    return A


def enc_transcript(t: Transcript) -> list[dict]:
    return transcript_to_records(t)


def dec_transcript(x, declared_regular: bool = True) -> Transcript:
    """Accept a bare array of move records or a transcript document."""
    if isinstance(x, dict):
        expect_kind(x, "transcript")
        x = x.get("moves")
    if not isinstance(x, list):
        raise FormatError("a transcript is an array of move records")
    return transcript_from_records(x, declared_regular)


def transcript_doc(t: Transcript) -> dict:
    return {"schema": schema("transcript"), "moves": enc_transcript(t)}


def words_doc(words, rank: int | None = None) -> dict:
    doc = {"schema": schema("tuple"), "words": [enc_word(w) for w in words]}
    if rank is not None:
        doc["rank"] = rank
    return doc


def dec_words_doc(doc) -> tuple[list[Word], int | None]:
    expect_kind(doc, "tuple")
    words = [dec_word(w) for w in _field(doc, "words", list)]
    rank = doc.get("rank")
    if rank is not None:
        for w in words:
            w.check_rank(rank)
    return words, rank


def _field(doc: dict, name: str, typ):
    if name not in doc:
        raise FormatError(f"missing field {name!r}")
    v = doc[name]
    if typ is int and isinstance(v, bool) or not isinstance(v, typ):
        raise FormatError(f"field {name!r} should be {typ.__name__}, got {v!r}")
    return v


def _items(doc: dict, name: str, decode) -> dict[int, object]:
    out: dict[int, object] = {}
    for rec in _field(doc, name, list):
        if not isinstance(rec, dict):
            raise FormatError(f"{name} entries are objects")
        j = _field(rec, "j", int)
        if j in out:
            raise FormatError(f"slot {j} appears twice")
        out[j] = decode(rec.get("payload"))
    return out


def _enc_items(items: dict, encode) -> list[dict]:
    return [{"j": j, "payload": encode(items[j])} for j in sorted(items)]


def _dec_natural(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise FormatError(f"expected a positive integer, got {x!r}")
    return x


# --- shares ----------------------------------------------------------------

def share_doc(share) -> dict:
    doc = {"schema": schema("share"), "n": share.n, "t": share.t, "participant": share.participant}
    if isinstance(share, CombinatorialShare):
        doc.update(scheme="comb", items=_enc_items(share.items, int))
        if share.factor is not None:
            doc["factor"] = enc_rational(share.factor)
    elif isinstance(share, NielsenShare):
        doc.update(
            scheme="nielsen",
            items=_enc_items(share.words, enc_word),
            matrix_items=_enc_items(share.matrices, enc_matrix),
            pairing=share.pairing,
            secret_fn=share.secret_fn.value,
        )
        if share.factor is not None:
            doc["factor"] = enc_rational(share.factor)
    elif isinstance(share, LengthShare):
        doc.update(scheme="length", rank=share.rank, items=_enc_items(share.words, enc_word))
    else:
        raise TypeError(f"not a share: {share!r}")
    return doc


def dec_share(doc):
    expect_kind(doc, "share")
    n, t, i = (_field(doc, k, int) for k in ("n", "t", "participant"))
    scheme_name = _field(doc, "scheme", str)
    factor = dec_rational(doc["factor"]) if "factor" in doc else None
    if scheme_name == "comb":
        return CombinatorialShare(i, n, t, _items(doc, "items", _dec_natural), factor)
    if scheme_name == "nielsen":
        return NielsenShare(
            participant=i,
            n=n,
            t=t,
            words=_items(doc, "items", dec_word),
            matrices=_items(doc, "matrix_items", dec_matrix),
            pairing=_field(doc, "pairing", int),
            secret_fn=SecretFn(_field(doc, "secret_fn", str)),
            factor=factor,
        )
    if scheme_name == "length":
        return LengthShare(i, n, t, _field(doc, "rank", int), _items(doc, "items", dec_word))
    raise FormatError(f"unknown scheme {scheme_name!r}")


# --- cipher ----------------------------------------------------------------

def cipher_key_doc(key: CipherKey) -> dict:
    doc = {
        "schema": schema("cipher-key"),
        "N": key.n_letters,
        "q": key.rank,
        "lehner_r": [enc_rational(r) for r in key.lehner_r],
        "basis_words": [enc_word(w) for w in key.basis],
        "P": list(key.blocks),
        "transcripts": [enc_transcript(f) for f in key.transcripts],
        "counter": key.counter,
    }
    if key.sigma is not None:
        doc["sigma"] = list(key.sigma)
    if key.evolution is not None:
        doc["evolution"] = enc_transcript(key.evolution)
    return doc


def dec_cipher_key(doc) -> CipherKey:
    expect_kind(doc, "cipher-key")
    key = CipherKey(
        n_letters=_field(doc, "N", int),
        rank=_field(doc, "q", int),
        lehner_r=tuple(dec_rational(r) for r in _field(doc, "lehner_r", list)),
        basis=tuple(dec_word(w) for w in _field(doc, "basis_words", list)),
        blocks=tuple(_dec_natural(p) for p in _field(doc, "P", list)),
        transcripts=tuple(dec_transcript(f) for f in _field(doc, "transcripts", list)),
        sigma=tuple(_field(doc, "sigma", list)) if "sigma" in doc else None,
        evolution=dec_transcript(doc["evolution"]) if "evolution" in doc else None,
        counter=doc.get("counter", 0),
    )
    return validate_key(key)


def ciphertext_doc(c: Ciphertext) -> dict:
    doc = {
        "schema": schema("ciphertext"),
        "segments": c.segments,
        "matrices": [enc_matrix(A) for A in c.matrices],
    }
    if c.sigma is not None:
        doc["sigma_id"] = list(c.sigma)
    return doc


def dec_ciphertext(doc) -> Ciphertext:
    expect_kind(doc, "ciphertext")
    sigma = tuple(_field(doc, "sigma_id", list)) if "sigma_id" in doc else None
    return Ciphertext(
        tuple(dec_matrix(A) for A in _field(doc, "matrices", list)),
        _field(doc, "segments", int),
        sigma,
    )


# --- public key ------------------------------------------------------------

def pk_public_doc(pub: PkPublic) -> dict:
    doc = {
        "schema": schema("pk-public"),
        "q": pub.rank,
        "a": enc_word(pub.a),
        "f_images": [enc_word(w) for w in pub.f.images],
        "c": enc_word(pub.c),
        "mode": pub.mode,
    }
    if pub.lehner_r is not None:
        doc["lehner_r"] = [enc_rational(r) for r in pub.lehner_r]
    return doc


def dec_pk_public(doc) -> PkPublic:
    expect_kind(doc, "pk-public")
    q = _field(doc, "q", int)
    f = Endomorphism([dec_word(w) for w in _field(doc, "f_images", list)])
    if f.rank != q:
        raise FormatError(f"f_images has {f.rank} entries for rank {q}")
    certify_automorphism(f)
    mode = _field(doc, "mode", str)
    if mode not in ("word", "matrix"):
        raise FormatError(f"unknown mode {mode!r}")
    r = tuple(dec_rational(x) for x in doc["lehner_r"]) if "lehner_r" in doc else None
    if mode == "matrix" and r is None:
        raise FormatError("matrix-mode public keys need lehner_r")
    return PkPublic(
        q, dec_word(_field(doc, "a", list)).check_rank(q), f, dec_word(_field(doc, "c", list)).check_rank(q), mode, r
    )


def pk_private_doc(priv: PkPrivate) -> dict:
    return {"schema": schema("pk-private"), "n": priv.n}


def dec_pk_private(doc) -> PkPrivate:
    expect_kind(doc, "pk-private")
    return PkPrivate(_field(doc, "n", int))


def pk_ciphertext_doc(ct: PkCiphertext) -> dict:
    c1 = enc_word(ct.c1) if isinstance(ct.c1, Word) else enc_matrix(ct.c1)
    return {"schema": schema("pk-ciphertext"), "c1": c1, "c2": enc_word(ct.c2)}


def dec_pk_ciphertext(doc) -> PkCiphertext:
    expect_kind(doc, "pk-ciphertext")
    raw = _field(doc, "c1", list)
    c1 = dec_matrix(raw) if raw and isinstance(raw[0], list) else dec_word(raw)
    return PkCiphertext(c1, dec_word(_field(doc, "c2", list)))


def word_doc(w: Word) -> dict:
    return {"schema": schema("word"), "word": enc_word(w)}


def dec_word_doc(doc) -> Word:
    expect_kind(doc, "word")
    return dec_word(_field(doc, "word", list))
