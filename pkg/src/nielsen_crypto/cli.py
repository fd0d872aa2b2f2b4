"""Command-line front end: ``nielsen-crypto {sss,cipher,pk,group} ...``.

All files read and written are canonical documents (see :mod:`.codec`).
Failures exit with status 2 and print ``{"error": kind, "message": ...}``
on stderr; an incomplete set of shares exits with status 3 and prints the
missing slots.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import cipher, codec, pubkey, sss
from .errors import CoverageError, FormatError, NielsenCryptoError
from .nielsen import Transcript, is_nielsen_reduced, nielsen_reduce
from .ratmat import default_lehner_params, format_rational, parse_rational
from .shares import build_distribution
from .word import Endomorphism, Word


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise FormatError(f"expected comma-separated integers, got {text!r}") from exc


def _csv_rationals(text: str):
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def _word_arg(text: str) -> Word:
    return Word(_csv_ints(text))


def _emit(doc: dict, out: str | None) -> None:
    if out:
        codec.write_atomic(out, doc)
    else:
        sys.stdout.write(codec.dumps(doc))


# --- sss -------------------------------------------------------------------

def _read_transcript(args, m: int):
    if args.transcript:
        return codec.dec_transcript(json.loads(Path(args.transcript).read_text(encoding="utf-8")))
    rng = random.Random(args.seed)
    return cipher.random_transcript(rng, m, args.moves) if m >= 2 else Transcript(())


def cmd_sss_deal(args) -> int:
    if args.scheme == "comb":
        if not args.values:
            raise FormatError("--values is required for the comb scheme")
        deal = sss.deal_combinatorial(args.n, args.t, _csv_ints(args.values), args.special and parse_rational(args.special))
        record = {"values": _csv_ints(args.values)}
    elif args.scheme == "nielsen":
        m = build_distribution(args.n, args.t).m
        r = _csv_rationals(args.r) if args.r else default_lehner_params(m)
        transcript = _read_transcript(args, m)
        deal = sss.deal_nielsen(
            args.n, args.t, r, transcript, args.secret_fn, args.special and parse_rational(args.special)
        )
        record = {
            "lehner_r": [format_rational(x) for x in deal.package.lehner_params],
            "transcript": codec.enc_transcript(transcript),
            "secret_fn": deal.package.secret_fn.value,
        }
    else:
        if not args.tuple:
            raise FormatError("--tuple is required for the length scheme")
        words, rank = codec.dec_words_doc(codec.read(args.tuple))
        rank = args.rank or rank or max((w.max_generator() for w in words), default=1)
        transcript = _read_transcript(args, len(words))
        deal = sss.deal_length(args.n, args.t, rank, words, transcript)
        record = {
            "rank": rank,
            "u": [codec.enc_word(w) for w in words],
            "transcript": codec.enc_transcript(transcript),
        }
    out = Path(args.out_dir)
    for share in deal.shares:
        codec.write_atomic(out / f"share-{share.participant}.json", codec.share_doc(share))
    record.update(
        schema=codec.schema("dealer"), scheme=args.scheme, n=args.n, t=args.t, secret=format_rational(deal.secret)
    )
    codec.write_atomic(out / "dealer.json", record)
    print(f"wrote {len(deal.shares)} shares and dealer.json to {out}")
    return 0


def cmd_sss_reconstruct(args) -> int:
    shares = [codec.dec_share(codec.read(p)) for p in args.shares]
    kinds = {type(s) for s in shares}
    if len(kinds) != 1:
        raise FormatError("share files mix schemes")
    kind = kinds.pop()
    expected = {"comb": sss.CombinatorialShare, "nielsen": sss.NielsenShare, "length": sss.LengthShare}
    if args.scheme and expected[args.scheme] is not kind:
        raise FormatError(f"share files are not {args.scheme} shares")
    if kind is sss.CombinatorialShare:
        secret = sss.reconstruct_combinatorial(shares)
    elif kind is sss.NielsenShare:
        secret = sss.reconstruct_nielsen(shares, args.secret_fn)
    else:
        secret = sss.reconstruct_length(shares)
    print(format_rational(secret))
    return 0


# --- cipher ----------------------------------------------------------------

def cmd_cipher_keygen(args) -> int:
    evolution = None
    if args.evolution:
        evolution = codec.dec_transcript(json.loads(Path(args.evolution).read_text(encoding="utf-8")))
    elif args.evolution_moves:
        rng = random.Random(None if args.seed is None else args.seed + 1)
        evolution = cipher.random_transcript(rng, args.N, args.evolution_moves)
    key = cipher.keygen(
        args.N,
        args.q,
        _csv_ints(args.P),
        seed=args.seed,
        lehner_r=_csv_rationals(args.r) if args.r else None,
        sigma=_csv_ints(args.sigma) if args.sigma else None,
        evolution=evolution,
        moves_per_transcript=args.moves,
    )
    _emit(codec.cipher_key_doc(key), args.out)
    return 0


def cmd_cipher_encrypt(args) -> int:
    key = codec.dec_cipher_key(codec.read(args.key))
    message = Path(args.input).read_text(encoding="utf-8").rstrip("\n")
    _emit(codec.ciphertext_doc(cipher.encrypt(key, message)), args.out)
    return 0


def cmd_cipher_decrypt(args) -> int:
    key = codec.dec_cipher_key(codec.read(args.key))
    text = cipher.decrypt(key, codec.dec_ciphertext(codec.read(args.input))) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_cipher_evolve(args) -> int:
    key = codec.dec_cipher_key(codec.read(args.key))
    _emit(codec.cipher_key_doc(cipher.evolve_key(key, args.steps)), args.out)
    return 0


# --- public key ------------------------------------------------------------

def _exponent(value, seed, cap: int) -> int:
    if value is not None:
        return value
    return random.Random(seed).randint(1, cap)


def cmd_pk_keygen(args) -> int:
    if args.f_images:
        f = Endomorphism([_word_arg(part) for part in args.f_images.split(";")])
    elif args.f_transcript:
        t = codec.dec_transcript(json.loads(Path(args.f_transcript).read_text(encoding="utf-8")))
        f = pubkey.endo_from_transcript(args.q, t)
    else:
        raise FormatError("give the automorphism with --f-images or --f-transcript")
    n = _exponent(args.n, args.seed, args.max_exponent)
    pub, priv = pubkey.keygen(
        args.q,
        _word_arg(args.a),
        f,
        n,
        matrix=args.matrix,
        lehner_r=_csv_rationals(args.r) if args.r else None,
    )
    out = Path(args.out_dir)
    codec.write_atomic(out / "public.json", codec.pk_public_doc(pub))
    codec.write_atomic(out / "private.json", codec.pk_private_doc(priv))
    print(f"wrote public.json and private.json to {out}")
    return 0


def cmd_pk_encrypt(args) -> int:
    pub = codec.dec_pk_public(codec.read(args.pub))
    if args.message is not None:
        m = _word_arg(args.message)
    elif args.input:
        m = codec.dec_word_doc(codec.read(args.input))
    else:
        raise FormatError("give the message with --message or --in")
    t = _exponent(args.t, args.seed, args.max_exponent)
    _emit(codec.pk_ciphertext_doc(pubkey.encrypt(pub, m, t)), args.out)
    return 0


def cmd_pk_decrypt(args) -> int:
    pub = codec.dec_pk_public(codec.read(args.pub))
    priv = codec.dec_pk_private(codec.read(args.priv))
    m = pubkey.decrypt(pub, priv, codec.dec_pk_ciphertext(codec.read(args.input)))
    _emit(codec.word_doc(m), args.out)
    return 0


# --- group -----------------------------------------------------------------

def cmd_group_reduce(args) -> int:
    words, rank = codec.dec_words_doc(codec.read(args.input))
    result = nielsen_reduce(words)
    doc = {
        "schema": codec.schema("reduction"),
        "words": [codec.enc_word(w) for w in result.reduced_tuple],
        "transcript": codec.enc_transcript(result.transcript),
    }
    _emit(doc, args.out)
    return 0


def cmd_group_verify(args) -> int:
    words, _ = codec.dec_words_doc(codec.read(args.input))
    check = is_nielsen_reduced(words)
    doc = {"schema": codec.schema("reduced-check"), "reduced": check.reduced}
    if not check.reduced:
        doc["condition"] = check.condition
        doc["triple"] = [{"i": i, "sign": s} for i, s in check.triple]
    _emit(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nielsen-crypto", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="area", required=True)

    s = top.add_parser("sss", help="secret sharing").add_subparsers(dest="cmd", required=True)
    d = s.add_parser("deal")
    d.add_argument("--scheme", choices=["comb", "nielsen", "length"], required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--values", help="comb: comma-separated positive integers a_1..a_m")
    d.add_argument("--special", help="comb/nielsen: target secret; shares carry the factor")
    d.add_argument("--r", help="nielsen: Lehner parameters, e.g. 7/2,15/2,11")
    d.add_argument("--secret-fn", default=sss.SecretFn.SUM_INV_ABS_TRACE.value,
                   choices=[f.value for f in sss.MATRIX_FNS])
    d.add_argument("--transcript", help="dealer transcript file (move records)")
    d.add_argument("--seed", type=int, help="draw a random transcript when --transcript is absent")
    d.add_argument("--moves", type=int, default=12)
    d.add_argument("--tuple", help="length: tuple document with the Nielsen-reduced U")
    d.add_argument("--rank", type=int)
    d.add_argument("--out-dir", required=True)
    d.set_defaults(func=cmd_sss_deal)

    r = s.add_parser("reconstruct")
    r.add_argument("--scheme", choices=["comb", "nielsen", "length"])
    r.add_argument("--secret-fn", choices=[f.value for f in sss.MATRIX_FNS])
    r.add_argument("shares", nargs="+")
    r.set_defaults(func=cmd_sss_reconstruct)

    c = top.add_parser("cipher", help="symmetric cipher").add_subparsers(dest="cmd", required=True)
    k = c.add_parser("keygen")
    k.add_argument("--N", type=int, default=cipher.DEFAULT_ALPHABET_SIZE)
    k.add_argument("--q", type=int, default=2)
    k.add_argument("--P", default="1,2,3,4")
    k.add_argument("--r")
    k.add_argument("--seed", type=int)
    k.add_argument("--moves", type=int, default=4)
    k.add_argument("--sigma")
    k.add_argument("--evolution")
    k.add_argument("--evolution-moves", type=int)
    k.add_argument("--out")
    k.set_defaults(func=cmd_cipher_keygen)
    for name, func in (("encrypt", cmd_cipher_encrypt), ("decrypt", cmd_cipher_decrypt)):
        e = c.add_parser(name)
        e.add_argument("--key", required=True)
        e.add_argument("--in", dest="input", required=True)
        e.add_argument("--out")
        e.set_defaults(func=func)
    ev = c.add_parser("evolve")
    ev.add_argument("--key", required=True)
    ev.add_argument("--steps", type=int, default=1)
    ev.add_argument("--out")
    ev.set_defaults(func=cmd_cipher_evolve)

    pk = top.add_parser("pk", help="public-key scheme").add_subparsers(dest="cmd", required=True)
    kg = pk.add_parser("keygen")
    kg.add_argument("--q", type=int, required=True)
    kg.add_argument("--a", required=True, help="base word, e.g. 1,-2")
    kg.add_argument("--f-images", help="images of x_1..x_q separated by ';', e.g. '1,2;2'")
    kg.add_argument("--f-transcript")
    kg.add_argument("--n", type=int)
    kg.add_argument("--seed", type=int)
    kg.add_argument("--max-exponent", type=int, default=12)
    kg.add_argument("--matrix", action="store_true")
    kg.add_argument("--r")
    kg.add_argument("--out-dir", required=True)
    kg.set_defaults(func=cmd_pk_keygen)
    en = pk.add_parser("encrypt")
    en.add_argument("--pub", required=True)
    en.add_argument("--message")
    en.add_argument("--in", dest="input")
    en.add_argument("--t", type=int)
    en.add_argument("--seed", type=int)
    en.add_argument("--max-exponent", type=int, default=12)
    en.add_argument("--out")
    en.set_defaults(func=cmd_pk_encrypt)
    de = pk.add_parser("decrypt")
    de.add_argument("--pub", required=True)
    de.add_argument("--priv", required=True)
    de.add_argument("--in", dest="input", required=True)
    de.add_argument("--out")
    de.set_defaults(func=cmd_pk_decrypt)

    g = top.add_parser("group", help="Nielsen reduction tools").add_subparsers(dest="cmd", required=True)
    gr = g.add_parser("reduce")
    gr.add_argument("--in", dest="input", required=True)
    gr.add_argument("--out")
    gr.set_defaults(func=cmd_group_reduce)
    gv = g.add_parser("verify-reduced")
    gv.add_argument("--in", dest="input", required=True)
    gv.add_argument("--out")
    gv.set_defaults(func=cmd_group_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CoverageError as exc:
        report = {"error": exc.kind, "message": str(exc), "missing": exc.missing}
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
        return 3
    except (NielsenCryptoError, OSError) as exc:
        kind = getattr(exc, "kind", "io")
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
