import random

import pytest

from conftest import W, random_regular_transcript
from nielsen_crypto.errors import BasisCertificateError, DecryptionError, NielsenCryptoError
from nielsen_crypto.pubkey import (
    DegenerateKeyWarning,
    PkCiphertext,
    certify_automorphism,
    decrypt,
    encrypt,
    endo_from_transcript,
    keygen,
)
from nielsen_crypto.ratmat import RatMatrix, eval_word, mat_mul
from nielsen_crypto.word import Endomorphism, Word, apply_endo, compose, endo_power

SHEAR = Endomorphism([[1, 2], [2]])
FIB = Endomorphism([[2], [1, 2]])


def test_keygen_examples():
    pub, priv = keygen(2, W(1), SHEAR, 2)
    assert pub.c == W(1, 2, 2) and priv.n == 2
    pub, _ = keygen(2, W(1, 2), FIB, 1)
    assert pub.c == W(2, 1, 2)


def test_degenerate_keys_warn():
    with pytest.warns(DegenerateKeyWarning):
        pub, _ = keygen(2, W(1, 2), Endomorphism.identity(2), 3)
    assert pub.c == W(1, 2)
    with pytest.warns(DegenerateKeyWarning):
        keygen(2, W(1), SHEAR, 0)
    swap = Endomorphism([[2], [1]])
    with pytest.warns(DegenerateKeyWarning):
        keygen(2, W(1), swap, 1)


def test_keygen_rejections():
    with pytest.raises(BasisCertificateError):
        keygen(2, W(1), Endomorphism([[1, 1], [2]]), 1)
    with pytest.raises(BasisCertificateError):
        certify_automorphism(Endomorphism([[1], [1]]))
    with pytest.raises(NielsenCryptoError):
        keygen(2, Word(), SHEAR, 1)
    with pytest.raises(NielsenCryptoError):
        keygen(2, W(1), SHEAR, -1)
    with pytest.raises(NielsenCryptoError):
        keygen(2, W(1), SHEAR, 65)


def test_encrypt_decrypt_example():
    pub, priv = keygen(2, W(1), SHEAR, 2)
    ct = encrypt(pub, W(2, 1), 1)
    assert ct.c1 == W(2, 1, 1, 2, 2, 2)
    assert ct.c2 == W(1, 2)
    assert decrypt(pub, priv, ct) == W(2, 1)


def test_encrypt_edge_cases():
    pub, priv = keygen(2, W(1), SHEAR, 2)
    assert encrypt(pub, Word(), 3).c1 == apply_endo(endo_power(SHEAR, 3), pub.c)
    ct = encrypt(pub, W(2, 2), 0)
    assert ct.c1 == W(2, 2, 1, 2, 2) and ct.c2 == pub.a
    assert decrypt(pub, priv, ct) == W(2, 2)


def test_powers_commute():
    for f in (SHEAR, FIB):
        for n in range(4):
            for t in range(4):
                assert compose(endo_power(f, t), endo_power(f, n)) == compose(endo_power(f, n), endo_power(f, t))


def test_endo_from_transcript():
    rng = random.Random(2)
    for _ in range(50):
        f = endo_from_transcript(3, random_regular_transcript(rng, 3, 6))
        certify_automorphism(f)


def test_matrix_mode():
    pub, priv = keygen(2, W(1), FIB, 3, matrix=True, lehner_r=[2, 5])
    ct = encrypt(pub, W(-1), 2)
    assert isinstance(ct.c1, RatMatrix) and ct.c1.det() == 1
    rep = pub.representation()
    mask = apply_endo(endo_power(FIB, 2), pub.c)
    assert ct.c1 == mat_mul(eval_word(rep, W(-1)), eval_word(rep, mask))
    assert decrypt(pub, priv, ct) == W(-1)
    with pytest.raises(NielsenCryptoError):
        encrypt(pub, W(1, 2), 1)
    with pytest.raises(DecryptionError):
        decrypt(pub, priv, PkCiphertext(RatMatrix.identity(), ct.c2))
    with pytest.raises(DecryptionError):
        decrypt(pub, priv, PkCiphertext(W(1), ct.c2))
