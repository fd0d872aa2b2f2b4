import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import W, naive_reduce
from nielsen_crypto.errors import MalformedWordError, RankMismatchError
from nielsen_crypto.word import (
    Endomorphism,
    Word,
    apply_endo,
    compose,
    endo_power,
    format_word,
    inv,
    length,
    mul,
    reduce_free,
)

letters = st.lists(st.integers(-3, 3).filter(bool), max_size=20)
words = letters.map(Word)


def test_reduce_free_examples():
    assert reduce_free([1, 2, -2, 3]) == (1, 3)
    assert reduce_free([]) == ()
    assert reduce_free([1, -1, 1, -1]) == ()
    assert naive_reduce([1, -1, 1, -1]) == []


def test_zero_letter_rejected():
    with pytest.raises(MalformedWordError):
        Word([1, 0, 2])


@given(letters)
def test_reduce_matches_naive_oracle_and_is_idempotent(raw):
    r = reduce_free(raw)
    assert list(r) == naive_reduce(raw)
    assert reduce_free(r) == r
    assert length(Word(raw)) == len(naive_reduce(raw))


def test_mul_examples():
    assert W(1, -2) * W(2) == W(1)
    u = W(2, -1, -2, 3, -2, -2, -2)
    assert u * inv(u) == Word()
    # u_1 of the dealer's table, rebuilt from its two factors
    assert mul(W(2, -1), W(-2, 3, -2, -2, -2)) == u
    assert len(u) == 7


def test_inv_examples():
    assert inv(W(1, -2)) == W(2, -1)
    assert inv(W(1, -2)) == W(2, -1)  # x1 x2^-1 -> x2 x1^-1
    assert inv(Word()) == Word()


@given(words, words)
def test_product_length_bounds(u, v):
    p = mul(u, v)
    assert len(p) <= len(u) + len(v)
    assert (len(p) - len(u) - len(v)) % 2 == 0


@given(words, words)
def test_inverse_is_antihomomorphic_involution(u, v):
    assert inv(inv(u)) == u
    assert len(inv(u)) == len(u)
    assert inv(mul(u, v)) == mul(inv(v), inv(u))


def test_pow_and_generator():
    assert W(1, 2) ** 2 == W(1, 2, 1, 2)
    assert W(1, 2) ** -1 == W(-2, -1)
    assert Word.generator(2, -3) == W(-2, -2, -2)


def test_format_word():
    assert format_word(W(2, -1, -2, 3, -2, -2, -2)) == "x2 x1^-1 x2^-1 x3 x2^-3"
    assert format_word(Word()) == "1"


def test_words_are_immutable():
    w = W(1, 2)
    with pytest.raises(AttributeError):
        w.foo = 1


F_SHEAR = Endomorphism([[1, 2], [2]])


def test_apply_endo_examples():
    assert apply_endo(F_SHEAR, apply_endo(F_SHEAR, W(1))) == W(1, 2, 2)
    ident = Endomorphism.identity(3)
    assert apply_endo(ident, W(3, -1, 2)) == W(3, -1, 2)
    assert apply_endo(F_SHEAR, Word()) == Word()


def test_apply_endo_rank_mismatch():
    with pytest.raises(RankMismatchError):
        apply_endo(F_SHEAR, W(3))
    with pytest.raises(RankMismatchError):
        Endomorphism([[1], [3]])


def test_endo_power_examples():
    assert endo_power(F_SHEAR, 0) == Endomorphism.identity(2)
    assert endo_power(F_SHEAR, 2).images == (W(1, 2, 2), W(2))
    f = Endomorphism([[2], [1, 2]])
    assert endo_power(f, 5) == compose(f, compose(f, compose(f, compose(f, f))))


def _random_endo(rng, q):
    return Endomorphism([Word([rng.choice([1, -1]) * rng.randint(1, q) for _ in range(rng.randint(0, 3))]) for _ in range(q)])


def test_endo_power_adds_exponents():
    rng = random.Random(7)
    for _ in range(100):
        q = rng.randint(1, 3)
        f = _random_endo(rng, q)
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        assert endo_power(f, a + b) == compose(endo_power(f, a), endo_power(f, b))


def test_apply_endo_is_a_homomorphism():
    rng = random.Random(11)
    for _ in range(1000):
        q = rng.randint(1, 3)
        f = _random_endo(rng, q)
        u = Word([rng.choice([1, -1]) * rng.randint(1, q) for _ in range(rng.randint(0, 6))])
        v = Word([rng.choice([1, -1]) * rng.randint(1, q) for _ in range(rng.randint(0, 6))])
        assert apply_endo(f, mul(u, v)) == mul(apply_endo(f, u), apply_endo(f, v))
        assert apply_endo(f, inv(u)) == inv(apply_endo(f, u))


@settings(max_examples=50)
@given(words)
def test_substitution_oracle(u):
    # image computed by concatenating raw images and reducing naively
    f = Endomorphism([[1, 2], [-3], [2, 1]])
    raw = []
    for x in u.letters:
        img = list(f.images[abs(x) - 1].letters)
        raw += img if x > 0 else [-y for y in reversed(img)]
    assert list(apply_endo(f, u).letters) == naive_reduce(raw)
