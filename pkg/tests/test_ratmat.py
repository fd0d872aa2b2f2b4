import random
from fractions import Fraction as F

import pytest

from conftest import M1, M2, M3, PARTICIPANT_MOVES, DEALER_TRANSCRIPT, DEALER_ROW_LENGTHS, DEALER_ROWS, W, mat, random_regular_transcript
from nielsen_crypto.errors import DeterminantError, FormatError, LehnerParameterError
from nielsen_crypto.nielsen import Transcript, apply_transcript
from nielsen_crypto.ratmat import (
    RatMatrix,
    Representation,
    apply_transcript_mat,
    commutator,
    default_lehner_params,
    eval_tuple,
    eval_word,
    format_rational,
    is_identity,
    lehner_generators,
    mat_inv,
    mat_mul,
    matrix_from_rows,
    matrix_to_rows,
    parse_rational,
    trace,
)
from nielsen_crypto.word import Word, inv, mul

REP = Representation.lehner(["7/2", "15/2", "11"])


def test_parse_and_format_rational():
    assert parse_rational("7/2") == F(7, 2)
    assert parse_rational("-14/4") == F(-7, 2)
    assert parse_rational(3) == 3
    assert format_rational(F(-221, 4)) == "-221/4"
    assert format_rational(F(6, 3)) == "2"
    for bad in ("1/0", "0.5", "abc", 0.5):
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_determinant_enforced():
    with pytest.raises(DeterminantError):
        mat(1, 1, 1, 1)
    assert RatMatrix.identity().det() == 1
    assert trace(RatMatrix.identity()) == 2


def test_inverse_and_product_examples():
    assert mat_inv(M2) == mat(F(-15, 2), F(-221, 4), -1, F(-15, 2))
    assert mat_mul(M1, mat_inv(M2)) == mat(15, 109, -4, -29)
    assert is_identity(M1 @ M1.inverse())


def test_lehner_examples():
    assert lehner_generators(["7/2", "15/2", "11"]) == [M1, M2, M3]
    (g,) = lehner_generators([2])
    assert g == mat(-2, 3, 1, -2) and trace(g) == -4
    with pytest.raises(LehnerParameterError) as e:
        lehner_generators([2, 4])
    assert e.value.index == 2
    with pytest.raises(LehnerParameterError):
        lehner_generators([1])
    rs = default_lehner_params(5)
    for r, M in zip(rs, lehner_generators(rs)):
        assert trace(M) == -2 * r and M.det() == 1


def test_eval_word_examples():
    assert eval_word(REP, W(1)) == M1
    assert eval_word(REP, Word()) == RatMatrix.identity()
    u1 = W(2, -1, -2, 3, -2, -2, -2)
    assert eval_word(REP, u1) == mat(F(-3452369, 4), F(-25661603, 4), F(237917, 2), F(1768447, 2))
    assert is_identity(mat_mul(eval_word(REP, u1), eval_word(REP, inv(u1))))


def test_dealer_rows_matrix_side():
    cur = [M1, M2, M3]
    moves = list(DEALER_TRANSCRIPT.moves)
    for (words, mats), k in zip(DEALER_ROWS[1:], DEALER_ROW_LENGTHS):
        cur = apply_transcript_mat(cur, Transcript(tuple(moves[:k])))
        moves = moves[k:]
        assert cur == mats
        assert eval_tuple(REP, words) == mats


def test_participants_route_returns_generators():
    N = DEALER_ROWS[-1][1]
    assert apply_transcript_mat(N, Transcript(tuple(PARTICIPANT_MOVES))) == [M1, M2, M3]
    assert apply_transcript_mat(N, Transcript()) == N


def test_mirror_law_on_random_transcripts():
    rng = random.Random(3)
    for _ in range(500):
        m = rng.randint(2, 3)
        t = random_regular_transcript(rng, m, rng.randint(0, 8))
        words = apply_transcript([Word([i]) for i in range(1, m + 1)], t)
        mats = apply_transcript_mat(REP.images[:m], t)
        assert [eval_word(REP, w) for w in words] == mats
        assert all(A.det() == 1 for A in mats)


def test_eval_is_a_homomorphism():
    rng = random.Random(4)
    for _ in range(300):
        u = Word([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 6))])
        v = Word([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 6))])
        assert eval_word(REP, mul(u, v)) == mat_mul(eval_word(REP, u), eval_word(REP, v))


def _random_sl2(rng):
    while True:
        a, b, c = (F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3))
        if a:
            return RatMatrix(a, b, c, (1 + b * c) / a)


def test_trace_inverse_invariance_and_commutator():
    rng = random.Random(8)
    for _ in range(300):
        A, B = _random_sl2(rng), _random_sl2(rng)
        assert trace(A) == trace(mat_inv(A))
        assert commutator(A, B).det() == 1
        assert trace(mat_mul(B, mat_mul(A, mat_inv(B)))) == trace(A)


def test_rows_round_trip():
    N3 = DEALER_ROWS[-1][1][2]
    assert matrix_to_rows(N3) == [["1132425929/4", "8417369243/4"], ["-152350279/4", "-1132425989/4"]]
    assert matrix_from_rows(matrix_to_rows(N3)) == N3
