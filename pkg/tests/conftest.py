import random
from fractions import Fraction

import pytest

from nielsen_crypto.nielsen import Invert, MultiplyRight, Transcript
from nielsen_crypto.ratmat import RatMatrix
from nielsen_crypto.word import Word

F = Fraction


def W(*letters):
    return Word(letters)


def mat(a, b, c, d):
    return RatMatrix(F(a), F(b), F(c), F(d))


# Worked example with three participants: dealer moves and the resulting tuples
# after every row of the dealer's table.
DEALER_MOVES = (
    [Invert(2), MultiplyRight(1, 2)]
    + [MultiplyRight(3, 2)] * 3
    + [MultiplyRight(2, 3), Invert(1), MultiplyRight(1, 2), Invert(3), MultiplyRight(3, 2)]
)
DEALER_TRANSCRIPT = Transcript(tuple(DEALER_MOVES))
DEALER_ROW_LENGTHS = [1, 1, 3, 1, 1, 1, 1, 1]  # moves per printed row

M1 = mat(F(-7, 2), F(45, 4), 1, F(-7, 2))
M2 = mat(F(-15, 2), F(221, 4), 1, F(-15, 2))
M3 = mat(-11, 120, 1, -11)

DEALER_ROWS = [
    ([W(1), W(2), W(3)], [M1, M2, M3]),
    ([W(1), W(-2), W(3)], [M1, mat(F(-15, 2), F(-221, 4), -1, F(-15, 2)), M3]),
    ([W(1, -2), W(-2), W(3)], [mat(15, 109, -4, -29), mat(F(-15, 2), F(-221, 4), -1, F(-15, 2)), M3]),
    (
        [W(1, -2), W(-2), W(3, -2, -2, -2)],
        [mat(15, 109, -4, -29), mat(F(-15, 2), F(-221, 4), -1, F(-15, 2)), mat(-8565, -63664, 799, 5939)],
    ),
    (
        [W(1, -2), W(-2, 3, -2, -2, -2), W(3, -2, -2, -2)],
        [
            mat(15, 109, -4, -29),
            mat(F(80371, 4), F(597401, 4), F(5145, 2), F(38243, 2)),
            mat(-8565, -63664, 799, 5939),
        ],
    ),
    (
        [W(2, -1), W(-2, 3, -2, -2, -2), W(3, -2, -2, -2)],
        [
            mat(-29, -109, 4, 15),
            mat(F(80371, 4), F(597401, 4), F(5145, 2), F(38243, 2)),
            mat(-8565, -63664, 799, 5939),
        ],
    ),
    (
        [W(2, -1, -2, 3, -2, -2, -2), W(-2, 3, -2, -2, -2), W(3, -2, -2, -2)],
        [
            mat(F(-3452369, 4), F(-25661603, 4), F(237917, 2), F(1768447, 2)),
            mat(F(80371, 4), F(597401, 4), F(5145, 2), F(38243, 2)),
            mat(-8565, -63664, 799, 5939),
        ],
    ),
    (
        [W(2, -1, -2, 3, -2, -2, -2), W(-2, 3, -2, -2, -2), W(2, 2, 2, -3)],
        [
            mat(F(-3452369, 4), F(-25661603, 4), F(237917, 2), F(1768447, 2)),
            mat(F(80371, 4), F(597401, 4), F(5145, 2), F(38243, 2)),
            mat(5939, 63664, -799, -8565),
        ],
    ),
    (
        [W(2, -1, -2, 3, -2, -2, -2), W(-2, 3, -2, -2, -2), W(2, 2, 2, -3, -2, 3, -2, -2, -2)],
        [
            mat(F(-3452369, 4), F(-25661603, 4), F(237917, 2), F(1768447, 2)),
            mat(F(80371, 4), F(597401, 4), F(5145, 2), F(38243, 2)),
            mat(F(1132425929, 4), F(8417369243, 4), F(-152350279, 4), F(-1132425989, 4)),
        ],
    ),
]

# Participants' own route back to the basis.
PARTICIPANT_MOVES = (
    [Invert(2), MultiplyRight(3, 2), Invert(2), MultiplyRight(2, 3), MultiplyRight(1, 3), Invert(2)]
    + [MultiplyRight(1, 2), Invert(1), MultiplyRight(1, 2), Invert(3)]
    + [MultiplyRight(3, 2)] * 3
)


def naive_reduce(letters):
    """Scan-until-fixpoint free reduction, independent of the stack scan."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] == -w[k + 1]:
                del w[k:k + 2]
                changed = True
                break
    return w


def naive_is_nielsen_reduced(words):
    """N0-N2 by concatenating raw letter lists and reducing naively."""
    vs = []
    for w in words:
        vs.append(list(w.letters))
        vs.append([-x for x in reversed(w.letters)])
    if any(not v for v in vs):
        return False
    for v1 in vs:
        for v2 in vs:
            p = naive_reduce(v1 + v2)
            if p and (len(p) < len(v1) or len(p) < len(v2)):
                return False
    for v1 in vs:
        for v2 in vs:
            for v3 in vs:
                if not naive_reduce(v1 + v2) or not naive_reduce(v2 + v3):
                    continue
                if len(naive_reduce(v1 + v2 + v3)) <= len(v1) - len(v2) + len(v3):
                    return False
    return True


def random_regular_transcript(rng, m, length, p_invert=0.3):
    moves = []
    for _ in range(length):
        if m < 2 or rng.random() < p_invert:
            moves.append(Invert(rng.randint(1, m)))
        else:
            i, j = rng.sample(range(1, m + 1), 2)
            moves.append(MultiplyRight(i, j))
    return Transcript(tuple(moves))


def random_word(rng, rank, max_len):
    letters = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]
    return Word(letters)


def basis(m):
    return [Word([i]) for i in range(1, m + 1)]


def random_reduced_tuple(rng, m, rank, max_len=5):
    """Random free-basis tuple certified Nielsen reduced by the naive scan."""
    while True:
        words = [random_word(rng, rank, max_len) for _ in range(m)]
        if any(not w for w in words):
            continue
        if len({min(w.letters, w.inverse().letters) for w in words}) < m:
            continue
        if naive_is_nielsen_reduced(words):
            return words


@pytest.fixture
def rng():
    return random.Random(20240613)
