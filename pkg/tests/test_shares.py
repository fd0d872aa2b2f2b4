import itertools
import math

import pytest

from nielsen_crypto.errors import CoverageError, SchemeError, SizeCapError
from nielsen_crypto.shares import build_distribution, reconstruct, split


def test_four_three_distribution():
    d = build_distribution(4, 3)
    assert d.m == 6
    assert d.a_sets[0] == {1, 2} and d.a_sets[-1] == {3, 4}
    assert [sorted(R) for R in d.r_sets] == [[4, 5, 6], [2, 3, 6], [1, 3, 5], [1, 2, 4]]


def test_three_two_distribution():
    d = build_distribution(3, 2)
    assert d.a_sets == tuple(frozenset({j}) for j in (1, 2, 3))
    assert [sorted(R) for R in d.r_sets] == [[2, 3], [1, 3], [1, 2]]


def test_two_one_distribution():
    d = build_distribution(2, 1)
    assert d.m == 1 and d.a_sets == (frozenset(),)
    assert d.r_sets == (frozenset({1}), frozenset({1}))


def test_bad_parameters():
    with pytest.raises(SchemeError):
        build_distribution(3, 4)
    with pytest.raises(SchemeError):
        build_distribution(3, 0)
    with pytest.raises(SizeCapError):
        build_distribution(40, 20)


@pytest.mark.parametrize("n", range(1, 9))
def test_threshold_property_exhaustive(n):
    for t in range(1, n + 1):
        d = build_distribution(n, t)
        everything = set(range(1, d.m + 1))
        for R in d.r_sets:
            assert len(R) == math.comb(n - 1, t - 1)
        for k in range(n + 1):
            for g in itertools.combinations(range(n), k):
                covered = set().union(*(d.r_sets[i] for i in g))
                assert (covered == everything) == (k >= t)


def test_union_of_three_shares_covers_all():
    d = build_distribution(4, 3)
    shares = split(d, list("abcdef"))
    rec = reconstruct(6, [(s.participant, s.items) for s in shares[:3]])
    assert rec.complete and rec.ordered() == list("abcdef")
    for s in shares:
        single = reconstruct(6, [(s.participant, s.items)])
        assert not single.complete
        with pytest.raises(CoverageError) as e:
            single.ordered()
        assert e.value.missing == sorted(set(range(1, 7)) - set(s.items))


def test_missing_slot_pattern_for_pairs():
    # participants i and k jointly miss exactly the slot whose A-set is {i, k}
    d = build_distribution(4, 3)
    shares = split(d, list(range(6)))
    for a, b in itertools.combinations(shares, 2):
        rec = reconstruct(6, [(a.participant, a.items), (b.participant, b.items)])
        j = d.a_sets.index(frozenset({a.participant, b.participant})) + 1
        assert rec.missing == (j,)


def test_duplicate_and_conflicting_shares():
    d = build_distribution(3, 2)
    shares = split(d, ["x", "y", "z"])
    with pytest.raises(SchemeError):
        reconstruct(3, [(1, shares[0].items), (1, shares[0].items)])
    forged = dict(shares[1].items)
    forged[3] = "evil"
    rec = reconstruct(3, [(1, shares[0].items), (2, forged)])
    assert not rec.complete and 3 in rec.missing
