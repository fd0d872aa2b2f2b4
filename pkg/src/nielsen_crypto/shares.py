"""Threshold distribution of m = C(n, t-1) item slots among n participants.

The (t-1)-subsets A_1..A_m of {1..n} are enumerated lexicographically, and
participant i receives slot j exactly when i is not in A_j. Any t
participants then jointly hold every slot, while any t-1 of them miss the
slot whose A_j is their own index set.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from .errors import CoverageError, SchemeError, SizeCapError

DEFAULT_SIZE_CAP = 100_000
EXHAUSTIVE_CHECK_LIMIT = 4_096


@dataclass(frozen=True)
class ShareDistribution:
    n: int
    t: int
    m: int
    a_sets: tuple[frozenset[int], ...]
    r_sets: tuple[frozenset[int], ...]

    def slots_for(self, participant: int) -> frozenset[int]:
        return self.r_sets[participant - 1]


def build_distribution(n: int, t: int, size_cap: int = DEFAULT_SIZE_CAP, seed: int = 0) -> ShareDistribution:
    if not 1 <= t <= n:
        raise SchemeError(f"need 1 <= t <= n, got n={n}, t={t}")
    m = math.comb(n, t - 1)
    if m > size_cap:
        raise SizeCapError(f"C({n}, {t - 1}) = {m} exceeds the size cap {size_cap}")
    a_sets = tuple(frozenset(c) for c in itertools.combinations(range(1, n + 1), t - 1))
    r_sets = tuple(
        frozenset(j for j, A in enumerate(a_sets, 1) if i not in A) for i in range(1, n + 1)
    )
    dist = ShareDistribution(n, t, m, a_sets, r_sets)
    _verify(dist, seed)
    return dist


def _verify(dist: ShareDistribution, seed: int) -> None:
    n, t, m = dist.n, dist.t, dist.m
    for j in range(1, m + 1):
        if sum(j in R for R in dist.r_sets) != n - (t - 1):
            raise AssertionError(f"slot {j} is not held by exactly n-(t-1) participants")
    everything = frozenset(range(1, m + 1))
    if math.comb(n, t) + math.comb(n, t - 1) <= EXHAUSTIVE_CHECK_LIMIT:
        groups = itertools.chain(
            itertools.combinations(range(n), t), itertools.combinations(range(n), t - 1)
        )
    else:
        rng = random.Random(seed)
        groups = (
            tuple(rng.sample(range(n), k)) for _ in range(256) for k in (t, t - 1)
        )
    for g in groups:
        covered = frozenset().union(*(dist.r_sets[i] for i in g))
        if (covered == everything) != (len(g) == t):
            raise AssertionError(f"participants {g} break the threshold property")


@dataclass(frozen=True)
class Share:
    """One participant's slots with their payloads."""

    participant: int
    items: Mapping[int, Any]


def split(dist: ShareDistribution, payloads: Sequence[Any]) -> list[Share]:
    if len(payloads) != dist.m:
        raise SchemeError(f"expected {dist.m} payloads, got {len(payloads)}")
    return [
        Share(i, {j: payloads[j - 1] for j in sorted(dist.slots_for(i))})
        for i in range(1, dist.n + 1)
    ]


@dataclass(frozen=True)
class Reconstruction:
    complete: bool
    payloads: dict[int, Any]
    missing: tuple[int, ...]

    def ordered(self) -> list[Any]:
        if not self.complete:
            raise CoverageError(f"slots {list(self.missing)} are not covered", list(self.missing))
        return [self.payloads[j] for j in sorted(self.payloads)]


def reconstruct(m: int, provided: Iterable[tuple[int, Mapping[int, Any]]]) -> Reconstruction:
    """Union of the provided slot payloads.

    Conflicting payloads for the same slot are reported as a coverage
    failure on that slot, since the union argument presumes honest copies.
    """
    seen: set[int] = set()
    merged: dict[int, Any] = {}
    corrupted: set[int] = set()
    for participant, items in provided:
        if participant in seen:
            raise SchemeError(f"participant {participant} supplied more than one share")
        seen.add(participant)
        for j, payload in items.items():
            if not 1 <= j <= m:
                raise SchemeError(f"slot {j} outside 1..{m}")
            if j in merged and merged[j] != payload:
                corrupted.add(j)
            merged.setdefault(j, payload)
    for j in corrupted:
        del merged[j]
    missing = tuple(j for j in range(1, m + 1) if j not in merged)
    return Reconstruction(not missing, merged, missing)
