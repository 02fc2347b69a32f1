"""Combinatorics of the thresholding greedy algorithm.

Greedy sets of cardinality ``m`` are the sets ``A`` with
``min_{n in A} |a_n| >= max_{k not in A} |a_k|``; they are strictly greedy
when the inequality is strict. Ties at the threshold magnitude make the
family combinatorial, so enumeration is capped and a seeded sampler is
offered for the overflow case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .spaces import SparseVector

__all__ = [
    "DEFAULT_CAP",
    "GreedySetFamily",
    "SignPattern",
    "TieOverflowError",
    "greedy_ordering",
    "greedy_sets",
    "greedy_structure",
    "indicator",
    "is_strictly_graded",
    "nsg",
    "project",
    "rearrangement",
    "sample_greedy_sets",
    "sign_of",
]

DEFAULT_CAP = 10_000


class SignPattern:
    """Sign sequence with value +1 outside the stored keys."""

    __slots__ = ("_signs",)

    def __init__(self, signs=None):
        signs = dict(signs or {})
        for k, v in signs.items():
            if v not in (1, -1):
                raise ValueError(f"sign at index {k} must be +1 or -1, got {v}")
        self._signs = {int(k): int(v) for k, v in signs.items()}

    def __getitem__(self, n: int) -> int:
        return self._signs.get(int(n), 1)

    def values_at(self, indices) -> np.ndarray:
        return np.array([self[n] for n in indices], dtype=float)

    def to_dict(self) -> dict:
        return dict(self._signs)

    def __eq__(self, other):
        if not isinstance(other, SignPattern):
            return NotImplemented
        # compare as functions on N
        keys = set(self._signs) | set(other._signs)
        return all(self[k] == other[k] for k in keys)

    def __repr__(self):
        return f"SignPattern({self._signs})"


class TieOverflowError(RuntimeError):
    """Raised when the number of greedy sets exceeds the enumeration cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} greedy sets exceed the cap {cap}; use sampling")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class GreedyStructure:
    """Greedy sets of size ``m`` described as ``forced`` plus ``r`` of ``block``."""

    m: int
    forced: tuple
    block: tuple
    r: int
    extra: tuple = ()  # zero-coefficient indices added when m > |supp|

    @property
    def count(self) -> int:
        return math.comb(len(self.block), self.r)

    @property
    def strict(self) -> bool:
        return not self.extra and self.r == len(self.block)


@dataclass(frozen=True)
class GreedySetFamily:
    m: int
    sets: tuple
    is_strict: tuple
    sampled: bool = False

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def sign_of(f: SparseVector) -> SignPattern:
    return SignPattern({int(i): (1 if v > 0 else -1) for i, v in zip(f.indices, f.values)})


def rearrangement(f: SparseVector, N: int) -> np.ndarray:
    if N < 1:
        raise ValueError("N must be >= 1")
    out = np.zeros(N)
    mags = -np.sort(-np.abs(f.values))[:N]
    out[: mags.size] = mags
    return out


def greedy_structure(f: SparseVector, m: int) -> GreedyStructure:
    if m < 0:
        raise ValueError("m must be >= 0")
    s = len(f)
    if m == 0:
        return GreedyStructure(0, (), (), 0)
    if m >= s:
        extra = ()
        if m > s:
            # canonical completion by the lowest-indexed zero coordinates
            supp = set(f.indices.tolist())
            extra = tuple(itertools.islice((k for k in itertools.count(1) if k not in supp), m - s))
        return GreedyStructure(m, tuple(f.indices.tolist()), (), 0, extra)
    mags = np.abs(f.values)
    t = np.sort(mags)[::-1][m - 1]
    forced = tuple(f.indices[mags > t].tolist())
    block = tuple(f.indices[mags == t].tolist())
    return GreedyStructure(m, forced, block, m - len(forced))


def greedy_sets(f: SparseVector, m: int, cap: int = DEFAULT_CAP) -> GreedySetFamily:
    """All greedy sets of ``f`` with cardinality ``m``.

    Examples
    --------
    >>> f = SparseVector([1, 2], [1.0, 1.0])
    >>> greedy_sets(f, 1).sets
    ((1,), (2,))
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    st = greedy_structure(f, m)
    if st.count > cap:
        raise TieOverflowError(st.count, cap)
    sets = tuple(
        tuple(sorted(st.forced + combo + st.extra)) for combo in itertools.combinations(st.block, st.r)
    )
    return GreedySetFamily(m, sets, (st.strict,) * len(sets))


def sample_greedy_sets(f: SparseVector, m: int, k: int, seed: int) -> GreedySetFamily:
    """Draw ``k`` greedy sets by seeded random tie resolution (duplicates removed)."""
    st = greedy_structure(f, m)
    rng = np.random.default_rng(seed)
    block = np.array(st.block, dtype=np.int64)
    seen = {}
    for _ in range(k):
        pick = tuple(rng.choice(block, size=st.r, replace=False).tolist()) if st.r else ()
        A = tuple(sorted(st.forced + pick + st.extra))
        seen.setdefault(A, None)
    sets = tuple(seen)
    return GreedySetFamily(m, sets, (st.strict,) * len(sets), sampled=True)


def nsg(f: SparseVector) -> frozenset:
    """Orders ``0 <= m <= |supp f|`` with a unique greedy set that is also strict."""
    out = set()
    for m in range(len(f) + 1):
        st = greedy_structure(f, m)
        if st.count == 1 and st.strict:
            out.add(m)
    return frozenset(out)


def greedy_ordering(f: SparseVector, tie_rule: str = "lowest_index") -> list:
    if tie_rule not in ("lowest_index", "highest_index"):
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    sgn = 1 if tie_rule == "lowest_index" else -1
    order = np.lexsort((sgn * f.indices, -np.abs(f.values)))
    return f.indices[order].tolist()


def project(f: SparseVector, A) -> SparseVector:
    return f.restrict(A)


def indicator(eps: SignPattern, A) -> SparseVector:
    A = sorted(int(a) for a in A)
    return SparseVector(A, eps.values_at(A))


def is_strictly_graded(f: SparseVector) -> bool:
    mags = np.abs(f.values)
    return np.unique(mags).size == mags.size
