"""Concrete p-Banach sequence spaces evaluated in basis coordinates.

Every space exposes ``norm(f)`` for a :class:`SparseVector` and a batched
``norm_dense(X, indices)`` that evaluates many coefficient rows placed on the
same sorted index array. The batched form is what the error, democracy and
verification modules lean on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BasisBounds",
    "InterleavedSum",
    "LorentzDSpace",
    "LpSpace",
    "Space",
    "SparseVector",
    "SummingC0",
    "basis_bounds",
    "in_cube",
    "norm",
    "parse_space",
]


class SparseVector:
    """Finitely supported coefficient vector ``f = sum a_n x_n`` (1-based indices).

    Zero coefficients are dropped on construction, so ``support`` is exactly
    the set of stored indices.
    """

    __slots__ = ("indices", "values")

    def __init__(self, indices=(), values=()):
        idx = np.asarray(indices, dtype=np.int64).ravel()
        val = np.asarray(values, dtype=float).ravel()
        if idx.shape != val.shape:
            raise ValueError("indices and values must have the same length")
        if idx.size and idx.min() < 1:
            raise ValueError("indices are 1-based; got an index < 1")
        if not np.all(np.isfinite(val)):
            raise ValueError("coefficients must be finite")
        order = np.argsort(idx, kind="stable")
        idx, val = idx[order], val[order]
        if idx.size > 1 and np.any(idx[1:] == idx[:-1]):
            raise ValueError("duplicate index in sparse vector")
        keep = val != 0
        self.indices = idx[keep]
        self.values = val[keep]

    @classmethod
    def from_dict(cls, d) -> SparseVector:
        items = [(int(k), float(v)) for k, v in dict(d).items()]
        if not items:
            return cls()
        i, v = zip(*items)
        return cls(i, v)

    @classmethod
    def from_dense(cls, values, offset: int = 1) -> SparseVector:
        values = np.asarray(values, dtype=float)
        return cls(np.arange(offset, offset + values.size), values)

    def to_dict(self) -> dict:
        return {int(i): float(v) for i, v in zip(self.indices, self.values)}

    @property
    def support(self) -> frozenset:
        return frozenset(int(i) for i in self.indices)

    def __len__(self):
        return int(self.indices.size)

    def __getitem__(self, n: int) -> float:
        pos = np.searchsorted(self.indices, n)
        if pos < self.indices.size and self.indices[pos] == n:
            return float(self.values[pos])
        return 0.0

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self):
        return f"SparseVector({self.to_dict()})"

    def __mul__(self, lam):
        return SparseVector(self.indices, self.values * float(lam))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __add__(self, other: SparseVector) -> SparseVector:
        idx = np.union1d(self.indices, other.indices)
        val = np.zeros(idx.size)
        val[np.searchsorted(idx, self.indices)] += self.values
        val[np.searchsorted(idx, other.indices)] += other.values
        return SparseVector(idx, val)

    def __sub__(self, other: SparseVector) -> SparseVector:
        return self + (-other)

    def restrict(self, A) -> SparseVector:
        mask = np.isin(self.indices, np.fromiter(A, dtype=np.int64))
        return SparseVector(self.indices[mask], self.values[mask])

    def max_index(self) -> int:
        return int(self.indices[-1]) if self.indices.size else 0


@dataclass(frozen=True)
class BasisBounds:
    alpha1: float
    alpha2: float
    alpha3: float
    concavity_modulus: float
    truncated: bool = False


def _lp_rows(X: np.ndarray, p: float) -> np.ndarray:
    """Row-wise l^p (quasi-)norm; rows that over- or underflow are rescaled by their max."""
    A = np.abs(X)
    if A.shape[1] == 0:
        return np.zeros(A.shape[0])
    m = A.max(axis=1)
    if math.isinf(p):
        return m
    with np.errstate(over="ignore", under="ignore"):
        out = np.sum(A**p, axis=1) ** (1.0 / p)
    bad = (m > 0) & ~((out >= m) & np.isfinite(out))
    if bad.any():
        s = m[bad]
        out[bad] = s * np.sum((A[bad] / s[:, None]) ** p, axis=1) ** (1.0 / p)
    return np.where(m > 0, out, 0.0)


class Space:
    """Base class; subclasses implement :meth:`norm_dense`."""

    family = "abstract"
    p_exponent = 1.0
    # 1-unconditional lattice norms admit closed-form error paths
    lattice = False
    rearrangement_invariant = False

    def norm_dense(self, X, indices) -> np.ndarray:
        raise NotImplementedError

    def norm(self, f: SparseVector) -> float:
        if len(f) == 0:
            return 0.0
        return float(self.norm_dense(f.values[None, :], f.indices)[0])

    def basis_bounds(self, N: int = 1024) -> BasisBounds:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({json.dumps(self.to_dict())})"

    def __eq__(self, other):
        return isinstance(other, Space) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))


class LpSpace(Space):
    """``l^p`` with its canonical basis, ``0 < p <= inf``."""

    family = "lp"
    lattice = True
    rearrangement_invariant = True

    def __init__(self, p: float):
        p = float(p)
        if not p > 0:
            raise ValueError(f"lp needs p > 0, got {p}")
        self.p = p
        self.p_exponent = min(p, 1.0)

    def norm_dense(self, X, indices=None):
        return _lp_rows(np.atleast_2d(np.asarray(X, dtype=float)), self.p)

    def basis_bounds(self, N: int = 1024) -> BasisBounds:
        return BasisBounds(1.0, 1.0, 1.0, 2.0 ** (1 / self.p_exponent - 1))

    def to_dict(self):
        return {"family": "lp", "p": self.p}


class LorentzDSpace(Space):
    """Lorentz sequence space ``d(v, p)`` with ``v(n) = n**(s - 1)``.

    ``||f|| = (sum_n (a*_n)**p * v(n))**(1/p)`` with ``a*`` the non-increasing
    rearrangement of ``|a_n|``.
    """

    family = "lorentz_d"
    lattice = True
    rearrangement_invariant = True

    def __init__(self, s: float = 0.5, p: float = 1.0):
        s, p = float(s), float(p)
        if not (0 < s <= 1):
            raise ValueError(f"lorentz_d needs 0 < s <= 1, got {s}")
        if not (0 < p < math.inf):
            raise ValueError(f"lorentz_d needs 0 < p < inf, got {p}")
        self.s, self.p = s, p
        self.p_exponent = min(p, 1.0)

    def v(self, n) -> np.ndarray:
        return np.asarray(n, dtype=float) ** (self.s - 1.0)

    def norm_dense(self, X, indices=None):
        A = -np.sort(-np.abs(np.atleast_2d(np.asarray(X, dtype=float))), axis=1)
        if A.shape[1] == 0:
            return np.zeros(A.shape[0])
        vv = self.v(np.arange(1, A.shape[1] + 1))
        m = A[:, 0]
        safe = np.where(m > 0, m, 1.0)
        out = safe * np.sum((A / safe[:, None]) ** self.p * vv, axis=1) ** (1.0 / self.p)
        return np.where(m > 0, out, 0.0)

    def basis_bounds(self, N: int = 1024) -> BasisBounds:
        v1 = float(self.v(1))
        a1, a2 = v1 ** (1 / self.p), v1 ** (-1 / self.p)
        return BasisBounds(a1, a2, a1 * a2, 2.0 ** (1 / self.p_exponent - 1))

    def to_dict(self):
        return {"family": "lorentz_d", "s": self.s, "p": self.p}


class InterleavedSum(Space):
    """Direct 1-sum ``l^{p1} (+) l^{p2}``; odd positions carry the ``l^{p1}`` copy."""

    family = "interleaved_sum"
    lattice = True
    p_exponent = 1.0

    def __init__(self, p1: float = 1.0, p2: float = 2.0):
        p1, p2 = float(p1), float(p2)
        if p1 < 1 or p2 < 1:
            raise ValueError("interleaved_sum needs p1, p2 >= 1")
        self.p1, self.p2 = p1, p2

    def norm_dense(self, X, indices):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        odd = np.asarray(indices) % 2 == 1
        return _lp_rows(X[:, odd], self.p1) + _lp_rows(X[:, ~odd], self.p2)

    def basis_bounds(self, N: int = 1024) -> BasisBounds:
        return BasisBounds(1.0, 1.0, 1.0, 1.0)

    def to_dict(self):
        return {"family": "interleaved_sum", "p1": self.p1, "p2": self.p2}


class SummingC0(Space):
    """Summing basis ``s_n = e_1 + ... + e_n`` of ``c_0``.

    ``||sum a_n s_n|| = max_k |sum_{n >= k} a_n|``. The tail sum is constant
    between consecutive support points, so evaluation costs O(|supp|) and no
    cap on the largest index is needed.
    """

    family = "summing_c0"
    p_exponent = 1.0

    def norm_dense(self, X, indices=None):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] == 0:
            return np.zeros(X.shape[0])
        tails = np.cumsum(X[:, ::-1], axis=1)
        return np.abs(tails).max(axis=1)

    def basis_bounds(self, N: int = 1024) -> BasisBounds:
        return BasisBounds(1.0, 2.0, 2.0, 1.0)

    def to_dict(self):
        return {"family": "summing_c0"}


def parse_space(spec) -> Space:
    """Build a space from a JSON-style dict or a short string.

    Strings: ``"lp:2"``, ``"lp:inf"``, ``"lorentz_d:0.5:1"``,
    ``"interleaved:1:2"``, ``"summing_c0"``.

    >>> parse_space("lp:2").norm(SparseVector([1, 2], [3, 4]))
    5.0
    """
    if isinstance(spec, Space):
        return spec
    if isinstance(spec, str):
        head, *rest = spec.split(":")
        try:
            args = [float(r) for r in rest]
        except ValueError:
            raise ValueError(f"cannot parse space spec {spec!r}") from None
        if head == "lp" and len(args) == 1:
            return LpSpace(args[0])
        if head == "lorentz_d" and len(args) in (0, 2):
            return LorentzDSpace(*args)
        if head in ("interleaved", "interleaved_sum") and len(args) in (0, 2):
            return InterleavedSum(*args)
        if head == "summing_c0" and not args:
            return SummingC0()
        raise ValueError(f"cannot parse space spec {spec!r}")
    family = spec.get("family")
    if family == "lp":
        return LpSpace(spec["p"])
    if family == "lorentz_d":
        return LorentzDSpace(spec.get("s", 0.5), spec.get("p", 1.0))
    if family == "interleaved_sum":
        return InterleavedSum(spec.get("p1", 1.0), spec.get("p2", 2.0))
    if family == "summing_c0":
        return SummingC0()
    raise ValueError(f"unknown space family {family!r}")


def norm(space: Space, f: SparseVector) -> float:
    return space.norm(f)


def basis_bounds(space: Space, N: int = 1024) -> BasisBounds:
    if N < 1:
        raise ValueError("N must be >= 1")
    return space.basis_bounds(N)


def in_cube(f: SparseVector) -> bool:
    return bool(len(f) == 0 or np.max(np.abs(f.values)) <= 1.0)
