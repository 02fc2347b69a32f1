"""Weight sequences and their dilation/regularity analytics.

A weight is a positive sequence ``w(1), w(2), ...``. Three families are
supported: pure powers ``n**alpha``, powers with a logarithmic factor
``n**alpha * (1 + log n)**beta`` and finite tables with an extension rule.

All infima and suprema over the natural numbers are truncated at explicit
horizons; values returned for the power family are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Weight",
    "WeightAnalysis",
    "check_regularity",
    "classify_weight",
    "cumulative_weight",
    "eval_weight",
    "parse_weight",
    "phi_bounds",
    "regularity_indices",
    "weight_values",
]

# largest index we agree to evaluate; keeps float(k * m) exact
MAX_INDEX = 2**53

_REL_TOL = 1e-12


@dataclass(frozen=True)
class Weight:
    """A positive weight sequence.

    Parameters
    ----------
    family : {"power", "power_log", "table"}
    alpha, beta : float
        Exponents for the closed-form families.
    values : tuple of float
        Table entries ``w(1), ..., w(len(values))`` for ``family="table"``.
    extend : {"hold", "error"}
        How a table is continued past its last entry.
    """

    family: str
    alpha: float = 0.0
    beta: float = 0.0
    values: tuple = ()
    extend: str = "hold"

    def __post_init__(self):
        if self.family not in ("power", "power_log", "table"):
            raise ValueError(f"unknown weight family {self.family!r}")
        if self.family == "table":
            if not self.values:
                raise ValueError("table weight needs at least one value")
            if any(not (v > 0) for v in self.values):
                raise ValueError("table weight values must be positive")
            if self.extend not in ("hold", "error"):
                raise ValueError(f"unknown extension rule {self.extend!r}")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def power(cls, alpha: float) -> Weight:
        return cls("power", alpha=float(alpha))

    @classmethod
    def power_log(cls, alpha: float, beta: float) -> Weight:
        return cls("power_log", alpha=float(alpha), beta=float(beta))

    @classmethod
    def table(cls, values, extend: str = "hold") -> Weight:
        return cls("table", values=tuple(values), extend=extend)

    def __call__(self, n):
        return eval_weight(self, n)

    def to_dict(self) -> dict:
        if self.family == "power":
            return {"family": "power", "alpha": self.alpha}
        if self.family == "power_log":
            return {"family": "power_log", "alpha": self.alpha, "beta": self.beta}
        return {"family": "table", "values": list(self.values), "extend": self.extend}


def parse_weight(spec) -> Weight:
    """Build a :class:`Weight` from a JSON-style dict or a ``"power:0.5"`` string."""
    if isinstance(spec, Weight):
        return spec
    if isinstance(spec, str):
        head, *rest = spec.split(":")
        if head == "power" and len(rest) == 1:
            return Weight.power(float(rest[0]))
        if head == "power_log" and len(rest) == 2:
            return Weight.power_log(float(rest[0]), float(rest[1]))
        raise ValueError(f"cannot parse weight spec {spec!r}")
    family = spec.get("family")
    if family == "power":
        return Weight.power(spec["alpha"])
    if family == "power_log":
        return Weight.power_log(spec["alpha"], spec["beta"])
    if family == "table":
        return Weight.table(spec["values"], spec.get("extend", "hold"))
    raise ValueError(f"unknown weight family {family!r}")


def weight_values(w: Weight, n) -> np.ndarray:
    """Vectorised ``w(n)`` for an integer array ``n`` (all entries >= 1)."""
    n = np.asarray(n)
    if n.size and n.min() < 1:
        raise ValueError("weights are indexed from 1; got index < 1")
    if n.size and n.max() > MAX_INDEX:
        raise OverflowError(f"index {int(n.max())} exceeds {MAX_INDEX}")
    nf = n.astype(float)
    if w.family == "power":
        return nf**w.alpha
    if w.family == "power_log":
        return nf**w.alpha * (1.0 + np.log(nf)) ** w.beta
    vals = np.asarray(w.values)
    if w.extend == "error" and n.size and n.max() > len(vals):
        raise IndexError(f"index {int(n.max())} beyond table of length {len(vals)}")
    return vals[np.minimum(n, len(vals)) - 1]


def eval_weight(w: Weight, n: int) -> float:
    if n < 1:
        raise ValueError(f"weight index must be >= 1, got {n}")
    if w.family == "power":
        return float(n) ** w.alpha
    return float(weight_values(w, np.array([n]))[0])


def cumulative_weight(w: Weight, n: int) -> float:
    """Partial sum ``sum_{j<=n} w(j)/j``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    j = np.arange(1, n + 1)
    return math.fsum(weight_values(w, j) / j)


def phi_bounds(w: Weight, m: int, K: int = 1024) -> tuple[float, float]:
    """Smallest and largest dilation ratio ``w(k*m)/w(k)`` over ``1 <= k <= K``."""
    if m < 2 or K < 1:
        raise ValueError("phi_bounds needs m >= 2 and K >= 1")
    if w.family == "power":
        r = float(m) ** w.alpha
        return r, r
    k = np.arange(1, K + 1, dtype=np.int64)
    if K * m > MAX_INDEX:
        bad = MAX_INDEX // m + 1
        raise OverflowError(f"k*m overflows the index range at k={bad}")
    try:
        num = weight_values(w, k * m)
    except IndexError:
        # report the first k whose dilation leaves the table
        bad = len(w.values) // m + 1
        raise IndexError(f"w(k*m) undefined beyond the table at k={bad}") from None
    ratio = num / weight_values(w, k)
    return float(ratio.min()), float(ratio.max())


def regularity_indices(w: Weight, M: int = 1024, K: int = 1024) -> tuple[float, float]:
    """Truncated dilation indices ``(i_w, I_w)``.

    The supremum/infimum over ``m`` runs over ``2 <= m <= M`` and each
    dilation envelope uses ``k <= K``. Under truncation the first value is a
    lower estimate of ``i_w`` and the second an upper estimate of ``I_w``.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    if w.family == "power":
        return w.alpha, w.alpha
    lo_best, hi_best = -math.inf, math.inf
    for m in range(2, M + 1):
        lo, hi = phi_bounds(w, m, K)
        lm = math.log(m)
        lo_best = max(lo_best, math.log(lo) / lm)
        hi_best = min(hi_best, math.log(hi) / lm)
    return lo_best, hi_best


@dataclass(frozen=True)
class RegularityCheck:
    ok: bool
    violation: tuple | None = None

    def __bool__(self):
        return self.ok


def check_regularity(w: Weight, beta: float, C: float, N: int, side: str = "LRP") -> RegularityCheck:
    """Scan all pairs ``1 <= n <= m <= N`` for the lower/upper regularity property.

    LRP: ``C * w(m)/w(n) >= (m/n)**beta``; URP: ``C * w(m)/w(n) <= (m/n)**beta``.
    Returns a truthy :class:`RegularityCheck`, or a falsy one carrying the first
    violating pair ``(n, m)`` in lexicographic order.
    """
    if side not in ("LRP", "URP"):
        raise ValueError(f"side must be LRP or URP, got {side!r}")
    if N < 1:
        raise ValueError("N must be >= 1")
    idx = np.arange(1, N + 1)
    wv = weight_values(w, idx)
    lhs = C * wv[None, :] / wv[:, None]  # [n-1, m-1]
    rhs = (idx[None, :] / idx[:, None].astype(float)) ** beta
    if side == "LRP":
        bad = lhs < rhs * (1 - _REL_TOL)
    else:
        bad = lhs > rhs * (1 + _REL_TOL)
    bad &= idx[None, :] >= idx[:, None]
    if not bad.any():
        return RegularityCheck(True)
    n0, m0 = np.argwhere(bad)[0]
    return RegularityCheck(False, (int(n0) + 1, int(m0) + 1))


@dataclass
class WeightAnalysis:
    """Analytics of a weight over a finite horizon (all flags are "up to horizon")."""

    weight: Weight
    horizon: int
    nondecreasing: bool
    doubling_constant: float
    i_w_estimate: float
    I_w_estimate: float
    lrp_witness: tuple | None
    urp_witness: tuple | None
    notes: list = field(default_factory=list)

    @property
    def w_plus(self) -> bool:
        return self.nondecreasing and self.i_w_estimate > 0

    @property
    def w_minus(self) -> bool:
        return self.nondecreasing and self.I_w_estimate < 1

    def to_dict(self) -> dict:
        return {
            "weight": self.weight.to_dict(),
            "horizon": self.horizon,
            "truncated": True,
            "nondecreasing": self.nondecreasing,
            "doubling_constant": self.doubling_constant,
            "i_w_estimate": self.i_w_estimate,
            "I_w_estimate": self.I_w_estimate,
            "w_plus": self.w_plus,
            "w_minus": self.w_minus,
            "lrp_witness": list(self.lrp_witness) if self.lrp_witness else None,
            "urp_witness": list(self.urp_witness) if self.urp_witness else None,
            "notes": list(self.notes),
        }


_BETA_FRACTIONS = (0.99, 0.9, 0.75, 0.5, 0.25, 0.125, 0.0625)
_C_GRID = tuple(2.0**j for j in range(11))


def classify_weight(w: Weight, N: int = 1024) -> WeightAnalysis:
    if N < 4:
        raise ValueError("classify_weight needs N >= 4")
    idx = np.arange(1, 2 * N + 1)
    wv = weight_values(w, idx)
    nondecreasing = bool(np.all(np.diff(wv[:N]) >= 0))
    doubling = float(np.max(wv[1::2][:N] / wv[:N]))
    i_w, I_w = regularity_indices(w, N, N)
    notes = []
    if not nondecreasing:
        notes.append("weight decreases somewhere on the horizon")

    lrp = None
    if i_w > 0:
        for frac in _BETA_FRACTIONS:
            beta = i_w * frac
            hit = next((C for C in _C_GRID if check_regularity(w, beta, C, N, "LRP")), None)
            if hit is not None:
                lrp = (hit, beta)
                break
    urp = None
    if I_w < 1:
        for frac in _BETA_FRACTIONS:
            beta = I_w + (1 - I_w) * (1 - frac)
            if beta <= 0:
                continue
            hit = next((1 / C for C in _C_GRID if check_regularity(w, beta, 1 / C, N, "URP")), None)
            if hit is not None:
                urp = (hit, beta)
                break
    return WeightAnalysis(w, N, nondecreasing, doubling, i_w, I_w, lrp, urp, notes)
