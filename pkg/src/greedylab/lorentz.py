"""Weighted Lorentz sequence quasi-norms and their dyadic counterparts.

For a weight ``eta`` and ``0 < q <= inf``::

    ||s||_{l^q_eta} = (sum_n (eta(n) s*_n)**q / n)**(1/q)

with ``s*`` the non-increasing rearrangement of ``|s|``; for ``q = inf`` the
sum becomes ``sup_n eta(n) s*_n``. The dyadic form samples ``n = kappa**j``
and drops the ``1/n`` factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spaces import SparseVector
from .weights import Weight, weight_values

__all__ = [
    "LorentzParams",
    "dyadic_lorentz_norm",
    "eta_values",
    "lorentz_norm",
    "lorentz_norm_sorted",
    "power_mean",
    "product_weight_lorentz",
]


@dataclass(frozen=True)
class LorentzParams:
    """``eta`` is a :class:`Weight` or a table of values ``eta(1), eta(2), ...``."""

    eta: object
    q: float
    kappa: int = 2

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError(f"q must be > 0, got {self.q}")
        if int(self.kappa) != self.kappa or self.kappa < 2:
            raise ValueError(f"kappa must be an integer >= 2, got {self.kappa}")
        if not isinstance(self.eta, Weight):
            object.__setattr__(self, "eta", tuple(float(x) for x in self.eta))


def eta_values(eta, n: int) -> np.ndarray:
    """``eta(1..n)`` from a weight or a table; short tables are an error."""
    if isinstance(eta, Weight):
        return weight_values(eta, np.arange(1, n + 1)) if n else np.zeros(0)
    eta = np.asarray(eta, dtype=float)
    if eta.size < n:
        raise ValueError(f"eta table has {eta.size} entries; need at least {n}")
    return eta[:n]


def power_mean(terms: np.ndarray, q: float, denom: np.ndarray | None) -> float:
    """``(sum terms**q / denom)**(1/q)`` scaled by the largest term."""
    if terms.size == 0:
        return 0.0
    if math.isinf(q):
        return float(terms.max())
    top = float(terms.max())
    if top == 0:
        return 0.0
    parts = (terms / top) ** q
    if denom is not None:
        parts = parts / denom
    return top * math.fsum(parts.tolist()) ** (1.0 / q)


def lorentz_norm_sorted(s_star: np.ndarray, eta, q: float) -> float:
    """Lorentz norm from an already sorted magnitude sequence."""
    n = s_star.size
    terms = eta_values(eta, n) * s_star
    return power_mean(terms, q, np.arange(1, n + 1, dtype=float))


def lorentz_norm(f: SparseVector, params: LorentzParams) -> float:
    s_star = -np.sort(-np.abs(f.values))
    return lorentz_norm_sorted(s_star, params.eta, params.q)


def dyadic_lorentz_norm(f: SparseVector, params: LorentzParams) -> float:
    s_star = -np.sort(-np.abs(f.values))
    if s_star.size == 0:
        return 0.0
    pos = [1]
    while pos[-1] * params.kappa <= s_star.size:
        pos.append(pos[-1] * params.kappa)
    pos = np.array(pos)
    terms = eta_values(params.eta, s_star.size)[pos - 1] * s_star[pos - 1]
    return power_mean(terms, params.q, None)


def product_weight_lorentz(f: SparseVector, w: Weight, eta_vals, q: float) -> float:
    """Lorentz norm for the pointwise product weight ``n -> w(n) * eta(n)``."""
    n = len(f)
    eta = eta_values(eta_vals, n)
    prod = weight_values(w, np.arange(1, n + 1)) * eta if n else np.zeros(0)
    s_star = -np.sort(-np.abs(f.values))
    return lorentz_norm_sorted(s_star, prod, q)
