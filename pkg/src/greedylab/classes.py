"""Approximation-class quasi-norms and ratio sweeps.

For a weight ``w`` and ``0 < q <= inf`` the three class quasi-norms are::

    ||f||_X + (sum_{n>=1} (w(n) e_n(f))**q / n)**(1/q)

with ``e_n`` equal to ``sigma_n`` (class A), ``gamma_n`` (class G) or
``theta_n`` (class CG). Errors vanish for ``n >= |supp f|`` so the series
is a finite sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ErrorProfile, error_profile
from .lorentz import power_mean, product_weight_lorentz
from .spaces import Space, SparseVector
from .weights import Weight, weight_values

__all__ = [
    "GENERATORS",
    "ClassNorms",
    "ClassParams",
    "SweepReport",
    "chain_check",
    "class_norm",
    "class_norms",
    "generate_vector",
    "ratio_sweep",
]

_WHICH = {"A": "sigma", "G": "gamma", "CG": "theta"}


@dataclass(frozen=True)
class ClassParams:
    w: Weight
    q: float

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError(f"q must be > 0, got {self.q}")


@dataclass(frozen=True)
class ClassNorms:
    a_norm: float
    g_norm: float
    cg_norm: float
    lorentz_ref: float | None = None
    sampled: bool = False

    def chain_holds(self, tol: float = 1e-9) -> bool:
        return self.a_norm <= self.cg_norm * (1 + tol) and self.cg_norm <= self.g_norm * (1 + tol)


def _series(errs: np.ndarray, w: Weight, q: float) -> float:
    """``(sum_{n>=1} (w(n) e_n)**q / n)**(1/q)`` over the stored entries."""
    e = errs[1:]
    if e.size == 0:
        return 0.0
    n = np.arange(1, e.size + 1)
    terms = weight_values(w, n) * e
    return power_mean(terms, q, n.astype(float))


def _profile_for(space, f, profile, cap, seed):
    if profile is None:
        profile = error_profile(space, f, max(len(f) - 1, 0), cap, seed)
    return profile


def class_norm(
    space: Space,
    f: SparseVector,
    params: ClassParams,
    which: str = "A",
    profile: ErrorProfile | None = None,
    cap: int = 10_000,
    seed: int = 0,
) -> float:
    """One of the class quasi-norms ``A``, ``G`` or ``CG``.

    A precomputed ``profile`` (covering ``n < |supp f|``) may be passed to
    avoid recomputing the error sequences.
    """
    if which not in _WHICH:
        raise ValueError(f"which must be one of A, G, CG; got {which!r}")
    prof = _profile_for(space, f, profile, cap, seed)
    errs = getattr(prof, _WHICH[which])[: max(len(f), 1)]
    return space.norm(f) + _series(errs, params.w, params.q)


def class_norms(
    space: Space,
    f: SparseVector,
    params: ClassParams,
    h_r=None,
    profile: ErrorProfile | None = None,
    cap: int = 10_000,
    seed: int = 0,
) -> ClassNorms:
    """All three class quasi-norms plus the Lorentz reference when ``h_r`` is given."""
    prof = _profile_for(space, f, profile, cap, seed)
    base = space.norm(f)
    s = max(len(f), 1)
    vals = {k: base + _series(getattr(prof, v)[:s], params.w, params.q) for k, v in _WHICH.items()}
    ref = None
    if h_r is not None:
        ref = product_weight_lorentz(f, params.w, h_r, params.q)
    return ClassNorms(vals["A"], vals["G"], vals["CG"], ref, prof.sampled)


def chain_check(space, f, params, cap: int = 10_000, seed: int = 0, tol: float = 1e-9):
    """Return ``(ClassNorms, ok)`` where ``ok`` means ``A <= CG <= G`` within ``tol``."""
    cn = class_norms(space, f, params, cap=cap, seed=seed)
    return cn, cn.chain_holds(tol)


# ---------------------------------------------------------------- generators

GENERATORS = ("geometric", "uniform", "near_tie", "parity_ladder")


def generate_vector(kind: str, size: int, rng: np.random.Generator, max_index: int | None = None) -> SparseVector:
    """Random test vector with ``size`` nonzero coefficients.

    Kinds
    -----
    geometric
        magnitudes ``r**k`` with ``r`` drawn in ``[0.5, 0.95]``.
    uniform
        magnitudes uniform in ``[0.5, 1]``.
    near_tie
        magnitudes ``1 + delta_k`` with a strictly increasing ladder
        ``delta_k in (0, 1e-3)``.
    parity_ladder
        near-tie ladder with the even-indexed half sitting just above the
        odd-indexed half. On an interleaved sum whose odd copy is the larger
        norm, greedy removes the cheap even terms first while best
        approximation removes the odd ones.
    """
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}")
    if size < 1:
        raise ValueError("size must be >= 1")
    max_index = max_index or 3 * size
    signs = rng.choice([-1.0, 1.0], size=size)
    if kind == "parity_ladder":
        half = size // 2
        odd = 2 * rng.choice(np.arange(max_index // 2 + 1), size=size - half, replace=False) + 1
        even = 2 * rng.choice(np.arange(1, max_index // 2 + 2), size=half, replace=False)
        deltas = np.sort(rng.uniform(0, 1e-3, size=size))
        mags = 1.0 + np.concatenate([deltas[: size - half], deltas[size - half :]])
        return SparseVector(np.concatenate([odd, even]), signs * mags)
    idx = rng.choice(np.arange(1, max_index + 1), size=size, replace=False)
    if kind == "geometric":
        r = rng.uniform(0.5, 0.95)
        mags = r ** rng.permutation(size)
    elif kind == "uniform":
        mags = rng.uniform(0.5, 1.0, size=size)
    else:
        mags = 1.0 + rng.permutation(np.sort(rng.uniform(0, 1e-3, size=size)))
    return SparseVector(idx, signs * mags)


@dataclass
class SweepReport:
    sizes: list
    max_ratios: dict  # ratio name -> list aligned with sizes
    trials: int
    seed: int
    generator: str

    RATIOS = ("G/A", "CG/A", "A/L", "L/A")

    def growth(self, name: str) -> list:
        r = self.max_ratios[name]
        return [r[i + 1] / r[i] for i in range(len(r) - 1)]

    def rows(self):
        for i, s in enumerate(self.sizes):
            for name in self.RATIOS:
                yield s, name, self.max_ratios[name][i]

    def to_dict(self):
        return {
            "sizes": list(self.sizes),
            "max_ratios": {k: list(v) for k, v in self.max_ratios.items()},
            "trials": self.trials,
            "seed": self.seed,
            "generator": self.generator,
        }


def ratio_sweep(
    space: Space,
    params: ClassParams,
    h_r,
    sizes=(4, 8, 16),
    trials: int = 200,
    seed: int = 0,
    generator: str = "geometric",
    cap: int = 10_000,
) -> SweepReport:
    """Per-size maxima of ``G/A``, ``CG/A``, ``A/L`` and ``L/A``.

    ``L`` is the Lorentz norm with weight ``w * h_r``; ``h_r`` is a table
    of right democracy values covering the largest size. ``generator="mixed"``
    cycles through every entry of :data:`GENERATORS`.
    """
    rng = np.random.default_rng(seed)
    out = {k: [] for k in SweepReport.RATIOS}
    for size in sizes:
        best = dict.fromkeys(SweepReport.RATIOS, 0.0)
        for t in range(trials):
            kind = GENERATORS[t % len(GENERATORS)] if generator == "mixed" else generator
            f = generate_vector(kind, size, rng)
            cn = class_norms(space, f, params, h_r=h_r, cap=cap, seed=seed)
            best["G/A"] = max(best["G/A"], cn.g_norm / cn.a_norm)
            best["CG/A"] = max(best["CG/A"], cn.cg_norm / cn.a_norm)
            best["A/L"] = max(best["A/L"], cn.a_norm / cn.lorentz_ref)
            best["L/A"] = max(best["L/A"], cn.lorentz_ref / cn.a_norm)
        for k, vals in out.items():
            vals.append(best[k])
    return SweepReport(list(sizes), out, trials, seed, generator)

