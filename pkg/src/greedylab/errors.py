"""The four approximation-error functionals and their certificates.

For ``f`` and ``n >= 0``:

* ``sigma``       best n-term error, ``inf ||f - g||`` over ``|supp g| <= n``;
* ``sigma_tilde`` best n-term error by projections, ``inf_{|A|<=n} ||f - P_A f||``;
* ``gamma``       greedy error, ``sup_{A in GS(f,n)} ||f - P_A f||``;
* ``theta``       Chebyshev-greedy error, ``sup_{A in GS(f,n)} inf_{g in span A} ||f - g||``.

Lattice families (lp, lorentz_d, interleaved_sum) have closed forms since
zeroing coordinates is optimal there. The summing basis uses the tail-sum
picture: an approximant supported on ``B`` can reshape the tail-sum sequence
freely on each gap between consecutive points of ``B`` and must leave it
untouched after ``max B``. That gives an exact closed form for the best span
error and an exact dynamic program for ``sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .greedy import (
    DEFAULT_CAP,
    TieOverflowError,
    greedy_ordering,
    greedy_sets,
    greedy_structure,
    sample_greedy_sets,
)
from .spaces import InterleavedSum, Space, SparseVector, SummingC0

__all__ = [
    "ChainViolation",
    "ErrorProfile",
    "ErrorValue",
    "best_span_error",
    "error_profile",
    "gamma",
    "sigma",
    "sigma_tilde",
    "theta",
]

CHAIN_TOL = 1e-9
ENUM_LIMIT = 10**6


@dataclass(frozen=True)
class ErrorValue:
    value: float
    status: str = "exact"
    certificate: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


class ChainViolation(AssertionError):
    pass


def _complement(f: SparseVector, A) -> SparseVector:
    A = np.fromiter((int(a) for a in A), dtype=np.int64)
    mask = ~np.isin(f.indices, A)
    return SparseVector(f.indices[mask], f.values[mask])


def _tail_table(mags_desc: np.ndarray, p: float) -> np.ndarray:
    """``||mags[j:]||_p`` for ``j = 0..len`` (input sorted non-increasing)."""
    out = np.zeros(mags_desc.size + 1)
    if mags_desc.size == 0:
        return out
    if math.isinf(p):
        out[:-1] = mags_desc
        return out
    top = mags_desc[0]
    pw = np.cumsum(((mags_desc / top) ** p)[::-1])[::-1]
    out[:-1] = top * pw ** (1.0 / p)
    return out


# ---------------------------------------------------------------- summing basis


def _tails(f: SparseVector) -> np.ndarray:
    """Tail sums ``T_i = sum_{j >= i} a_j`` at support positions, in index order."""
    return np.cumsum(f.values[::-1])[::-1]


def _summing_span(f: SparseVector, B) -> tuple[float, dict]:
    B = np.unique(np.fromiter((int(b) for b in B), dtype=np.int64))
    T = np.append(_tails(f), 0.0)
    keys = np.union1d(np.union1d(f.indices, B), [1])
    tk = T[np.searchsorted(f.indices, keys, side="left")]
    seg = np.searchsorted(B, keys, side="left")  # gap id; len(B) means past max B
    r = B.size
    free = tk[seg == r]
    worst = float(np.abs(free).max()) if free.size else 0.0
    mids = np.zeros(r + 1)
    for i in range(r):
        vals = tk[seg == i]
        if vals.size:
            lo, hi = vals.min(), vals.max()
            worst = max(worst, (hi - lo) / 2)
            mids[i] = (hi + lo) / 2
    # tail sums of g are mids[i] on gap i, so c_{b_i} = mids[i] - mids[i+1]
    coeffs = (mids[:-1] - mids[1:]).tolist()
    return worst, {"support": B.tolist(), "coefficients": coeffs}


def _summing_sigma(f: SparseVector, n: int) -> tuple[float, dict]:
    """Exact best n-term error for the summing basis.

    Without loss of generality the approximant lives on ``supp f``; choosing
    it amounts to cutting the tail-sum sequence into at most ``n`` contiguous
    segments, each costing half its range, with every tail after the last cut
    costing its absolute value.
    """
    T = _tails(f)
    s = T.size
    # rng[i, j] = (max - min)/2 of T[i..j], inf below the diagonal
    rng = np.full((s, s), np.inf)
    for i in range(s):
        run = T[i:]
        rng[i, i:] = (np.maximum.accumulate(run) - np.minimum.accumulate(run)) / 2
    suffix = np.append(np.maximum.accumulate(np.abs(T)[::-1])[::-1], 0.0)
    best_val, best_cut = float(suffix[0]), (0, -1)
    dp = rng[0].copy()
    backs = [None]
    for c in range(1, n + 1):
        if c > 1:
            prev = np.concatenate(([np.inf], dp[:-1]))
            cand = np.maximum(prev[:, None], rng)
            backs.append(cand.argmin(axis=0))
            dp = cand.min(axis=0)
        tot = np.maximum(dp, suffix[1:])
        j = int(np.argmin(tot))
        if tot[j] < best_val:
            best_val, best_cut = float(tot[j]), (c, j)
    c, j = best_cut
    ends = []
    while c > 0:
        ends.append(j)
        j = int(backs[c - 1][j]) - 1 if c > 1 else -1
        c -= 1
    _, cert = _summing_span(f, f.indices[sorted(ends)].tolist())
    return best_val, cert


def _summing_sigma_tilde(f: SparseVector, n: int) -> tuple[float, dict]:
    """Branch and bound from the largest index down.

    The running maximum of ``|tail|`` is a lower bound for every completion.
    """
    a = f.values
    s = a.size
    best = [float(np.abs(_tails(f)).max()) if s else 0.0, ()]

    def dfs(i, t, removed, mx, chosen):
        if mx >= best[0]:
            return
        if i < 0:
            best[0], best[1] = mx, chosen
            return
        if removed < n:
            dfs(i - 1, t, removed + 1, mx, chosen + (i,))
        t2 = t + a[i]
        dfs(i - 1, t2, removed, max(mx, abs(t2)), chosen)

    dfs(s - 1, 0.0, 0, 0.0, ())
    return best[0], {"set": sorted(f.indices[list(best[1])].tolist())}


# ---------------------------------------------------------------- public API


def best_span_error(space: Space, f: SparseVector, B) -> float:
    """``inf_{g in span{x_b : b in B}} ||f - g||``."""
    if isinstance(space, SummingC0):
        return _summing_span(f, B)[0]
    if space.lattice:
        return space.norm(_complement(f, B))
    raise NotImplementedError(f"no best-span solver for {space.family}")


def _interleaved_parts(space: InterleavedSum, f: SparseVector):
    odd = f.indices % 2 == 1
    parts = []
    for mask, p in ((odd, space.p1), (~odd, space.p2)):
        idx, mags = f.indices[mask], np.abs(f.values[mask])
        order = np.lexsort((idx, -mags))
        parts.append((idx[order], _tail_table(mags[order], p)))
    return parts


def sigma(space: Space, f: SparseVector, n: int, window: int = 4) -> ErrorValue:
    """Best n-term approximation error.

    ``window`` is accepted for interface compatibility; every supported
    family has an exact path that never needs indices outside ``supp f``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(f):
        return ErrorValue(0.0, "exact", {"support": f.indices.tolist(), "coefficients": f.values.tolist()})
    if isinstance(space, SummingC0):
        val, cert = _summing_sigma(f, n)
        return ErrorValue(val, "exact", cert)
    if isinstance(space, InterleavedSum):
        (oi, ot), (ei, et) = _interleaved_parts(space, f)
        js = np.arange(max(0, n - ei.size), min(n, oi.size) + 1)
        vals = ot[js] + et[n - js]
        j = int(js[np.argmin(vals)])
        keep = sorted(oi[:j].tolist() + ei[: n - j].tolist())
        return ErrorValue(float(vals.min()), "exact", {"support": keep, "odd_kept": j})
    if space.lattice:
        keep = greedy_ordering(f)[:n]
        return ErrorValue(space.norm(_complement(f, keep)), "exact", {"support": sorted(keep)})
    raise NotImplementedError(f"no sigma solver for {space.family}")


def sigma_tilde(space: Space, f: SparseVector, n: int) -> ErrorValue:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(f):
        return ErrorValue(0.0, "exact", {"set": f.indices.tolist()})
    if isinstance(space, SummingC0):
        val, cert = _summing_sigma_tilde(f, n)
        return ErrorValue(val, "exact", cert)
    if space.lattice:
        # for lattice norms best projections coincide with best n-term approximants
        sv = sigma(space, f, n)
        return ErrorValue(sv.value, "exact", {"set": sv.certificate["support"]})
    raise NotImplementedError(f"no sigma_tilde solver for {space.family}")


def _greedy_family(f, n, cap, seed):
    try:
        return greedy_sets(f, n, cap), "exact"
    except TieOverflowError:
        return sample_greedy_sets(f, n, cap, seed), "sampled"


def _interleaved_gamma(space, f, n):
    st = greedy_structure(f, n)
    (oi, ot), (ei, et) = _interleaved_parts(space, f)
    fo = sum(1 for k in st.forced if k % 2 == 1)
    fe = len(st.forced) - fo
    bo = sum(1 for k in st.block if k % 2 == 1)
    be = len(st.block) - bo
    js = np.arange(max(0, st.r - be), min(st.r, bo) + 1)
    vals = ot[fo + js] + et[fe + st.r - js]
    j = int(js[np.argmax(vals)])
    A = sorted(oi[: fo + j].tolist() + ei[: fe + st.r - j].tolist())
    return float(vals.max()), {"set": A}


def gamma(space: Space, f: SparseVector, n: int, cap: int = DEFAULT_CAP, seed: int = 0) -> ErrorValue:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(f):
        return ErrorValue(0.0, "exact", {"set": f.indices.tolist()})
    if space.rearrangement_invariant:
        # every greedy set leaves the same multiset of magnitudes behind
        A = greedy_ordering(f)[:n]
        return ErrorValue(space.norm(_complement(f, A)), "exact", {"set": sorted(A)})
    if isinstance(space, InterleavedSum):
        val, cert = _interleaved_gamma(space, f, n)
        return ErrorValue(val, "exact", cert)
    fam, status = _greedy_family(f, n, cap, seed)
    pos = {int(k): i for i, k in enumerate(f.indices)}
    X = np.repeat(f.values[None, :], len(fam.sets), axis=0)
    for r, A in enumerate(fam.sets):
        X[r, [pos[a] for a in A if a in pos]] = 0.0
    vals = space.norm_dense(X, f.indices)
    k = int(np.argmax(vals))
    cert = {"set": list(fam.sets[k]), "sets_examined": len(fam.sets)}
    return ErrorValue(float(vals[k]), status, cert)


def theta(space: Space, f: SparseVector, n: int, cap: int = DEFAULT_CAP, seed: int = 0) -> ErrorValue:
    """Chebyshev-greedy error; the certificate carries the bracket ``[sigma_n, theta_n]``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(f):
        return ErrorValue(0.0, "exact", {"set": f.indices.tolist(), "bracket": [0.0, 0.0]})
    lower = sigma(space, f, n).value
    if space.lattice:
        g = gamma(space, f, n, cap, seed)
        return ErrorValue(g.value, g.status, {**g.certificate, "bracket": [lower, g.value]})
    fam, status = _greedy_family(f, n, cap, seed)
    best, best_cert = -1.0, None
    for A in fam.sets:
        if isinstance(space, SummingC0):
            val, cert = _summing_span(f, A)
        else:
            val, cert = best_span_error(space, f, A), {"support": list(A)}
        if val > best:
            best, best_cert = val, cert
    best_cert = {**best_cert, "set": best_cert.get("support"), "bracket": [lower, best]}
    return ErrorValue(best, status, best_cert)


@dataclass
class ErrorProfile:
    N: int
    sigma: np.ndarray
    sigma_tilde: np.ndarray
    gamma: np.ndarray
    theta: np.ndarray
    status: dict
    certificates: dict

    def rows(self):
        for n in range(self.N + 1):
            yield (
                n,
                self.sigma[n],
                self.sigma_tilde[n],
                self.gamma[n],
                self.theta[n],
                self.status["gamma"][n],
                self.status["theta"][n],
            )

    @property
    def sampled(self) -> bool:
        return any(s == "sampled" for v in self.status.values() for s in v)


def _check_chain(prof: ErrorProfile, tol: float = CHAIN_TOL):
    s, st, g, t = prof.sigma, prof.sigma_tilde, prof.gamma, prof.theta
    scale = 1.0 + np.maximum(np.abs(g), np.abs(s))
    slack = tol * scale
    checks = {
        "sigma <= sigma_tilde": s <= st + slack,
        "sigma_tilde <= gamma": st <= g + slack,
        "sigma <= theta": s <= t + slack,
        "theta <= gamma": t <= g + slack,
    }
    for name, ok in checks.items():
        if not np.all(ok):
            n = int(np.argmin(ok))
            raise ChainViolation(f"{name} fails at n={n}")


def error_profile(space: Space, f: SparseVector, N: int, cap: int = DEFAULT_CAP, seed: int = 0) -> ErrorProfile:
    """All four error sequences for ``n = 0..N``; raises if the chain fails.

    Entries for ``n >= |supp f|`` are zero and are not recomputed.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    names = ("sigma", "sigma_tilde", "gamma", "theta")
    funcs = {
        "sigma": lambda n: sigma(space, f, n),
        "sigma_tilde": lambda n: sigma_tilde(space, f, n),
        "gamma": lambda n: gamma(space, f, n, cap, seed),
        "theta": lambda n: theta(space, f, n, cap, seed),
    }
    vals = {k: np.zeros(N + 1) for k in names}
    status = {k: ["exact"] * (N + 1) for k in names}
    certs = {k: [{}] * (N + 1) for k in names}
    for n in range(min(N, len(f) - 1) + 1):
        for k in names:
            ev = funcs[k](n)
            vals[k][n], status[k][n], certs[k][n] = ev.value, ev.status, ev.certificate
    prof = ErrorProfile(N, vals["sigma"], vals["sigma_tilde"], vals["gamma"], vals["theta"], status, certs)
    _check_chain(prof)
    return prof
