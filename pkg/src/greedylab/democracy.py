"""Democracy functions and greedy-type constants.

Every constant is reported as a certified lower bound: the value is the
largest defining ratio attained by an explicit input (kept as the witness).
Constants that are known exactly for a family carry the ``analytic`` tag.

Summing-basis indicator norms depend only on the ordered sign sequence, not
on where the indices sit, which makes small democracy tables for that
family exhaustively computable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import gamma, sigma, sigma_tilde
from .greedy import greedy_ordering, greedy_structure
from .spaces import InterleavedSum, LorentzDSpace, LpSpace, Space, SparseVector, SummingC0, basis_bounds

__all__ = [
    "KINDS",
    "ConstantEstimate",
    "DemocracyTable",
    "certify_pair_hypothesis",
    "constant_estimate",
    "democracy_table",
    "superdemocracy_pair_bound",
    "vector_catalog",
]

KINDS = (
    "superdemocracy",
    "democracy",
    "succ",
    "slc",
    "tqg",
    "bou",
    "quasi_greedy",
    "suppression_qg",
    "unconditionality",
    "greedy",
    "almost_greedy",
)

_UNCONDITIONAL_KINDS = {"succ", "tqg", "bou", "quasi_greedy", "suppression_qg", "unconditionality"}

# ladder perturbation used by structured candidates
LADDER_DELTA = 1e-6


@dataclass
class DemocracyTable:
    N: int
    h_l: np.ndarray  # h_l[n-1] for n = 1..N
    h_r: np.ndarray
    method: list
    witnesses: dict = field(default_factory=dict)  # n -> {"left": (A, eps), "right": (A, eps)}

    def rows(self):
        for n in range(1, self.N + 1):
            yield n, self.h_l[n - 1], self.h_r[n - 1], self.method[n - 1]


@dataclass
class ConstantEstimate:
    kind: str
    value: float
    method: str  # "analytic" or "search"
    witness: dict
    budget_used: int
    horizon: int

    def to_dict(self):
        return {
            "kind": self.kind,
            "value": self.value,
            "method": self.method,
            "witness": self.witness,
            "budget_used": self.budget_used,
            "horizon": self.horizon,
        }


def _pow(n, p):
    n = np.asarray(n, dtype=float)
    return np.where(n > 0, 1.0, 0.0) if math.isinf(p) else n ** (1.0 / p)


def _closed_form(space: Space, N: int):
    n = np.arange(1, N + 1)
    if isinstance(space, LpSpace):
        h = _pow(n, space.p)
        return h, h.copy()
    if isinstance(space, LorentzDSpace):
        h = np.cumsum(space.v(n)) ** (1.0 / space.p)
        return h, h.copy()
    if isinstance(space, InterleavedSum):
        lo, hi = np.empty(N), np.empty(N)
        for k in n:
            j = np.arange(k + 1)
            vals = _pow(j, space.p1) + _pow(k - j, space.p2)
            lo[k - 1], hi[k - 1] = vals.min(), vals.max()
        return lo, hi
    return None


def _closed_form_witness(space: Space, n: int, side: str):
    """An explicit ``(A, eps)`` attaining the closed-form value."""
    if isinstance(space, InterleavedSum):
        j = np.arange(n + 1)
        vals = _pow(j, space.p1) + _pow(n - j, space.p2)
        j = int(j[np.argmin(vals)] if side == "left" else j[np.argmax(vals)])
        A = [2 * i + 1 for i in range(j)] + [2 * i + 2 for i in range(n - j)]
        return sorted(A), [1] * n
    return list(range(1, n + 1)), [1] * n


def democracy_table(space: Space, N: int, budget: int = 4096, seed: int = 0) -> DemocracyTable:
    """Left and right democracy functions for ``n = 1..N``.

    Closed forms cover lp, lorentz_d and interleaved sums. The summing basis
    is handled by exhaustive enumeration of sign sequences while ``2**n``
    fits in ``budget`` and by a structured catalog plus seeded random sign
    sequences otherwise.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    cf = _closed_form(space, N)
    if cf is not None:
        lo, hi = cf
        return DemocracyTable(N, lo, hi, ["closed_form"] * N)
    rng = np.random.default_rng(seed)
    lo, hi, method, wit = np.empty(N), np.empty(N), [], {}
    for n in range(1, N + 1):
        idx = np.arange(1, n + 1)
        if 2**n <= budget:
            X = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
            tag = "exhaustive"
        else:
            alt = np.where(idx % 2 == 1, 1.0, -1.0)
            blocks = [np.ones(n), -np.ones(n), alt, -alt]
            for b in (2, 3, 4):
                blocks.append(np.where(((idx - 1) // b) % 2 == 0, 1.0, -1.0))
            X = np.vstack(blocks + [rng.choice([-1.0, 1.0], size=(max(budget // 4, 1), n))])
            tag = "structured_search"
        vals = space.norm_dense(X, idx)
        i, k = int(np.argmin(vals)), int(np.argmax(vals))
        lo[n - 1], hi[n - 1] = vals[i], vals[k]
        method.append(tag)
        wit[n] = {"left": (idx.tolist(), X[i].astype(int).tolist()), "right": (idx.tolist(), X[k].astype(int).tolist())}
    return DemocracyTable(N, lo, hi, method, wit)


# ---------------------------------------------------------------- candidates


def vector_catalog(N: int, budget: int, rng: np.random.Generator, max_support: int | None = None):
    """Structured test vectors within horizon ``N`` followed by random ones.

    Structured entries: constant and alternating signs on initial segments,
    alternating near-tie ladders, parity-pure sets, tail blocks in
    ``(3N, 4N]`` and monotone near-tie ladders. Yields ``(label, f)``.
    """
    cap = min(N, max_support or N)
    sizes = sorted({s for s in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128) if s <= cap} | {cap})
    d = LADDER_DELTA
    for s in sizes:
        idx = np.arange(1, s + 1)
        alt = np.where(idx % 2 == 1, 1.0, -1.0)
        ladder = 1 + d * idx / s
        yield f"constant[{s}]", SparseVector(idx, np.ones(s))
        yield f"alternating[{s}]", SparseVector(idx, alt)
        yield f"alt_ladder[{s}]", SparseVector(idx, np.where(idx % 2 == 1, 1 + d, -1.0))
        yield f"alt_ladder_rev[{s}]", SparseVector(idx, np.where(idx % 2 == 1, -1.0, 1 + d))
        yield f"parity_ladder[{s}]", SparseVector(idx, np.where(idx % 2 == 0, 1 + d, 1.0))
        yield f"ladder_up[{s}]", SparseVector(idx, alt * ladder)
        yield f"ladder_down[{s}]", SparseVector(idx, alt * ladder[::-1])
        odd = 2 * idx - 1
        if odd[-1] <= 2 * N:
            yield f"odd[{s}]", SparseVector(odd, np.ones(s))
            yield f"even[{s}]", SparseVector(odd + 1, np.ones(s))
        tail = np.arange(4 * N - s + 1, 4 * N + 1)
        yield f"tail_block[{s}]", SparseVector(tail, np.ones(s))
        yield f"tail_alt[{s}]", SparseVector(tail, alt)
    for t in range(budget):
        s = int(rng.integers(1, cap + 1))
        idx = rng.choice(np.arange(1, N + 1), size=s, replace=False)
        signs = rng.choice([-1.0, 1.0], size=s)
        style = t % 3
        if style == 0:
            mags = np.ones(s)
        elif style == 1:
            mags = rng.uniform(0.5, 1.0, size=s)
        else:
            mags = 1 + d * rng.permutation(s)
        yield f"random[{t}]", SparseVector(idx, signs * mags)


def _greedy_variants(f: SparseVector, rng):
    """A few greedy sets per order: both tie rules plus one random resolution."""
    orders = [greedy_ordering(f, "lowest_index"), greedy_ordering(f, "highest_index")]
    for m in range(1, len(f) + 1):
        seen = set()
        for o in orders:
            seen.add(tuple(sorted(o[:m])))
        st = greedy_structure(f, m)
        if st.count > 2:
            pick = rng.choice(np.array(st.block), size=st.r, replace=False).tolist()
            seen.add(tuple(sorted(list(st.forced) + pick)))
        for A in seen:
            yield m, A


def _subset_variants(f: SparseVector, rng, k: int = 4):
    idx = f.indices
    pos = idx[f.values > 0]
    out = [tuple(pos.tolist()), tuple(idx[f.values < 0].tolist())]
    out += [tuple(idx[idx % 2 == 1].tolist()), tuple(idx[idx % 2 == 0].tolist())]
    s = idx.size
    for j in (s // 2, s - 1):
        if 0 < j < s:
            out += [tuple(idx[:j].tolist()), tuple(idx[s - j :].tolist())]
    for _ in range(k):
        mask = rng.random(s) < 0.5
        out.append(tuple(idx[mask].tolist()))
    return [A for A in dict.fromkeys(out) if A]


def _mask(f, A):
    return np.isin(f.indices, np.asarray(A, dtype=np.int64))


def _eval_kind(space, kind, f, rng):
    """Best ratio for one candidate vector; returns ``(ratio, witness)``."""
    nf = space.norm(f)
    if nf == 0:
        return 0.0, None
    best, wit = 0.0, None
    sgn = np.sign(f.values)
    if kind in ("quasi_greedy", "suppression_qg", "tqg"):
        for m, A in _greedy_variants(f, rng):
            mk = _mask(f, A)
            if kind == "quasi_greedy":
                val = space.norm(SparseVector(f.indices[mk], f.values[mk]))
            elif kind == "suppression_qg":
                val = space.norm(SparseVector(f.indices[~mk], f.values[~mk]))
            else:
                val = np.abs(f.values[mk]).min() * space.norm(SparseVector(f.indices[mk], sgn[mk]))
            if val / nf > best:
                best, wit = val / nf, {"f": f.to_dict(), "A": list(A)}
    elif kind == "unconditionality":
        for A in _subset_variants(f, rng) + [tuple(A) for _, A in _greedy_variants(f, rng)]:
            mk = _mask(f, A)
            val = space.norm(SparseVector(f.indices[mk], f.values[mk]))
            if val / nf > best:
                best, wit = val / nf, {"f": f.to_dict(), "A": list(A)}
    elif kind in ("succ", "bou", "slc"):
        one_B = space.norm(SparseVector(f.indices, sgn))
        for A in _subset_variants(f, rng):
            mk = _mask(f, A)
            one_A = space.norm(SparseVector(f.indices[mk], sgn[mk]))
            if kind == "succ":
                val, den, w = one_A, one_B, {"A": list(A), "B": f.indices.tolist(), "eps": sgn.tolist()}
                if den > 0 and val / den > best:
                    best, wit = val / den, w
            elif kind == "bou":
                for t in (0.5, 1.0, 2.0):
                    g = np.where(mk, sgn, t * f.values)
                    den = space.norm(SparseVector(f.indices, g))
                    if den > 0 and one_A / den > best:
                        rest = {int(i): float(t * v) for i, v in zip(f.indices[~mk], f.values[~mk])}
                        best, wit = one_A / den, {"A": list(A), "eps": sgn[mk].tolist(), "f": rest}
            else:
                # A and B split the support, the rest is a cube element
                rest = ~mk
                B = f.indices[rest]
                if B.size < mk.sum():
                    continue
                # B carries the indicator, f is zero: pairs (A, B) with |A| <= |B|
                den = space.norm(SparseVector(B, sgn[rest]))
                if den > 0 and one_A / den > best:
                    best, wit = one_A / den, {"A": list(A), "B": B.tolist(), "f": {}}
    elif kind in ("greedy", "almost_greedy"):
        ref = sigma if kind == "greedy" else sigma_tilde
        for m in range(1, len(f)):
            den = ref(space, f, m).value
            if den <= 0:
                continue
            g = gamma(space, f, m, cap=256, seed=int(rng.integers(2**31)))
            if g.value / den > best:
                best, wit = g.value / den, {"f": f.to_dict(), "n": m, "A": g.certificate.get("set")}
    return best, wit


def _table_superdemocracy(table: DemocracyTable):
    """``max_{a <= b} h_r(a) / h_l(b)`` with the attaining pair."""
    best, arg = 0.0, (1, 1)
    for b in range(1, table.N + 1):
        a = int(np.argmax(table.h_r[:b])) + 1
        r = table.h_r[a - 1] / table.h_l[b - 1]
        if r > best:
            best, arg = r, (a, b)
    return best, arg


def constant_estimate(space: Space, kind: str, N: int = 16, budget: int = 256, seed: int = 0) -> ConstantEstimate:
    """Certified lower bound on one of the greedy-type constants.

    ``N`` bounds the support horizon of the candidates and ``budget`` the
    number of random candidates after the structured catalog.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown constant kind {kind!r}; choose from {KINDS}")
    if N < 1 or budget < 1:
        raise ValueError("N and budget must be >= 1")
    symmetric = isinstance(space, (LpSpace, LorentzDSpace))
    if symmetric or (isinstance(space, InterleavedSum) and kind in _UNCONDITIONAL_KINDS):
        return ConstantEstimate(kind, 1.0, "analytic", {"f": {1: 1.0}}, 0, N)
    if isinstance(space, SummingC0) and kind == "democracy":
        # positive indicator sums have norm |A| exactly
        return ConstantEstimate(kind, 1.0, "analytic", {"A": [1], "B": [1]}, 0, N)

    rng = np.random.default_rng(seed)
    if kind in ("superdemocracy", "democracy"):
        table = democracy_table(space, N, budget=max(budget, 2), seed=seed)
        val, (a, b) = _table_superdemocracy(table)
        wa = table.witnesses.get(a, {}).get("right") or _closed_form_witness(space, a, "right")
        wb = table.witnesses.get(b, {}).get("left") or _closed_form_witness(space, b, "left")
        return ConstantEstimate(kind, float(val), "search", {"A": wa, "B": wb}, N, N)

    max_support = 12 if kind in ("greedy", "almost_greedy") else None
    best, wit, used = 1.0, {"f": {1: 1.0}}, 0
    if kind == "slc":
        table = democracy_table(space, N, budget=max(budget, 2), seed=seed)
        best, (a, b) = _table_superdemocracy(table)
        wit = {"A": a, "B": b, "f": {}, "source": "democracy_table"}
    for label, f in vector_catalog(N, budget, rng, max_support):
        used += 1
        val, w = _eval_kind(space, kind, f, rng)
        if val > best:
            best, wit = val, {**w, "label": label}
    return ConstantEstimate(kind, float(best), "search", wit, used, N)


# ---------------------------------------------------------------- pairing lemma


def superdemocracy_pair_bound(space: Space, C1: float, n1: int) -> float:
    """``(2(2 n1 + 1)(1 + a1^p a2^p n1))**(1/p) * C1**2 * n1**(1/p)``."""
    if C1 <= 0 or n1 < 1:
        raise ValueError("need C1 > 0 and n1 >= 1")
    bb = basis_bounds(space)
    p = space.p_exponent
    return (2 * (2 * n1 + 1) * (1 + bb.alpha1**p * bb.alpha2**p * n1)) ** (1 / p) * C1**2 * n1 ** (1 / p)


def certify_pair_hypothesis(space: Space, C1: float, n1: int, N: int, budget: int = 4096, seed: int = 0):
    """Check the pairing hypothesis up to horizon ``N`` using democracy-table bounds.

    Returns ``(ok, worst)`` where ``worst`` is the largest of
    ``h_r(a)/h_l(n1 a)`` and ``h_r(b)/h_l(n1 b)`` over ``n1 a <= N``. The check
    is rigorous when every table entry is closed-form or exhaustive.
    """
    table = democracy_table(space, N, budget, seed)
    # both directions reduce to h_r(k) / h_l(n1 k): the smaller set is bounded
    # above by h_r and the larger one below by h_l
    worst = 0.0
    for k in range(1, N // n1 + 1):
        worst = max(worst, table.h_r[k - 1] / table.h_l[n1 * k - 1])
    return worst <= C1 * (1 + 1e-12), float(worst)
