"""Codewords c_a, DC components and exhaustive distribution enumeration.

Coefficient vectors a = (a_0, ..., a_{k-1}) are enumerated as a single
counter whose base-2^m digits are the a_j, little-endian.  The tail
(a_1, ..., a_{k-1}) is the outer loop; for a fixed tail the character sums
for all 2^m values of a_0 at once come from one Walsh-Hadamard transform:

    sum_x (-1)^(T(Q_a(x))) = W[w(a_0)],   W = WHT of (-1)^(T(sum_j a_j x^E_j))

where T is the composite trace GF(2^m) -> GF(2^e) -> GF(2) and w(a_0) is the
bit vector of the linear functional x -> T(a_0 x) in the polynomial basis.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .field import FieldCtx, field_new
from .forms import CodeParams, GramBuilder, exponents, validate
from .seq import BitSeq
from .table import DistTable

__all__ = [
    "BudgetExceeded",
    "Codeword",
    "DEFAULT_BUDGET",
    "ScanResult",
    "codeword",
    "dc",
    "dc_from_weight",
    "dc_support",
    "enumerate_alpha",
    "enumerate_beta",
    "enumerate_dist",
    "scan",
    "walsh_hadamard",
]

Codeword = BitSeq

DEFAULT_BUDGET = 1 << 30


class BudgetExceeded(RuntimeError):
    pass


def _check_budget(iterations: int, budget: int | None, what: str) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if iterations > budget:
        raise BudgetExceeded(
            f"{what} needs {iterations} iterations, budget is {budget}; "
            "use the closed-form mode or raise --budget"
        )


def q_values(params: CodeParams, a, xs, ctx: FieldCtx) -> np.ndarray:
    """Q_a(x) for an array of x; results lie in GF(2^e)."""
    xs = np.asarray(xs, dtype=np.int64)
    y = ctx.mul_vec(np.full_like(xs, a[0]), xs)
    for aj, t in zip(a[1:], exponents(params)):
        if aj:
            y ^= ctx.mul_vec(np.full_like(xs, aj), ctx.pow_vec(xs, t))
    return ctx.trace_vec(params.e, y)


def _code_bits(params: CodeParams, a, xs, ctx: FieldCtx) -> np.ndarray:
    """Tr_{e->1}(Q_a(x)) for an array of x."""
    return ctx.subfield_trace_table(params.e)[q_values(params, a, xs, ctx)]


def codeword(params: CodeParams, a, ctx: FieldCtx) -> Codeword:
    """Bit i = Tr_{e->1}(Q_a(pi^-i)), i = 0 .. 2^m - 2."""
    n = ctx.order
    xs = ctx.exp_table[(-np.arange(n, dtype=np.int64)) % n]
    bits = _code_bits(params, a, xs, ctx)
    if np.any(bits > 1):
        raise AssertionError("Q_a left the subfield")
    return BitSeq(bits.astype(np.uint8), ctx.m)


def dc(params: CodeParams, a, ctx: FieldCtx) -> int:
    """DC(c_a) = sum_x (-1)^(Tr(Q_a(x))) - 1, x = 0 then pi^j in log order."""
    xs = np.concatenate([[0], ctx.exp_table[: ctx.order]])
    bits = _code_bits(params, a, xs, ctx)
    return int(np.sum(1 - 2 * bits)) - 1


def dc_from_weight(params: CodeParams, a, ctx: FieldCtx) -> int:
    return ctx.order - 2 * codeword(params, a, ctx).weight()


def dc_support(params: CodeParams) -> set[int]:
    p = validate(params)
    out = {-1}
    for j in range(p.k - 1):
        v = 2 ** ((p.m + p.e) // 2 + j * p.e)
        out |= {-1 + v, -1 - v}
    return out


def walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """W[w] = sum_x v[x] (-1)^popcount(w & x); len(v) must be a power of two."""
    a = np.array(v, dtype=np.int64)
    n = a.size
    h = 1
    while h < n:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1).reshape(n)
        h *= 2
    return a


# --- enumeration -----------------------------------------------------------------

@dataclass
class ScanResult:
    """Merged output of a scan: the table plus property-violation counters."""

    table: DistTable
    checks: Counter = field(default_factory=Counter)

    def merge(self, other: "ScanResult") -> "ScanResult":
        return ScanResult(self.table.merge(other.table), self.checks + other.checks)


def _empty_table(params: CodeParams, alpha: bool, beta: bool) -> DistTable:
    return DistTable(
        params,
        alpha={(r, eps): 0 for r in params.ranks() for eps in (1, -1)} if alpha else {},
        beta={r: 0 for r in params.ranks()} if beta else {},
        balanced=0 if alpha else None,
        source="enumeration",
    )


def _bin_sum(params: CodeParams, s: int) -> tuple[int, int] | None:
    """(r, eps) with |s| = 2^(m - e r / 2); None if s is not of that form."""
    mag = abs(s)
    if mag & (mag - 1):
        return None
    twice = 2 * (params.m - (mag.bit_length() - 1))
    if twice < 0 or twice % params.e:
        return None
    return twice // params.e, 1 if s > 0 else -1


def _scan_range(params: CodeParams, poly: int, lo: int, hi: int, alpha: bool, beta: bool) -> ScanResult:
    ctx = field_new(params.m, poly)
    m, e = params.m, params.e
    mask = ctx.order
    res = ScanResult(_empty_table(params, alpha, beta))
    checks = res.checks
    builder = GramBuilder(params, ctx)
    support = dc_support(params)

    if alpha:
        xs = ctx.elements
        comp = ctx.composite_trace_table(e)
        powers = [ctx.pow_vec(xs, t) for t in exponents(params)]
        wmap = np.zeros(ctx.size, dtype=np.int64)
        for i in range(m):
            wmap |= comp[ctx.mul_vec(xs, np.full_like(xs, 1 << i))] << i
        sums = []

    for t in range(lo, hi):
        tail = [(t >> (m * j)) & mask for j in range(params.k - 1)]
        rk = builder.rank(tail) if t else 0
        if t:
            if rk % 2:
                checks["odd_rank"] += 1
            if rk < params.min_rank:
                checks["rank_bound"] += 1
            if beta:
                res.table.beta[rk] = res.table.beta.get(rk, 0) + 1
        if not alpha:
            continue
        y = np.zeros(ctx.size, dtype=np.int64)
        for aj, pw in zip(tail, powers):
            if aj:
                y ^= ctx.mul_vec(np.full_like(pw, aj), pw)
        w = walsh_hadamard(1 - 2 * comp[y])
        s = w[wmap]
        if t == 0:
            s = s[1:]  # a = 0 is the zero codeword
        else:
            expect = 1 << (m - e * rk // 2) if (m - e * rk // 2) >= 0 else 0
            checks["magnitude"] += int(np.count_nonzero((s != 0) & (np.abs(s) != expect)))
        sums.append(s)

    if alpha and sums:
        vals, counts = np.unique(np.concatenate(sums), return_counts=True)
        tab = res.table
        for v, c in zip(vals.tolist(), counts.tolist()):
            if v - 1 not in support:
                checks["dc_support"] += c
            if v == 0:
                tab.balanced += c
                continue
            key = _bin_sum(params, v)
            if key is None:
                checks["unbinnable"] += c
                continue
            tab.alpha[key] = tab.alpha.get(key, 0) + c
    return res


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run(args):
    return _scan_range(*args)


def scan(
    params: CodeParams,
    ctx: FieldCtx,
    *,
    alpha: bool = True,
    beta: bool = True,
    threads: int | None = 1,
    budget: int | None = None,
) -> ScanResult:
    """Enumerate every coefficient vector; returns the table and check counters.

    Check counters: ``odd_rank``, ``rank_bound``, ``magnitude``, ``dc_support``,
    ``unbinnable``; all are zero when the theory holds.
    """
    p = validate(params)
    if p.m != ctx.m:
        raise ValueError("field degree does not match params.m")
    if alpha:
        _check_budget(2 ** (p.m * p.k), budget, "DC enumeration")
    if beta:
        _check_budget(2 ** (p.m * (p.k - 1)), budget, "rank enumeration")
    total = 2 ** (p.m * (p.k - 1))
    threads = threads or os.cpu_count() or 1
    if threads <= 1:
        return _scan_range(p, ctx.poly, 0, total, alpha, beta)
    jobs = [(p, ctx.poly, lo, hi, alpha, beta) for lo, hi in _chunks(total, threads * 4)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_run, jobs))
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out


def enumerate_alpha(params: CodeParams, ctx: FieldCtx, *, threads: int | None = 1, budget: int | None = None) -> DistTable:
    return scan(params, ctx, alpha=True, beta=False, threads=threads, budget=budget).table


def enumerate_beta(params: CodeParams, ctx: FieldCtx, *, threads: int | None = 1, budget: int | None = None) -> DistTable:
    return scan(params, ctx, alpha=False, beta=True, threads=threads, budget=budget).table


def enumerate_dist(params: CodeParams, ctx: FieldCtx, *, threads: int | None = 1, budget: int | None = None) -> DistTable:
    return scan(params, ctx, threads=threads, budget=budget).table
