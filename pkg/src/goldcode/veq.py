"""Brute-force solution sets V_{s,u} of the family bilinear equation systems.

V_{s,u} is the set of (x_1, ..., x_{2u}) in GF(2^m)^(2u) with

    sum_{i=1..u} P_j(x_{2i-1}, x_{2i}) = 0,   j = 1..s,
    P_j(x, y) = x y^(2^E_j) + x^(2^E_j) y,

E_j being the family's Frobenius shifts.  Tuples are indexed by one 2mu-bit
counter whose base-2^m digits are x_1 (most significant) .. x_{2u}, so a
solution set is a boolean mask over that counter and two systems are
compared mask against mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .closed import gauss_binom, sign_weight
from .code import BudgetExceeded
from .field import FieldCtx
from .forms import CodeParams, GramBuilder, frobenius_shifts, validate

MAX_TUPLE_BITS = 24


@dataclass(frozen=True)
class VCount:
    s: int
    u: int
    family: str
    count: int


def _check(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> None:
    validate(params)
    if ctx.m != params.m:
        raise ValueError("field degree does not match params.m")
    if s < 1 or u < 1:
        raise ValueError("need s >= 1 and u >= 1")
    if 2 * params.m * u > MAX_TUPLE_BITS:
        raise BudgetExceeded(f"2mu = {2 * params.m * u} > {MAX_TUPLE_BITS} tuple bits")


def _pair_values(ctx: FieldCtx, shifts, transform=None) -> np.ndarray:
    """Array (2^(2m), len(shifts)); row x*2^m + y holds P_j(x, y) (optionally of transformed x, y)."""
    xs = ctx.elements
    if transform is not None:
        xs = transform(xs)
    x = np.repeat(xs, ctx.size)
    y = np.tile(xs, ctx.size)
    cols = []
    for t in shifts:
        cols.append(ctx.mul_vec(x, ctx.frob_vec(y, t)) ^ ctx.mul_vec(ctx.frob_vec(x, t), y))
    dtype = np.uint16 if ctx.m <= 16 else np.int64
    if not cols:
        return np.zeros((x.size, 0), dtype=dtype)
    return np.stack(cols, axis=1).astype(dtype)


def _sum_over_pairs(pairs: np.ndarray, u: int) -> np.ndarray:
    acc = pairs
    for _ in range(u - 1):
        acc = (acc[:, None, :] ^ pairs[None, :, :]).reshape(-1, pairs.shape[1])
    return acc


def _mask(pair_blocks, u: int) -> np.ndarray:
    """Tuples where every equation in every block vanishes."""
    ok = None
    for pairs in pair_blocks:
        if pairs.shape[1] == 0:
            continue
        part = ~np.any(_sum_over_pairs(pairs, u), axis=1)
        ok = part if ok is None else ok & part
    return ok


def solution_mask(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> np.ndarray:
    _check(params, s, u, ctx)
    return _mask([_pair_values(ctx, frobenius_shifts(params, s))], u)


def v_count(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> VCount:
    return VCount(s, u, params.family, int(np.count_nonzero(solution_mask(params, s, u, ctx))))


def v_set_equal(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> bool:
    """V_{s,u} == V_{u,u} as sets (s >= u)."""
    if s < u:
        raise ValueError("need s >= u")
    if s == u:
        return True
    return bool(np.array_equal(solution_mask(params, s, u, ctx), solution_mask(params, u, u, ctx)))


def tilde(params: CodeParams, ctx: FieldCtx):
    """x -> x + x^(2^d), x + x^(2^(2d)), x + x^(2^(-d)) for families A, B, C."""
    shift = {"A": params.d, "B": 2 * params.d, "C": -params.d}[params.family]
    return lambda xs: xs ^ ctx.frob_vec(xs, shift)


def eliminated_mask(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> np.ndarray:
    """Solutions of the eliminated system: equation 1 on x, equations 1..s-1 on x~."""
    _check(params, s, u, ctx)
    shifts = frobenius_shifts(params, s)
    first = _pair_values(ctx, shifts[:1])
    rest = _pair_values(ctx, shifts[: s - 1], tilde(params, ctx))
    return _mask([first, rest], u)


def elimination_equiv_check(params: CodeParams, s: int, u: int, ctx: FieldCtx) -> bool:
    return bool(np.array_equal(solution_mask(params, s, u, ctx), eliminated_mask(params, s, u, ctx)))


def form_moment(params: CodeParams, u: int, ctx: FieldCtx) -> int:
    """sum over all a of (2^(2m - e rk(B_a)))^u."""
    m, e = params.m, params.e
    builder = GramBuilder(params, ctx)
    mask = ctx.order
    total = 0
    for t in range(2 ** (m * (params.k - 1))):
        tail = [(t >> (m * j)) & mask for j in range(params.k - 1)]
        rk = builder.rank(tail) if t else 0
        total += (2 ** (2 * m - e * rk)) ** u
    # a_0 does not enter B_a
    return total * 2 ** m


def v_size(params: CodeParams, u: int, ctx: FieldCtx) -> int:
    """|V_{u,u}|, with |V_{0,0}| = 1."""
    return 1 if u == 0 else v_count(params, u, u, ctx).count


def moment_identity_check(params: CodeParams, u: int, ctx: FieldCtx) -> bool:
    """sum_a (sum_{x,y} (-1)^Tr(B_a(x,y)))^u == 2^(mk) |V_{u,u}|."""
    validate(params)
    if not 0 <= u <= params.k - 1:
        raise ValueError("need 0 <= u <= k-1")
    return form_moment(params, u, ctx) == 2 ** (params.m * params.k) * v_size(params, u, ctx)


@dataclass(frozen=True)
class RecursionReport:
    """Left side of the |V_{i,i}| recursion against several right-side readings."""

    u: int
    lhs: Fraction
    readings: dict[str, Fraction]

    def holds(self) -> dict[str, bool]:
        return {name: rhs == self.lhs for name, rhs in self.readings.items()}

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "lhs": str(self.lhs),
            "readings": {k: {"rhs": str(v), "holds": v == self.lhs} for k, v in sorted(self.readings.items())},
        }


def recursion_check(params: CodeParams, u: int, ctx: FieldCtx, sizes: dict[int, int] | None = None) -> RecursionReport:
    """Evaluate sum_i (-1)^(u-i) 4^(e C(u-i,2)) [u i]_{4^e} 2^(-(m+e)i) |V_{i,i}| exactly.

    Readings of the right side (all scaled by 2^(-mu)):
      ``printed``   prod_{i=0}^{k-1} (2^((m-e)i) - 4^(ei))
      ``u-1``       prod_{i=0}^{u-1} (2^((m-e)i) - 4^(ei))
      ``u-1,2^(m-e)`` prod_{i=0}^{u-1} (2^(m-e) - 4^(ei))
    """
    m, e, k = params.m, params.e, params.k
    sizes = dict(sizes or {})
    q = 4 ** e
    lhs = Fraction(0)
    for i in range(u + 1):
        if i not in sizes:
            sizes[i] = v_size(params, i, ctx)
        term = sign_weight(e, u - i) * gauss_binom(u, i, q) * Fraction(sizes[i], 2 ** ((m + e) * i))
        lhs += term if (u - i) % 2 == 0 else -term

    def prod(upper: int, factor) -> Fraction:
        out = 1
        for i in range(upper + 1):
            out *= factor(i) - 4 ** (e * i)
        return Fraction(out, 2 ** (m * u))

    readings = {
        "printed": prod(k - 1, lambda i: 2 ** ((m - e) * i)),
        "u-1": prod(u - 1, lambda i: 2 ** ((m - e) * i)),
        "u-1,2^(m-e)": prod(u - 1, lambda i: 2 ** (m - e)),
    }
    return RecursionReport(u, lhs, readings)
