"""Code parameters, the quadratic/bilinear systems Q_a and B_a, Gram rank.

Three families of exponent lists are supported.  With h = (m+e)/(2e) and
j = 1..k-1 the j-th power term of Q_a is x^(2^(E_j) + 1) where

    A:  E_j = j*d
    B:  E_j = (2j-1)*d
    C:  E_j = (h-j)*d

``frobenius_shifts`` returns the E_j; ``exponents`` returns 2^(E_j) + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .field import M_MAX, M_MIN, FieldCtx

FAMILIES = ("A", "B", "C")


class ParamsError(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    m: int
    d: int
    e: int
    k: int
    family: str = "A"

    @property
    def n(self) -> int:
        """Dimension of GF(2^m) over GF(2^e)."""
        return self.m // self.e

    @property
    def h(self) -> int:
        return (self.m + self.e) // (2 * self.e)

    @property
    def top_rank(self) -> int:
        """(m-e)/e, the largest possible rank of B_a."""
        return (self.m - self.e) // self.e

    @property
    def min_rank(self) -> int:
        """Lower bound on rk(B_a) when (a_1..a_{k-1}) != 0."""
        return self.top_rank - 2 * (self.k - 2)

    def ranks(self) -> list[int]:
        """The attainable nonzero-form ranks (m-e)/e - 2i, i = 0..k-2."""
        return [self.top_rank - 2 * i for i in range(self.k - 1)]

    def to_json(self) -> dict:
        return {"m": self.m, "d": self.d, "e": self.e, "k": self.k, "family": self.family}


def validate(params: CodeParams) -> CodeParams:
    """Raise ParamsError naming the first violated constraint."""
    m, d, e, k, fam = params.m, params.d, params.e, params.k, params.family
    if fam not in FAMILIES:
        raise ParamsError(f"family must be one of {', '.join(FAMILIES)}, got {fam!r}")
    if not M_MIN <= m <= M_MAX:
        raise ParamsError(f"m={m} outside supported range [{M_MIN}, {M_MAX}]")
    if d < 1 or e < 1 or k < 1:
        raise ParamsError("m, d, e, k must be positive integers")
    if gcd(m, d) != e:
        raise ParamsError(f"e = gcd(m, d) violated: gcd({m}, {d}) = {gcd(m, d)} != {e}")
    if gcd(m, 2 * d) != e:
        raise ParamsError(f"e = gcd(m, 2d) violated: gcd({m}, {2 * d}) = {gcd(m, 2 * d)} != {e}")
    kmax = (m + e) // (2 * e)
    if not 2 <= k <= kmax:
        raise ParamsError(f"2 <= k <= (m+e)/(2e) = {kmax} violated: k = {k}")
    period = (1 << m) - 1
    for t in exponents(params):
        if gcd(t, period) != 1:  # pragma: no cover - implied by the gcd constraints
            raise ParamsError(f"decimation factor {t} not coprime to 2^{m} - 1")
    return params


def frobenius_shifts(params: CodeParams, count: int | None = None) -> list[int]:
    """E_j for j = 1..count (default k-1)."""
    count = params.k - 1 if count is None else count
    d = params.d
    if params.family == "A":
        return [j * d for j in range(1, count + 1)]
    if params.family == "B":
        return [(2 * j - 1) * d for j in range(1, count + 1)]
    return [(params.h - j) * d for j in range(1, count + 1)]


def exponents(params: CodeParams) -> list[int]:
    return [(1 << s) + 1 for s in frobenius_shifts(params)]


def q_eval(params: CodeParams, a, x: int, ctx: FieldCtx) -> int:
    """Q_a(x) = Tr_{m->e}(a_0 x) + sum_j Tr_{m->e}(a_j x^(2^E_j + 1))."""
    e = params.e
    y = ctx.mul(a[0], x)
    for aj, t in zip(a[1:], exponents(params)):
        y ^= ctx.mul(aj, ctx.pow(x, t))
    # trace is additive, so one trace of the sum suffices
    return ctx.trace_to_subfield(e, y)


def b_eval_polar(params: CodeParams, a, x: int, y: int, ctx: FieldCtx) -> int:
    """B_a by polarization: Q(x+y) + Q(x) + Q(y)."""
    return q_eval(params, a, x ^ y, ctx) ^ q_eval(params, a, x, ctx) ^ q_eval(params, a, y, ctx)


def b_eval(params: CodeParams, a, x: int, y: int, ctx: FieldCtx) -> int:
    """B_a(x, y) = sum_j Tr_{m->e}(a_j (x y^(2^E_j) + x^(2^E_j) y))."""
    acc = 0
    for aj, t in zip(a[1:], frobenius_shifts(params)):
        w = ctx.mul(x, ctx.frob(y, t)) ^ ctx.mul(ctx.frob(x, t), y)
        acc ^= ctx.mul(aj, w)
    return ctx.trace_to_subfield(params.e, acc)


# --- Gram matrices -------------------------------------------------------------

def _span_over_subfield(span: set[int], b: int, sub, ctx: FieldCtx) -> set[int]:
    return {s ^ ctx.mul(lam, b) for s in span for lam in sub}


def default_basis(ctx: FieldCtx, e: int, order=None) -> tuple[int, ...]:
    """Greedy GF(2^e)-basis of GF(2^m).

    Elements are scanned in ``order`` (default: increasing integer encoding)
    and kept when independent of those already kept.
    """
    sub = ctx.subfield(e).elements
    n = ctx.m // e
    basis: list[int] = []
    span = {0}
    for x in order if order is not None else range(1, ctx.size):
        if x in span:
            continue
        basis.append(x)
        if len(basis) == n:
            break
        span = _span_over_subfield(span, x, sub, ctx)
    return tuple(basis)


@dataclass(frozen=True)
class GramMatrix:
    """Matrix of B_a in a fixed GF(2^e)-basis; entries are subfield elements."""

    entries: tuple[tuple[int, ...], ...]
    basis: tuple[int, ...]
    e: int
    ctx: FieldCtx = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.basis)

    def rows(self) -> list[str]:
        return [" ".join(str(v) for v in row) for row in self.entries]


def gram(params: CodeParams, a, ctx: FieldCtx, basis=None) -> GramMatrix:
    if basis is None:
        basis = default_basis(ctx, params.e)
    n = len(basis)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = b_eval(params, a, basis[i], basis[j], ctx)
            rows[i][j] = rows[j][i] = v
    return GramMatrix(tuple(tuple(r) for r in rows), tuple(basis), params.e, ctx)


class GramBuilder:
    """Gram matrices for many coefficient vectors with the basis products precomputed."""

    def __init__(self, params: CodeParams, ctx: FieldCtx, basis=None):
        self.params = params
        self.ctx = ctx
        self.basis = tuple(basis) if basis is not None else default_basis(ctx, params.e)
        n = len(self.basis)
        self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self.products = []
        for t in frobenius_shifts(params):
            ws = []
            for i, j in self.pairs:
                x, y = self.basis[i], self.basis[j]
                ws.append(ctx.mul(x, ctx.frob(y, t)) ^ ctx.mul(ctx.frob(x, t), y))
            self.products.append(ws)
        self._trace = ctx.trace_table(params.e).tolist() if ctx.has_tables else None

    def entries(self, tail) -> list[list[int]]:
        """Gram rows for coefficients ``tail`` = (a_1, ..., a_{k-1})."""
        ctx = self.ctx
        n = len(self.basis)
        rows = [[0] * n for _ in range(n)]
        acc = [0] * len(self.pairs)
        for aj, ws in zip(tail, self.products):
            if aj:
                for p, w in enumerate(ws):
                    acc[p] ^= ctx.mul(aj, w)
        if self._trace is not None:
            vals = [self._trace[v] for v in acc]
        else:
            vals = [ctx.trace_to_subfield(self.params.e, v) for v in acc]
        for (i, j), v in zip(self.pairs, vals):
            rows[i][j] = rows[j][i] = v
        return rows

    def rank(self, tail) -> int:
        return matrix_rank(self.entries(tail), self.ctx)


def matrix_rank(rows, ctx: FieldCtx) -> int:
    """Rank by Gaussian elimination; arithmetic stays inside GF(2^m)."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = ctx.inv(prow[col])
        if inv != 1:
            prow = mat[rank] = [ctx.mul(inv, v) for v in prow]
        for r in range(nrows):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                row = mat[r]
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] ^= ctx.mul(f, prow[c])
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(gm: GramMatrix) -> int:
    return matrix_rank(gm.entries, gm.ctx)


def radical_dim(gm: GramMatrix) -> int:
    return gm.n - rank(gm)
