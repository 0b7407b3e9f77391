"""Exact closed-form counts for the DC-component and rank distributions.

Everything here is integer (or ``Fraction``) arithmetic; every division is
asserted exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .forms import CodeParams, validate
from .table import DistTable


def gauss_binom(n: int, i: int, q: int) -> int:
    """Gaussian binomial coefficient [n choose i]_q."""
    if i < 0 or n < 0 or i > n:
        return 0
    out = 1
    for h in range(i):
        # out is [n choose h]_q here, so each step lands on an integer
        out *= q ** (n - h) - 1
        den = q ** (h + 1) - 1
        assert out % den == 0, (n, i, q, h)
        out //= den
    return out


def qpow_binom2(q: int, n: int) -> int:
    """q^(n choose 2)."""
    return q ** comb(n, 2) if n >= 2 else 1


def sign_weight(e: int, n: int) -> int:
    """4^(e*C(n,2)); equal to 2^(e*n*(n-1)), the spelling used for the rank counts."""
    return qpow_binom2(4 ** e, n)


def _check(params: CodeParams) -> CodeParams:
    return validate(params)


def _rank_sum(params: CodeParams, i: int) -> int:
    m, e, k = params.m, params.e, params.k
    q = 4 ** e
    top = (m - e) // (2 * e)
    total = 0
    for j in range(i, k - 1):
        term = sign_weight(e, j - i) * gauss_binom(j, i, q) * gauss_binom(top, j, q)
        term *= 2 ** (m * (k - 1 - j)) - 1
        total += term if (j - i) % 2 == 0 else -term
    return total


def beta_value(params: CodeParams, i: int) -> int:
    """Number of nonzero (a_1..a_{k-1}) with rk(B_a) = (m-e)/e - 2i."""
    return _rank_sum(params, i)


def split_by_sign(e: int, r: int, eps: int, beta: int) -> int:
    """alpha_{r,eps} = (2^(er) + eps 2^(er/2)) beta_r / 2."""
    v = (2 ** (e * r) + eps * 2 ** (e * r // 2)) * beta
    assert v % 2 == 0
    return v // 2


def alpha_value(params: CodeParams, i: int, eps: int) -> int:
    """alpha at r = (m-e)/e - 2i, written out as in the main counting formula."""
    m, e = params.m, params.e
    lead = 2 ** (m - e - 2 * e * i) + eps * 2 ** ((m - e) // 2 - e * i)
    v = lead * _rank_sum(params, i)
    assert v % 2 == 0
    return v // 2


def alpha_closed(params: CodeParams) -> DistTable:
    p = _check(params)
    alpha = {}
    for i in range(p.k - 1):
        r = p.top_rank - 2 * i
        for eps in (1, -1):
            alpha[(r, eps)] = alpha_value(p, i, eps)
    balanced = 2 ** (p.m * p.k) - 1 - sum(alpha.values())
    return DistTable(p, alpha=alpha, beta={}, balanced=balanced, source="closed_form")


def beta_closed(params: CodeParams) -> DistTable:
    p = _check(params)
    beta = {p.top_rank - 2 * i: beta_value(p, i) for i in range(p.k - 1)}
    return DistTable(p, alpha={}, beta=beta, balanced=None, source="closed_form")


def dist_closed(params: CodeParams) -> DistTable:
    a = alpha_closed(params)
    b = beta_closed(params)
    return DistTable(a.params, alpha=a.alpha, beta=b.beta, balanced=a.balanced, source="closed_form")


@dataclass(frozen=True)
class BalancedCount:
    exact: int
    approx: Fraction
    total: int

    @property
    def rel_error(self) -> Fraction:
        """|exact - approx| relative to the number of codewords 2^(mk)."""
        return abs(self.exact - self.approx) / self.total


def balanced_closed(params: CodeParams) -> BalancedCount:
    """Number of codewords (zero included) with DC = -1, and its approximation."""
    p = _check(params)
    m, e, k = p.m, p.e, p.k
    s = Fraction(0)
    for u in range(k - 1):
        prod = 1
        for j in range(u):
            prod *= 2 ** m - 2 ** (e * (2 * j + 1))
        s += (-1) ** u * Fraction(2 ** (m * (k - u)) - 2 ** m, 2 ** (e * (u + 1) ** 2)) * prod
    exact = 2 ** (m * k) - 1 - s
    assert exact.denominator == 1
    approx = 2 ** (m * k) * (1 - sum(Fraction((-1) ** u, 2 ** (e * (u + 1) ** 2)) for u in range(k - 1)))
    return BalancedCount(int(exact), approx, 2 ** (m * k))


def qbinom_theorem_check(u: int, q: int, t: int) -> bool:
    """prod_{i<u} (1 + q^i t) == sum_i q^C(i,2) [u choose i]_q t^i, exactly."""
    if u > 12:
        raise ValueError("u <= 12 required")
    lhs = 1
    for i in range(u):
        lhs *= 1 + q ** i * t
    rhs = sum(qpow_binom2(q, i) * gauss_binom(u, i, q) * t ** i for i in range(u + 1))
    return lhs == rhs


def moebius_check(n: int, q: int) -> bool:
    """The q-binomial matrix and its signed inverse multiply to the identity."""
    if n > 8:
        raise ValueError("n <= 8 required")
    fwd = [[gauss_binom(u, i, q) for i in range(n)] for u in range(n)]
    back = [
        [(-1) ** (i - v) * qpow_binom2(q, i - v) * gauss_binom(i, v, q) if i >= v else 0 for v in range(n)]
        for i in range(n)
    ]
    for u in range(n):
        for v in range(n):
            s = sum(fwd[u][i] * back[i][v] for i in range(n))
            if s != (1 if u == v else 0):
                return False
    return True
