"""Arithmetic in GF(2^m) with subfield traces.

Elements are plain ints: bit i is the coefficient of x^i in the polynomial
basis modulo the defining polynomial.  The same encoding is used for the
defining polynomial itself (x^3+x+1 <-> 0b1011 = 11).

For m <= 20 a context carries log/antilog tables and the vectorised helpers
(``mul_vec``, ``frob_vec``, ``trace_vec``) operate on numpy arrays of
elements.  Larger fields fall back to carry-less multiplication and only
support the scalar API.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "FieldCtx",
    "FieldError",
    "SubfieldView",
    "DEFAULT_POLYS",
    "M_MIN",
    "M_MAX",
    "TABLE_M_MAX",
    "field_new",
    "find_default_poly",
    "is_irreducible",
    "is_primitive",
    "prime_factors",
]

M_MIN = 2
M_MAX = 24
TABLE_M_MAX = 20


class FieldError(ValueError):
    """Raised for invalid field parameters or undefined operations."""


# Primitive polynomial of degree m with the fewest terms, ties broken by the
# smallest integer encoding.  Regenerated by ``find_default_poly`` in the tests.
DEFAULT_POLYS: dict[int, int] = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
    17: 0x20009,
    18: 0x40081,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x100001B,
}


# --- polynomials over GF(2), int-encoded ------------------------------------

def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, f: int) -> int:
    df = _pdeg(f)
    while a and _pdeg(a) >= df:
        a ^= f << (_pdeg(a) - df)
    return a


def _pmulmod(a: int, b: int, f: int) -> int:
    df = _pdeg(f)
    top = 1 << df
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def _ppowmod(a: int, n: int, f: int) -> int:
    r = 1
    a = _pmod(a, f)
    while n:
        if n & 1:
            r = _pmulmod(r, a, f)
        a = _pmulmod(a, a, f)
        n >>= 1
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Irreducibility over GF(2): gcd(x^(2^i) - x, f) = 1 for i <= deg/2."""
    m = _pdeg(f)
    if m < 1:
        return False
    t = 0b10
    for _ in range(m // 2):
        t = _pmulmod(t, t, f)
        if _pgcd(f, t ^ 0b10) != 1:
            return False
    return True


def is_primitive(f: int) -> bool:
    """True if x has multiplicative order exactly 2^m - 1 modulo ``f``."""
    m = _pdeg(f)
    if m < 1 or not f & 1:
        return False
    n = (1 << m) - 1
    if _ppowmod(0b10, n, f) != 1:
        return False
    return all(_ppowmod(0b10, n // p, f) != 1 for p in prime_factors(n))


def find_default_poly(m: int) -> int:
    """Search for the default primitive polynomial of degree ``m``.

    Candidates are scanned by number of terms (3, 5, 7, ...) and, within a
    term count, by integer encoding.
    """
    from itertools import combinations

    for inner in range(1, m, 2):
        cands = sorted(
            (1 << m) | 1 | sum(1 << i for i in mid)
            for mid in combinations(range(1, m), inner)
        )
        for f in cands:
            if is_irreducible(f) and is_primitive(f):
                return f
    raise FieldError(f"no primitive polynomial of degree {m}")  # unreachable


# --- field context ------------------------------------------------------------

class SubfieldView:
    """The 2^e elements of GF(2^m) fixed by x -> x^(2^e)."""

    def __init__(self, e: int, elements: tuple[int, ...]):
        self.e = e
        self.elements = elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __repr__(self) -> str:
        return f"SubfieldView(e={self.e}, size={len(self.elements)})"


class FieldCtx:
    """GF(2^m) defined by a primitive polynomial; ``pi`` is the class of x.

    Immutable after construction.  Tables are built lazily on first use.
    """

    def __init__(self, m: int, poly: int):
        self.m = m
        self.poly = poly
        self.size = 1 << m
        self.order = self.size - 1
        self.pi = 0b10

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, poly={self.poly:#x})"

    def __reduce__(self):
        return (field_new, (self.m, self.poly))

    # tables

    @property
    def has_tables(self) -> bool:
        return self.m <= TABLE_M_MAX

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.has_tables:
            raise FieldError(f"log tables are not built for m={self.m} > {TABLE_M_MAX}")
        n = self.order
        exp = np.empty(2 * n, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x, top = 1, self.size
        for i in range(n):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & top:
                x ^= self.poly
        exp[n:] = exp[:n]
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        """exp_table[i] = pi^i for 0 <= i < 2(2^m - 1)."""
        return self._tables[0]

    @property
    def log_table(self) -> np.ndarray:
        """log_table[x] = discrete log of x; entry 0 is meaningless."""
        return self._tables[1]

    @cached_property
    def _lists(self) -> tuple[list[int], list[int]]:
        exp, log = self._tables
        return exp.tolist(), log.tolist()

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # scalar arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            exp, log = self._lists
            return exp[log[a] + log[b]]
        return _pmulmod(a, b, self.poly)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        return self.pow(a, -1)

    def pow(self, a: int, n: int) -> int:
        """a^n; negative n is reduced modulo 2^m - 1 (a must be nonzero)."""
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of 0")
            return 1 if n == 0 else 0
        n %= self.order
        if self.has_tables:
            exp, log = self._lists
            return exp[(log[a] * n) % self.order]
        return _ppowmod(a, n, self.poly)

    def frob(self, a: int, t: int) -> int:
        """a^(2^t); t may be negative (inverse Frobenius)."""
        t %= self.m
        for _ in range(t):
            a = self.mul(a, a)
        return a

    def trace_to_subfield(self, e: int, x: int) -> int:
        """Tr_{GF(2^m)/GF(2^e)}(x) = sum of x^(2^(e*i)) for i < m/e."""
        self._check_divides(e)
        acc, y = 0, x
        for _ in range(self.m // e):
            acc ^= y
            y = self.frob(y, e)
        return acc

    def subfield_trace_bit(self, e: int, t: int) -> int:
        """Tr_{GF(2^e)/GF(2)}(t) for t in the subfield, computed inside GF(2^m)."""
        acc, y = 0, t
        for _ in range(e):
            acc ^= y
            y = self.mul(y, y)
        if acc not in (0, 1):
            raise FieldError(f"{t:#x} is not in the subfield of degree {e}")
        return acc

    def absolute_trace_bit(self, x: int) -> int:
        return self.trace_to_subfield(1, x)

    def composite_trace_bit(self, e: int, x: int) -> int:
        """Tr_{e->1}(Tr_{m->e}(x)); the trace the codeword map uses."""
        return self.subfield_trace_bit(e, self.trace_to_subfield(e, x))

    def subfield(self, e: int) -> SubfieldView:
        self._check_divides(e)
        if e == self.m:
            return SubfieldView(e, tuple(range(self.size)))
        step = self.order // ((1 << e) - 1)
        elems = [0] + sorted(self.pow(self.pi, step * j) for j in range((1 << e) - 1))
        return SubfieldView(e, tuple(sorted(elems)))

    def _check_divides(self, e: int) -> None:
        if e < 1 or self.m % e:
            raise FieldError(f"e={e} does not divide m={self.m}")

    # vectorised helpers (require tables)

    def mul_vec(self, a, b) -> np.ndarray:
        exp, log = self._tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, a, n: int) -> np.ndarray:
        exp, log = self._tables
        a = np.asarray(a, dtype=np.int64)
        n %= self.order
        out = exp[(log[a] * n) % self.order]
        if n == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def frob_vec(self, a, t: int) -> np.ndarray:
        return self.pow_vec(a, pow(2, t % self.m, self.order))

    def trace_table(self, e: int) -> np.ndarray:
        """Tr_{m->e}(y) for every y, indexed by integer encoding."""
        return self._trace_tables(e)

    @lru_cache(maxsize=None)
    def _trace_tables(self, e: int) -> np.ndarray:
        self._check_divides(e)
        y = self.elements
        acc = np.zeros_like(y)
        cur = y
        for _ in range(self.m // e):
            acc ^= cur
            cur = self.frob_vec(cur, e)
        acc.setflags(write=False)
        return acc

    def trace_vec(self, e: int, x) -> np.ndarray:
        return self.trace_table(e)[np.asarray(x, dtype=np.int64)]

    def subfield_trace_table(self, e: int) -> np.ndarray:
        """Tr_{e->1}(t) = sum of t^(2^i), i < e, for every t; 0/1 on the subfield."""
        return self._subfield_traces(e)

    @lru_cache(maxsize=None)
    def _subfield_traces(self, e: int) -> np.ndarray:
        self._check_divides(e)
        acc = np.zeros(self.size, dtype=np.int64)
        cur = self.elements
        for _ in range(e):
            acc ^= cur
            cur = self.mul_vec(cur, cur)
        acc.setflags(write=False)
        return acc

    def composite_trace_table(self, e: int) -> np.ndarray:
        """Tr_{e->1}(Tr_{m->e}(y)) for every y, as 0/1 int64."""
        return self._composite_tables(e)

    @lru_cache(maxsize=None)
    def _composite_tables(self, e: int) -> np.ndarray:
        out = self.subfield_trace_table(e)[self.trace_table(e)]
        if np.any(out > 1):
            raise FieldError("subfield trace left GF(2)")  # pragma: no cover
        out.setflags(write=False)
        return out


@lru_cache(maxsize=64)
def field_new(m: int, poly: int | None = None) -> FieldCtx:
    """Build GF(2^m).  ``poly`` defaults to ``DEFAULT_POLYS[m]``."""
    if not isinstance(m, int) or not M_MIN <= m <= M_MAX:
        raise FieldError(f"m must be an integer in [{M_MIN}, {M_MAX}], got {m!r}")
    if poly is None:
        poly = DEFAULT_POLYS[m]
    if _pdeg(poly) != m:
        raise FieldError(f"polynomial {poly:#x} has degree {_pdeg(poly)}, expected {m}")
    if not is_irreducible(poly):
        raise FieldError(f"polynomial {poly:#x} is not irreducible")
    if not is_primitive(poly):
        raise FieldError(f"polynomial {poly:#x} is not primitive")
    return FieldCtx(m, poly)
