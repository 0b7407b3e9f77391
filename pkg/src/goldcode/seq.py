"""Maximum-length sequences, circular decimation and shift-span rank."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .field import FieldCtx, is_primitive

__all__ = [
    "BitSeq",
    "berlekamp_massey",
    "decimate",
    "is_mlseq",
    "linear_complexity",
    "mseq",
    "shift",
    "span_dimension",
]


@dataclass(frozen=True, eq=False)
class BitSeq:
    """A binary sequence of length 2^m - 1 (one period)."""

    bits: np.ndarray
    m: int

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size != (1 << self.m) - 1:
            raise ValueError(f"length {bits.size} != 2^{self.m} - 1")
        if np.any(bits > 1):
            raise ValueError("bits must be 0/1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return int(self.bits.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSeq):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.m, self.bits.tobytes()))

    def weight(self) -> int:
        return int(self.bits.sum())

    def to_int(self) -> int:
        """Bit i of the result is s_i."""
        return int.from_bytes(np.packbits(self.bits, bitorder="little").tobytes(), "little")

    def to_hex(self) -> str:
        return np.packbits(self.bits, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, text: str, m: int) -> "BitSeq":
        raw = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[: (1 << m) - 1]
        return cls(bits, m)

    def to_json(self) -> dict:
        return {"m": self.m, "length": len(self), "hex": self.to_hex()}

    @classmethod
    def from_json(cls, obj: dict) -> "BitSeq":
        seq = cls.from_hex(obj["hex"], obj["m"])
        if len(seq) != obj["length"]:
            raise ValueError("length field disagrees with m")
        return seq


def mseq(ctx: FieldCtx) -> BitSeq:
    """s_i = Tr(pi^-i) for i = 0 .. 2^m - 2."""
    n = ctx.order
    idx = (-np.arange(n, dtype=np.int64)) % n
    xs = ctx.exp_table[idx]
    return BitSeq(ctx.composite_trace_table(1)[xs], ctx.m)


def decimate(seq: BitSeq, t: int) -> BitSeq:
    """out_i = seq_{t*i mod N}."""
    if t < 1:
        raise ValueError("decimation factor must be >= 1")
    n = len(seq)
    idx = (np.arange(n, dtype=np.int64) * (t % n)) % n
    return BitSeq(seq.bits[idx], seq.m)


def shift(seq: BitSeq, r: int) -> BitSeq:
    """Cyclic rotation: out_i = seq_{i + r mod N}."""
    return BitSeq(np.roll(seq.bits, -(r % len(seq))), seq.m)


def berlekamp_massey(bits) -> tuple[int, int]:
    """Shortest LFSR over GF(2) generating ``bits``.

    Returns ``(L, c)`` where ``c`` encodes the connection polynomial
    1 + c_1 D + ... + c_L D^L (bit i = c_i).
    """
    s = [int(b) for b in bits]
    c, b = 1, 1
    L, shift_by = 0, 1
    for n in range(len(s)):
        d = s[n]
        cc = c >> 1
        i = 1
        while cc:
            if cc & 1:
                d ^= s[n - i]
            cc >>= 1
            i += 1
        if d == 0:
            shift_by += 1
        elif 2 * L <= n:
            t = c
            c ^= b << shift_by
            L, b, shift_by = n + 1 - L, t, 1
        else:
            c ^= b << shift_by
            shift_by += 1
    return L, c


def linear_complexity(seq: BitSeq) -> int:
    # two periods so the LFSR is forced to reproduce the cyclic structure
    return berlekamp_massey(np.concatenate([seq.bits, seq.bits]))[0]


def _reciprocal(c: int, L: int) -> int:
    return int(f"{c:0{L + 1}b}"[::-1], 2)


def is_mlseq(seq: BitSeq) -> bool:
    """True iff the minimal polynomial has degree m and is primitive."""
    L, c = berlekamp_massey(np.concatenate([seq.bits, seq.bits]))
    if L != seq.m or c.bit_length() - 1 != L:
        return False
    return is_primitive(_reciprocal(c, L))


def _row_reduce_insert(basis: dict[int, int], v: int) -> bool:
    while v:
        top = v.bit_length() - 1
        piv = basis.get(top)
        if piv is None:
            basis[top] = v
            return True
        v ^= piv
    return False


def span_dimension(seqs) -> int:
    """F_2-dimension of the span of all cyclic shifts of all ``seqs``."""
    seqs = list(seqs)
    if not seqs:
        return 0
    n = len(seqs[0])
    if any(len(s) != n for s in seqs):
        raise ValueError("sequences must share a length")
    mask = (1 << n) - 1
    basis: dict[int, int] = {}
    for s in seqs:
        v = s.to_int()
        for _ in range(n):
            _row_reduce_insert(basis, v)
            # rotate right by one (a cyclic shift)
            v = ((v >> 1) | ((v & 1) << (n - 1))) & mask
    return len(basis)


def coprime_to_period(m: int, t: int) -> bool:
    return gcd(t, (1 << m) - 1) == 1
