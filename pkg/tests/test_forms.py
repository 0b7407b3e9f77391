import itertools

import numpy as np
import pytest

from goldcode.field import field_new
from goldcode.forms import (
    CodeParams,
    GramBuilder,
    ParamsError,
    b_eval,
    b_eval_polar,
    default_basis,
    exponents,
    frobenius_shifts,
    gram,
    matrix_rank,
    q_eval,
    radical_dim,
    rank,
    validate,
)

VALID = [
    CodeParams(3, 1, 1, 2),
    CodeParams(5, 1, 1, 2),
    CodeParams(5, 1, 1, 3),
    CodeParams(5, 2, 1, 3),
    CodeParams(7, 1, 1, 4),
    CodeParams(7, 3, 1, 3),
    CodeParams(9, 3, 3, 2),
    CodeParams(9, 2, 1, 5),
]


def test_validate_examples():
    assert validate(CodeParams(5, 1, 1, 3)).h == 3
    assert validate(CodeParams(9, 3, 3, 2)).n == 3
    with pytest.raises(ParamsError, match="gcd"):
        validate(CodeParams(6, 1, 1, 2))
    with pytest.raises(ParamsError, match="k"):
        validate(CodeParams(5, 1, 1, 4))
    with pytest.raises(ParamsError, match="k"):
        validate(CodeParams(5, 1, 1, 1))
    with pytest.raises(ParamsError, match="family"):
        validate(CodeParams(5, 1, 1, 2, "D"))
    with pytest.raises(ParamsError, match="range"):
        validate(CodeParams(25, 1, 1, 2))
    with pytest.raises(ParamsError):
        validate(CodeParams(9, 3, 1, 2))


def test_exponent_lists():
    assert exponents(CodeParams(5, 1, 1, 3, "A")) == [3, 5]
    assert exponents(CodeParams(5, 1, 1, 3, "B")) == [3, 9]
    assert exponents(CodeParams(5, 1, 1, 3, "C")) == [5, 3]
    assert exponents(CodeParams(9, 3, 3, 2, "C")) == [9]
    assert frobenius_shifts(CodeParams(7, 1, 1, 4, "C")) == [3, 2, 1]
    assert frobenius_shifts(CodeParams(7, 1, 1, 4, "B"), 5) == [1, 3, 5, 7, 9]


def test_ranks_and_bounds():
    p = CodeParams(5, 1, 1, 3)
    assert p.top_rank == 4 and p.min_rank == 2 and p.ranks() == [4, 2]
    assert CodeParams(9, 3, 3, 2).ranks() == [2]


def test_q_eval_trivial_and_linear_part():
    ctx = field_new(9)
    p = CodeParams(9, 3, 3, 2)
    sub = set(ctx.subfield(3))
    assert all(q_eval(p, (0, 0), x, ctx) == 0 for x in range(0, 512, 7))
    assert q_eval(p, (5, 77), 0, ctx) == 0
    vals = {q_eval(p, (1, 0), x, ctx) for x in range(512)}
    assert vals == sub


@pytest.mark.parametrize("p", VALID[:7])
def test_bilinear_form_paths_agree(p):
    ctx = field_new(p.m)
    rng = np.random.default_rng(p.m * 10 + p.k)
    sub = ctx.subfield(p.e).elements
    for _ in range(60):
        a = rng.integers(0, ctx.size, p.k).tolist()
        x, y, z = rng.integers(0, ctx.size, 3).tolist()
        b = b_eval(p, a, x, y, ctx)
        assert b == b_eval_polar(p, a, x, y, ctx)
        assert b in sub
        assert b_eval(p, a, x, x, ctx) == 0
        assert b == b_eval(p, a, y, x, ctx)
        assert b_eval(p, a, x ^ z, y, ctx) == b ^ b_eval(p, a, z, y, ctx)
        lam = sub[int(rng.integers(0, len(sub)))]
        assert b_eval(p, a, ctx.mul(lam, x), y, ctx) == ctx.mul(lam, b)


def brute_radical(p: CodeParams, a, ctx) -> int:
    """|{x : B(x, y) = 0 for all y}| by full enumeration."""
    return sum(all(b_eval(p, a, x, y, ctx) == 0 for y in range(ctx.size)) for x in range(ctx.size))


def test_gram_example():
    ctx = field_new(5)
    p = CodeParams(5, 1, 1, 2)
    gm = gram(p, (0, 1), ctx)
    assert gm.n == 5
    assert rank(gm) == 4 and radical_dim(gm) == 1
    assert brute_radical(p, (0, 1), ctx) == 2
    zero = gram(p, (0, 0), ctx)
    assert all(v == 0 for row in zero.entries for v in row)
    assert rank(zero) == 0
    assert len(gm.rows()) == 5


@pytest.mark.parametrize("p", [CodeParams(5, 1, 1, 3), CodeParams(5, 1, 1, 3, "C"), CodeParams(9, 3, 3, 2)])
def test_rank_matches_brute_radical(p):
    ctx = field_new(p.m)
    rng = np.random.default_rng(1)
    for _ in range(12):
        a = [0] + rng.integers(0, ctx.size, p.k - 1).tolist()
        rk = rank(gram(p, a, ctx))
        assert brute_radical(p, a, ctx) == 2 ** (p.m - p.e * rk)


@pytest.mark.parametrize("p", VALID)
def test_rank_parity_and_lower_bound(p):
    ctx = field_new(p.m)
    builder = GramBuilder(p, ctx)
    rng = np.random.default_rng(2)
    for _ in range(150):
        tail = rng.integers(0, ctx.size, p.k - 1).tolist()
        if not any(tail):
            continue
        rk = builder.rank(tail)
        assert rk % 2 == 0
        assert p.min_rank <= rk <= p.top_rank


def test_builder_agrees_with_gram():
    ctx = field_new(7)
    p = CodeParams(7, 1, 1, 4, "B")
    builder = GramBuilder(p, ctx)
    for tail in [(1, 0, 0), (0, 5, 9), (3, 3, 3), (127, 1, 64)]:
        gm = gram(p, (0,) + tail, ctx)
        assert [list(r) for r in gm.entries] == builder.entries(tail)
        assert rank(gm) == builder.rank(tail)


def test_basis_invariance():
    ctx = field_new(9)
    p = CodeParams(9, 3, 3, 2)
    b1 = default_basis(ctx, 3)
    b2 = default_basis(ctx, 3, order=range(511, 0, -1))
    assert len(b1) == len(b2) == 3 and b1 != b2
    for a1 in range(0, 512, 13):
        assert rank(gram(p, (0, a1), ctx, b1)) == rank(gram(p, (0, a1), ctx, b2))


def test_matrix_rank_small_fields():
    ctx = field_new(3)
    assert matrix_rank([[0, 0], [0, 0]], ctx) == 0
    assert matrix_rank([[1, 2], [2, 4]], ctx) == 1
    assert matrix_rank([[0, 1], [1, 0]], ctx) == 2
    # F_2 brute force on all 3x3 matrices
    for bits in itertools.product((0, 1), repeat=9):
        rows = [list(bits[0:3]), list(bits[3:6]), list(bits[6:9])]
        det = round(abs(np.linalg.det(np.array(rows)))) % 2
        rk = matrix_rank(rows, ctx)
        assert (rk == 3) == (det == 1)
