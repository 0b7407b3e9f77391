from fractions import Fraction

import numpy as np
import pytest

from goldcode.code import BudgetExceeded
from goldcode.field import field_new
from goldcode.forms import FAMILIES, CodeParams
from goldcode.veq import (
    elimination_equiv_check,
    form_moment,
    moment_identity_check,
    recursion_check,
    solution_mask,
    v_count,
    v_set_equal,
    v_size,
)


def loop_count(p: CodeParams, s: int, ctx) -> int:
    """|V_{s,1}| by a plain double loop over scalar arithmetic."""
    from goldcode.forms import frobenius_shifts

    shifts = frobenius_shifts(p, s)
    n = 0
    for x in range(ctx.size):
        for y in range(ctx.size):
            if all(ctx.mul(x, ctx.frob(y, t)) ^ ctx.mul(ctx.frob(x, t), y) == 0 for t in shifts):
                n += 1
    return n


@pytest.mark.parametrize("m,d", [(3, 1), (5, 1), (5, 2), (7, 3), (9, 3)])
def test_v11_count(m, d):
    from math import gcd

    e = gcd(m, d)
    p = CodeParams(m, d, e, 2)
    ctx = field_new(m)
    c = v_count(p, 1, 1, ctx).count
    assert c == 2 ** (m + e) + 2**m - 2**e
    if m <= 5:
        assert c == loop_count(p, 1, ctx)


def test_zero_tuple_and_layout():
    ctx = field_new(3)
    p = CodeParams(3, 1, 1, 2)
    mask = solution_mask(p, 1, 1, ctx)
    assert mask.size == 64 and mask[0]
    # x_1 is the high digit: (x1, x2) = (1, 0) sits at index 8
    assert mask[8] and mask[1]


@pytest.mark.parametrize("fam", FAMILIES)
def test_set_equality_m5(fam):
    ctx = field_new(5)
    p = CodeParams(5, 1, 1, 3, fam)
    assert v_set_equal(p, 2, 1, ctx)
    assert v_set_equal(p, 1, 1, ctx)
    assert v_count(p, 2, 1, ctx).count == loop_count(p, 2, ctx)
    with pytest.raises(ValueError):
        v_set_equal(p, 1, 2, ctx)


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("s,u", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_elimination(fam, s, u):
    ctx = field_new(5)
    assert elimination_equiv_check(CodeParams(5, 1, 1, 3, fam), s, u, ctx)


def test_moment_identity_examples():
    ctx = field_new(5)
    assert moment_identity_check(CodeParams(5, 1, 1, 2), 0, ctx)
    assert moment_identity_check(CodeParams(5, 1, 1, 2), 1, ctx)
    assert moment_identity_check(CodeParams(5, 1, 1, 3), 2, ctx)
    assert form_moment(CodeParams(5, 1, 1, 2), 0, ctx) == 2**10
    assert v_size(CodeParams(5, 1, 1, 2), 0, ctx) == 1
    with pytest.raises(ValueError):
        moment_identity_check(CodeParams(5, 1, 1, 2), 2, ctx)


def test_moment_against_character_sums():
    """sum_a (sum_{x,y} (-1)^Tr B_a(x,y))^u from the forms directly, m = 3."""
    ctx = field_new(3)
    p = CodeParams(3, 1, 1, 2)
    from goldcode.forms import b_eval

    for u in (0, 1):
        total = 0
        for a1 in range(8):
            s = sum((-1) ** b_eval(p, (0, a1), x, y, ctx) for x in range(8) for y in range(8))
            total += s**u
        assert total * 8 == form_moment(p, u, ctx)


def test_recursion_readings():
    ctx = field_new(5)
    p = CodeParams(5, 1, 1, 3)
    r1 = recursion_check(p, 1, ctx)
    assert r1.lhs == Fraction(15, 32)
    h = r1.holds()
    assert h["u-1,2^(m-e)"] and not h["printed"] and not h["u-1"]
    r2 = recursion_check(p, 2, ctx)
    assert r2.lhs == Fraction(45, 256)
    assert r2.holds()["u-1,2^(m-e)"]
    js = r2.to_json()
    assert js["u"] == 2 and js["readings"]["u-1,2^(m-e)"]["holds"] is True


def test_preconditions():
    ctx = field_new(5)
    p = CodeParams(5, 1, 1, 3)
    with pytest.raises(ValueError):
        v_count(p, 0, 1, ctx)
    with pytest.raises(BudgetExceeded):
        v_count(p, 1, 3, ctx)
    with pytest.raises(ValueError):
        v_count(p, 1, 1, field_new(7))
    assert isinstance(solution_mask(p, 1, 1, ctx), np.ndarray)
