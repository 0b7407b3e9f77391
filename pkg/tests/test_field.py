import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldcode.field import (
    DEFAULT_POLYS,
    FieldError,
    field_new,
    find_default_poly,
    is_irreducible,
    is_primitive,
    prime_factors,
)

from conftest import naive_mul


def test_default_table_matches_search():
    for m in range(2, 25):
        assert DEFAULT_POLYS[m] == find_default_poly(m), m


def test_gf8_powers_of_x(f8):
    assert f8.order == 7 and f8.pi == 0b10
    seen, x = [], 1
    for _ in range(7):
        seen.append(x)
        x = naive_mul(x, 0b10, 0b1011)
    assert x == 1
    assert sorted(seen) == list(range(1, 8))


def test_default_gf32_pi_has_order_31():
    ctx = field_new(5)
    x, order = ctx.pi, 1
    while x != 1:
        x = naive_mul(x, ctx.pi, ctx.poly)
        order += 1
    assert order == 31


@pytest.mark.parametrize("m", [1, 0, 25])
def test_m_out_of_range(m):
    with pytest.raises(FieldError, match="m must be"):
        field_new(m)


def test_rejects_reducible_and_imprimitive():
    with pytest.raises(FieldError, match="not irreducible"):
        field_new(4, 0b10101)  # (x^2+x+1)^2
    with pytest.raises(FieldError, match="not primitive"):
        field_new(4, 0b11111)  # x^4+x^3+x^2+x+1 has order 5
    with pytest.raises(FieldError, match="degree"):
        field_new(5, 0b1011)


def test_irreducible_and_primitive_helpers():
    assert is_irreducible(0b1011) and is_primitive(0b1011)
    assert is_irreducible(0b11111) and not is_primitive(0b11111)
    assert not is_irreducible(0b101)
    assert prime_factors(2**24 - 1) == [3, 5, 7, 13, 17, 241]


@pytest.mark.parametrize("m", [3, 5, 8, 9, 12, 16, 21, 24])
def test_pi_exact_order(m):
    ctx = field_new(m)
    n = ctx.order
    assert ctx.pow(ctx.pi, n) == 1
    for p in prime_factors(n):
        assert ctx.pow(ctx.pi, n // p) != 1


@pytest.mark.parametrize("m", [5, 9, 16])
def test_repeated_squaring_vs_naive_loop(m):
    ctx = field_new(m)
    x = 1
    for _ in range(300):
        x = naive_mul(x, ctx.pi, ctx.poly)
    assert ctx.pow(ctx.pi, 300) == x
    assert ctx.pow(ctx.pi, -300) == ctx.inv(x)


def test_inverse_and_char2(f32):
    for a in range(1, 32):
        assert f32.add(a, a) == 0
        assert f32.mul(a, f32.inv(a)) == 1
        assert f32.pow(a, -1) == f32.inv(a)
    with pytest.raises(ZeroDivisionError):
        f32.inv(0)


@pytest.mark.parametrize("m", [3, 5, 9, 13, 16])
def test_field_axioms_sampled(m):
    ctx = field_new(m)
    rng = np.random.default_rng(m)
    a, b, c = rng.integers(0, ctx.size, size=(3, 10_000))
    ab = ctx.mul_vec(a, b)
    assert np.array_equal(ab, ctx.mul_vec(b, a))
    assert np.array_equal(ctx.mul_vec(ab, c), ctx.mul_vec(a, ctx.mul_vec(b, c)))
    assert np.array_equal(ctx.mul_vec(a, b ^ c), ab ^ ctx.mul_vec(a, c))
    nz = a[a != 0]
    assert np.all(ctx.mul_vec(nz, ctx.pow_vec(nz, -1)) == 1)
    sq = lambda v: ctx.mul_vec(v, v)  # noqa: E731
    assert np.array_equal(sq(a ^ b), sq(a) ^ sq(b))
    # table path against the schoolbook oracle
    for x, y, z in zip(a[:200].tolist(), b[:200].tolist(), ab[:200].tolist()):
        assert naive_mul(x, y, ctx.poly) == z


@settings(max_examples=200, deadline=None)
@given(m=st.sampled_from([21, 22, 24]), data=st.data())
def test_untabled_fields(m, data):
    ctx = field_new(m)
    a = data.draw(st.integers(1, ctx.order))
    b = data.draw(st.integers(0, ctx.order))
    assert ctx.mul(a, b) == naive_mul(a, b, ctx.poly)
    assert ctx.mul(a, ctx.inv(a)) == 1
    assert ctx.trace_to_subfield(1, a) in (0, 1)


def test_trace_examples(f8):
    assert f8.trace_to_subfield(1, 0) == 0
    assert f8.trace_to_subfield(1, 0b10) == 0
    assert sum(f8.absolute_trace_bit(x) for x in range(8)) == 4
    for x in range(8):
        for y in range(8):
            assert f8.absolute_trace_bit(x) ^ f8.absolute_trace_bit(y) == f8.absolute_trace_bit(x ^ y)


def test_trace_requires_divisor(f32):
    with pytest.raises(FieldError):
        f32.trace_to_subfield(2, 1)
    with pytest.raises(FieldError):
        f32.subfield(3)


@pytest.mark.parametrize("m,e", [(9, 3), (9, 1), (6, 2), (6, 3), (10, 5), (8, 4), (5, 5)])
def test_trace_tower(m, e):
    ctx = field_new(m)
    sub = ctx.subfield(e)
    assert len(sub) == 2**e
    tr = [ctx.trace_to_subfield(e, x) for x in range(ctx.size)]
    # lands in, and covers, the subfield
    assert set(tr) == set(sub)
    # transitivity through the subfield trace
    for x in range(ctx.size):
        assert ctx.absolute_trace_bit(x) == ctx.subfield_trace_bit(e, tr[x])
    # GF(2^e)-linearity
    rng = np.random.default_rng(0)
    for x in rng.integers(0, ctx.size, 50).tolist():
        for lam in sub:
            assert ctx.trace_to_subfield(e, ctx.mul(lam, x)) == ctx.mul(lam, tr[x])
    assert np.array_equal(ctx.trace_table(e), np.array(tr))
    assert np.array_equal(ctx.composite_trace_table(e), ctx.composite_trace_table(1))


def test_subfield_views(f8):
    assert tuple(f8.subfield(3)) == tuple(range(8))
    assert tuple(f8.subfield(1)) == (0, 1)
    ctx = field_new(9)
    s3 = ctx.subfield(3)
    assert len(s3) == 8
    for a in s3:
        assert ctx.frob(a, 3) == a
        for b in s3:
            assert ctx.mul(a, b) in s3
            assert a ^ b in s3


def test_context_pickles(f32):
    import pickle

    back = pickle.loads(pickle.dumps(f32))
    assert (back.m, back.poly) == (f32.m, f32.poly)
    assert back.mul(7, 9) == f32.mul(7, 9)
