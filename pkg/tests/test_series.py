import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsubord.series import (
    DivisionByZeroConstantTerm,
    InnerNotVanishing,
    NotNormalized,
    PowerSeries,
    add,
    compose,
    derivative,
    div,
    exp_series,
    log_ratio,
    mul,
)

N = 8


def ps(*c, order=N):
    return PowerSeries(list(c), order=order)


def geometric(order=N, step=1):
    c = np.zeros(order + 1)
    c[::step] = 1.0
    return PowerSeries(c)


def coeff_lists(n=N + 1, bound=10.0):
    part = st.floats(-bound, bound, allow_nan=False)
    return st.lists(st.builds(complex, part, part), min_size=n, max_size=n)


# --- construction -----------------------------------------------------------


def test_order_and_padding():
    s = ps(1, 2)
    assert s.order == N
    assert len(s.coeffs) == N + 1
    assert s.coeffs[2] == 0


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        PowerSeries([1.0, float("nan")])


def test_coeffs_are_read_only():
    s = ps(1, 2)
    with pytest.raises(ValueError):
        s.coeffs[0] = 3


def test_mixed_orders_truncate_to_min():
    assert (ps(1, 1, order=3) + ps(1, 1, order=5)).order == 3
    assert mul(ps(1, 1, order=6), ps(1, 1, order=4)).order == 4


# --- arithmetic examples ------------------------------------------------------


def test_add_examples():
    assert add(ps(1, 1), ps(1, -1)).allclose(ps(2))
    assert add(ps(0, 1), ps(0, 0, 1)).allclose(ps(0, 1, 1))
    k = PowerSeries.koebe()
    assert add(k, PowerSeries.zero()).allclose(k)


def test_mul_examples():
    assert mul(ps(1, 1), ps(1, 1)).allclose(ps(1, 2, 1))
    expect = np.r_[0.0, np.ones(N)]
    assert np.allclose(mul(ps(0, 1), geometric()).coeffs, expect)
    assert mul(ps(1, 1, 1, order=2), ps(1, -1, order=2)).allclose(ps(1, 0, 0, order=2))


def test_div_examples():
    p = div(ps(1, 1), ps(1, -1))
    assert np.allclose(p.coeffs, np.r_[1.0, 2 * np.ones(N)], atol=1e-15)
    a = ps(2, 1j, 3)
    assert div(a, a).allclose(PowerSeries.one())
    q = div(ps(1, 0, 1), ps(1, 0, -1))
    expect = np.zeros(N + 1)
    expect[0] = 1
    expect[2::2] = 2
    assert np.allclose(q.coeffs, expect)


def test_div_zero_constant_term():
    with pytest.raises(DivisionByZeroConstantTerm):
        div(ps(1), ps(0, 1))
    with pytest.raises(ZeroDivisionError):
        ps(1) / ps(0, 1)


def test_exp_examples():
    assert exp_series(PowerSeries.zero()).allclose(PowerSeries.one())
    e = exp_series(ps(0, 1, order=4))
    assert np.allclose(e.coeffs, [1, 1, 1 / 2, 1 / 6, 1 / 24])
    assert exp_series(ps(0, 1, 1, order=2)).allclose(ps(1, 1, 1.5, order=2))


def test_exp_with_constant_term():
    assert np.isclose(exp_series(ps(1.0)).coeffs[0], math.e)


def test_log_ratio_examples():
    assert log_ratio(ps(0, 1)).allclose(PowerSeries.zero(N - 1))
    g = log_ratio(PowerSeries.koebe())
    assert np.allclose(g.coeffs[1:] / 2, 1 / np.arange(1, N))
    h = log_ratio(ps(0, 1, 1))
    k = np.arange(1, N)
    assert np.allclose(h.coeffs[1:], (-1.0) ** (k + 1) / k)


def test_log_ratio_not_normalized():
    with pytest.raises(NotNormalized):
        log_ratio(ps(0, 2))
    with pytest.raises(NotNormalized):
        log_ratio(ps(1, 1))


def test_derivative_examples():
    assert derivative(ps(0, 0, 1)).allclose(ps(0, 2, order=N - 1))
    assert derivative(ps(3)).allclose(PowerSeries.zero(N - 1))
    assert derivative(ps(0, 1, 0, 1 / 3)).allclose(ps(1, 0, 1, order=N - 1))
    assert ps(0, 0, 1).derivative().order == N - 1


def test_compose_examples():
    g = ps(1, 2, 3, 4)
    assert compose(g, ps(0, 1)).allclose(g)
    c = compose(geometric(), ps(0, 0, 1))
    assert c.allclose(geometric(step=2))
    ez = exp_series(ps(0, 1))
    assert compose(ez, ps(0, 1, 1)).allclose(exp_series(ps(0, 1, 1)))


def test_compose_inner_must_vanish():
    with pytest.raises(InnerNotVanishing):
        compose(ps(1, 1), ps(0.5, 1))


def test_evaluation_matches_closed_form():
    z = 0.3 + 0.1j
    assert abs(geometric(order=30)(z) - 1 / (1 - z)) < 1e-14


def test_integral_inverts_derivative():
    a = ps(0, 1, 2, 3)
    assert a.derivative().integral().allclose(a)


# --- invariants -----------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(coeff_lists(), coeff_lists(), coeff_lists())
def test_mul_commutative_associative(a, b, c):
    A, B, C = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    ab, ba = mul(A, B).coeffs, mul(B, A).coeffs
    scale = 1 + np.abs(ab).max()
    assert np.abs(ab - ba).max() <= 1e-14 * scale
    l, r = mul(mul(A, B), C).coeffs, mul(A, mul(B, C)).coeffs
    assert np.abs(l - r).max() <= 1e-14 * (1 + np.abs(l).max()) * 10


@settings(max_examples=60, deadline=None)
@given(coeff_lists(bound=1.0), coeff_lists(bound=1.0), st.floats(0.1, 2.0), st.floats(0, 2 * math.pi))
def test_div_inverts_mul(a, b, r, phi):
    b[0] = r * complex(math.cos(phi), math.sin(phi))
    A, B = PowerSeries(a), PowerSeries(b)
    # the quotient of arbitrary series grows like |b_k/b_0|^k, so scale the tolerance
    q = div(mul(A, B), B)
    scale = 1 + np.abs(div(PowerSeries.one(), B).coeffs).max()
    assert np.abs(q.coeffs - A.coeffs).max() <= 1e-12 * scale * (1 + np.abs(a).max())


@settings(max_examples=60, deadline=None)
@given(coeff_lists(n=N, bound=0.5))
def test_exp_log_roundtrip(a):
    f = PowerSeries(np.r_[0.0, 1.0, a[: N - 1]])
    g = exp_series(log_ratio(f))
    assert np.abs(g.coeffs - f.coeffs[1:]).max() <= 1e-12


@settings(max_examples=60, deadline=None)
@given(coeff_lists(bound=1.0), coeff_lists(bound=1.0))
def test_chain_rule(g, h):
    h[0] = 0
    G, H = PowerSeries(g), PowerSeries(h)
    lhs = derivative(compose(G, H))
    rhs = mul(compose(derivative(G), H.truncate(N - 1)), derivative(H))
    scale = 1 + np.abs(lhs.coeffs).max()
    assert np.abs(lhs.coeffs - rhs.coeffs).max() <= 1e-12 * scale


def test_batch_kernels_match_scalar():
    from expsubord.series import cmul

    rng = np.random.default_rng(0)
    A = rng.normal(size=(5, N + 1)) + 1j * rng.normal(size=(5, N + 1))
    B = rng.normal(size=(5, N + 1)) + 1j * rng.normal(size=(5, N + 1))
    C = cmul(A, B)
    for i in range(5):
        assert np.allclose(C[i], mul(PowerSeries(A[i]), PowerSeries(B[i])).coeffs)
