import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsubord.caratheodory import SchwarzSpec, p_from_schwarz_batch, schwarz_batch, schwarz_series
from expsubord.class_maps import (
    CATALOG,
    ClassMember,
    ClassTag,
    ExtremalSpec,
    InsufficientCoeffs,
    catalog_for,
    catalog_json,
    closed_form_a_batch,
    coeffs_via_ode,
    convex_coeffs,
    extremal_member,
    fekete_szego_extremal,
    ode_coeffs_batch,
    star_coeffs,
)
from expsubord.functionals import fekete_szego
from expsubord.series import PowerSeries

STAR, CONVEX = ClassTag.STARLIKE_E, ClassTag.CONVEX_E
N = 8


def monomial_w(n):
    return PowerSeries.monomial(n, N)


def test_class_tag_parse():
    assert ClassTag.parse("star_e") is STAR
    assert ClassTag.parse("CONVEX_E") is CONVEX
    assert ClassTag.parse(CONVEX) is CONVEX
    with pytest.raises(ValueError):
        ClassTag.parse("koebe")


def test_star_closed_form_examples():
    m = star_coeffs([2, 2, 2, 2])
    assert np.allclose(m.coeffs[2:4], [1, 3 / 4])
    assert np.allclose(star_coeffs([0, 0, 0, 0]).a_vector, 0)
    assert np.allclose(star_coeffs([0, 2, 0, 2]).a_vector[:3], [0, 1 / 2, 0])


def test_convex_closed_form_examples():
    assert np.allclose(convex_coeffs([2, 2, 2, 2]).a_vector[:2], [1 / 2, 1 / 4])
    assert np.allclose(convex_coeffs([0, 2, 0, 2]).a_vector[:3], [0, 1 / 6, 0])
    assert convex_coeffs([0, 0, 2, 0]).a(4) == pytest.approx(1 / 12)


def test_closed_form_needs_four_coeffs():
    with pytest.raises(InsufficientCoeffs):
        star_coeffs([2, 2, 2])
    with pytest.raises(InsufficientCoeffs):
        closed_form_a_batch(np.zeros((3, 2)), CONVEX)


def test_ode_examples():
    f1 = coeffs_via_ode(monomial_w(1), STAR)
    assert np.allclose(f1.coeffs[2:4], [1, 3 / 4], atol=1e-15)
    z = coeffs_via_ode(PowerSeries.zero(N), STAR)
    assert np.array_equal(z.coeffs, np.r_[0, 1, np.zeros(N - 1)])
    assert coeffs_via_ode(monomial_w(4), CONVEX).a(5) == pytest.approx(1 / 20, abs=1e-15)
    assert coeffs_via_ode(monomial_w(3), STAR).a(4) == pytest.approx(1 / 3, abs=1e-15)


def test_ode_starlike_matches_exp_integral():
    # w = z: f/z = exp(sum z^k / (k k!)), an independent route through exp_series
    from math import factorial

    from expsubord.series import exp_series

    h = PowerSeries([0] + [1 / (k * factorial(k)) for k in range(1, N)], order=N - 1)
    f = coeffs_via_ode(monomial_w(1), STAR)
    assert np.allclose(f.coeffs[1:], exp_series(h).coeffs, atol=1e-15)
    assert f.a(4) == pytest.approx(17 / 36)


def test_ode_order_limit():
    with pytest.raises(InsufficientCoeffs):
        ode_coeffs_batch(np.zeros((1, 4)), STAR, order=6)
    with pytest.raises(ValueError):
        ode_coeffs_batch(np.ones((1, 4)), STAR)


def test_member_invariants():
    with pytest.raises(ValueError):
        ClassMember(STAR, [1, 1, 0])
    m = ClassMember.from_a("star_e", [0.5, 0.25, 0, 0])
    assert m.order == 5
    with pytest.raises(InsufficientCoeffs):
        m.a(6)
    with pytest.raises(ValueError):
        m.coeffs[2] = 1


# --- catalog ------------------------------------------------------------------


@pytest.mark.parametrize(
    "ident, index, value",
    [
        ("f1", 2, 1.0),
        ("f1", 3, 3 / 4),
        ("f2", 3, 1 / 2),
        ("f2", 2, 0.0),
        ("f3", 4, 1 / 3),
        ("f4_star", 5, 1 / 4),
        ("f5", 2, 1 / 2),
        ("f5", 3, 1 / 4),
        ("f6", 3, 1 / 6),
        ("f7", 4, 1 / 12),
        ("f4_convex", 5, 1 / 20),
    ],
)
def test_catalog_values(ident, index, value):
    m, f = extremal_member(CATALOG[ident])
    assert abs(m.a(index) - value) <= 1e-12
    assert np.allclose(f.coeffs, m.coeffs)
    assert m.provenance == ident


def test_catalog_split_by_class():
    assert {s.id for s in catalog_for(STAR)} == {"f1", "f2", "f3", "f4_star", "zalcman_star"}
    assert {s.id for s in catalog_for(CONVEX)} == {"f5", "f6", "f7", "f4_convex"}


def test_zalcman_witness_attains_bound():
    m, _ = extremal_member(CATALOG["zalcman_star"])
    assert abs(m.a(2) * m.a(3) - m.a(4)) == pytest.approx(8 / (9 * np.sqrt(7)), abs=1e-12)


def test_extremal_spec_validation():
    with pytest.raises(ValueError):
        ExtremalSpec("x", STAR)
    with pytest.raises(ValueError):
        ExtremalSpec("x", STAR, power=1, t1=0.5, t2=-1)
    with pytest.raises(ValueError):
        ExtremalSpec("x", STAR, t1=0.5, t2=0.5)
    with pytest.raises(ValueError):
        ExtremalSpec("x", STAR, t1=1.5, t2=-1)
    assert ExtremalSpec("x", STAR, t1=1.0).p_description() == "(1+z)/(1-z)"


def test_fs_witness_t1_one_falls_back():
    # |3 - 4 lambda| = 0 makes M = 0, so the sqrt branch has t1 = 1
    spec = fekete_szego_extremal(STAR, 0.75, 0.1, "sqrt")
    assert spec.t1 == 1.0
    m, _ = extremal_member(spec)
    assert m.a(2) == pytest.approx(1.0)


def test_fs_witness_values():
    # sqrt branch at lambda = 1, mu = 1: -mu sqrt(2/(|3-4 lambda|+2)) with the lemma's t1
    m, _ = extremal_member(fekete_szego_extremal(STAR, 1.0, 1.0, "sqrt"))
    assert fekete_szego(m, 1.0, 1.0) == pytest.approx(-np.sqrt(2 / 3), abs=1e-12)
    m, _ = extremal_member(fekete_szego_extremal(CONVEX, 0.0, 1.5, "quadratic"))
    # third branch: -(9 mu^2 + 6|1-lambda| + 4)/(12(3|1-lambda|+2)) = -121/240
    assert fekete_szego(m, 0.0, 1.5) == pytest.approx(-121 / 240, abs=1e-12)
    with pytest.raises(ValueError):
        fekete_szego_extremal(STAR, 0, 1, "linear")


def test_catalog_json_export():
    rows = catalog_json()
    assert {r["id"] for r in rows} == set(CATALOG)
    json.dumps(rows)
    f1 = next(r for r in rows if r["id"] == "f1")
    assert f1["class"] == "star_e"
    assert f1["a"][0] == pytest.approx([1.0, 0.0])


# --- cross-validation -----------------------------------------------------------


def draws(n, seed, degree=4):
    rng = np.random.default_rng(seed)
    zeros = np.sqrt(rng.uniform(0, 1, (n, degree))) * (1 - 1e-6) * np.exp(2j * np.pi * rng.uniform(size=(n, degree)))
    mask = np.arange(degree) < rng.integers(0, degree + 1, n)[:, None]
    return schwarz_batch(rng.uniform(0, 2 * np.pi, n), zeros, N, mask)


@pytest.mark.parametrize("tag", [STAR, CONVEX])
def test_closed_form_matches_ode(tag):
    W = draws(10_000, 3)
    C = p_from_schwarz_batch(W)[:, 1:5]
    A = closed_form_a_batch(C, tag)
    F = ode_coeffs_batch(W, tag)
    assert np.abs(A - F[:, 2:6]).max() <= 1e-12


def test_alexander_relation():
    W = draws(2000, 4)
    g = ode_coeffs_batch(W, CONVEX)
    f = ode_coeffs_batch(W, STAR)
    n = np.arange(N + 1)
    assert np.abs(g * n - f).max() <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 2 * np.pi), st.lists(st.tuples(st.floats(0, 0.999), st.floats(0, 2 * np.pi)), max_size=4))
def test_single_member_routes_agree(phase, zeros):
    w = schwarz_series(SchwarzSpec(phase, tuple(r * np.exp(1j * t) for r, t in zeros)))
    c = p_from_schwarz_batch(w.coeffs)[1:5]
    for tag, closed in ((STAR, star_coeffs), (CONVEX, convex_coeffs)):
        a = closed(c).a_vector
        b = coeffs_via_ode(w, tag).coeffs[2:6]
        assert np.abs(a - b).max() <= 1e-12
