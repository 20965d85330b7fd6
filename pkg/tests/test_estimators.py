import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from expsubord import CoefficientMap, ExtremalSearch, FunctionalTransformer
from expsubord.caratheodory import schwarz_batch
from expsubord.class_maps import ClassMember, ode_coeffs_batch
from expsubord.functionals import zalcman_23

N = 8


def schwarz_rows(n=500, seed=0):
    rng = np.random.default_rng(seed)
    zeros = np.sqrt(rng.uniform(0, 1, (n, 3))) * 0.999 * np.exp(2j * np.pi * rng.uniform(size=(n, 3)))
    return schwarz_batch(rng.uniform(0, 2 * np.pi, n), zeros, N)


def test_params_and_clone():
    est = FunctionalTransformer("fekete-szego", lam=1 + 0.5j, mu=2.0)
    assert est.get_params() == {"functional": "fekete-szego", "lam": 1 + 0.5j, "mu": 2.0}
    c = clone(est.set_params(mu=3.0))
    assert c.mu == 3.0 and not hasattr(c, "functional_")
    assert clone(CoefficientMap("convex_e", order=6)).get_params() == {"class_tag": "convex_e", "order": 6}


def test_coefficient_map_matches_kernel():
    W = schwarz_rows()
    F = CoefficientMap("convex_e").fit_transform(W)
    assert F.shape == (500, N + 1)
    assert np.array_equal(F, ode_coeffs_batch(W, "convex_e"))
    assert CoefficientMap(order=5).fit_transform(W).shape == (500, 6)


def test_pipeline_zalcman():
    W = schwarz_rows(50)
    pipe = make_pipeline(CoefficientMap("star_e"), FunctionalTransformer("zalcman"))
    out = pipe.fit_transform(W)
    assert out.shape == (50, 1) and out.dtype == float
    F = ode_coeffs_batch(W, "star_e")
    expect = [zalcman_23(ClassMember.from_a("star_e", row[2:])) for row in F]
    assert np.allclose(out[:, 0], expect, atol=1e-15)


def test_extremal_search_partial_fit_equals_fit():
    F = ode_coeffs_batch(schwarz_rows(900, 1), "star_e")
    full = ExtremalSearch("t21").fit(F)
    part = ExtremalSearch("t21")
    for chunk in np.array_split(F, 7):
        part.partial_fit(chunk)
    for attr in ("min_", "max_", "argmin_", "argmax_", "n_seen_"):
        assert getattr(full, attr) == getattr(part, attr)
    v = FunctionalTransformer("t21").fit_transform(F)[:, 0]
    assert full.max_ == v.max() and full.argmax_ == int(np.argmax(v))
    assert full.score(F) == full.max_


def test_extremal_search_ties_keep_first_row():
    F = np.zeros((4, N + 1))
    F[:, 1] = 1
    F[:, 2] = 1.0
    s = ExtremalSearch("gamma1").fit(F[:2]).partial_fit(F[2:])
    assert s.argmax_ == 0 and s.argmin_ == 0 and s.n_seen_ == 4


def test_fit_resets_state():
    F = ode_coeffs_batch(schwarz_rows(20, 2), "star_e")
    s = ExtremalSearch("gamma2").fit(F).fit(F[:5])
    assert s.n_seen_ == 5


def test_errors():
    with pytest.raises(NotFittedError):
        FunctionalTransformer().transform(np.zeros((1, 4)))
    with pytest.raises(NotFittedError):
        ExtremalSearch().score(np.zeros((1, 4)))
    with pytest.raises(ValueError):
        FunctionalTransformer("fekete-szego", mu=0).fit(np.zeros((1, 4)))
    with pytest.raises(ValueError):
        FunctionalTransformer("hankel").fit(np.zeros((1, 4)))
    with pytest.raises(ValueError):
        FunctionalTransformer("gamma4").fit(np.zeros((1, 4)))
    m = CoefficientMap().fit(schwarz_rows(3))
    with pytest.raises(ValueError):
        m.transform(np.zeros((3, 5), dtype=complex))
    with pytest.raises(ValueError):
        CoefficientMap("koebe").fit(schwarz_rows(3))
