"""scikit-learn style wrappers around the batch kernels.

Rows of ``X`` are Schwarz-function coefficient vectors ``(w_0, w_1, ...)``
(``w_0 = 0``) for :class:`CoefficientMap`, and Taylor rows
``(0, 1, a_2, ...)`` for :class:`FunctionalTransformer` and
:class:`ExtremalSearch`.  Pipelines compose as usual::

    make_pipeline(CoefficientMap("star_e"), FunctionalTransformer("zalcman"))
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_coeff_array, check_positive
from .class_maps import ClassTag, ode_coeffs_batch
from .functionals import parse_functional


class CoefficientMap(TransformerMixin, BaseEstimator):
    """Schwarz rows -> Taylor rows ``[0, 1, a_2, ..., a_M]`` of the class member."""

    def __init__(self, class_tag="star_e", order=None):
        self.class_tag = class_tag
        self.order = order

    def fit(self, X, y=None):
        X = check_coeff_array(X, min_cols=2)
        self.class_tag_ = ClassTag.parse(self.class_tag)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "class_tag_")
        X = check_coeff_array(X, min_cols=2)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, fitted with {self.n_features_in_}")
        return ode_coeffs_batch(X, self.class_tag_, self.order)


class FunctionalTransformer(TransformerMixin, BaseEstimator):
    """Taylor rows -> one column of functional values."""

    def __init__(self, functional="gamma1", lam=0j, mu=1.0):
        self.functional = functional
        self.lam = lam
        self.mu = mu

    def fit(self, X, y=None):
        check_positive(self.mu, "mu")
        self.functional_ = parse_functional(self.functional, self.lam, self.mu)
        X = check_coeff_array(X, min_cols=self.functional_.order_needed + 1)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "functional_")
        X = check_coeff_array(X, min_cols=self.functional_.order_needed + 1)
        return np.asarray(self.functional_.batch(X), dtype=float)[:, np.newaxis]


class ExtremalSearch(BaseEstimator):
    """Running extrema of a functional over Taylor rows.

    After ``fit``: ``min_``, ``max_`` and the row indices ``argmin_``,
    ``argmax_``.  ``partial_fit`` merges a further batch, so a stream can be
    consumed chunk by chunk; ties keep the earlier row.
    """

    def __init__(self, functional="gamma1", lam=0j, mu=1.0):
        self.functional = functional
        self.lam = lam
        self.mu = mu

    def _reset(self):
        for attr in ("min_", "max_", "argmin_", "argmax_", "n_seen_", "functional_"):
            self.__dict__.pop(attr, None)

    def fit(self, X, y=None):
        self._reset()
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        if not hasattr(self, "functional_"):
            check_positive(self.mu, "mu")
            self.functional_ = parse_functional(self.functional, self.lam, self.mu)
            self.min_, self.max_ = np.inf, -np.inf
            self.argmin_ = self.argmax_ = -1
            self.n_seen_ = 0
        X = check_coeff_array(X, min_cols=self.functional_.order_needed + 1)
        v = np.asarray(self.functional_.batch(X), dtype=float)
        i, j = int(np.argmin(v)), int(np.argmax(v))
        if v[i] < self.min_:
            self.min_, self.argmin_ = float(v[i]), self.n_seen_ + i
        if v[j] > self.max_:
            self.max_, self.argmax_ = float(v[j]), self.n_seen_ + j
        self.n_seen_ += X.shape[0]
        return self

    def score(self, X, y=None):
        """Largest functional value on ``X`` (higher is a better witness)."""
        check_is_fitted(self, "functional_")
        X = check_coeff_array(X, min_cols=self.functional_.order_needed + 1)
        return float(np.max(self.functional_.batch(X)))
