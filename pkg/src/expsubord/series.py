"""Truncated power series with complex coefficients.

A series of order ``N`` stores the coefficients ``c[0], ..., c[N]`` of
``c[0] + c[1] z + ... + c[N] z**N``; everything above ``z**N`` is unknown,
not zero.  Binary operations truncate to the smaller order of the two
operands.

The array kernels (``cmul``, ``cdiv``, ``cexp``, ``clog1``) act on the last
axis of an ndarray so that whole batches of series can be pushed through in
one call.  :class:`PowerSeries` wraps a single 1-D coefficient vector and is
what the rest of the package passes around.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

DEFAULT_ORDER = 8
MAX_ORDER = 32


class DivisionByZeroConstantTerm(ZeroDivisionError):
    """The divisor has a vanishing constant term."""


class NotNormalized(ValueError):
    """The series is not of the form z + a_2 z^2 + ..."""


class InnerNotVanishing(ValueError):
    """The inner series of a composition has a nonzero constant term."""


# --------------------------------------------------------------------------
# array kernels
# --------------------------------------------------------------------------


def cmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cauchy product along the last axis, truncated to the shorter input."""
    n = min(a.shape[-1], b.shape[-1])
    a = a[..., :n]
    b = b[..., :n]
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.result_type(a, b, complex))
    for k in range(n):
        # out[k] = sum_j a[j] b[k-j]
        out[..., k] = np.sum(a[..., : k + 1] * b[..., k::-1], axis=-1)
    return out


def cdiv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quotient ``a / b`` along the last axis; ``b[..., 0]`` must not vanish."""
    n = min(a.shape[-1], b.shape[-1])
    a = a[..., :n]
    b = b[..., :n]
    b0 = b[..., 0]
    if np.any(np.abs(b0) < 1e-300):
        raise DivisionByZeroConstantTerm("divisor has zero constant term")
    shape = np.broadcast_shapes(a.shape, b.shape)
    q = np.zeros(shape, dtype=np.result_type(a, b, complex))
    for k in range(n):
        acc = a[..., k] - np.sum(b[..., 1 : k + 1] * q[..., k - 1 :: -1][..., :k], axis=-1)
        q[..., k] = acc / b0
    return q


def cexp(a: np.ndarray) -> np.ndarray:
    """``exp`` of a series via ``(e^a)' = a' e^a``; O(N^2)."""
    n = a.shape[-1]
    out = np.zeros(a.shape, dtype=np.result_type(a, complex))
    out[..., 0] = np.exp(a[..., 0])
    j = np.arange(1, n)
    for k in range(1, n):
        # k e_k = sum_{j=1}^{k} j a_j e_{k-j}
        out[..., k] = np.sum(j[:k] * a[..., 1 : k + 1] * out[..., k - 1 :: -1][..., :k], axis=-1) / k
    return out


def clog1(g: np.ndarray) -> np.ndarray:
    """``log g`` for series with ``g[..., 0] == 1``; result has zero constant term."""
    n = g.shape[-1]
    out = np.zeros(g.shape, dtype=np.result_type(g, complex))
    j = np.arange(1, n)
    for k in range(1, n):
        # k L_k = k g_k - sum_{j=1}^{k-1} j L_j g_{k-j}
        s = np.sum(j[: k - 1] * out[..., 1:k] * g[..., k - 1 : 0 : -1], axis=-1)
        out[..., k] = (k * g[..., k] - s) / k
    return out


# --------------------------------------------------------------------------
# PowerSeries
# --------------------------------------------------------------------------


class PowerSeries:
    """Truncated power series ``sum_k coeffs[k] z**k`` of order ``len(coeffs) - 1``.

    Instances are treated as immutable values; the coefficient array is
    copied on construction and marked read-only.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray, order: int | None = None):
        c = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise ValueError(f"order must be non-negative, got {order}")
            if c.size > order + 1:
                c = c[: order + 1]
            elif c.size < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("power series coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    # construction helpers
    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([1.0], order=order)

    @classmethod
    def monomial(cls, n: int, order: int = DEFAULT_ORDER, coeff: complex = 1.0) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        if n <= order:
            c[n] = coeff
        return cls(c)

    @classmethod
    def koebe(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        """``z / (1 - z)**2 = sum n z**n``."""
        return cls(np.arange(order + 1, dtype=float))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self) -> str:
        return f"PowerSeries({np.array2string(self._c, precision=6)}, order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order from {self.order} to {order}")
        return PowerSeries(self._c[: order + 1])

    def allclose(self, other: "PowerSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self._c[:n], other._c[:n], rtol=0.0, atol=atol))

    def __call__(self, z):
        """Evaluate the truncated polynomial at ``z`` (Horner)."""
        z = np.asarray(z)
        acc = np.zeros(z.shape, dtype=complex)
        for c in self._c[::-1]:
            acc = acc * z + c
        return acc

    # arithmetic
    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if np.isscalar(other):
            return PowerSeries([other], order=self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c * other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c / other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(other, self)

    def derivative(self) -> "PowerSeries":
        return derivative(self)

    def integral(self) -> "PowerSeries":
        """Termwise antiderivative vanishing at 0; order grows by one."""
        k = np.arange(1, self._c.size + 1)
        return PowerSeries(np.concatenate([[0.0], self._c / k]))


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order) + 1
    return PowerSeries(a.coeffs[:n] + b.coeffs[:n])


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return PowerSeries(cmul(a.coeffs, b.coeffs))


def div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Return ``q`` with ``q * b == a`` up to the common truncation order.

    Raises
    ------
    DivisionByZeroConstantTerm
        If ``|b[0]| < 1e-300``.
    """
    return PowerSeries(cdiv(a.coeffs, b.coeffs))


def exp_series(a: PowerSeries) -> PowerSeries:
    return PowerSeries(cexp(a.coeffs))


def log_ratio(f: PowerSeries) -> PowerSeries:
    """``log(f(z)/z)`` for a normalized ``f = z + a_2 z^2 + ...``.

    The result has constant term 0 and order ``f.order - 1``; its
    coefficient of ``z**n`` is twice the n-th logarithmic coefficient.
    """
    c = f.coeffs
    if f.order < 1 or abs(c[0]) > 1e-12 or abs(c[1] - 1.0) > 1e-12:
        raise NotNormalized("expected f(0) = 0 and f'(0) = 1")
    return PowerSeries(clog1(c[1:]))


def derivative(a: PowerSeries) -> PowerSeries:
    if a.order == 0:
        return PowerSeries([0.0])
    k = np.arange(1, a.order + 1)
    return PowerSeries(a.coeffs[1:] * k)


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """``outer(inner(z))`` by Horner's scheme; needs ``inner(0) == 0``."""
    if abs(inner.coeffs[0]) > 1e-14:
        raise InnerNotVanishing(f"inner series has constant term {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order)
    h = inner.coeffs[: n + 1]
    acc = np.zeros(n + 1, dtype=complex)
    for c in outer.coeffs[: n + 1][::-1]:
        acc = cmul(acc, h)
        acc[0] += c
    return PowerSeries(acc)
