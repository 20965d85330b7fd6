"""Members of the Carathéodory class P and the Schwarz functions behind them.

Three ways in:

* a Schwarz function ``w(z) = e^{i phase} z B(z)`` with ``B`` a finite
  Blaschke product, turned into ``p = (1 + w)/(1 - w)``;
* the parameters ``(tau1, tau2, tau3)`` giving ``c_1, c_2, c_3`` in closed
  form, extended to a full Schwarz function by the inverse Schur recursion;
* the rational ``p`` attached to a unimodular ``tau_k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .series import DEFAULT_ORDER, PowerSeries, cdiv, cmul

CARATHEODORY_TOL = 1e-10


class TauOutOfDisk(ValueError):
    pass


class ZeroOnBoundary(ValueError):
    pass


class CaseMismatch(ValueError):
    pass


class BoundaryCase(enum.Enum):
    T1_UNIMODULAR = 1
    T2_UNIMODULAR = 2
    T3_UNIMODULAR = 3


@dataclass(frozen=True)
class TauParams:
    tau1: complex
    tau2: complex = 0j
    tau3: complex = 0j

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (complex(self.tau1), complex(self.tau2), complex(self.tau3))


@dataclass(frozen=True)
class SchwarzSpec:
    """``w(z) = e^{i phase} z prod_k (a_k - z)/(1 - conj(a_k) z)``."""

    phase: float = 0.0
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        for a in zs:
            if abs(a) > 1.0 - 1e-9:
                raise ZeroOnBoundary(f"Blaschke zero {a!r} is not strictly inside the disk")

    @property
    def degree(self) -> int:
        return len(self.zeros)


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    """Coefficients ``c_1, c_2, ...`` of ``p(z) = 1 + sum c_n z^n``.

    ``c`` is 0-based: ``c[0]`` holds ``c_1``.
    """

    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.c, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("need at least c_1")
        if np.any(np.abs(c) > 2.0 + CARATHEODORY_TOL):
            raise ValueError(f"|c_n| exceeds 2: max is {np.abs(c).max():.6g}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def __len__(self) -> int:
        return self.c.size

    def __repr__(self) -> str:
        return f"CaratheodoryCoeffs({np.array2string(self.c, precision=6)})"

    def to_series(self) -> PowerSeries:
        return PowerSeries(np.concatenate([[1.0], self.c]))


# --------------------------------------------------------------------------
# tau parametrization
# --------------------------------------------------------------------------


def _check_tau(t1, t2, t3) -> None:
    t1 = np.asarray(t1)
    if np.any(np.abs(np.imag(t1)) > 1e-12) or np.any(np.real(t1) < -1e-12):
        raise TauOutOfDisk("tau1 must be real and in [0, 1]")
    for name, t in (("tau1", t1), ("tau2", t2), ("tau3", t3)):
        if np.any(np.abs(t) > 1.0 + 1e-12):
            raise TauOutOfDisk(f"|{name}| > 1")


def tau_to_c_batch(t1, t2, t3) -> np.ndarray:
    """Vectorized :func:`tau_to_c`; returns shape ``(..., 3)``."""
    _check_tau(t1, t2, t3)
    t1 = np.real(np.asarray(t1, dtype=complex))
    t2 = np.asarray(t2, dtype=complex)
    t3 = np.asarray(t3, dtype=complex)
    s = 1.0 - t1**2
    c1 = 2 * t1 + 0j
    c2 = 2 * t1**2 + 2 * s * t2
    c3 = 2 * t1**3 + 4 * s * t1 * t2 - 2 * s * t1 * t2**2 + 2 * s * (1 - np.abs(t2) ** 2) * t3
    return np.stack(np.broadcast_arrays(c1, c2, c3), axis=-1)


def tau_to_c(t: TauParams) -> CaratheodoryCoeffs:
    """``(c_1, c_2, c_3)`` from ``(tau1, tau2, tau3)``.

    ``tau1`` must be real in ``[0, 1]``; rotate the function first if it is
    not.  Raises :class:`TauOutOfDisk` outside the closed disk.
    """
    return CaratheodoryCoeffs(tau_to_c_batch(*t.as_tuple()))


def schur_step(gamma, phi: np.ndarray) -> np.ndarray:
    """``(gamma + z phi)/(1 + conj(gamma) z phi)`` along the last axis."""
    gamma = np.asarray(gamma, dtype=complex)[..., np.newaxis]
    zphi = np.zeros(np.broadcast_shapes(phi.shape, gamma.shape), dtype=complex)
    zphi[..., 1:] = phi[..., :-1]
    one = np.zeros_like(zphi)
    one[..., 0] = 1.0
    return cdiv(gamma * one + zphi, one + np.conj(gamma) * zphi)


def schwarz_from_tau_batch(t1, t2, t3, tail: np.ndarray) -> np.ndarray:
    """Schwarz series with Schur parameters ``tau1, tau2, tau3`` then ``tail``.

    ``tail`` is a batch of Schur-function coefficient vectors (``|tail| <= 1``
    on the disk); its length fixes the order.  The ``c_1, c_2, c_3`` of the
    resulting ``p`` are those of :func:`tau_to_c` and ``tail`` decides
    ``c_4`` onwards.
    """
    _check_tau(t1, t2, t3)
    phi = schur_step(t3, tail)
    phi = schur_step(t2, phi)
    phi = schur_step(np.real(np.asarray(t1, dtype=complex)), phi)
    w = np.zeros_like(phi)
    w[..., 1:] = phi[..., :-1]
    return w


def schwarz_from_tau(t: TauParams, tail: PowerSeries | None = None, order: int = DEFAULT_ORDER) -> PowerSeries:
    if tail is None:
        tail = PowerSeries.zero(order)
    w = schwarz_from_tau_batch(*t.as_tuple(), tail.coeffs[: order + 1])
    return PowerSeries(w)


# --------------------------------------------------------------------------
# Schwarz functions
# --------------------------------------------------------------------------


def blaschke_factor_batch(a: np.ndarray, order: int) -> np.ndarray:
    """Coefficients of ``(a - z)/(1 - conj(a) z)`` for each entry of ``a``."""
    a = np.asarray(a, dtype=complex)[..., np.newaxis]
    k = np.arange(order + 1)
    geo = np.conj(a) ** k  # 1/(1 - conj(a) z)
    out = a * geo
    out[..., 1:] -= geo[..., :-1]
    return out


def schwarz_batch(phases, zeros, order: int, mask=None) -> np.ndarray:
    """Batch of ``e^{i phase} z B(z)`` series.

    ``zeros`` has shape ``(n, d)``; where ``mask`` is False the factor is
    skipped, which is how rows of lower Blaschke degree are packed together.
    """
    phases = np.asarray(phases, dtype=float)
    zeros = np.asarray(zeros, dtype=complex).reshape(phases.shape + (-1,))
    if np.any(np.abs(zeros) > 1.0 - 1e-9):
        raise ZeroOnBoundary("Blaschke zero on or outside the unit circle")
    if mask is None:
        mask = np.ones(zeros.shape, dtype=bool)
    w = np.zeros(phases.shape + (order + 1,), dtype=complex)
    if order >= 1:
        w[..., 1] = np.exp(1j * phases)
    for k in range(zeros.shape[-1]):
        fac = blaschke_factor_batch(zeros[..., k], order)
        fac[~mask[..., k]] = 0.0
        fac[~mask[..., k], 0] = 1.0
        w = cmul(w, fac)
    return w


def schwarz_series(s: SchwarzSpec, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Expand the Schwarz function described by ``s`` to order ``N``."""
    zs = np.array(s.zeros, dtype=complex).reshape(1, -1)
    return PowerSeries(schwarz_batch(np.array([s.phase]), zs, N)[0])


def p_from_schwarz_batch(w: np.ndarray) -> np.ndarray:
    one = np.zeros_like(w)
    one[..., 0] = 1.0
    return cdiv(one + w, one - w)


def schwarz_from_p_batch(p: np.ndarray) -> np.ndarray:
    one = np.zeros_like(p)
    one[..., 0] = 1.0
    return cdiv(p - one, p + one)


def p_series(w: PowerSeries) -> PowerSeries:
    """``p = (1 + w)/(1 - w)``."""
    if abs(w.coeffs[0]) > 1e-14:
        raise ValueError("Schwarz function must vanish at 0")
    return PowerSeries(p_from_schwarz_batch(w.coeffs))


def schwarz_to_p(w: PowerSeries) -> CaratheodoryCoeffs:
    return CaratheodoryCoeffs(p_series(w).coeffs[1:])


def p_to_schwarz(p: PowerSeries) -> PowerSeries:
    """``w = (p - 1)/(p + 1)``."""
    if abs(p.coeffs[0] - 1.0) > 1e-12:
        raise ValueError("p must satisfy p(0) = 1")
    return PowerSeries(schwarz_from_p_batch(p.coeffs))


# --------------------------------------------------------------------------
# boundary cases
# --------------------------------------------------------------------------


def boundary_p_from_tau(t: TauParams, case: BoundaryCase, order: int = DEFAULT_ORDER) -> PowerSeries:
    """The unique ``p`` in P attached to a unimodular ``tau_k``.

    Only the parameters up to the unimodular one are used.  ``tau1`` may be
    complex here.
    """
    t1, t2, t3 = t.as_tuple()
    cj = np.conj
    on_circle = lambda x: abs(abs(x) - 1.0) <= 1e-12  # noqa: E731
    inside = lambda x: abs(x) < 1.0  # noqa: E731
    if case is BoundaryCase.T1_UNIMODULAR:
        if not on_circle(t1):
            raise CaseMismatch("T1 case needs |tau1| = 1")
        num = [1.0, t1]
        den = [1.0, -t1]
    elif case is BoundaryCase.T2_UNIMODULAR:
        if not (inside(t1) and on_circle(t2)):
            raise CaseMismatch("T2 case needs |tau1| < 1 and |tau2| = 1")
        num = [1.0, cj(t1) * t2 + t1, t2]
        den = [1.0, cj(t1) * t2 - t1, -t2]
    elif case is BoundaryCase.T3_UNIMODULAR:
        if not (inside(t1) and inside(t2) and on_circle(t3)):
            raise CaseMismatch("T3 case needs |tau1|, |tau2| < 1 and |tau3| = 1")
        num = [1.0, cj(t2) * t3 + cj(t1) * t2 + t1, cj(t1) * t3 + t1 * cj(t2) * t3 + t2, t3]
        den = [1.0, cj(t2) * t3 + cj(t1) * t2 - t1, cj(t1) * t3 - t1 * cj(t2) * t3 - t2, -t3]
    else:
        raise CaseMismatch(f"unknown case {case!r}")
    return PowerSeries(num, order=order) / PowerSeries(den, order=order)


def monomial_p(n: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(1 + z^n)/(1 - z^n)``, the p behind most sharpness witnesses."""
    zn = PowerSeries.monomial(n, order)
    return (1.0 + zn) / (1.0 - zn)


# --------------------------------------------------------------------------
# diagnostics
# --------------------------------------------------------------------------


def validate_positive_real_part(p: PowerSeries, radius: float = 0.9, gridpoints: int = 360) -> tuple[bool, float]:
    """Spot check ``Re p > 0`` on the circle ``|z| = radius``.

    Returns ``(ok, min_re)`` where ``ok`` means ``min_re > -1e-9``.  This
    samples the truncated polynomial, so it is a bug guard and not a proof
    of membership.
    """
    if not 0.0 < radius < 1.0:
        raise ValueError("radius must lie in (0, 1)")
    theta = 2 * np.pi * np.arange(gridpoints) / gridpoints
    min_re = float(np.min(p(radius * np.exp(1j * theta)).real))
    return min_re > -1e-9, min_re
