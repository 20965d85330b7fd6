"""The four coefficient functionals studied for S*_e and C_e.

Each functional has a member-level function and a ``*_batch`` twin acting
on rows ``(a_2, a_3, a_4, a_5, ...)`` so the samplers can evaluate 10^5
members at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .class_maps import ClassMember
from .series import PowerSeries, log_ratio


class NonRealA2(ValueError):
    pass


class NonPositiveMu(ValueError):
    pass


# --------------------------------------------------------------------------
# logarithmic coefficients
# --------------------------------------------------------------------------


def log_coeffs_batch(A) -> np.ndarray:
    """``(gamma_1, ..., gamma_4)`` from rows ``(a_2, a_3, a_4, a_5)``."""
    A = np.asarray(A, dtype=complex)
    a2, a3, a4, a5 = (A[..., k] for k in range(4))
    g1 = a2 / 2
    g2 = (a3 - a2**2 / 2) / 2
    g3 = (a4 - a2 * a3 + a2**3 / 3) / 2
    g4 = (a5 - a2 * a4 + a2**2 * a3 - a3**2 / 2 - a2**4 / 4) / 2
    return np.stack([g1, g2, g3, g4], axis=-1)


def log_coeffs(m: ClassMember) -> np.ndarray:
    """``gamma_1..gamma_4`` (0-based array) from the explicit polynomials in ``a_n``."""
    return log_coeffs_batch(m.coeffs[2:6])


def log_coeff_series_batch(F: np.ndarray, n: int) -> np.ndarray:
    """``gamma_n`` read off ``log(f/z)``; rows of ``F`` are ``[0, 1, a_2, ...]``."""
    from .series import clog1

    F = np.asarray(F, dtype=complex)
    if F.shape[-1] < n + 2:
        raise ValueError(f"gamma_{n} needs f to order {n + 1}")
    return clog1(F[..., 1 : n + 2])[..., n] / 2


def log_coeff_n(m: ClassMember, n: int) -> complex:
    """``gamma_n`` for any ``n`` straight from the series of ``log(f(z)/z)``."""
    if m.order < n + 1:
        raise ValueError(f"gamma_{n} needs a_{n + 1}; member has order {m.order}")
    return complex(log_ratio(PowerSeries(m.coeffs[: n + 2])).coeffs[n] / 2)


# --------------------------------------------------------------------------
# rotation
# --------------------------------------------------------------------------


def rotation_angle_batch(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    a2, a3 = A[..., 0], A[..., 1]
    theta = np.where(np.abs(a2) > 0, -np.angle(a2), np.where(np.abs(a3) > 0, -np.angle(a3) / 2, 0.0))
    return theta


def rotate_batch(A, theta) -> np.ndarray:
    """``a_n -> a_n e^{i (n-1) theta}`` on rows starting at ``a_2``."""
    A = np.asarray(A, dtype=complex)
    n_minus_1 = np.arange(1, A.shape[-1] + 1)
    return A * np.exp(1j * np.asarray(theta)[..., np.newaxis] * n_minus_1)


def rotate_normalize(m: ClassMember) -> ClassMember:
    """Rotate ``f`` to ``e^{-i theta} f(e^{i theta} z)`` with ``a_2 >= 0``.

    If ``a_2 = 0`` the rotation makes ``a_3 >= 0`` instead; if both vanish
    the member is returned unchanged.
    """
    A = m.coeffs[2:]
    if A.size < 2:
        return m
    theta = rotation_angle_batch(A)
    R = rotate_batch(A, theta)
    # kill round-off in the normalized coefficient
    if abs(A[0]) > 0:
        R[0] = abs(A[0])
    elif abs(A[1]) > 0:
        R[1] = abs(A[1])
    return ClassMember.from_a(m.class_tag, R, m.provenance)


# --------------------------------------------------------------------------
# Toeplitz, Zalcman, Fekete-Szego
# --------------------------------------------------------------------------


def toeplitz_t21_batch(A) -> np.ndarray:
    """``(-a2^4 + 4 a2^2 + 4 a2^2 Re a3 - 4 |a3|^2)/16`` on rotation-normalized rows."""
    A = np.asarray(A, dtype=complex)
    a2, a3 = A[..., 0], A[..., 1]
    if np.any(np.abs(a2.imag) > 1e-10):
        raise NonRealA2("a_2 must be real; call rotate_normalize first")
    x = a2.real
    return (-(x**4) + 4 * x**2 + 4 * x**2 * a3.real - 4 * np.abs(a3) ** 2) / 16


def toeplitz_t21(m: ClassMember) -> float:
    """Second Hermitian-Toeplitz determinant of the logarithmic coefficients.

    Requires real ``a_2`` (see :func:`rotate_normalize`).
    """
    return float(toeplitz_t21_batch(m.coeffs[2:4]))


def toeplitz_from_gamma_batch(G) -> np.ndarray:
    """``|gamma_1|^2 - |gamma_2|^2``; rotation invariant."""
    G = np.asarray(G)
    return np.abs(G[..., 0]) ** 2 - np.abs(G[..., 1]) ** 2


def zalcman(m: ClassMember, n: int, k: int) -> float:
    """``|a_n a_k - a_{n+k-1}|`` for arbitrary indices."""
    return abs(m.a(n) * m.a(k) - m.a(n + k - 1))


def zalcman_23_batch(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    return np.abs(A[..., 0] * A[..., 1] - A[..., 2])


def zalcman_23(m: ClassMember) -> float:
    return zalcman(m, 2, 3)


def fekete_szego_batch(A, lam: complex, mu: float) -> np.ndarray:
    if not mu > 0:
        raise NonPositiveMu(f"mu must be positive, got {mu!r}")
    A = np.asarray(A, dtype=complex)
    a2, a3 = A[..., 0], A[..., 1]
    return np.abs(a3 - lam * a2**2) - mu * np.abs(a2)


def fekete_szego(m: ClassMember, lam: complex, mu: float) -> float:
    """``|a_3 - lam a_2^2| - mu |a_2|``."""
    return float(fekete_szego_batch(m.coeffs[2:4], lam, mu))


# --------------------------------------------------------------------------
# functional selector
# --------------------------------------------------------------------------


class FunctionalKind(str, enum.Enum):
    GAMMA = "gamma"
    T21 = "t21"
    ZALCMAN = "zalcman"
    FEKETE_SZEGO = "fekete-szego"


@dataclass(frozen=True)
class Functional:
    """A real-valued functional on class members, evaluated in batch."""

    kind: FunctionalKind
    n: int | None = None
    lam: complex = 0j
    mu: float = 1.0

    @property
    def name(self) -> str:
        if self.kind is FunctionalKind.GAMMA:
            return f"gamma{self.n}"
        if self.kind is FunctionalKind.FEKETE_SZEGO:
            lam = complex(self.lam)
            return f"fekete-szego[lambda={lam.real:g}{lam.imag:+g}i,mu={self.mu:g}]"
        return self.kind.value

    @property
    def order_needed(self) -> int:
        """Highest ``a_n`` index the functional reads."""
        if self.kind is FunctionalKind.GAMMA:
            return self.n + 1
        return {FunctionalKind.T21: 3, FunctionalKind.ZALCMAN: 4, FunctionalKind.FEKETE_SZEGO: 3}[self.kind]

    def batch(self, F: np.ndarray) -> np.ndarray:
        """Evaluate on rows ``[0, 1, a_2, a_3, ...]``."""
        A = F[..., 2:]
        if self.kind is FunctionalKind.GAMMA:
            if self.n <= 4:
                return np.abs(log_coeffs_batch(A[..., :4])[..., self.n - 1])
            return np.abs(log_coeff_series_batch(F, self.n))
        if self.kind is FunctionalKind.T21:
            R = rotate_batch(A[..., :2], rotation_angle_batch(A[..., :2]))
            R[..., 0] = np.abs(A[..., 0])
            return toeplitz_t21_batch(R)
        if self.kind is FunctionalKind.ZALCMAN:
            return zalcman_23_batch(A)
        return fekete_szego_batch(A, self.lam, self.mu)

    def __call__(self, m: ClassMember) -> float:
        return float(self.batch(m.coeffs[np.newaxis, :])[0])


def parse_functional(name: str, lam: complex = 0j, mu: float = 1.0) -> Functional:
    key = name.strip().lower()
    if key.startswith("gamma"):
        n = int(key[5:])
        if n < 1:
            raise ValueError("gamma index must be >= 1")
        return Functional(FunctionalKind.GAMMA, n=n)
    if key in ("t21", "toeplitz"):
        return Functional(FunctionalKind.T21)
    if key == "zalcman":
        return Functional(FunctionalKind.ZALCMAN)
    if key in ("fekete-szego", "fs", "fekete_szego"):
        if not mu > 0:
            raise NonPositiveMu(f"mu must be positive, got {mu!r}")
        return Functional(FunctionalKind.FEKETE_SZEGO, lam=complex(lam), mu=float(mu))
    raise ValueError(f"unknown functional {name!r}")
