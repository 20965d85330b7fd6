"""Closed-form bounds: Carathéodory-class lemmas, the theorem bounds and the
auxiliary polynomials used in their proofs.

Every closed form that admits one has an independent brute-force twin
(``y_bruteforce``, :func:`simthomas_phi_batch` over sampled ``(c_1, c_2)``,
grid searches over the proof polynomials) so the tests can check one
against the other.

The theorem bounds are returned exactly as claimed.  Where the
claimed piecewise Fekete-Szegő bounds disagree with what the underlying
lemma gives, :func:`fs_lemma_bound` provides the lemma-derived value so
reports can show both.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .class_maps import ClassTag


class DomainError(ValueError):
    pass


class UnknownTheorem(KeyError):
    pass


# --------------------------------------------------------------------------
# Y(A, B, C) = max over the closed disk of |A + B z + C z^2| + 1 - |z|^2
# --------------------------------------------------------------------------


class YArgs(NamedTuple):
    A: float
    B: float
    C: float


Y_BRANCHES = ("i.1", "i.2", "ii.1", "ii.2", "ii.R1", "ii.R2", "ii.R3")


def y_branch(A: float, B: float, C: float) -> str:
    """Label of the case of the closed form that applies to ``(A, B, C)``.

    ``i.*`` is ``AC >= 0``, ``ii.*`` is ``AC < 0``; ``ii.R*`` are the three
    sub-cases of the fallback ``R(A, B, C)``.  Ties go to the first case.
    """
    aA, aB, aC = abs(A), abs(B), abs(C)
    if A * C >= 0:
        return "i.1" if aB >= 2 * (1 - aC) else "i.2"
    q = -4 * A * (1 - C * C) / C
    if q <= B * B and aB < 2 * (1 - aC):
        return "ii.1"
    if B * B < min(4 * (1 + aC) ** 2, q):
        return "ii.2"
    if aC * (aB + 4 * aA) <= abs(A * B):
        return "ii.R1"
    if abs(A * B) <= aC * (aB - 4 * aA):
        return "ii.R2"
    return "ii.R3"


def y_closed_form(A: float, B: float, C: float) -> float:
    aA, aB, aC = abs(A), abs(B), abs(C)
    br = y_branch(A, B, C)
    if br == "i.1":
        return aA + aB + aC
    if br == "i.2":
        return 1 + aA + B * B / (4 * (1 - aC))
    if br == "ii.1":
        return 1 - aA + B * B / (4 * (1 - aC))
    if br == "ii.2":
        return 1 + aA + B * B / (4 * (1 + aC))
    if br == "ii.R1":
        return aA + aB - aC
    if br == "ii.R2":
        return -aA + aB + aC
    return (aC + aA) * math.sqrt(1 - B * B / (4 * A * C))


def _y_objective(A, B, C, z):
    return np.abs(A + B * z + C * z * z) + 1 - np.abs(z) ** 2


def y_bruteforce(A: float, B: float, C: float, grid: int = 720) -> float:
    """Maximize ``|A + Bz + Cz^2| + 1 - |z|^2`` over the closed disk numerically.

    Polar grid with ``grid`` angles and ``grid // 2 + 1`` radii, then
    Nelder-Mead (in ``x + iy``) from the four best cells and a 1-D search
    on the circle.
    """
    if grid < 100:
        raise ValueError("grid must be at least 100")
    r = np.linspace(0.0, 1.0, grid // 2 + 1)
    th = 2 * np.pi * np.arange(grid) / grid
    R, T = np.meshgrid(r, th, indexing="ij")
    V = _y_objective(A, B, C, R * np.exp(1j * T))
    best = float(V.max())
    flat = np.argsort(V, axis=None)[-4:]

    def neg(x):
        # Cartesian, so maxima near the origin are not lost to the polar chart
        z = complex(x[0], x[1])
        if abs(z) > 1:
            z /= abs(z)
        return -float(_y_objective(A, B, C, z))

    for idx in flat:
        i, j = np.unravel_index(idx, V.shape)
        z0 = R[i, j] * np.exp(1j * T[i, j])
        res = minimize(neg, [z0.real, z0.imag], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
        best = max(best, -res.fun)
    k = int(np.argmax(V[-1]))
    h = 2 * np.pi / grid
    res = minimize_scalar(lambda t: neg([math.cos(t), math.sin(t)]), bounds=(th[k] - h, th[k] + h),
                          method="bounded", options={"xatol": 1e-13})
    return max(best, -res.fun)


# --------------------------------------------------------------------------
# Carathéodory lemmas
# --------------------------------------------------------------------------


def fs_caratheodory_bound(v: float) -> float:
    """Sharp bound of ``|c_2 - v c_1^2|`` over P."""
    if v < 0:
        return -4 * v + 2
    if v <= 1:
        return 2.0
    return 4 * v - 2


def lemma_c3_premises(B: float, D: float) -> bool:
    """True iff ``0 <= B <= 1`` and ``B(2B - 1) <= D <= B``.

    Under these, ``|c_3 - 2B c_1 c_2 + D c_1^3| <= 2`` on P.
    """
    return 0 <= B <= 1 and B * (2 * B - 1) <= D <= B


def lemma_c4_premise_value(alpha: float, beta: float, gamma: float, lam: float) -> float:
    """LHS minus RHS of the premise bounding
    ``|gamma c1^4 + lam c2^2 + 2 alpha c1 c3 - (3/2) beta c1^2 c2 - c4|`` by 2.

    The premise holds iff the returned value is ``<= 0``.
    """
    if not (0 < alpha < 1 and 0 < lam < 1):
        raise DomainError("need 0 < alpha < 1 and 0 < lambda < 1")
    lhs = 8 * lam * (1 - lam) * ((alpha * beta - 2 * gamma) ** 2 + (alpha * (lam + alpha) - beta) ** 2)
    lhs += alpha * (1 - alpha) * (beta - 2 * lam * alpha) ** 2
    rhs = 4 * alpha**2 * (1 - alpha) ** 2 * lam * (1 - lam)
    return lhs - rhs


def c3_functional_batch(C, B: float, D: float) -> np.ndarray:
    C = np.asarray(C)
    c1, c2, c3 = C[..., 0], C[..., 1], C[..., 2]
    return np.abs(c3 - 2 * B * c1 * c2 + D * c1**3)


def c4_functional_batch(C, alpha, beta, gamma, lam) -> np.ndarray:
    C = np.asarray(C)
    c1, c2, c3, c4 = (C[..., k] for k in range(4))
    return np.abs(gamma * c1**4 + lam * c2**2 + 2 * alpha * c1 * c3 - 1.5 * beta * c1**2 * c2 - c4)


# --------------------------------------------------------------------------
# |K c1^2 + L c2| - |J c1|
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SimThomasArgs:
    J: float
    K: complex
    L: float

    def __post_init__(self):
        if self.J < 0:
            raise ValueError("J must be non-negative")
        object.__setattr__(self, "K", complex(self.K))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "J", float(self.J))

    @property
    def M(self) -> float:
        return abs(4 * self.K + 2 * self.L)


def simthomas_phi_batch(C, s: SimThomasArgs) -> np.ndarray:
    """``|K c_1^2 + L c_2| - |J c_1|`` on rows ``(c_1, c_2, ...)``."""
    C = np.asarray(C)
    c1, c2 = C[..., 0], C[..., 1]
    return np.abs(s.K * c1**2 + s.L * c2) - np.abs(s.J * c1)


def simthomas_upper_branch(s: SimThomasArgs) -> tuple[str, float]:
    if abs(2 * s.K + s.L) >= abs(s.L) + s.J:
        return "M-2J", s.M - 2 * s.J
    return "2|L|", 2 * abs(s.L)


def simthomas_upper(s: SimThomasArgs) -> float:
    """Sharp upper bound of ``|K c1^2 + L c2| - |J c1|`` over P."""
    return simthomas_upper_branch(s)[1]


def simthomas_lower_branch(s: SimThomasArgs) -> tuple[str, float]:
    J, L, M = s.J, abs(s.L), s.M
    if J >= M + 2 * L:
        return "2J-M", 2 * J - M
    if J * J <= 2 * L * (M + 2 * L):
        return "sqrt", 2 * J * math.sqrt(2 * L / (M + 2 * L)) if M + 2 * L > 0 else 0.0
    return "quadratic", 2 * L + J * J / (M + 2 * L)


def simthomas_lower(s: SimThomasArgs) -> float:
    """Sharp upper bound of ``-(|K c1^2 + L c2| - |J c1|)`` over P.

    The middle case reads ``2J sqrt(2|L| / (M + 2|L|))``.
    """
    return simthomas_lower_branch(s)[1]


def fs_lemma_args(class_tag, lam: complex, mu: float) -> SimThomasArgs:
    """``(J, K, L)`` with ``|a3 - lam a2^2| - mu|a2| = (1/scale) Phi(c1, c2)``."""
    tag = ClassTag.parse(class_tag)
    if not mu > 0:
        raise ValueError("mu must be positive")
    if tag is ClassTag.STARLIKE_E:
        return SimThomasArgs(J=8 * mu, K=1 - 4 * complex(lam), L=4)
    return SimThomasArgs(J=12 * mu, K=1 - 3 * complex(lam), L=4)


def fs_scale(class_tag) -> float:
    return 16.0 if ClassTag.parse(class_tag) is ClassTag.STARLIKE_E else 48.0


# --------------------------------------------------------------------------
# theorem bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseBound:
    """A claimed bound.  ``lower`` / ``upper`` is ``None`` on the open side."""

    name: str
    branch_taken: str
    lower: float | None = None
    upper: float | None = None

    @property
    def value(self):
        if self.lower is not None and self.upper is not None:
            return (self.lower, self.upper)
        return self.upper if self.upper is not None else self.lower


SQRT7 = math.sqrt(7)


def _fs_x(class_tag, lam) -> float:
    lam = complex(lam)
    if ClassTag.parse(class_tag) is ClassTag.STARLIKE_E:
        return abs(3 - 4 * lam)
    return abs(1 - lam)


def fs_claimed_conditions(class_tag, side: str, lam: complex, mu: float) -> list[tuple[str, bool]]:
    """The claimed branch conditions, in their listed order, with their truth values."""
    x = _fs_x(class_tag, lam)
    tag = ClassTag.parse(class_tag)
    if tag is ClassTag.STARLIKE_E and side == "upper":
        return [("upper.1", x >= 2 + 4 * mu), ("upper.2", x < 2 + 4 * mu)]
    if tag is ClassTag.CONVEX_E and side == "upper":
        t = 2 / 3 * (2 + 3 * mu)
        return [("upper.1", x >= t), ("upper.2", x < t)]
    if tag is ClassTag.STARLIKE_E:
        lo, hi = (mu + 1) / 2, (mu**2 + 1) / 2
        return [("lower.1", lo >= x), ("lower.2", x >= hi), ("lower.3", lo < x < hi)]
    lo, hi = (3 * mu - 2) / 3, (9 * mu**2 - 4) / 6
    return [("lower.1", lo >= x), ("lower.2", hi <= x), ("lower.3", hi > x > lo)]


def _fs_claimed_value(tag: ClassTag, branch: str, x: float, mu: float) -> float:
    if tag is ClassTag.STARLIKE_E:
        return {
            "upper.1": lambda: (x - 4 * mu) / 4,
            "upper.2": lambda: 0.5,
            "lower.1": lambda: -(4 * mu - x) / 4,
            "lower.2": lambda: -mu * math.sqrt(2 / (x + 2)),
            "lower.3": lambda: -(x + 16 * mu**2 + 16) / (2 * (x + 2)),
        }[branch]()
    return {
        "upper.1": lambda: (x - 2 * mu) / 4,
        "upper.2": lambda: 1 / 6,
        "lower.1": lambda: -(2 * mu - x) / 4,
        "lower.2": lambda: -0.5 * mu * math.sqrt(2 / (3 * x + 2)),
        "lower.3": lambda: -(9 * mu**2 + 6 * x + 4) / (12 * (3 * x + 2)),
    }[branch]()


def theorem_bound(name: str, class_tag, n: int | None = None, lam: complex = 0j, mu: float | None = None) -> PiecewiseBound:
    """The claimed bound for one functional on one class.

    ``name`` is one of ``GAMMA`` (needs ``n``), ``T21``, ``ZALCMAN``,
    ``FS_UPPER`` and ``FS_LOWER`` (need ``lam`` and ``mu``).  Piecewise
    displays resolve to the first listed branch whose condition holds.
    """
    tag = ClassTag.parse(class_tag)
    key = name.upper()
    star = tag is ClassTag.STARLIKE_E
    if key == "GAMMA":
        if n is None:
            raise ValueError("GAMMA needs n")
        if star:
            if not 1 <= n <= 4:
                raise UnknownTheorem(f"no claimed gamma_{n} bound for {tag.value}")
            return PiecewiseBound(f"gamma{n}", "1/(2n)", upper=1 / (2 * n))
        if 1 <= n <= 3:
            return PiecewiseBound(f"gamma{n}", "1/(2n(n+1))", upper=1 / (2 * n * (n + 1)))
        if n == 4:
            return PiecewiseBound("gamma4", "1/8", upper=1 / 8)
        raise UnknownTheorem(f"no claimed gamma_{n} bound for {tag.value}")
    if key == "T21":
        lo, hi = (-1 / 16, 15 / 64) if star else (-1 / 144, 15 / 256)
        return PiecewiseBound("t21", "two-sided", lower=lo, upper=hi)
    if key == "ZALCMAN":
        return PiecewiseBound("zalcman", "(2,3)", upper=8 / (9 * SQRT7) if star else 1 / 12)
    if key in ("FS_UPPER", "FS_LOWER"):
        if mu is None or not mu > 0:
            raise ValueError("Fekete-Szego bounds need mu > 0")
        side = "upper" if key == "FS_UPPER" else "lower"
        conds = fs_claimed_conditions(tag, side, lam, mu)
        fired = [lbl for lbl, ok in conds if ok]
        if not fired:
            raise ValueError(f"no claimed {side} branch applies at lambda={lam}, mu={mu}")
        branch = fired[0]
        v = _fs_claimed_value(tag, branch, _fs_x(tag, lam), mu)
        return PiecewiseBound(f"fekete-szego.{side}", branch, **{side: v})
    raise UnknownTheorem(name)


def fs_lemma_bound(class_tag, lam: complex, mu: float, side: str) -> PiecewiseBound:
    """Fekete-Szegő bound obtained by feeding ``(J, K, L)`` straight into the lemma."""
    s = fs_lemma_args(class_tag, lam, mu)
    scale = fs_scale(class_tag)
    if side == "upper":
        br, v = simthomas_upper_branch(s)
        return PiecewiseBound("fekete-szego.upper", br, upper=v / scale)
    br, v = simthomas_lower_branch(s)
    return PiecewiseBound("fekete-szego.lower", br, lower=-v / scale)


def fs_lemma_conditions(class_tag, side: str, lam: complex, mu: float) -> list[tuple[str, bool]]:
    """Branch conditions of the lemma-derived bound, as mutually exclusive sets."""
    s = fs_lemma_args(class_tag, lam, mu)
    J, L, M = s.J, abs(s.L), s.M
    if side == "upper":
        c = abs(2 * s.K + s.L) >= L + J
        return [("M-2J", c), ("2|L|", not c)]
    first = J >= M + 2 * L
    second = (not first) and J * J <= 2 * L * (M + 2 * L)
    return [("2J-M", first), ("sqrt", second), ("quadratic", not first and not second)]


# --------------------------------------------------------------------------
# proof polynomials
# --------------------------------------------------------------------------


class Surface(str, enum.Enum):
    F = "F"
    G = "G"
    PHI = "PHI"
    PSI = "PSI"


def proof_surface(name, x, y):
    """Two-variable majorants/minorants of 1024 T21 (F, G) and 36864 T21 (PHI, PSI).

    ``x`` is ``c_1^2`` in ``[0, 4]`` and ``y`` a modulus in ``[0, 1]``;
    arrays broadcast.
    """
    s = Surface(str(getattr(name, "value", name)).upper())
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(x > 4) or np.any(y < 0) or np.any(y > 1):
        raise DomainError("proof surfaces live on [0, 4] x [0, 1]")
    u = 4 - x
    if s is Surface.F:
        v = -(x**2) + 64 * x + 4 * x * u * y - 4 * u**2 * y**2
    elif s is Surface.G:
        v = -(x**2) + 64 * x - 4 * x * u * y - 4 * u**2 * y**2
    elif s is Surface.PHI:
        v = -9 * x**2 + 576 * x + 24 * x * u * y - 16 * u**2 * y**2
    else:
        v = -9 * x**2 + 576 * x - 24 * x * u * y - 16 * u**2 * y**2
    return v if v.ndim else float(v)


UNIVARIATE_DOMAINS = {
    # name: (lo, hi, lo_closed, hi_closed)
    "PSI1": (2 / 3, 1.0, True, False),
    "PSI2": (0.0, 2 / 3, False, False),
    "PSI3": (4 / 7, 1.0, True, False),
    "PSI4": (0.0, 4 / 7, False, False),
}


def _psi_poly(name: str, t):
    return {
        "PSI1": lambda: 12 * t - 7 * t**3,
        "PSI2": lambda: 12 - 9 * t**2 + 13 * t**3,
        "PSI3": lambda: 30 * t - 29 * t**3,
        "PSI4": lambda: 192 - 84 * t**2 + 124 * t**3,
    }[name]()


def proof_univariate(name: str, t):
    """One-variable bounds of the Zalcman functional after the case split on ``tau1``.

    The S*_e functional is at most ``PSI1/18`` on ``[2/3, 1)`` and ``PSI2/36``
    on ``(0, 2/3)``; the C_e functional at most ``PSI3/144`` on ``[4/7, 1)``
    and ``PSI4/2304`` on ``(0, 4/7)``.
    """
    key = name.upper()
    if key not in UNIVARIATE_DOMAINS:
        raise KeyError(name)
    lo, hi, lo_c, hi_c = UNIVARIATE_DOMAINS[key]
    t = np.asarray(t, dtype=float)
    ok_lo = t >= lo if lo_c else t > lo
    ok_hi = t <= hi if hi_c else t < hi
    if not np.all(ok_lo & ok_hi):
        raise DomainError(f"{key} is defined on {'[' if lo_c else '('}{lo:g}, {hi:g}{']' if hi_c else ')'}")
    v = _psi_poly(key, t)
    return v if v.ndim else float(v)


def univariate_sup(name: str) -> tuple[float, float]:
    """``(sup, argsup)`` over the domain, from the derivative.

    The sup of ``PSI2`` / ``PSI4`` is the limit at the open end ``t -> 0+``.
    """
    key = name.upper()
    if key == "PSI1":
        t = 2 / SQRT7  # 12 - 21 t^2 = 0
    elif key == "PSI3":
        t = math.sqrt(10 / 29)  # 30 - 87 t^2 = 0
    elif key == "PSI2":
        # decreasing on (0, 6/13), increasing after: compare the ends
        lo, hi = 12.0, 12 - 9 * (2 / 3) ** 2 + 13 * (2 / 3) ** 3
        return (lo, 0.0) if lo >= hi else (hi, 2 / 3)
    elif key == "PSI4":
        lo, hi = 192.0, 192 - 84 * (4 / 7) ** 2 + 124 * (4 / 7) ** 3
        return (lo, 0.0) if lo >= hi else (hi, 4 / 7)
    else:
        raise KeyError(name)
    return float(_psi_poly(key, t)), t


ZALCMAN_PSI_SCALE = {"PSI1": 18.0, "PSI2": 36.0, "PSI3": 144.0, "PSI4": 2304.0}
