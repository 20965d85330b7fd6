"""Taylor coefficients of members of S*_e and C_e.

Two independent routes lead from a Schwarz function ``w`` to the
coefficients ``a_n`` of ``f``:

* closed forms in ``c_1, ..., c_4`` (``star_coeffs`` / ``convex_coeffs``);
* the coefficient recursion of ``z f'/f = e^w`` (starlike) or
  ``1 + z f''/f' = e^w`` (convex), in :func:`coeffs_via_ode`.

Both reduce to ``z g' = g (e^w - 1)`` with ``g = f/z`` (starlike) or
``g = f'`` (convex), which is triangular in the coefficients of ``g``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import caratheodory as cth
from .caratheodory import BoundaryCase, CaratheodoryCoeffs, SchwarzSpec, TauParams
from .series import DEFAULT_ORDER, PowerSeries, cexp


class InsufficientCoeffs(ValueError):
    pass


class ClassTag(str, enum.Enum):
    STARLIKE_E = "star_e"
    CONVEX_E = "convex_e"

    @classmethod
    def parse(cls, value) -> "ClassTag":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            pass
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(f"unknown class tag {value!r}; use 'star_e' or 'convex_e'") from None


@dataclass(frozen=True)
class ClassMember:
    """A member ``f(z) = z + a_2 z^2 + ...`` of one of the two classes.

    ``coeffs[n]`` is ``a_n`` (so ``coeffs[0] == 0`` and ``coeffs[1] == 1``).
    ``provenance`` records where the member came from: a
    :class:`~expsubord.caratheodory.TauParams`, a
    :class:`~expsubord.caratheodory.SchwarzSpec`, an extremal id string, or
    ``None``.
    """

    class_tag: ClassTag
    coeffs: np.ndarray = field(repr=False)
    provenance: Any = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2 or abs(c[0]) > 1e-12 or abs(c[1] - 1) > 1e-12:
            raise ValueError("coeffs must start with 0, 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("Taylor coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "class_tag", ClassTag.parse(self.class_tag))

    @classmethod
    def from_a(cls, class_tag, a, provenance=None) -> "ClassMember":
        """Build from ``(a_2, a_3, ...)``."""
        return cls(class_tag, np.concatenate([[0.0, 1.0], np.asarray(a, dtype=complex).ravel()]), provenance)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def a(self, n: int) -> complex:
        if n > self.order:
            raise InsufficientCoeffs(f"a_{n} not available (order {self.order})")
        return complex(self.coeffs[n])

    @property
    def a_vector(self) -> np.ndarray:
        """``(a_2, ..., a_M)``."""
        return self.coeffs[2:]

    def series(self) -> PowerSeries:
        return PowerSeries(self.coeffs)

    def __repr__(self) -> str:
        a = ", ".join(f"{x:.6g}" for x in self.coeffs[2:6])
        return f"ClassMember({self.class_tag.value}, a2..a5=[{a}], provenance={self.provenance!r})"


# --------------------------------------------------------------------------
# closed forms in c_1..c_4
# --------------------------------------------------------------------------


def star_a_batch(C) -> np.ndarray:
    """``(a_2, a_3, a_4, a_5)`` of S*_e members from rows ``(c_1, ..., c_4)``."""
    C = np.asarray(C, dtype=complex)
    if C.shape[-1] < 4:
        raise InsufficientCoeffs("need c_1..c_4")
    c1, c2, c3, c4 = (C[..., k] for k in range(4))
    a2 = c1 / 2
    a3 = c1**2 / 16 + c2 / 4
    a4 = c1 * c2 / 24 - c1**3 / 288 + c3 / 6
    a5 = c1**4 / 1152 - c2 * c1**2 / 96 + c1 * c3 / 48 + c4 / 8
    return np.stack([a2, a3, a4, a5], axis=-1)


def convex_a_batch(C) -> np.ndarray:
    """``(a_2, a_3, a_4, a_5)`` of C_e members from rows ``(c_1, ..., c_4)``."""
    C = np.asarray(C, dtype=complex)
    if C.shape[-1] < 4:
        raise InsufficientCoeffs("need c_1..c_4")
    c1, c2, c3, c4 = (C[..., k] for k in range(4))
    a2 = c1 / 4
    a3 = c2 / 12 + c1**2 / 48
    a4 = c1 * c2 / 96 - c1**3 / 1152 + c3 / 24
    a5 = c1**4 / 5760 - c1**2 * c2 / 480 + c1 * c3 / 240 + c4 / 40
    return np.stack([a2, a3, a4, a5], axis=-1)


def closed_form_a_batch(C, class_tag) -> np.ndarray:
    if ClassTag.parse(class_tag) is ClassTag.STARLIKE_E:
        return star_a_batch(C)
    return convex_a_batch(C)


def _as_c(c) -> np.ndarray:
    if isinstance(c, CaratheodoryCoeffs):
        return c.c
    return np.asarray(c, dtype=complex).ravel()


def star_coeffs(c, provenance=None) -> ClassMember:
    return ClassMember.from_a(ClassTag.STARLIKE_E, star_a_batch(_as_c(c)), provenance)


def convex_coeffs(c, provenance=None) -> ClassMember:
    return ClassMember.from_a(ClassTag.CONVEX_E, convex_a_batch(_as_c(c)), provenance)


# --------------------------------------------------------------------------
# ODE route
# --------------------------------------------------------------------------


def ode_coeffs_batch(W: np.ndarray, class_tag, order: int | None = None) -> np.ndarray:
    """Taylor coefficients ``[0, 1, a_2, ..., a_M]`` from Schwarz series rows.

    ``order`` is ``M`` and may be at most one more than the order of ``W``.
    """
    W = np.asarray(W, dtype=complex)
    n_w = W.shape[-1] - 1
    M = n_w if order is None else order
    if M > n_w + 1:
        raise InsufficientCoeffs(f"order {M} needs w to order {M - 1}, got {n_w}")
    if np.any(np.abs(W[..., 0]) > 1e-14):
        raise ValueError("Schwarz function must vanish at 0")
    E = cexp(W)
    E[..., 0] = 0.0  # e^w - 1
    K = M - 1  # g has coefficients g_0..g_K
    g = np.zeros(W.shape[:-1] + (K + 1,), dtype=complex)
    g[..., 0] = 1.0
    for k in range(1, K + 1):
        # k g_k = sum_{j=1}^{k} E_j g_{k-j}
        g[..., k] = np.sum(E[..., 1 : k + 1] * g[..., k - 1 :: -1][..., :k], axis=-1) / k
    if ClassTag.parse(class_tag) is ClassTag.CONVEX_E:
        g = g / np.arange(1, K + 2)  # a_{k+1} = g_k/(k+1) with g = f'
    out = np.zeros(W.shape[:-1] + (M + 1,), dtype=complex)
    out[..., 1:] = g
    return out


def coeffs_via_ode(w: PowerSeries, class_tag, order: int | None = None, provenance=None) -> ClassMember:
    """Solve the defining ODE of the class for ``f`` given the Schwarz function ``w``."""
    return ClassMember(class_tag, ode_coeffs_batch(w.coeffs, class_tag, order), provenance)


def member_from_schwarz(w: PowerSeries, class_tag, provenance=None) -> ClassMember:
    return coeffs_via_ode(w, class_tag, provenance=provenance)


# --------------------------------------------------------------------------
# extremal catalog
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSpec:
    """Generator of a sharpness witness.

    Either ``power`` (``p = (1 + z^n)/(1 - z^n)``) or the pair ``(t1, t2)``
    (``p`` of the unimodular-``tau2`` form) is set.  ``t1 == 1`` falls back
    to ``p = (1 + z)/(1 - z)``, where ``t2`` plays no role.
    """

    id: str
    class_tag: ClassTag
    power: int | None = None
    t1: float | None = None
    t2: complex | None = None
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "class_tag", ClassTag.parse(self.class_tag))
        if (self.power is None) == (self.t1 is None):
            raise ValueError("give exactly one of power or (t1, t2)")
        if self.power is not None and self.power < 1:
            raise ValueError("power must be a positive integer")
        if self.t1 is not None:
            if not -1e-12 <= self.t1 <= 1 + 1e-12:
                raise ValueError("t1 must lie in [0, 1]")
            if self.t1 < 1 - 1e-12 and (self.t2 is None or abs(abs(self.t2) - 1) > 1e-12):
                raise ValueError("t2 must be unimodular")

    def p_description(self) -> str:
        if self.power is not None:
            n = "" if self.power == 1 else f"^{self.power}"
            return f"(1+z{n})/(1-z{n})"
        if self.t1 >= 1 - 1e-12:
            return "(1+z)/(1-z)"
        t2 = complex(self.t2)
        return (
            f"(1+(t1*t2+t1)z+t2 z^2)/(1+(t1*t2-t1)z-t2 z^2) with t1={self.t1:.17g}, "
            f"t2={t2.real:.17g}{t2.imag:+.17g}i"
        )

    def p_series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        if self.power is not None:
            return cth.monomial_p(self.power, order)
        if self.t1 >= 1 - 1e-12:
            return cth.boundary_p_from_tau(TauParams(1.0), BoundaryCase.T1_UNIMODULAR, order)
        return cth.boundary_p_from_tau(TauParams(self.t1, self.t2), BoundaryCase.T2_UNIMODULAR, order)

    def schwarz(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        return cth.p_to_schwarz(self.p_series(order))


def extremal_member(spec: ExtremalSpec, order: int = DEFAULT_ORDER) -> tuple[ClassMember, PowerSeries]:
    """Build ``p``, convert to ``w`` and solve the ODE; returns ``(member, f)``."""
    m = coeffs_via_ode(spec.schwarz(order), spec.class_tag, provenance=spec.id)
    return m, m.series()


ZALCMAN_STAR_T1 = 2 / math.sqrt(7)

CATALOG: dict[str, ExtremalSpec] = {
    s.id: s
    for s in [
        ExtremalSpec("f1", ClassTag.STARLIKE_E, power=1),
        ExtremalSpec("f2", ClassTag.STARLIKE_E, power=2),
        ExtremalSpec("f3", ClassTag.STARLIKE_E, power=3),
        ExtremalSpec("f4_star", ClassTag.STARLIKE_E, power=4),
        ExtremalSpec("f5", ClassTag.CONVEX_E, power=1),
        ExtremalSpec("f6", ClassTag.CONVEX_E, power=2),
        ExtremalSpec("f7", ClassTag.CONVEX_E, power=3),
        ExtremalSpec("f4_convex", ClassTag.CONVEX_E, power=4),
        ExtremalSpec(
            "zalcman_star",
            ClassTag.STARLIKE_E,
            t1=ZALCMAN_STAR_T1,
            t2=-1.0 + 0j,
            note="tau1 = 2/sqrt(7), tau2 = -1: p = (1 - z^2)/(1 - 2 tau1 z + z^2)",
        ),
    ]
}


def catalog_for(class_tag) -> list[ExtremalSpec]:
    tag = ClassTag.parse(class_tag)
    return [s for s in CATALOG.values() if s.class_tag is tag]


def fekete_szego_extremal(class_tag, lam: complex, mu: float, branch: str) -> ExtremalSpec:
    """Two-parameter witness for the lower bound of ``|a3 - lam a2^2| - mu |a2|``.

    ``branch`` is ``"sqrt"`` (``t1 = sqrt(2|L| / (M + 2|L|))``; ids f7_fs
    and f9) or ``"quadratic"`` (``t1 = J / (M + 2|L|)``; ids f8 and f10),
    with ``t2 = -|L| (4K + 2L) / (L |4K + 2L|)`` in both.
    """
    from .bounds import fs_lemma_args  # local import: bounds depends on this module

    tag = ClassTag.parse(class_tag)
    s = fs_lemma_args(tag, lam, mu)
    J, K, L, M = s.J, s.K, s.L, s.M
    if branch == "sqrt":
        t1 = math.sqrt(2 * abs(L) / (M + 2 * abs(L)))
        ident = "f7_fs" if tag is ClassTag.STARLIKE_E else "f9"
    elif branch == "quadratic":
        t1 = J / (M + 2 * abs(L))
        ident = "f8" if tag is ClassTag.STARLIKE_E else "f10"
    else:
        raise ValueError(f"unknown branch {branch!r}")
    t1 = min(t1, 1.0)
    four_k_2l = 4 * K + 2 * L
    if abs(four_k_2l) > 0:
        t2 = -abs(L) * four_k_2l / (L * abs(four_k_2l))
    else:
        t2 = -1.0 + 0j  # M = 0 forces t1 = 1 in the sqrt branch; t2 is unused there
    lam = complex(lam)
    return ExtremalSpec(
        f"{ident}[lambda={lam.real:g}{lam.imag:+g}i,mu={mu:g}]",
        tag,
        t1=t1,
        t2=complex(t2),
        note=f"Fekete-Szego lower-bound witness, {branch} branch",
    )


def catalog_json(order: int = DEFAULT_ORDER) -> list[dict]:
    """Catalog as JSON-ready records: id, class, p, and ``a_2..a_M`` as [re, im]."""
    rows = []
    for spec in CATALOG.values():
        m, _ = extremal_member(spec, order)
        rows.append(
            {
                "id": spec.id,
                "class": spec.class_tag.value,
                "p": spec.p_description(),
                "a": [[float(x.real), float(x.imag)] for x in m.a_vector],
            }
        )
    return rows
