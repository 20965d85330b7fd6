"""Sampling, empirical extremization and comparison against the claimed bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Iterator, NamedTuple

import numpy as np

from . import bounds as bd
from ._validation import check_positive, check_seed
from .caratheodory import SchwarzSpec, TauParams, schwarz_batch, schwarz_from_tau_batch
from .class_maps import (
    CATALOG,
    ZALCMAN_STAR_T1,
    ClassMember,
    ClassTag,
    ExtremalSpec,
    catalog_for,
    extremal_member,
    fekete_szego_extremal,
    ode_coeffs_batch,
)
from .functionals import Functional, FunctionalKind, parse_functional
from .series import MAX_ORDER


class ConfigError(ValueError):
    pass


class TruncationTooLow(ValueError):
    pass


CONSISTENT = "CONSISTENT"
SHARPNESS_ATTAINED = "SHARPNESS_ATTAINED"
DISCREPANCY_FLAGGED = "DISCREPANCY_FLAGGED"

BOUND_TOL = 1e-9
SHARP_TOL = 1e-7
ZERO_RADIUS = 1 - 1e-6
CHUNK = 8192
REFINE_STEP = 1e-4

ALL_FUNCTIONALS = ("gamma1", "gamma2", "gamma3", "gamma4", "t21", "zalcman", "fekete-szego")
FS_GRID_LAMBDAS = (0.0, 0.5, 1.0, 1.5, 2.0, 1 + 0.5j, 1 - 0.5j)
FS_GRID_MUS = (0.1, 0.5, 1.0, 2.0, 4.0)
OUTPUT_FORMATS = ("json", "csv", "md")

# extremal named for each sharp bound; ("t21", "lower") etc. for two-sided ones
NAMED_WITNESSES = {
    (ClassTag.STARLIKE_E, "gamma1"): "f1",
    (ClassTag.STARLIKE_E, "gamma2"): "f2",
    (ClassTag.STARLIKE_E, "gamma3"): "f3",
    (ClassTag.STARLIKE_E, "gamma4"): "f4_star",
    (ClassTag.CONVEX_E, "gamma1"): "f5",
    (ClassTag.CONVEX_E, "gamma2"): "f6",
    (ClassTag.CONVEX_E, "gamma3"): "f7",
    (ClassTag.CONVEX_E, "gamma4"): "f4_convex",
    (ClassTag.STARLIKE_E, "t21.upper"): "f1",
    (ClassTag.STARLIKE_E, "t21.lower"): "f2",
    (ClassTag.CONVEX_E, "t21.upper"): "f5",
    (ClassTag.CONVEX_E, "t21.lower"): "f6",
    (ClassTag.STARLIKE_E, "zalcman"): "zalcman_star",
    (ClassTag.CONVEX_E, "zalcman"): "f7",
}


@dataclass(frozen=True)
class RunConfig:
    class_tag: ClassTag = ClassTag.STARLIKE_E
    functionals: tuple[str, ...] = ("all",)
    sample_count: int = 10_000
    schwarz_degree: int = 4
    tau_grid_density: int = 6
    seed: int = 0
    refine_iterations: int = 20
    truncation: int = 8
    output_format: str = "json"
    output_path: str | None = None
    lam: complex = 0j
    mu: float = 1.0
    fs_sweep: bool = False
    conjecture: tuple[int, ...] = ()

    def __post_init__(self):
        try:
            object.__setattr__(self, "class_tag", ClassTag.parse(self.class_tag))
            check_seed(self.seed)
            check_positive(self.mu, "mu")
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if isinstance(self.functionals, str):
            object.__setattr__(self, "functionals", (self.functionals,))
        object.__setattr__(self, "functionals", tuple(self.functionals))
        object.__setattr__(self, "conjecture", tuple(int(n) for n in self.conjecture))
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "mu", float(self.mu))
        if not self.functionals and not self.conjecture:
            raise ConfigError("no functional selected")
        if int(self.sample_count) < 1:
            raise ConfigError("sample_count must be >= 1")
        if not 0 <= self.schwarz_degree <= 4:
            raise ConfigError("schwarz_degree must lie in 0..4")
        if self.tau_grid_density < 0:
            raise ConfigError("tau_grid_density must be >= 0")
        if self.refine_iterations < 0:
            raise ConfigError("refine_iterations must be >= 0")
        if not 5 <= self.truncation <= MAX_ORDER:
            raise ConfigError(f"truncation must lie in 5..{MAX_ORDER} (gamma4 reads a_5)")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}")
        for name in self.selected():
            try:
                parse_functional(name, self.lam, self.mu)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        for n in self.conjecture:
            if not 5 <= n <= 7:
                raise ConfigError("conjecture probe covers n = 5..7")

    def selected(self) -> tuple[str, ...]:
        out: list[str] = []
        for name in self.functionals:
            for key in ALL_FUNCTIONALS if name == "all" else (name.strip().lower(),):
                if key not in out:
                    out.append(key)
        return tuple(out)

    def fs_points(self) -> list[tuple[complex, float]]:
        if self.fs_sweep:
            return [(complex(lam), mu) for lam in FS_GRID_LAMBDAS for mu in FS_GRID_MUS]
        return [(self.lam, self.mu)]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["class_tag"] = self.class_tag.value
        d["lam"] = [self.lam.real, self.lam.imag]
        d["functionals"] = list(self.functionals)
        d["conjecture"] = list(self.conjecture)
        return d


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------


@dataclass
class SampleBatch:
    """Taylor rows ``F`` (``[0, 1, a_2, ...]``) plus what is needed to name each row."""

    source: str
    F: np.ndarray
    ids: list[str] | None = None
    phases: np.ndarray | None = None
    zeros: np.ndarray | None = None
    mask: np.ndarray | None = None
    taus: np.ndarray | None = None

    def __len__(self) -> int:
        return self.F.shape[0]

    def schwarz_spec(self, i: int) -> SchwarzSpec:
        zs = tuple(self.zeros[i][self.mask[i]])
        return SchwarzSpec(float(self.phases[i]), zs)

    def provenance(self, i: int):
        if self.source == "catalog":
            return self.ids[i]
        if self.source == "tau":
            t = self.taus[i]
            return (TauParams(t[0], t[1], t[2]), self.schwarz_spec(i))
        return self.schwarz_spec(i)


def _blaschke_draws(rng: np.random.Generator, n: int, degree: int):
    phases = rng.uniform(0.0, 2 * np.pi, n)
    deg = rng.integers(0, degree + 1, n)
    r = ZERO_RADIUS * np.sqrt(rng.uniform(0.0, 1.0, (n, degree)))
    zeros = r * np.exp(1j * rng.uniform(0.0, 2 * np.pi, (n, degree)))
    mask = np.arange(degree)[np.newaxis, :] < deg[:, np.newaxis]
    return phases, zeros, mask


def catalog_specs(cfg: RunConfig) -> list[ExtremalSpec]:
    specs = catalog_for(cfg.class_tag)
    if "fekete-szego" in cfg.selected():
        for lam, mu in cfg.fs_points():
            specs += [fekete_szego_extremal(cfg.class_tag, lam, mu, b) for b in ("sqrt", "quadratic")]
    return specs


def tau_grid(density: int) -> np.ndarray:
    """``(tau1, tau2, tau3)`` rows; ``tau1`` real in ``[0, 1]``, the others on a polar grid."""
    if density == 0:
        return np.zeros((0, 3), dtype=complex)
    t1 = np.linspace(0.0, 1.0, density)
    r = np.linspace(0.0, 1.0, density)[1:]
    th = 2 * np.pi * np.arange(2 * density) / (2 * density)
    disk = np.concatenate([[0j], (r[:, None] * np.exp(1j * th[None, :])).ravel()])
    T1, T2, T3 = np.meshgrid(t1, disk, disk, indexing="ij")
    return np.stack([T1.ravel(), T2.ravel(), T3.ravel()], axis=-1).astype(complex)


def sample_batches(cfg: RunConfig) -> Iterator[SampleBatch]:
    """Deterministic stream: the catalog, the tau grid, then Blaschke draws.

    Random draws come in chunks of ``CHUNK`` seeded by ``(seed, 1, k)``, so a
    longer run extends a shorter one with the same seed.
    """
    N = cfg.truncation
    specs = catalog_specs(cfg)
    F = np.stack([extremal_member(s, N)[0].coeffs for s in specs])
    yield SampleBatch("catalog", F, ids=[s.id for s in specs])

    taus = tau_grid(cfg.tau_grid_density)
    if len(taus):
        rng = np.random.default_rng([cfg.seed, 0])
        phases, zeros, mask = _blaschke_draws(rng, len(taus), 4)
        mask[:] = True
        # the tail is a Schur function, so drop the leading z of the Schwarz series
        tail = schwarz_batch(phases, zeros, N + 1, mask)[:, 1:]
        W = schwarz_from_tau_batch(taus[:, 0].real, taus[:, 1], taus[:, 2], tail)
        yield SampleBatch("tau", ode_coeffs_batch(W, cfg.class_tag), phases=phases, zeros=zeros, mask=mask, taus=taus)

    left, k = int(cfg.sample_count), 0
    while left > 0:
        rng = np.random.default_rng([cfg.seed, 1, k])
        phases, zeros, mask = _blaschke_draws(rng, CHUNK, cfg.schwarz_degree)
        n = min(left, CHUNK)
        phases, zeros, mask = phases[:n], zeros[:n], mask[:n]
        W = schwarz_batch(phases, zeros, N, mask)
        yield SampleBatch("schwarz", ode_coeffs_batch(W, cfg.class_tag), phases=phases, zeros=zeros, mask=mask)
        left -= n
        k += 1


def sample_members(cfg: RunConfig) -> Iterator[ClassMember]:
    for batch in sample_batches(cfg):
        for i in range(len(batch)):
            yield ClassMember(cfg.class_tag, batch.F[i], batch.provenance(i))


# --------------------------------------------------------------------------
# extremization
# --------------------------------------------------------------------------


class Extremum(NamedTuple):
    value: float
    provenance: Any


class Extrema(NamedTuple):
    min: Extremum
    max: Extremum


def _eval_spec(spec: SchwarzSpec, functional: Functional, cfg: RunConfig) -> float:
    zs = np.array(spec.zeros, dtype=complex).reshape(1, -1)
    W = schwarz_batch(np.array([spec.phase]), zs, cfg.truncation)
    return float(functional.batch(ode_coeffs_batch(W, cfg.class_tag))[0])


def refine(spec: SchwarzSpec, functional: Functional, cfg: RunConfig, sign: float) -> Extremum:
    """Pattern search on ``(phase, Re a_k, Im a_k)`` maximizing ``sign * functional``.

    Each pass tries every coordinate move of the current step and keeps the
    best improving one; a pass without improvement halves the step.
    """
    x = np.concatenate([[spec.phase], np.array(spec.zeros).real, np.array(spec.zeros).imag])
    d = spec.degree

    def build(v):
        zs = v[1 : 1 + d] + 1j * v[1 + d :]
        r = np.abs(zs)
        zs = np.where(r > ZERO_RADIUS, zs * ZERO_RADIUS / np.maximum(r, 1e-300), zs)
        return SchwarzSpec(float(v[0]), tuple(zs))

    best_spec = spec
    best = sign * _eval_spec(spec, functional, cfg)
    step = REFINE_STEP
    for _ in range(cfg.refine_iterations):
        moves = np.concatenate([np.eye(x.size), -np.eye(x.size)]) * step
        cands = [build(x + m) for m in moves]
        phases = np.array([c.phase for c in cands])
        zs = np.array([c.zeros for c in cands], dtype=complex).reshape(len(cands), d)
        W = schwarz_batch(phases, zs, cfg.truncation)
        vals = sign * np.asarray(functional.batch(ode_coeffs_batch(W, cfg.class_tag)), dtype=float)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, best_spec = float(vals[j]), cands[j]
            x = x + moves[j]
        else:
            step /= 2
    return Extremum(sign * best, best_spec)


@dataclass
class _Scan:
    """Running extrema over a list of batches, split by source."""

    best: dict = field(default_factory=dict)

    def update(self, key, value, prov):
        if key not in self.best:
            self.best[key] = Extremum(value, prov)
            return
        old = self.best[key].value
        better = value > old if key[1] == "max" else value < old
        if better:
            self.best[key] = Extremum(value, prov)


def _scan(batches: list[SampleBatch], functional: Functional) -> _Scan:
    sc = _Scan()
    for b in batches:
        v = np.asarray(functional.batch(b.F), dtype=float)
        i, j = int(np.argmin(v)), int(np.argmax(v))
        for key_src in ("all", b.source):
            sc.update((key_src, "min"), float(v[i]), (b, i))
            sc.update((key_src, "max"), float(v[j]), (b, j))
    return sc


def _extrema(batches: list[SampleBatch], functional: Functional, cfg: RunConfig) -> tuple[Extrema, dict]:
    sc = _scan(batches, functional)
    out = {}
    for side, sign in (("min", -1.0), ("max", 1.0)):
        val, (b, i) = sc.best[("all", side)]
        best = Extremum(val, b.provenance(i))
        if cfg.refine_iterations and ("schwarz", side) in sc.best:
            sv, (sb, si) = sc.best[("schwarz", side)]
            r = refine(sb.schwarz_spec(si), functional, cfg, sign)
            if sign * r.value > sign * best.value:
                best = r
        out[side] = best
    catalog = {}
    cb = batches[0]
    v = np.asarray(functional.batch(cb.F), dtype=float)
    for k, ident in enumerate(cb.ids):
        catalog[ident] = float(v[k])
    return Extrema(out["min"], out["max"]), catalog


def empirical_extrema(cfg: RunConfig, functional: Functional | str) -> Extrema:
    """Running min/max of ``functional`` over :func:`sample_batches`, then local refinement."""
    if isinstance(functional, str):
        functional = parse_functional(functional, cfg.lam, cfg.mu)
    if cfg.truncation < functional.order_needed:
        raise TruncationTooLow(f"{functional.name} needs truncation >= {functional.order_needed}")
    return _extrema(list(sample_batches(cfg)), functional, cfg)[0]


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


@dataclass
class BoundReport:
    theorem: str
    branch: str
    claimed: Any
    empirical_min: float
    empirical_max: float
    attained_by: dict
    verdict: str
    gap: Any
    tolerances: dict = field(default_factory=lambda: {"bound": BOUND_TOL, "sharpness": SHARP_TOL})
    derived: Any = None
    notes: list = field(default_factory=list)


def _closest(catalog: dict, target: float) -> tuple[str | None, float]:
    if not catalog:
        return None, math.inf
    ident = min(catalog, key=lambda k: abs(catalog[k] - target))
    return ident, abs(catalog[ident] - target)


def _judge(side: str, claimed: float, emp: float, catalog: dict, named: str | None) -> tuple[str, list]:
    notes = []
    violated = emp > claimed + BOUND_TOL if side == "upper" else emp < claimed - BOUND_TOL
    if violated:
        notes.append(f"empirical {side} extreme {emp:.17g} beyond claimed {claimed:.17g}")
    if named is not None and named in catalog and abs(catalog[named] - claimed) > SHARP_TOL:
        notes.append(f"named extremal {named} gives {catalog[named]:.17g}, claimed {claimed:.17g}")
        return DISCREPANCY_FLAGGED, notes
    if violated:
        return DISCREPANCY_FLAGGED, notes
    ident, dist = _closest(catalog, claimed)
    if dist <= SHARP_TOL:
        notes.append(f"attained by {ident}")
        return SHARPNESS_ATTAINED, notes
    return CONSISTENT, notes


def _provenance_json(p) -> Any:
    if isinstance(p, str) or p is None:
        return p
    if isinstance(p, SchwarzSpec):
        return {"schwarz": {"phase": p.phase, "zeros": [[z.real, z.imag] for z in p.zeros]}}
    if isinstance(p, tuple) and isinstance(p[0], TauParams):
        t = p[0].as_tuple()
        return {"tau": [[z.real, z.imag] for z in t], "tail": _provenance_json(p[1])["schwarz"]}
    return repr(p)


def _member_report(cfg, key, ext: Extrema, catalog: dict) -> BoundReport:
    """Reports for gamma_n, t21 and zalcman."""
    tag = cfg.class_tag
    if key.startswith("gamma"):
        pb = bd.theorem_bound("GAMMA", tag, n=int(key[5:]))
    elif key == "t21":
        pb = bd.theorem_bound("T21", tag)
    else:
        pb = bd.theorem_bound("ZALCMAN", tag)
    attained = {"min": _provenance_json(ext.min.provenance), "max": _provenance_json(ext.max.provenance)}
    if key == "t21":
        lo, hi = pb.value
        v1, n1 = _judge("lower", lo, ext.min.value, catalog, NAMED_WITNESSES.get((tag, "t21.lower")))
        v2, n2 = _judge("upper", hi, ext.max.value, catalog, NAMED_WITNESSES.get((tag, "t21.upper")))
        if DISCREPANCY_FLAGGED in (v1, v2):
            verdict = DISCREPANCY_FLAGGED
        elif v1 == v2 == SHARPNESS_ATTAINED:
            verdict = SHARPNESS_ATTAINED
        else:
            verdict = CONSISTENT
        return BoundReport(
            f"{tag.value}.t21", pb.branch_taken, [lo, hi], ext.min.value, ext.max.value, attained,
            verdict, [lo - ext.min.value, hi - ext.max.value], notes=n1 + n2,
        )
    verdict, notes = _judge("upper", pb.upper, ext.max.value, catalog, NAMED_WITNESSES.get((tag, key)))
    return BoundReport(
        f"{tag.value}.{key}", pb.branch_taken, pb.upper, ext.min.value, ext.max.value, attained,
        verdict, pb.upper - ext.max.value, notes=notes,
    )


def _fs_reports(cfg, lam, mu, ext: Extrema, catalog: dict) -> list[BoundReport]:
    tag = cfg.class_tag
    suffix = f"[lambda={lam.real:g}{lam.imag:+g}i,mu={mu:g}]"
    attained = {"min": _provenance_json(ext.min.provenance), "max": _provenance_json(ext.max.provenance)}
    out = []
    for side in ("upper", "lower"):
        pb = bd.theorem_bound(f"FS_{side.upper()}", tag, lam=lam, mu=mu)
        derived = bd.fs_lemma_bound(tag, lam, mu, side)
        claimed = pb.value
        emp = ext.max.value if side == "upper" else ext.min.value
        # fekete-szego witnesses for other (lambda, mu) points do not count here
        own = {k: v for k, v in catalog.items() if "[" not in k or k.endswith(suffix)}
        verdict, notes = _judge(side, claimed, emp, own, None)
        if abs(derived.value - claimed) > BOUND_TOL:
            notes.append(f"lemma-derived {side} bound {derived.value:.17g} ({derived.branch_taken})")
        out.append(
            BoundReport(
                f"{tag.value}.fekete-szego.{side}{suffix}", pb.branch_taken, claimed,
                ext.min.value, ext.max.value, attained, verdict, claimed - emp,
                derived={"branch": derived.branch_taken, "value": derived.value}, notes=notes,
            )
        )
    return out


def conjecture_probe(cfg: RunConfig, n: int, batches: list[SampleBatch] | None = None) -> BoundReport:
    """Sup of ``|gamma_n|`` (``n = 5..7``) against ``1/(2n)`` on S*_e.

    ``gamma_n`` comes from the series of ``log(f/z)`` directly.
    """
    if not 5 <= n <= 7:
        raise ConfigError("conjecture probe covers n = 5..7")
    if cfg.truncation < n + 1:
        raise TruncationTooLow(f"gamma_{n} needs truncation >= {n + 1}, got {cfg.truncation}")
    if cfg.class_tag is not ClassTag.STARLIKE_E:
        raise ConfigError("the gamma_n conjecture concerns S*_e")
    fn = Functional(FunctionalKind.GAMMA, n=n)
    if batches is None:
        batches = list(sample_batches(cfg))
    ext, catalog = _extrema(batches, fn, cfg)
    spec = ExtremalSpec(f"p=(1+z^{n})/(1-z^{n})", ClassTag.STARLIKE_E, power=n)
    m, _ = extremal_member(spec, cfg.truncation)
    catalog[spec.id] = fn(m)
    if catalog[spec.id] > ext.max.value:
        ext = Extrema(ext.min, Extremum(catalog[spec.id], spec.id))
    claimed = 1 / (2 * n)
    verdict, notes = _judge("upper", claimed, ext.max.value, catalog, spec.id)
    return BoundReport(
        f"star_e.gamma{n}.conjecture", "1/(2n)", claimed, ext.min.value, ext.max.value,
        {"min": _provenance_json(ext.min.provenance), "max": _provenance_json(ext.max.provenance)},
        verdict, claimed - ext.max.value, derived={"extremal_value": catalog[spec.id]}, notes=notes,
    )


# --------------------------------------------------------------------------
# discrepancies that do not depend on sampling
# --------------------------------------------------------------------------


def static_checks() -> list[dict]:
    """Claimed values that the implementation evaluates differently."""
    rows = []
    g4 = bd.proof_surface("G", 4.0, 0.5)
    rows.append({"id": "surface-G(4,y)", "claimed": 260.0, "computed": g4, "kind": "typo"})
    c4 = bd.lemma_c4_premise_value(0.25, 1 / 12, -1 / 192, 0.25)
    rows.append(
        {
            "id": "c4-premise-value(1/4,1/12,-1/192,1/4)",
            "claimed": "45/2048 < 0 (starlike case) and -45/2048 < 0 (convex case)",
            "computed": c4,
            "kind": "sign",
        }
    )
    m, _ = extremal_member(CATALOG["f4_convex"])
    g = 0.5 * (m.a(5) - m.a(2) * m.a(4) + m.a(2) ** 2 * m.a(3) - m.a(3) ** 2 / 2 - m.a(2) ** 4 / 4)
    rows.append(
        {
            "id": "convex_e.gamma4.extremal",
            "claimed": 0.125,
            "computed": abs(g),
            "kind": "conflict",
            "note": "p=(1+z^4)/(1-z^4) gives a_5 = 1/20, so gamma_4 = 1/40",
        }
    )
    rows.append(
        {
            "id": "convex_e.fekete-szego.lower.name",
            "kind": "naming",
            "note": "the convex lower bound is introduced as B1 in the inequality but defined as B2",
        }
    )
    rows.append(
        {
            "id": "tau-parametrization.tau1",
            "kind": "reading",
            "note": "c_2, c_3 use (1 - tau1^2) with tau1 declared complex; implemented with tau1 real in [0, 1]",
        }
    )
    t = ZALCMAN_STAR_T1
    rows.append(
        {
            "id": "star_e.zalcman.A",
            "kind": "typo",
            "claimed": "5 tau1^3 / (6 (1 - tau1^3))",
            "computed": "5 tau1^3 / (6 (1 - tau1^2))",
            "note": f"extremal p = (1 - z^2)/(1 - 2 tau1 z + z^2) with tau1 = {t:.17g}, tau2 = -1",
        }
    )
    # overlapping claimed conditions
    x = 0.7
    fired = [lbl for lbl, ok in bd.fs_claimed_conditions("star_e", "lower", (3 - x) / 4, 0.5) if ok]
    rows.append(
        {
            "id": "star_e.fekete-szego.lower.conditions",
            "kind": "overlap",
            "note": f"for mu < 1 the claimed lower-bound conditions overlap; at |3-4 lambda| = {x}, mu = 0.5 "
            f"branches {fired} all hold",
        }
    )
    # third lower branch: compare the formulas at a point where the lemma uses it
    d = bd.fs_lemma_bound("star_e", 0, 2, "lower")
    c = bd._fs_claimed_value(ClassTag.STARLIKE_E, "lower.3", 3.0, 2.0)
    rows.append(
        {
            "id": "star_e.fekete-szego.lower.3.value",
            "kind": "conflict",
            "claimed": "-(x + 16 mu^2 + 16) / (2 (x + 2))",
            "computed": "-(x + 2 mu^2 + 2) / (2 (x + 2))",
            "note": f"x = |3 - 4 lambda|; at lambda = 0, mu = 2 the claimed formula gives {c:.17g}, "
            f"the lemma ({d.branch_taken}) gives {d.value:.17g}",
        }
    )
    for tag in (ClassTag.STARLIKE_E, ClassTag.CONVEX_E):
        for side in ("upper", "lower"):
            bad = []
            for lam in FS_GRID_LAMBDAS:
                for mu in FS_GRID_MUS:
                    c = bd.theorem_bound(f"FS_{side.upper()}", tag, lam=lam, mu=mu).value
                    d = bd.fs_lemma_bound(tag, lam, mu, side).value
                    invalid = c < d - BOUND_TOL if side == "upper" else c > d + BOUND_TOL
                    if invalid:
                        lam_c = complex(lam)
                        bad.append({"lambda": [lam_c.real, lam_c.imag], "mu": mu, "claimed": c, "lemma": d})
            if bad:
                rows.append(
                    {
                        "id": f"{tag.value}.fekete-szego.{side}.grid",
                        "kind": "conflict",
                        "note": "claimed bound is beaten by the lemma-derived sharp bound",
                        "points": bad,
                    }
                )
    rows.append(
        {
            "id": "convex_e.fekete-szego.witnesses",
            "kind": "conflict",
            "note": "upper branch 1 is attained by f5 and branch 2 by f6; lower branch 1 by f5",
        }
    )
    rows.append(
        {
            "id": "fekete-szego.q2",
            "kind": "typo",
            "computed": "c_2 = 2 t1^2 + 2 (1 - t1^2) t2",
        }
    )
    return rows


@dataclass
class RunResult:
    config: RunConfig
    reports: list[BoundReport]
    discrepancies: list[dict]

    @property
    def flagged(self) -> bool:
        return any(r.verdict == DISCREPANCY_FLAGGED for r in self.reports)


def run_report(cfg: RunConfig) -> RunResult:
    """Evaluate every selected functional on one shared sample set.

    Writes the report to ``cfg.output_path`` when it is set.
    """
    batches = list(sample_batches(cfg))
    reports: list[BoundReport] = []
    for key in cfg.selected():
        if key == "fekete-szego":
            for lam, mu in cfg.fs_points():
                fn = Functional(FunctionalKind.FEKETE_SZEGO, lam=lam, mu=mu)
                ext, catalog = _extrema(batches, fn, cfg)
                reports += _fs_reports(cfg, lam, mu, ext, catalog)
            continue
        fn = parse_functional(key, cfg.lam, cfg.mu)
        if fn.kind is FunctionalKind.GAMMA and fn.n > 4:
            raise ConfigError("use the conjecture probe for gamma_n with n > 4")
        ext, catalog = _extrema(batches, fn, cfg)
        reports.append(_member_report(cfg, key, ext, catalog))
    for n in cfg.conjecture:
        reports.append(conjecture_probe(cfg, n, batches))
    discrepancies = static_checks()
    for r in reports:
        if r.verdict == DISCREPANCY_FLAGGED:
            discrepancies.append({"id": r.theorem, "kind": "flagged-report", "note": "; ".join(r.notes)})
    result = RunResult(cfg, reports, discrepancies)
    if cfg.output_path:
        from .report import write_report

        write_report(result, cfg.output_path, cfg.output_format)
    return result
