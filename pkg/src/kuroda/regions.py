"""Numeric membership predicates, samplers and probes for the star regions.

Everything in this module runs in ordinary double precision and is *evidence
machinery*: samplers and probes report what they saw, never a theorem.  The
exact side of the toolkit lives in :mod:`kuroda.membership` and
:mod:`kuroda.blowup`.

Regions (all open, all defined by strict inequalities):

* ``S_PRIME4``   -- the 4-dimensional region with the six cross bounds
  ``|y_i**d_ji * y_j**d_ii| < 1`` (i != j in {1,2,3}) plus ``|y_4| < 1``;
* ``S_DOUBLE_PRIME3`` -- the same six cross bounds on 3-tuples: a star with
  six thin unbounded arms along the coordinate axes;
* ``S3``         -- the star fattened by the diagonal segment: points
  ``b + (a, a, a)`` with ``b`` in the star and ``|a| < 1``;
* ``S_TILDE3``   -- a single conjunction of six polynomial inequalities
  (three "arm" bounds and three "cap" bounds) cutting out a basic open set
  that agrees with ``S3`` far from the origin.

Scaling is uniform: a point lies in ``lam * region`` iff ``point / lam``
lies in the region, and every predicate here divides by ``lam`` first, so
the scaling identity holds exactly in floating point.

Membership in ``S3`` quantifies over the diagonal shift and is only
semi-decided: a grid scan over the shift with two refinement rounds, and a
tolerance band that returns ``UNCERTAIN`` instead of guessing at the
boundary.

The escape sequence uses base-2 iterated logarithms (``lg``, ``lg lg``,
``lg lg lg``); its fourth coordinate ``1 / lglglg(k)`` drops strictly below
1 for k > 16, so membership of the sequence in the 4-dimensional region
starts at a small config-dependent threshold (17 for the standard symmetric
instance; index 16 sits exactly on the boundary).
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .algebra import SparsePolynomial, System
from .config import AXES, KurodaConfig, column_minima
from .membership import monoid_member


class SamplingError(RuntimeError):
    """A sampler exhausted its candidate budget without accepting anything."""


class RegionKind(enum.Enum):
    S_PRIME4 = "sprime"
    S_DOUBLE_PRIME3 = "sdoubleprime"
    S3 = "s"
    S_TILDE3 = "stilde"

    @property
    def dim(self) -> int:
        return 4 if self is RegionKind.S_PRIME4 else 3


_RHS_KEYS = ("A1", "B1", "A2", "B2", "A3", "B3")
_RHS_DEFAULTS = (1.0, 4.0, 1.0, 4.0, 1.0, 4.0)


@dataclass(frozen=True)
class RegionSpec:
    """A region kind with its scale and optional right-hand-side overrides.

    ``rhs_overrides`` (S_TILDE3 only) replaces entries of the default right
    sides (1 for arm bounds, 4 for cap bounds), ordered A1,B1,A2,B2,A3,B3.
    Nonpositive arm right sides describe a different ring and are accepted
    for probing only.
    """

    kind: RegionKind
    lam: float = 1.0
    rhs_overrides: tuple[float, float, float, float, float, float] | None = None

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"scale must be positive, got {self.lam}")
        if self.rhs_overrides is not None:
            object.__setattr__(
                self, "rhs_overrides", tuple(float(v) for v in self.rhs_overrides)
            )
            if len(self.rhs_overrides) != 6:
                raise ValueError("rhs_overrides needs six entries (A1,B1,A2,B2,A3,B3)")

    @classmethod
    def make(cls, kind: RegionKind, lam: float = 1.0, overrides: Mapping | None = None):
        rhs = None
        if overrides:
            unknown = set(overrides) - set(_RHS_KEYS)
            if unknown:
                raise ValueError(f"unknown override keys {sorted(unknown)}")
            rhs = tuple(
                float(overrides.get(key, default))
                for key, default in zip(_RHS_KEYS, _RHS_DEFAULTS)
            )
        return cls(kind, float(lam), rhs)

    def rhs(self) -> tuple[float, ...]:
        return self.rhs_overrides if self.rhs_overrides is not None else _RHS_DEFAULTS


class Verdict(enum.Enum):
    IN = "IN"
    OUT = "OUT"
    UNCERTAIN = "UNCERTAIN"


def _cross_pairs(config: KurodaConfig) -> tuple[tuple[int, int, int, int], ...]:
    """(i, j, exp_i, exp_j) for the six ordered cross bounds |y_i**e_i * y_j**e_j| < 1."""
    return tuple(
        (i, j, config.magnitude(j, i), config.magnitude(i, i))
        for i in AXES
        for j in AXES
        if i != j
    )


def _as_points(points, dim: int) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got shape {arr.shape}")
    return arr


def _cross_margins(q3_abs: np.ndarray, config: KurodaConfig) -> np.ndarray:
    """Max over the six cross bounds of q_i**e_i * q_j**e_j - 1 (q prescaled, abs)."""
    margin = np.full(len(q3_abs), -np.inf)
    for i, j, ei, ej in _cross_pairs(config):
        margin = np.maximum(margin, q3_abs[:, i - 1] ** ei * q3_abs[:, j - 1] ** ej - 1.0)
    return margin


def s_double_prime_margins(points, lam: float, config: KurodaConfig) -> np.ndarray:
    """Negative exactly on the inside of the scaled star."""
    pts = _as_points(points, 3)
    return _cross_margins(np.abs(pts) / lam, config)


def s_prime_margins(points, lam: float, config: KurodaConfig) -> np.ndarray:
    pts = _as_points(points, 4)
    margin = _cross_margins(np.abs(pts[:, :3]) / lam, config)
    return np.maximum(margin, np.abs(pts[:, 3]) / lam - 1.0)


def s_tilde_margins(
    points, lam: float, config: KurodaConfig, rhs: Sequence[float] = _RHS_DEFAULTS
) -> np.ndarray:
    """Max of the six arm/cap constraint values minus their right sides.

    Arm bound for axis i:  (q_i**(2*d_i) - 1) * (q_j - q_k)**(2*delta_ii) < rhs
    Cap bound for axis i:  (q_i**2 - 1) * ((q_j + q_k)**2 - 4) < rhs
    with (j, k) the other two axes and q = p / lam.
    """
    pts = _as_points(points, 3)
    q = pts / lam
    d = column_minima(config)
    margin = np.full(len(q), -np.inf)
    for i in AXES:
        j, k = (t for t in AXES if t != i)
        qi, qj, qk = q[:, i - 1], q[:, j - 1], q[:, k - 1]
        arm = (qi ** (2 * d[i - 1]) - 1.0) * (qj - qk) ** (2 * config.magnitude(i, i))
        cap = (qi**2 - 1.0) * ((qj + qk) ** 2 - 4.0)
        margin = np.maximum(margin, arm - rhs[2 * (i - 1)])
        margin = np.maximum(margin, cap - rhs[2 * (i - 1) + 1])
    return margin


def in_s_prime(point, lam: float, config: KurodaConfig) -> bool:
    return bool(s_prime_margins(point, lam, config)[0] < 0)


def in_s_double_prime(point, lam: float, config: KurodaConfig) -> bool:
    return bool(s_double_prime_margins(point, lam, config)[0] < 0)


def in_s_tilde(
    point, lam: float, config: KurodaConfig, overrides: Mapping | None = None
) -> bool:
    spec = RegionSpec.make(RegionKind.S_TILDE3, lam, overrides)
    return bool(s_tilde_margins(point, lam, config, spec.rhs())[0] < 0)


def s_shift_margin(
    point, lam: float, config: KurodaConfig, grid: int = 1024, refinements: int = 2
) -> tuple[float, float]:
    """Best (lowest) star margin of ``point - (a,a,a)`` over shifts |a| < lam.

    Grid scan over the open shift interval followed by ``refinements``
    refinement rounds around the best shift found; returns (margin, shift).
    Negative margin certifies membership of the point in the fattened star.
    """
    p = np.asarray(point, dtype=float)
    shifts = np.linspace(-lam, lam, grid + 2)[1:-1]
    spacing = shifts[1] - shifts[0]
    best_a = 0.0
    best = math.inf
    for _ in range(refinements + 1):
        q = p[None, :] - shifts[:, None]
        margins = s_double_prime_margins(q, lam, config)
        idx = int(np.argmin(margins))
        if margins[idx] < best:
            best = float(margins[idx])
            best_a = float(shifts[idx])
        lo = max(best_a - spacing, -lam)
        hi = min(best_a + spacing, lam)
        shifts = np.linspace(lo, hi, 65)
        spacing = shifts[1] - shifts[0]
    return best, best_a


def in_s(
    point, lam: float, config: KurodaConfig, tolerance: float = 1e-6
) -> Verdict:
    """Semi-decision of membership in the fattened star (see module notes)."""
    best, _ = s_shift_margin(point, lam, config)
    if abs(best) <= tolerance:
        return Verdict.UNCERTAIN
    return Verdict.IN if best < 0 else Verdict.OUT


# -- escape sequence -------------------------------------------------------


def _lg(x: float) -> float:
    return math.log2(x)


def diagonal_projection(point: Sequence[float]) -> tuple[float, float, float]:
    """Project parallel to the diagonal: subtract the fourth coordinate from
    the first three.  This is the map carrying the 4-dim region onto the
    fattened star."""
    p1, p2, p3, p4 = (float(v) for v in point)
    return (p1 - p4, p2 - p4, p3 - p4)


@dataclass(frozen=True)
class EscapePoint:
    k: int
    y: tuple[float, float, float, float]
    pi: tuple[float, float, float]


def escape_point(k: int, config: KurodaConfig, axis: int = 1) -> EscapePoint:
    """The k-th escape point and its diagonal projection.

    With the default dominant axis 1 the coordinates are ``(k**d11,
    1/(k**d21 * lg k), 1/(k**d31 * lglg k), 1/lglglg k)`` with base-2
    logarithms; requires k >= 16 so the triple logarithm is defined and
    positive.  ``axis`` relabels which coordinate dominates (the remaining
    two take the single- and double-log damping in ascending axis order).
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 16:
        raise ValueError(f"escape index must be an integer >= 16, got {k!r}")
    if axis not in AXES:
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    lg1 = _lg(float(k))
    lg2 = _lg(lg1)
    lg3 = _lg(lg2)
    other1, other2 = (j for j in AXES if j != axis)
    y = [0.0, 0.0, 0.0, 1.0 / lg3]
    y[axis - 1] = float(k ** config.magnitude(axis, axis))
    y[other1 - 1] = 1.0 / (k ** config.magnitude(other1, axis) * lg1)
    y[other2 - 1] = 1.0 / (k ** config.magnitude(other2, axis) * lg2)
    point = tuple(y)
    return EscapePoint(k, point, diagonal_projection(point))


def escape_threshold(config: KurodaConfig, lam: float = 1.0, k_limit: int = 10**6) -> int:
    """Smallest k >= 16 whose escape point lies in the scaled 4-dim region."""
    for k in range(16, k_limit + 1):
        if in_s_prime(escape_point(k, config).y, lam, config):
            return k
    raise ValueError(f"no escape point enters the region below k = {k_limit}")


# -- stratified samplers ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Accepted sample points plus the bookkeeping that makes them reproducible."""

    spec: RegionSpec
    seed: int
    requested: int
    points: np.ndarray
    strata: dict[str, dict[str, int]]
    tube_cap: float
    ray_length: float
    constructive: bool = False
    shortfall: bool = False

    def count(self) -> int:
        return len(self.points)

    def write_csv(self, out) -> int:
        """One point per line with a coordinate header; returns the row count."""
        names = ("y1", "y2", "y3", "y4") if self.points.shape[1] == 4 else ("p1", "p2", "p3")
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(names)
            for row in self.points:
                writer.writerow([f"{v:.12g}" for v in row])
        return len(self.points)


class _StarSampler:
    """Candidate generator for the 3- and 4-dimensional cross-bound regions."""

    def __init__(self, config: KurodaConfig, spec: RegionSpec, radius: float, rng):
        self.config = config
        self.spec = spec
        self.radius = float(radius)
        self.rng = rng
        self.dim = spec.kind.dim
        self.stats = {
            "box": {"candidates": 0, "accepted": 0},
            "core": {"candidates": 0, "accepted": 0},
            "ray": {"candidates": 0, "accepted": 0},
        }

    def _margins(self, pts: np.ndarray) -> np.ndarray:
        if self.spec.kind is RegionKind.S_PRIME4:
            return s_prime_margins(pts, self.spec.lam, self.config)
        if self.spec.kind is RegionKind.S_TILDE3:
            return s_tilde_margins(pts, self.spec.lam, self.config, self.spec.rhs())
        return s_double_prime_margins(pts, self.spec.lam, self.config)

    def _box(self, n: int, half_width: float) -> np.ndarray:
        return self.rng.uniform(-half_width, half_width, size=(n, self.dim))

    def _ray_star(self, n: int) -> np.ndarray:
        lam, cfg = self.spec.lam, self.config
        axis = self.rng.integers(1, 4, size=n)
        sign = self.rng.integers(0, 2, size=n) * 2.0 - 1.0
        t = self.rng.uniform(lam, self.radius, size=n)
        pts = np.zeros((n, self.dim))
        v = t / lam
        for a in AXES:
            mask = axis == a
            if not mask.any():
                continue
            pts[mask, a - 1] = sign[mask] * t[mask]
            for j in (x for x in AXES if x != a):
                e_fwd = cfg.magnitude(j, a) / cfg.magnitude(a, a)
                e_rev = cfg.magnitude(j, j) / cfg.magnitude(a, j)
                bound = lam * np.minimum(
                    0.5, np.minimum(v[mask] ** -e_fwd, v[mask] ** -e_rev)
                ) * 0.999
                pts[mask, j - 1] = self.rng.uniform(-1.0, 1.0, size=mask.sum()) * bound
        if self.dim == 4:
            pts[:, 3] = self.rng.uniform(-lam, lam, size=n)
        return pts

    def _ray_tilde(self, n: int) -> np.ndarray:
        lam, cfg = self.spec.lam, self.config
        rhs = self.spec.rhs()
        d = column_minima(cfg)
        axis = self.rng.integers(1, 4, size=n)
        sign = self.rng.integers(0, 2, size=n) * 2.0 - 1.0
        t = self.rng.uniform(lam * (1 + 1e-9), self.radius, size=n)
        pts = np.zeros((n, 3))
        for a in AXES:
            mask = axis == a
            if not mask.any():
                continue
            m = mask.sum()
            ta = t[mask]
            va = ta / lam
            rhs_arm = rhs[2 * (a - 1)]
            rhs_cap = rhs[2 * (a - 1) + 1]
            arm_factor = va ** (2 * d[a - 1]) - 1.0
            if rhs_arm > 0:
                bound_w = lam * np.minimum(
                    0.5, (rhs_arm / arm_factor) ** (1.0 / (2 * cfg.magnitude(a, a)))
                ) * 0.999
            else:
                bound_w = np.zeros(m)
            s_sq = 4.0 + rhs_cap / (va**2 - 1.0)
            bound_s = np.minimum(lam * np.sqrt(np.maximum(s_sq, 0.0)) * 0.999, 1.9 * lam)
            w = self.rng.uniform(-1.0, 1.0, size=m) * bound_w
            s = self.rng.uniform(-1.0, 1.0, size=m) * bound_s
            j, k = (x for x in AXES if x != a)
            pts[mask, a - 1] = sign[mask] * ta
            pts[mask, j - 1] = (s + w) / 2.0
            pts[mask, k - 1] = (s - w) / 2.0
        return pts

    def batch(self, size: int) -> np.ndarray:
        """One candidate round: box, core-box and ray strata, exact filtering."""
        lam = self.spec.lam
        rays_possible = self.radius > lam
        n_box = max(size // 5, 1)
        n_core = max(size // 5, 1)
        n_ray = max(size - n_box - n_core, 1) if rays_possible else 0
        if not rays_possible:
            n_box = size
        chunks = []
        for name, n, draw in (
            ("box", n_box, lambda n: self._box(n, max(self.radius, 0.0))),
            ("core", n_core, lambda n: self._box(n, lam)),
            ("ray", n_ray, self._ray_tilde if self.spec.kind is RegionKind.S_TILDE3 else self._ray_star),
        ):
            if n <= 0:
                continue
            cand = draw(n)
            keep = cand[self._margins(cand) < 0]
            self.stats[name]["candidates"] += n
            self.stats[name]["accepted"] += len(keep)
            chunks.append(keep)
        return np.vstack(chunks) if chunks else np.zeros((0, self.dim))

    def collect(self, count: int, cap_candidates: int) -> tuple[np.ndarray, bool]:
        accepted: list[np.ndarray] = []
        total = 0
        drawn = 0
        batch_size = int(min(max(4096, count), 200_000))
        while total < count and drawn < cap_candidates:
            chunk = self.batch(batch_size)
            drawn += batch_size
            if len(chunk):
                accepted.append(chunk)
                total += len(chunk)
        if total == 0:
            raise SamplingError(
                f"no {self.spec.kind.value} sample accepted after {drawn} candidates"
            )
        points = np.vstack(accepted)
        return points[:count], total < count


def sample_region(
    config: KurodaConfig,
    spec: RegionSpec,
    count: int,
    seed: int,
    radius: float,
) -> SampleSet:
    """Stratified rejection sampling of a region; deterministic per seed.

    Every returned point satisfies the region predicate exactly as evaluated
    (candidates from all strata pass through the same margin filter).  The
    fattened star is sampled constructively: star samples plus a uniform
    diagonal shift.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.default_rng(seed)
    kind = spec.kind
    base_spec = (
        RegionSpec(RegionKind.S_DOUBLE_PRIME3, spec.lam) if kind is RegionKind.S3 else spec
    )
    sampler = _StarSampler(config, base_spec, radius, rng)
    if count == 0:
        points = np.zeros((0, kind.dim))
        shortfall = False
    else:
        cap = max(500_000, 200 * count)
        points, shortfall = sampler.collect(count, cap)
        if kind is RegionKind.S3:
            shift = rng.uniform(-spec.lam, spec.lam, size=len(points))
            points = points + shift[:, None]
    return SampleSet(
        spec=spec,
        seed=seed,
        requested=count,
        points=points,
        strata=sampler.stats,
        tube_cap=0.5 * spec.lam,
        ray_length=float(radius),
        constructive=kind is RegionKind.S3,
        shortfall=shortfall,
    )


# -- probes ----------------------------------------------------------------


def evaluate_abs(f: SparsePolynomial, pts: np.ndarray) -> np.ndarray:
    """|f| at each row of ``pts``; poles and overflow come out non-finite."""
    if pts.shape[1] != f.system.arity:
        raise ValueError(
            f"points of dimension {pts.shape[1]} do not match {f.system.label}"
        )
    if f.is_zero():
        return np.zeros(len(pts))
    exps = np.array(f.support(), dtype=float)
    coeffs = np.array([float(f.coefficient(e)) for e in f.support()])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        powers = pts[:, None, :] ** exps[None, :, :]
        values = (powers.prod(axis=2) * coeffs[None, :]).sum(axis=1)
    return np.abs(values)


@dataclass(frozen=True)
class ProbeReport:
    """Sampled boundedness / divergence evidence for one function.

    ``bound`` and ``bound_ok`` are set only when the probed function is a
    plain monomial of the exponent monoid over the 4-dimensional region, in
    which case the sampled sup must stay below scale**degree.  Escape fields
    are set when escape indices were supplied.  Always evidence, never proof.
    """

    seed: int
    region: RegionSpec
    sample_count: int
    max_abs_value: float | None
    argmax_point: tuple[float, ...] | None
    bound: float | None
    bound_ok: bool | None
    pole_count: int
    uncertain_count: int
    escape_k_range: tuple[int, int] | None
    escape_final_value: float | None
    escape_monotone_from_k: int | None
    monotone_tail: bool | None
    divergence: bool | None
    note: str = "sampled evidence; not a proof"


def _monotone_from(values: np.ndarray) -> int:
    """Smallest index from which the sequence strictly increases to the end."""
    idx = len(values) - 1
    while idx > 0 and values[idx] > values[idx - 1]:
        idx -= 1
    return idx


def boundedness_probe(
    config: KurodaConfig,
    f: SparsePolynomial,
    spec: RegionSpec,
    sample_count: int,
    seed: int,
    radius: float = 50.0,
    escape_ks: Sequence[int] | None = None,
    divergence_threshold: float = 1e3,
) -> ProbeReport:
    """Record the sampled sup of |f| over a region and its escape behaviour.

    The function's variable system must match the region dimension (4-dim
    systems over the 4-dim region, difference polynomials over the 3-dim
    ones).  Escape evaluation uses the raw 4-dim escape points for 4-dim
    systems and the diagonal projections otherwise.
    """
    if f.system.arity != spec.kind.dim:
        raise ValueError(
            f"{f.system.label} function does not match {spec.kind.value} region"
        )
    max_abs = None
    argmax = None
    pole_count = 0
    n_samples = 0
    if sample_count > 0:
        samples = sample_region(config, spec, sample_count, seed, radius)
        values = evaluate_abs(f, samples.points)
        finite = np.isfinite(values)
        pole_count = int((~finite).sum())
        n_samples = len(samples.points)
        if finite.any():
            idx = int(np.argmax(np.where(finite, values, -np.inf)))
            max_abs = float(values[idx])
            argmax = tuple(float(x) for x in samples.points[idx])

    bound = bound_ok = None
    if (
        spec.kind is RegionKind.S_PRIME4
        and f.system is System.Y4
        and f.term_count() == 1
    ):
        (exps, coeff), = f.terms()
        if coeff == 1 and monoid_member(exps, config):
            bound = float(spec.lam) ** sum(exps)
            if max_abs is not None:
                bound_ok = max_abs <= bound + 1e-9

    k_range = final = monotone_from_k = None
    monotone_tail = divergence = None
    if escape_ks:
        ks = sorted(int(k) for k in escape_ks)
        pts = []
        for k in ks:
            ep = escape_point(k, config)
            pts.append(ep.y if f.system.arity == 4 else ep.pi)
        values = evaluate_abs(f, np.asarray(pts, dtype=float))
        k_range = (ks[0], ks[-1])
        final = float(values[-1])
        start = _monotone_from(values)
        monotone_from_k = ks[start]
        monotone_tail = (len(ks) - start) >= max(2, len(ks) // 4)
        divergence = bool(monotone_tail and final > divergence_threshold)

    return ProbeReport(
        seed=seed,
        region=spec,
        sample_count=n_samples,
        max_abs_value=max_abs,
        argmax_point=argmax,
        bound=bound,
        bound_ok=bound_ok,
        pole_count=pole_count,
        uncertain_count=0,
        escape_k_range=k_range,
        escape_final_value=final,
        escape_monotone_from_k=monotone_from_k,
        monotone_tail=monotone_tail,
        divergence=divergence,
    )


# -- sandwich check --------------------------------------------------------


def _in_far_zone(points: np.ndarray) -> np.ndarray:
    """Mask of points with some coordinate of absolute value above 2."""
    return (np.abs(points) > 2.0).any(axis=1)


@dataclass(frozen=True)
class SandwichReport:
    """Sampled check of the two far-zone inclusions around the basic open set.

    Direction one: points of the half-scaled fattened star (far zone only)
    must satisfy the basic open inequalities.  Direction two: far-zone points
    of the basic open set must belong to the doubled fattened star, where the
    semi-decided membership may abstain (counted, excluded, bounded share).
    """

    seed: int
    requested: int
    tolerance: float
    half_s_checked: int
    half_s_violations: int
    tilde_checked: int
    tilde_violations: int
    uncertain_count: int
    violation_examples: tuple[tuple[str, tuple[float, ...]], ...]

    @property
    def uncertain_fraction(self) -> float:
        return self.uncertain_count / self.tilde_checked if self.tilde_checked else 0.0

    @property
    def total_violations(self) -> int:
        return self.half_s_violations + self.tilde_violations


def sandwich_check(
    config: KurodaConfig,
    count: int,
    seed: int,
    radius: float = 50.0,
    tolerance: float = 1e-6,
) -> SandwichReport:
    """Run both inclusion directions on ``count`` far-zone points each."""
    rng = np.random.default_rng(seed)
    examples: list[tuple[str, tuple[float, ...]]] = []

    star = _StarSampler(
        config, RegionSpec(RegionKind.S_DOUBLE_PRIME3, 1.0), radius, rng
    )
    half_checked = 0
    half_violations = 0
    guard = 0
    while half_checked < count and guard < 400:
        guard += 1
        chunk = star.batch(max(4096, count))
        if not len(chunk):
            continue
        shift = rng.uniform(-1.0, 1.0, size=len(chunk))
        points = (chunk + shift[:, None]) / 2.0
        points = points[_in_far_zone(points)]
        if not len(points):
            continue
        points = points[: count - half_checked]
        margins = s_tilde_margins(points, 1.0, config)
        bad = margins >= 0
        half_checked += len(points)
        half_violations += int(bad.sum())
        for p in points[bad][:5]:
            examples.append(("half_s_outside_tilde", tuple(float(x) for x in p)))

    tilde = _StarSampler(config, RegionSpec(RegionKind.S_TILDE3, 1.0), radius, rng)
    tilde_checked = 0
    tilde_violations = 0
    uncertain = 0
    guard = 0
    while tilde_checked < count and guard < 400:
        guard += 1
        chunk = tilde.batch(max(4096, count))
        chunk = chunk[_in_far_zone(chunk)]
        if not len(chunk):
            continue
        chunk = chunk[: count - tilde_checked]
        for p in chunk:
            verdict = in_s(p, 2.0, config, tolerance)
            tilde_checked += 1
            if verdict is Verdict.UNCERTAIN:
                uncertain += 1
            elif verdict is Verdict.OUT:
                tilde_violations += 1
                if len(examples) < 20:
                    examples.append(("tilde_outside_2s", tuple(float(x) for x in p)))

    return SandwichReport(
        seed=seed,
        requested=count,
        tolerance=tolerance,
        half_s_checked=half_checked,
        half_s_violations=half_violations,
        tilde_checked=tilde_checked,
        tilde_violations=tilde_violations,
        uncertain_count=uncertain,
        violation_examples=tuple(examples),
    )


# -- boundary clouds -------------------------------------------------------


@dataclass(frozen=True)
class CloudReport:
    which: RegionKind
    grid: int
    radius: float
    band: float
    points_written: int
    path: str


def export_surface_cloud(
    config: KurodaConfig,
    which: RegionKind,
    grid: int,
    out,
    radius: float = 5.0,
    band: float = 0.25,
) -> CloudReport:
    """Write near-boundary grid points (|margin| < band) as CSV x,y,z,margin.

    Supports the 3-dimensional star and the basic open set; the margin is
    the max constraint value, so the zero level set is the region boundary.
    """
    if which not in (RegionKind.S_DOUBLE_PRIME3, RegionKind.S_TILDE3):
        raise ValueError("cloud export supports the two 3-dimensional closed-form regions")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    axis = np.linspace(-radius, radius, grid)
    xs, ys, zs = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.stack([xs.ravel(), ys.ravel(), zs.ravel()], axis=1)
    if which is RegionKind.S_DOUBLE_PRIME3:
        margins = s_double_prime_margins(pts, 1.0, config)
    else:
        margins = s_tilde_margins(pts, 1.0, config)
    mask = np.abs(margins) < band
    written = 0
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "z", "margin"])
        for p, m in zip(pts[mask], margins[mask]):
            writer.writerow([f"{p[0]:.12g}", f"{p[1]:.12g}", f"{p[2]:.12g}", f"{m:.12g}"])
            written += 1
    return CloudReport(which, grid, float(radius), float(band), written, str(out))
