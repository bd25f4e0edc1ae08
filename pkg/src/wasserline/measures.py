"""Probability measures on the line or the unit interval.

A measure is stored through its quantile function, a monotone
piecewise-linear :class:`~wasserline.plf.PLF` on level space [0, 1].
Flat quantile pieces are atoms (the flat's width is the mass), jumps are
gaps in the support, and rising pieces carry absolutely continuous mass
with density 1/slope.

The representation is canonicalized on construction (adjacent collinear
pieces merged), so two Measure objects are equal exactly when their
arrays are equal bit for bit and their domains agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainMismatch,
    LevelOutOfRange,
    NonPositiveWeight,
    PositionOutOfRange,
    StepOutOfRange,
    TooManyAtoms,
    WeightSumOutOfTolerance,
)
from .plf import PLF, concat_plfs, const_plf

WEIGHT_TOL = 1e-9
# slack for values that should sit in [0, 1] but picked up rounding noise
_UNIT_SLACK = 1e-12


class Domain(enum.Enum):
    REAL_LINE = "real"
    UNIT_INTERVAL = "unit"


@dataclass(frozen=True, eq=False)
class Measure:
    """A probability measure given by its quantile function."""

    domain: Domain
    quantile: PLF

    def __post_init__(self) -> None:
        q = self.quantile
        if q.breaks[0] != 0.0 or q.breaks[-1] != 1.0:
            raise LevelOutOfRange("quantile breakpoints must span [0, 1]")
        q = q.canonical()
        if self.domain is Domain.UNIT_INTERVAL:
            lo, hi = q.value_range
            if lo < -_UNIT_SLACK or hi > 1.0 + _UNIT_SLACK:
                raise PositionOutOfRange(
                    f"values [{lo}, {hi}] leave the unit interval"
                )
            if lo < 0.0 or hi > 1.0:
                q = PLF(q.breaks, np.clip(q.yl, 0.0, 1.0), np.clip(q.yr, 0.0, 1.0))
        object.__setattr__(self, "quantile", q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.domain is other.domain and self.quantile.equals(other.quantile)

    @property
    def breakpoints(self) -> np.ndarray:
        return self.quantile.breaks

    @property
    def segments(self) -> list[tuple[float, float]]:
        """Per-segment (value at the left level, slope) pairs."""
        q = self.quantile
        w = np.diff(q.breaks)
        b = (q.yr - q.yl) / w
        return [(float(a), float(s)) for a, s in zip(q.yl, b)]

    @property
    def support_interval(self) -> tuple[float, float]:
        return self.quantile.value_range

    @property
    def is_discrete(self) -> bool:
        return bool(np.all(self.quantile.yl == self.quantile.yr))

    def atoms(self) -> list[tuple[float, float]]:
        if not self.is_discrete:
            raise ValueError("measure has a continuous part")
        q = self.quantile
        w = np.diff(q.breaks)
        return [(float(x), float(m)) for x, m in zip(q.yl, w)]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.is_discrete:
            body = " + ".join(f"{m:.6g}*d[{x:.6g}]" for x, m in self.atoms())
        else:
            body = f"pl_quantile with {self.quantile.num_segments} segments"
        return f"Measure({self.domain.value}: {body})"


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Sorted atoms with merged positions and normalized weights."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=np.float64).ravel()
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if len(pos) != len(w) or len(pos) == 0:
            raise ValueError("need matching nonempty position/weight arrays")
        if not np.all(np.isfinite(pos)):
            raise PositionOutOfRange("non-finite atom position")
        if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
            raise NonPositiveWeight("atom weights must be positive")
        total = float(np.sum(w))
        if abs(total - 1.0) > WEIGHT_TOL:
            raise WeightSumOutOfTolerance(f"weights sum to {total!r}")
        order = np.argsort(pos, kind="stable")
        pos, w = pos[order], w[order]
        # merge duplicates (exact position ties)
        uniq, inverse = np.unique(pos, return_inverse=True)
        if len(uniq) != len(pos):
            w = np.bincount(inverse, weights=w)
            pos = uniq
        w = w / total
        for name, a in (("positions", pos), ("weights", w)):
            a = np.ascontiguousarray(a)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return np.array_equal(self.positions, other.positions) and np.array_equal(
            self.weights, other.weights
        )

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(x), float(m)) for x, m in zip(self.positions, self.weights)]

    def to_measure(self, domain: Domain = Domain.REAL_LINE) -> Measure:
        return from_atoms(self.atoms, domain=domain)

    @classmethod
    def from_measure(cls, mu: Measure) -> "DiscreteMeasure":
        atoms = mu.atoms()
        return cls([a for a, _ in atoms], [m for _, m in atoms])


# ----------------------------------------------------------------------
# constructors


def from_quantile(domain: Domain, breaks, yl, yr) -> Measure:
    return Measure(domain, PLF(np.asarray(breaks), np.asarray(yl), np.asarray(yr)))


def from_segments(domain: Domain, breaks, segments) -> Measure:
    """Build from (value, slope) segment pairs on the given level breaks."""
    breaks = np.asarray(breaks, dtype=np.float64)
    seg = np.asarray(segments, dtype=np.float64)
    if seg.ndim != 2 or seg.shape[1] != 2 or seg.shape[0] != len(breaks) - 1:
        raise ValueError("need one (value, slope) pair per level cell")
    a, b = seg[:, 0], seg[:, 1]
    w = np.diff(breaks)
    yl = a
    yr = a + b * w
    # a continuous seam computed through the slope may overshoot the next
    # anchor by rounding; snap it back, anything larger is a real error
    nxt = np.concatenate([yl[1:], [np.inf]])
    over = yr - nxt
    yr = np.where((over > 0.0) & (over <= 1e-12 * np.maximum(1.0, np.abs(yr))), nxt, yr)
    return Measure(domain, PLF(breaks, yl, yr))


def from_atoms(atoms, domain: Domain = Domain.REAL_LINE) -> Measure:
    """Finite discrete measure from (position, weight) pairs.

    Atoms are sorted, exact duplicate positions merged, weights
    normalized (their sum must be within 1e-9 of one).
    """
    pairs = list(atoms)
    if not pairs:
        raise NonPositiveWeight("a measure needs at least one atom")
    d = DiscreteMeasure([p for p, _ in pairs], [w for _, w in pairs])
    pos, w = d.positions, d.weights
    if domain is Domain.UNIT_INTERVAL and (pos[0] < 0.0 or pos[-1] > 1.0):
        raise PositionOutOfRange("atom outside the unit interval")
    cum = np.cumsum(w)
    cum[-1] = 1.0
    breaks = np.concatenate([[0.0], cum])
    # drop cells whose width underflowed to zero (weight below one ulp of
    # the running total); the lost mass is far under the weight tolerance
    keep = np.diff(breaks) > 0.0
    if not keep.all():
        pos = pos[keep]
        breaks = np.concatenate([[0.0], cum[keep]])
    return Measure(domain, PLF(breaks, pos, pos))


# ----------------------------------------------------------------------
# pointwise queries


def quantile_eval(mu: Measure, y):
    """Right-continuous quantile at interior levels 0 < y < 1."""
    arr = np.asarray(y, dtype=np.float64)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise LevelOutOfRange("quantile levels must lie strictly inside (0, 1)")
    return mu.quantile.eval(y)


def cdf_eval(mu: Measure, x):
    """F(x) = mu((-inf, x]); vectorized."""
    arr = np.asarray(x, dtype=np.float64)
    lo, hi = mu.quantile.value_range
    out = np.zeros(arr.shape)
    out = np.where(arr >= hi, 1.0, out)
    inside = (arr >= lo) & (arr < hi)
    if np.any(inside):
        inv = mu.quantile.inverse()
        out = np.where(inside, inv.eval(np.where(inside, arr, lo)), out)
    return out if arr.ndim else float(out)


def barycenter(mu: Measure) -> float:
    """Mean of the measure: the integral of its quantile function."""
    return mu.quantile.integral()


# ----------------------------------------------------------------------
# elementary pushforwards


def pushforward_affine(mu: Measure, orientation: int, offset: float) -> Measure:
    """Image of mu under x -> orientation * x + offset.

    On the unit interval only the identity (+1, 0) and the reflection
    (-1, 1) stay inside; anything else is rejected.
    """
    from .errors import InvalidIntervalIsometry

    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    offset = float(offset)
    if mu.domain is Domain.UNIT_INTERVAL and (orientation, offset) not in (
        (1, 0.0),
        (-1, 1.0),
    ):
        raise InvalidIntervalIsometry(
            "only the identity and x -> 1 - x map [0, 1] onto itself"
        )
    q = mu.quantile
    if orientation == 1:
        if offset == 0.0:
            return mu
        return Measure(mu.domain, PLF(q.breaks, q.yl + offset, q.yr + offset))
    # reflection reverses level space: Q'(y) = offset - Q((1-y)-)
    nb = 1.0 - q.breaks[::-1]
    nb = nb.copy()
    nb[0] = 0.0
    nb[-1] = 1.0
    return Measure(mu.domain, PLF(nb, offset - q.yr[::-1], offset - q.yl[::-1]))


def flip(mu: Measure) -> Measure:
    """Exchange mass and position on [0, 1]: the image has CDF equal to
    mu's quantile function.  An involution, and it maps each Dirac d_t to
    t*d_0 + (1-t)*d_1.
    """
    if mu.domain is not Domain.UNIT_INTERVAL:
        raise DomainMismatch("flip is defined on unit-interval measures")
    q = mu.quantile
    v0, v1 = q.value_range
    pieces: list[PLF] = []
    if v0 == v1:  # Dirac at t: flip is the extremal two-point measure
        t = v0
        if t > 0.0:
            pieces.append(const_plf(0.0, t, 0.0))
        if t < 1.0:
            pieces.append(const_plf(t, 1.0, 1.0))
        return Measure(Domain.UNIT_INTERVAL, concat_plfs(pieces))
    if v0 > 0.0:
        pieces.append(const_plf(0.0, v0, 0.0))
    pieces.append(q.inverse())
    if v1 < 1.0:
        pieces.append(const_plf(v1, 1.0, 1.0))
    return Measure(Domain.UNIT_INTERVAL, concat_plfs(pieces))


# ----------------------------------------------------------------------
# the two-point chart


@dataclass(frozen=True)
class TwoPointParam:
    """Chart (x, sigma, p) for measures with at most two atoms.

    The measure is w- * d[x - sigma*e^p] + w+ * d[x + sigma*e^-p] with
    w- = e^-p / (e^p + e^-p); sigma = 0 collapses to the Dirac d_x and
    pins p = 0.
    """

    x: float
    sigma: float
    p: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.x) or not np.isfinite(self.sigma) or not np.isfinite(self.p):
            raise ValueError("chart coordinates must be finite")
        if self.sigma < 0.0:
            raise ValueError("sigma is a scale and must be nonnegative")
        if self.sigma == 0.0 and self.p != 0.0:
            raise ValueError("the Dirac fiber fixes p = 0")


def two_point_from_param(tp: TwoPointParam) -> DiscreteMeasure:
    if tp.sigma == 0.0:
        return DiscreteMeasure([tp.x], [1.0])
    ep = float(np.exp(tp.p))
    em = float(np.exp(-tp.p))
    z = ep + em
    return DiscreteMeasure(
        [tp.x - tp.sigma * ep, tp.x + tp.sigma * em],
        [em / z, ep / z],
    )


def param_from_two_point(mu: DiscreteMeasure) -> TwoPointParam:
    n = len(mu.positions)
    if n > 2:
        raise TooManyAtoms(f"two-point chart got {n} atoms")
    if n == 1:
        return TwoPointParam(float(mu.positions[0]), 0.0, 0.0)
    (x1, x2), (w1, w2) = mu.positions, mu.weights
    p = 0.5 * float(np.log(w2 / w1))
    sigma = float(x2 - x1) / float(np.exp(p) + np.exp(-p))
    x = float(x1) + sigma * float(np.exp(p))
    return TwoPointParam(x, sigma, p)


# ----------------------------------------------------------------------
# CDF-side tools on the unit interval


def _unit_cdf_plf(mu: Measure) -> PLF:
    """The CDF of a unit-interval measure as a PLF on [0, 1]."""
    q = mu.quantile
    v0, v1 = q.value_range
    if v0 == v1:  # Dirac
        t = v0
        if t <= 0.0:
            return const_plf(0.0, 1.0, 1.0)
        if t >= 1.0:
            return const_plf(0.0, 1.0, 0.0)
        return concat_plfs([const_plf(0.0, t, 0.0), const_plf(t, 1.0, 1.0)])
    pieces: list[PLF] = []
    if v0 > 0.0:
        pieces.append(const_plf(0.0, v0, 0.0))
    pieces.append(q.inverse())
    if v1 < 1.0:
        pieces.append(const_plf(v1, 1.0, 1.0))
    return concat_plfs(pieces)


def dist_to_dirac(mu: Measure, t: float) -> float:
    """W1 distance from mu to the Dirac at t, both on [0, 1].

    Computed on the CDF side as integral_0^t F + integral_t^1 (1 - F);
    every term is a trapezoid cell, so dyadic data stays exact.
    """
    if mu.domain is not Domain.UNIT_INTERVAL:
        raise DomainMismatch("dirac distances are a unit-interval tool")
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise PositionOutOfRange("the Dirac location must lie in [0, 1]")
    F = _unit_cdf_plf(mu)
    left = F.integral(0.0, t)
    right = (1.0 - t) - F.integral(t, 1.0)
    return left + right


def cdf_from_dirac_distances(mu: Measure, t: float, h: float) -> float:
    """Recover F(t) from two Dirac distances:

        F(t) ~ (g + 1) / 2,  g = (d(t + h) - d(t)) / h.

    Exact whenever no mass sits in (t, t + h]; otherwise accurate to the
    mass of that sliver.
    """
    if mu.domain is not Domain.UNIT_INTERVAL:
        raise DomainMismatch("dirac distances are a unit-interval tool")
    t = float(t)
    h = float(h)
    if not (0.0 <= t < 1.0):
        raise PositionOutOfRange("the base point must lie in [0, 1)")
    if h <= 0.0 or t + h > 1.0:
        raise StepOutOfRange("need h > 0 with t + h <= 1")
    g = (dist_to_dirac(mu, t + h) - dist_to_dirac(mu, t)) / h
    return (g + 1.0) / 2.0


# ----------------------------------------------------------------------
# serialization


def measure_to_json(mu: Measure) -> dict:
    if mu.is_discrete:
        return {
            "domain": mu.domain.value,
            "type": "discrete",
            "atoms": [[x, m] for x, m in mu.atoms()],
        }
    return {
        "domain": mu.domain.value,
        "type": "pl_quantile",
        "breaks": [float(b) for b in mu.breakpoints],
        "segments": [[a, b] for a, b in mu.segments],
    }


def measure_from_json(data: dict) -> Measure:
    try:
        domain = Domain(data["domain"])
        kind = data["type"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed measure object: {exc}") from exc
    if kind == "discrete":
        return from_atoms([(float(p), float(w)) for p, w in data["atoms"]], domain=domain)
    if kind == "pl_quantile":
        return from_segments(domain, data["breaks"], data["segments"])
    raise ValueError(f"unknown measure type {kind!r}")
