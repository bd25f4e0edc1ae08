"""Extremal geometry of W_p([0, 1]).

The space fibers into slices S_t = {mu : d_1(d_0, mu) = t}; within a
slice the distance to the Dirac endpoint of the fiber is fixed, and the
two-point measures (1-t) d_0 + t d_1 are the unique points at maximal
distance 2t(1-t) from the Dirac d_t of the same slice.

M_n is the set of uniform n-th dyadic empirical measures: equal weights
1/2^n on 2^n sorted positions.  Every measure lies within (1/2)^{1+n/p}
of M_n, with equality exactly on the 2^n extremal elements Q_n whose
atoms sit at 0 and 1 only.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    AlphaOutOfRange,
    DomainMismatch,
    InvalidP,
    PositionOutOfRange,
    UnsortedPositions,
    WeightError,
)
from .measures import Domain, Measure, dist_to_dirac, from_atoms
from .metric import check_order, wasserstein_distance
from .plf import plf_combine

_MAX_LADDER = 20  # 2^20 atoms is already far beyond any sane use


def _require_unit(mu: Measure) -> None:
    if mu.domain is not Domain.UNIT_INTERVAL:
        raise DomainMismatch("this structure lives on unit-interval measures")


def _check_level_index(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError("the ladder index n must be a nonnegative integer")
    if n > _MAX_LADDER:
        raise ValueError(f"ladder index {n} is too large")
    return int(n)


def slice_of(mu: Measure) -> float:
    """The slice coordinate t = d_1(d_0, mu); equals the barycenter."""
    _require_unit(mu)
    return dist_to_dirac(mu, 0.0)


def slice_extremal_pair(t: float) -> tuple[Measure, Measure]:
    """The diameter-realizing pair of the slice S_t.

    Returns ((1-t) d_0 + t d_1, d_t); their distance 2t(1-t) is the
    diameter of S_t for W_1, attained only by this pair.
    """
    t = float(t)
    if not (0.0 <= t <= 1.0):
        raise PositionOutOfRange("slices are indexed by t in [0, 1]")
    if t == 0.0 or t == 1.0:
        endpoint = from_atoms([(t, 1.0)], domain=Domain.UNIT_INTERVAL)
        return endpoint, endpoint
    two_point = from_atoms([(0.0, 1.0 - t), (1.0, t)], domain=Domain.UNIT_INTERVAL)
    dirac = from_atoms([(t, 1.0)], domain=Domain.UNIT_INTERVAL)
    return two_point, dirac


def qn_elements(n: int) -> list[Measure]:
    """The 2^n measures at exact ladder distance from M_n.

    Element k is ((2k-1)/2^{n+1}) d_0 + (1 - (2k-1)/2^{n+1}) d_1 for
    k = 1..2^n; all its mass sits on the endpoints.
    """
    n = _check_level_index(n)
    if n > 12:
        raise ValueError("refusing to materialize more than 4096 elements")
    denom = float(2 ** (n + 1))
    out = []
    for k in range(1, 2**n + 1):
        w0 = (2 * k - 1) / denom
        out.append(from_atoms([(0.0, w0), (1.0, 1.0 - w0)], domain=Domain.UNIT_INTERVAL))
    return out


def mn_element(positions) -> Measure:
    """Equal-weight measure on sorted positions in [0, 1]."""
    pos = np.asarray(positions, dtype=np.float64).ravel()
    if pos.size == 0:
        raise ValueError("need at least one position")
    if np.any(np.diff(pos) < 0.0):
        raise UnsortedPositions("positions must be sorted nondecreasingly")
    if pos[0] < 0.0 or pos[-1] > 1.0:
        raise PositionOutOfRange("positions must lie in [0, 1]")
    w = np.full(len(pos), 1.0 / len(pos))
    return from_atoms(zip(pos, w), domain=Domain.UNIT_INTERVAL)


def ladder_bound(n: int, p: float) -> float:
    """The sharp bound d_p(mu, M_n) <= (1/2)^{1 + n/p}."""
    p = check_order(p)
    n = _check_level_index(n)
    return 0.5 ** (1.0 + n / p)


def nearest_in_mn(mu: Measure, n: int, p: float) -> tuple[Measure, float]:
    """Best approximation of mu in M_n for d_p, p > 1.

    The k-th atom only sees the quantile block [(k-1)/2^n, k/2^n), and
    the block cost a -> integral |Q - a|^p is strictly convex, so each
    position solves a scalar equation.  The derivative has a closed form
    per cell (divided differences of |u|^p / p), and bisection on it
    converges deterministically; all blocks run in lockstep.
    """
    _require_unit(mu)
    p = check_order(p)
    if p <= 1.0:
        raise InvalidP("uniqueness of the projection needs p > 1")
    n = _check_level_index(n)
    blocks = 2**n
    edges = np.arange(blocks + 1) / float(blocks)
    q = mu.quantile.refine(edges)
    w = np.diff(q.breaks)
    # map each refined cell to its block
    cell_block = np.searchsorted(edges, q.breaks[:-1], side="right") - 1
    cell_block = np.clip(cell_block, 0, blocks - 1)
    first = np.searchsorted(cell_block, np.arange(blocks), side="left")
    last = np.searchsorted(cell_block, np.arange(blocks), side="right") - 1
    lo = q.yl[first].astype(np.float64).copy()
    hi = q.yr[last].astype(np.float64).copy()

    def derivative(a_blocks: np.ndarray) -> np.ndarray:
        a = a_blocks[cell_block]
        A = q.yl - a
        B = q.yr - a
        d = B - A
        steep = np.abs(d) > 1e-9 * np.maximum(np.abs(A), np.abs(B))
        safe = np.where(steep, d, 1.0)
        prim = lambda u: np.abs(u) ** p / p
        divided = (prim(B) - prim(A)) / safe
        mid = (A + B) * 0.5
        flat = np.sign(mid) * np.abs(mid) ** (p - 1.0)
        per_cell = -w * np.where(steep, divided, flat)
        return np.bincount(cell_block, weights=per_cell, minlength=blocks)

    for _ in range(120):
        a = (lo + hi) * 0.5
        g = derivative(a)
        below = g < 0.0
        lo = np.where(below, a, lo)
        hi = np.where(below, hi, a)
        if np.all(hi - lo <= 1e-14):
            break
    a = (lo + hi) * 0.5
    a = np.maximum.accumulate(np.clip(a, 0.0, 1.0))
    best = mn_element(a)
    return best, wasserstein_distance(mu, best, p)


def t_star(alpha: float, p: float) -> float:
    """Unique minimizer of t -> (1-alpha) t^p + alpha (1-t)^p on [0, 1]:

        t* = alpha^{1/(p-1)} / (alpha^{1/(p-1)} + (1-alpha)^{1/(p-1)}).

    This is the position of the one-atom best d_p approximation of the
    two-point measure (1-alpha) d_0 + alpha d_1.
    """
    p = check_order(p)
    if p <= 1.0:
        raise InvalidP("the minimizer is only unique for p > 1")
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise AlphaOutOfRange("alpha must lie strictly inside (0, 1)")
    r = 1.0 / (p - 1.0)
    a = alpha**r
    b = (1.0 - alpha) ** r
    return a / (a + b)


def convex_hull_combination(items) -> Measure:
    """Quantile-convex combination sum_i w_i Q_i as a measure.

    Weights must be nonnegative with total within 1e-9 of one; zero
    weights are dropped, the rest renormalized.
    """
    pairs = [(mu, float(w)) for mu, w in items]
    if not pairs:
        raise WeightError("empty combination")
    if any(w < 0.0 for _, w in pairs):
        raise WeightError("combination weights must be nonnegative")
    total = sum(w for _, w in pairs)
    if abs(total - 1.0) > 1e-9:
        raise WeightError(f"combination weights sum to {total!r}")
    pairs = [(mu, w) for mu, w in pairs if w > 0.0]
    if not pairs:
        raise WeightError("all weights vanish")
    domain = pairs[0][0].domain
    if any(mu.domain is not domain for mu, _ in pairs):
        raise DomainMismatch("combination mixes domains")
    q = plf_combine([mu.quantile for mu, _ in pairs], [w / total for _, w in pairs])
    return Measure(domain, q)
