"""Midpoint geometry of W_1 on the line.

For mu != nu the set between the two CDF graphs has area D = d_1(mu,
nu).  A vertical line x = v and a horizontal line y = h each split that
area in half; the quadrant areas alpha_1..alpha_4 (counterclockwise
from lower left) satisfy alpha_1 = alpha_3 >= alpha_2 = alpha_4 and
alpha_1 + alpha_2 = D/2.

When alpha_2 > 0 the two glue constructions

    vertical:    F = F_mu left of v, F_nu from v on
    horizontal:  Q = Q_nu below level h, Q_mu from h on

(after labeling mu, nu so that F_mu(v) < h < F_nu(v-)) are midpoints at
mutual distance alpha_1 + alpha_3 in [D/2, D].  The midpoint set of an
adjacent pair has diameter exactly D/2, attained only by these two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainMismatch, EqualEndpoints, NotBisectable
from .measures import Domain, Measure
from .metric import geodesic_point, wasserstein_distance
from .plf import (
    PLF,
    _with_crossings,
    abs_pow_cells,
    concat_plfs,
    const_plf,
    on_common_grid,
    plf_splice,
)


@dataclass(frozen=True)
class MidpointGeometry:
    """Area decomposition of the band between two CDFs.

    ``swapped`` records whether the labeling had to be exchanged to get
    the orientation F_mu(v) < h < F_nu(v-) used by the constructions.
    """

    D: float
    v: float
    h: float
    alphas: tuple[float, float, float, float]
    swapped: bool


@dataclass(frozen=True)
class AdjacencyWitness:
    """The unique interval on which two adjacent measures differ."""

    a: float
    b: float


@dataclass(frozen=True)
class ProbeResult:
    lower_bound_found: float
    theoretical: tuple[float, float]
    best_pair: tuple[Measure, Measure]
    trials: int


# ----------------------------------------------------------------------
# CDFs as PLFs on a padded window


def _cdf_plf(mu: Measure, lo: float, hi: float) -> PLF:
    q = mu.quantile
    v0, v1 = q.value_range
    if not (lo < v0 and v1 < hi):
        raise ValueError("window must strictly contain the support")
    if v0 == v1:  # Dirac
        return concat_plfs([const_plf(lo, v0, 0.0), const_plf(v0, hi, 1.0)])
    pieces = [const_plf(lo, v0, 0.0), q.inverse(), const_plf(v1, hi, 1.0)]
    return concat_plfs(pieces)


def _cdf_pair(mu: Measure, nu: Measure) -> tuple[PLF, PLF]:
    a = min(mu.quantile.value_range[0], nu.quantile.value_range[0]) - 1.0
    b = max(mu.quantile.value_range[1], nu.quantile.value_range[1]) + 1.0
    return _cdf_plf(mu, a, b), _cdf_plf(nu, a, b)


# ----------------------------------------------------------------------
# area medians


def _half_area_point(f: PLF, g: PLF) -> float:
    """Infimum point x with integral of |f - g| up to x reaching half of
    the total.  Cells are refined at sign changes first, so the partial
    integral inside one cell is a trapezoid of |affine| and the infimum
    is found by float bisection down to adjacent doubles.
    """
    F, G = _with_crossings(f, g)
    grid = F.breaks
    dl = F.yl - G.yl
    dr = F.yr - G.yr
    w = np.diff(grid)
    cells = abs_pow_cells(w, dl, dr, 1.0)
    cum = np.concatenate([[0.0], np.cumsum(cells)])
    target = 0.5 * cum[-1]
    i = int(np.searchsorted(cum, target, side="left"))
    if i == 0:
        return float(grid[0])
    a, b = float(grid[i - 1]), float(grid[i])
    base = float(cum[i - 1])
    da, db = float(dl[i - 1]), float(dr[i - 1])
    width = b - a

    def reached(x: float) -> bool:
        dx = da + (db - da) * ((x - a) / width)
        part = (x - a) * (abs(da) + abs(dx)) * 0.5
        return base + part >= target

    if reached(a):
        return a
    lo, hi = a, b
    while True:
        m = 0.5 * (lo + hi)
        if m <= lo or m >= hi:
            return hi
        if reached(m):
            hi = m
        else:
            lo = m


# ----------------------------------------------------------------------
# the geometry record


def _require_pair(mu: Measure, nu: Measure) -> None:
    if mu.domain is not nu.domain:
        raise DomainMismatch("midpoint geometry needs one common domain")
    if mu == nu:
        raise EqualEndpoints("midpoint geometry needs two distinct measures")


def midpoint_geometry(mu: Measure, nu: Measure) -> MidpointGeometry:
    _require_pair(mu, nu)
    D = wasserstein_distance(mu, nu, 1.0)
    if D == 0.0:
        raise EqualEndpoints("measures coincide")
    fm, fn = _cdf_pair(mu, nu)
    v = _half_area_point(fm, fn)
    h = _half_area_point(mu.quantile, nu.quantile)

    qm, qn = _with_crossings(mu.quantile, nu.quantile)
    q_lo = PLF(qm.breaks, np.minimum(qm.yl, qn.yl), np.minimum(qm.yr, qn.yr))
    q_hi = PLF(qm.breaks, np.maximum(qm.yl, qn.yl), np.maximum(qm.yr, qn.yr))
    lo_v = q_lo.minimum(v)
    hi_v = q_hi.minimum(v)
    lo_cap = q_lo.maximum(v)
    hi_cap = q_hi.maximum(v)
    a1 = hi_v.integral(0.0, h) - lo_v.integral(0.0, h)
    a2 = hi_cap.integral(0.0, h) - lo_cap.integral(0.0, h)
    a3 = hi_cap.integral(h, 1.0) - lo_cap.integral(h, 1.0)
    a4 = hi_v.integral(h, 1.0) - lo_v.integral(h, 1.0)

    margin_keep = min(h - fm.eval(v), fn.left_limit(v) - h)
    margin_swap = min(h - fn.eval(v), fm.left_limit(v) - h)
    swapped = margin_swap > margin_keep
    return MidpointGeometry(D, v, h, (a1, a2, a3, a4), swapped)


# ----------------------------------------------------------------------
# bisecting measures


def _oriented(mu: Measure, nu: Measure, geo: MidpointGeometry) -> tuple[Measure, Measure]:
    return (nu, mu) if geo.swapped else (mu, nu)


def _check_bisectable(geo: MidpointGeometry) -> None:
    if geo.alphas[1] <= 1e-12 * max(1.0, geo.D):
        raise NotBisectable(
            "alpha_2 vanishes; the extremal midpoints are the plain glue "
            "measures and no bisecting pair is defined"
        )


def bisecting_vertical(mu: Measure, nu: Measure) -> Measure:
    """The midpoint whose CDF follows mu left of v and nu from v on."""
    geo = midpoint_geometry(mu, nu)
    _check_bisectable(geo)
    a, b = _oriented(mu, nu, geo)
    low = a.quantile.minimum(geo.v)
    high = b.quantile.maximum(geo.v)
    return Measure(mu.domain, plf_splice(low, high, geo.h))


def bisecting_horizontal(mu: Measure, nu: Measure) -> Measure:
    """The midpoint whose quantile follows nu below level h and mu above."""
    geo = midpoint_geometry(mu, nu)
    _check_bisectable(geo)
    a, b = _oriented(mu, nu, geo)
    return Measure(mu.domain, plf_splice(b.quantile, a.quantile, geo.h))


def is_midpoint(xi: Measure, mu: Measure, nu: Measure, tol: float = 1e-9) -> bool:
    if xi.domain is not mu.domain or mu.domain is not nu.domain:
        raise DomainMismatch("all three measures must share a domain")
    half = 0.5 * wasserstein_distance(mu, nu, 1.0)
    return (
        abs(wasserstein_distance(mu, xi, 1.0) - half) <= tol
        and abs(wasserstein_distance(xi, nu, 1.0) - half) <= tol
    )


# ----------------------------------------------------------------------
# adjacency


def is_adjacent(mu: Measure, nu: Measure) -> AdjacencyWitness | None:
    """Exact test: the CDFs must differ exactly on one interval [a, b)
    on which both are constant.  All comparisons are bitwise; no
    tolerance is involved.
    """
    if mu.domain is not nu.domain:
        raise DomainMismatch("adjacency needs one common domain")
    if mu == nu:
        return None
    fm, fn = _cdf_pair(mu, nu)
    F, G = on_common_grid(fm, fn)
    differs = (F.yl != G.yl) | (F.yr != G.yr)
    idx = np.flatnonzero(differs)
    if len(idx) == 0:
        return None
    first, last = int(idx[0]), int(idx[-1])
    if last - first + 1 != len(idx):
        return None  # the difference set is not one interval
    for H in (F, G):
        block_l = H.yl[first : last + 1]
        block_r = H.yr[first : last + 1]
        if np.any(block_l != block_l[0]) or np.any(block_r != block_l[0]):
            return None  # not constant across the band
    return AdjacencyWitness(float(F.breaks[first]), float(F.breaks[last + 1]))


# ----------------------------------------------------------------------
# midpoint-set diameter probe


def _l1_cells(w: np.ndarray, dl: np.ndarray, dr: np.ndarray) -> np.ndarray:
    """Exact |affine| cell integrals, lean enough to broadcast widely."""
    s = np.abs(dl) + np.abs(dr)
    cross = (dl * dr) < 0.0
    denom = np.where(cross, s, 1.0)
    straight = 0.5 * w * s
    bent = w * (dl * dl + dr * dr) / (2.0 * denom)
    return np.where(cross, bent, straight)


def _flatten_nodes(f: PLF) -> np.ndarray:
    out = np.empty(2 * f.num_segments)
    out[0::2] = f.yl
    out[1::2] = f.yr
    return out


def midpoint_diameter_probe(
    mu: Measure, nu: Measure, trials: int = 2000, seed: int = 0
) -> ProbeResult:
    """Lower-bound the diameter of the midpoint set by sampling it.

    Midpoints are exactly the measures whose quantile lies between the
    pointwise envelopes of Q_mu and Q_nu and whose distance to mu is
    D/2.  Random monotone envelope sections are blended affinely toward
    mu or nu to land on D/2 exactly (the blend is affine in both
    distances because no sign change can occur inside the envelope).
    The deterministic candidates include the geodesic midpoint and the
    glue constructions, so for adjacent pairs the known extremal pair is
    always in the pool.
    """
    _require_pair(mu, nu)
    D = wasserstein_distance(mu, nu, 1.0)
    if D == 0.0:
        raise EqualEndpoints("measures coincide")
    h = _half_area_point(mu.quantile, nu.quantile)
    v = _half_area_point(*_cdf_pair(mu, nu))

    deterministic: list[Measure] = [geodesic_point(mu, nu, 0.5)]
    for a, b in ((mu, nu), (nu, mu)):
        for builder in (_glue_vertical, _glue_horizontal):
            try:
                cand = builder(a, b, v, h)
            except Exception:
                continue
            if is_midpoint(cand, mu, nu, tol=1e-9):
                deterministic.append(cand)

    qm, qn = _with_crossings(mu.quantile, nu.quantile)
    grid = qm.breaks
    for cand in deterministic:
        grid = np.union1d(grid, cand.quantile.breaks)
    grid = np.union1d(grid, [h])
    grid = np.union1d(grid, 0.5 * (grid[:-1] + grid[1:]))
    qm = mu.quantile.on_grid(grid)
    qn = nu.quantile.on_grid(grid)
    w = np.diff(grid)
    e_lo = np.minimum(_flatten_nodes(qm), _flatten_nodes(qn))
    e_hi = np.maximum(_flatten_nodes(qm), _flatten_nodes(qn))

    rng = np.random.default_rng(np.random.SeedSequence([int(seed) % 2**63, 0x6D6964]))
    u = rng.random((int(trials), len(e_lo)))
    nodes = e_lo + u * (e_hi - e_lo)
    np.maximum.accumulate(nodes, axis=1, out=nodes)
    det_rows = [_flatten_nodes(c.quantile.on_grid(grid)) for c in deterministic]
    nodes = np.vstack([nodes] + det_rows)

    m_nodes = _flatten_nodes(qm)
    n_nodes = _flatten_nodes(qn)
    dist_mu = _l1_cells(w, nodes[:, 0::2] - m_nodes[0::2], nodes[:, 1::2] - m_nodes[1::2]).sum(axis=1)
    target = 0.5 * D
    toward_nu = dist_mu < target
    anchor = np.where(toward_nu[:, None], n_nodes[None, :], m_nodes[None, :])
    anchor_d = np.where(toward_nu, D, 0.0)
    denom = anchor_d - dist_mu
    theta = np.where(denom == 0.0, 0.0, (target - dist_mu) / np.where(denom == 0.0, 1.0, denom))
    nodes = nodes + theta[:, None] * (anchor - nodes)

    n = nodes.shape[0]
    L = np.ascontiguousarray(nodes[:, 0::2])
    R = np.ascontiguousarray(nodes[:, 1::2])
    best = -1.0
    bi = bj = 0
    chunk = max(1, int(2_000_000 // max(1, n * L.shape[1])))
    for i0 in range(0, n, chunk):
        i1 = min(n, i0 + chunk)
        dl = L[i0:i1, None, :] - L[None, :, :]
        dr = R[i0:i1, None, :] - R[None, :, :]
        dmat = _l1_cells(w, dl, dr).sum(axis=2)
        k = int(np.argmax(dmat))
        ci, cj = divmod(k, n)
        if dmat[ci, cj] > best:
            best = float(dmat[ci, cj])
            bi, bj = i0 + ci, cj
    pair = (
        Measure(mu.domain, PLF(grid, L[bi], R[bi])),
        Measure(mu.domain, PLF(grid, L[bj], R[bj])),
    )
    return ProbeResult(best, (0.5 * D, D), pair, int(trials))


def _glue_vertical(a: Measure, b: Measure, v: float, h: float) -> Measure:
    low = a.quantile.minimum(v)
    high = b.quantile.maximum(v)
    return Measure(a.domain, plf_splice(low, high, h))


def _glue_horizontal(a: Measure, b: Measure, v: float, h: float) -> Measure:
    return Measure(a.domain, plf_splice(b.quantile, a.quantile, h))


# ----------------------------------------------------------------------
# the Dirac certificate


def dirac_certificate(eta: Measure, n: float) -> tuple[Measure, Measure] | None:
    """An adjacent pair at distance n with eta as one of its bisecting
    measures, or None when no such pair exists.

    Diracs admit one for every n (push the mass n/2 to each side).  A
    non-Dirac eta can only serve as a glue of pairs that redistribute
    one of its atoms (vertical type: an atom of weight W with clear gaps
    g on both sides caps n at 2 W min(g)) or one of its support gaps
    (horizontal type: a gap of length B - A between atoms of weights
    w_A, w_B caps n at 2 (B - A) min(w_A, w_B)), so certificates die out
    beyond roughly twice the support diameter.
    """
    n = float(n)
    if not np.isfinite(n) or n <= 0.0:
        raise ValueError("the certificate distance must be positive")
    q = eta.quantile
    yl, yr, breaks = q.yl, q.yr, q.breaks
    m = q.num_segments
    # vertical type: move one whole atom symmetrically
    for k in range(m):
        if yl[k] != yr[k]:
            continue
        value = float(yl[k])
        weight = float(breaks[k + 1] - breaks[k])
        l_gap = math.inf if k == 0 else value - float(yr[k - 1])
        r_gap = math.inf if k == m - 1 else float(yl[k + 1]) - value
        gap = min(l_gap, r_gap)
        if gap <= 0.0:
            continue
        if 2.0 * weight * gap >= n:
            s = n / (2.0 * weight)
            if math.isfinite(gap):
                s = min(s, gap)
            left = yl.copy()
            left[k] = value - s
            right = yl.copy()
            right[k] = value + s
            lo = Measure(Domain.REAL_LINE, PLF(breaks, left, _patched(yr, k, value - s)))
            hi = Measure(Domain.REAL_LINE, PLF(breaks, right, _patched(yr, k, value + s)))
            return lo, hi
    # horizontal type: shift the level of one support gap
    for k in range(m - 1):
        A, B = float(yr[k]), float(yl[k + 1])
        if A == B:
            continue
        w_a = float(breaks[k + 1] - breaks[k]) if yl[k] == yr[k] else 0.0
        w_b = float(breaks[k + 2] - breaks[k + 1]) if yl[k + 1] == yr[k + 1] else 0.0
        cap = min(w_a, w_b)
        if cap <= 0.0:
            continue
        if 2.0 * (B - A) * cap >= n:
            d = min(n / (2.0 * (B - A)), cap)
            c = float(breaks[k + 1])
            return (
                Measure(Domain.REAL_LINE, _with_junction_level(q, k, c - d)),
                Measure(Domain.REAL_LINE, _with_junction_level(q, k, c + d)),
            )
    return None


def _patched(arr: np.ndarray, k: int, value: float) -> np.ndarray:
    out = arr.copy()
    out[k] = value
    return out


def _with_junction_level(q: PLF, k: int, level: float) -> PLF:
    breaks = q.breaks.copy()
    yl = q.yl.copy()
    yr = q.yr.copy()
    breaks[k + 1] = level
    drop = []
    if breaks[k + 1] == breaks[k]:
        drop.append(k)
    if breaks[k + 1] == breaks[k + 2]:
        drop.append(k + 1)
    if drop:
        yl = np.delete(yl, drop)
        yr = np.delete(yr, drop)
        breaks = np.delete(breaks, [d + 1 for d in drop])
    return PLF(breaks, yl, yr)
