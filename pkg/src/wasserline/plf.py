"""Monotone piecewise-linear functions with jumps.

The whole library runs on one data structure: a nondecreasing, right
continuous, piecewise-linear function on a closed interval.  Quantile
functions, restricted CDFs and embedding profiles are all instances.

Representation: ``breaks`` is a strictly increasing array of length
m+1.  Segment k lives on the half-open cell ``[breaks[k], breaks[k+1])``
and runs linearly from the attained value ``yl[k]`` up to the left limit
``yr[k]``.  The value at the top break is ``yr[-1]`` by convention.
Jumps are encoded by ``yr[k] < yl[k+1]``; flat pieces have
``yl[k] == yr[k]`` bit for bit, so constants survive every round trip
exactly (interpolation multiplies by a zero slope instead of averaging).

All arithmetic that feeds exactness guarantees elsewhere (dyadic
corpora, involution identities) either shuffles existing floats or is
exact in binary; anything else is plain IEEE double work guarded to
stay monotone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotMonotone


def _as_float_array(x) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("expected a one-dimensional array")
    return a


@dataclass(frozen=True, eq=False)
class PLF:
    """One monotone piecewise-linear function; see the module docstring."""

    breaks: np.ndarray
    yl: np.ndarray
    yr: np.ndarray

    def __post_init__(self) -> None:
        breaks = _as_float_array(self.breaks)
        yl = _as_float_array(self.yl)
        yr = _as_float_array(self.yr)
        if len(breaks) != len(yl) + 1 or len(yl) != len(yr):
            raise ValueError("segment arrays do not match the break count")
        if len(yl) == 0:
            raise ValueError("a PLF needs at least one segment")
        for a in (breaks, yl, yr):
            if not np.all(np.isfinite(a)):
                raise ValueError("non-finite entry in a PLF array")
        if not np.all(np.diff(breaks) > 0.0):
            raise NotMonotone("breakpoints must be strictly increasing")
        if np.any(yr < yl) or np.any(yl[1:] < yr[:-1]):
            raise NotMonotone("segment values must be nondecreasing")
        for name, a in (("breaks", breaks), ("yl", yl), ("yr", yr)):
            a = a.copy()
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    # ------------------------------------------------------------------
    # basic queries

    @property
    def num_segments(self) -> int:
        return len(self.yl)

    @property
    def support(self) -> tuple[float, float]:
        return float(self.breaks[0]), float(self.breaks[-1])

    @property
    def value_range(self) -> tuple[float, float]:
        return float(self.yl[0]), float(self.yr[-1])

    def equals(self, other: "PLF") -> bool:
        """Bitwise equality of the three arrays."""
        return (
            np.array_equal(self.breaks, other.breaks)
            and np.array_equal(self.yl, other.yl)
            and np.array_equal(self.yr, other.yr)
        )

    # ------------------------------------------------------------------
    # evaluation

    def _segment_index(self, y: np.ndarray, side: str) -> np.ndarray:
        k = np.searchsorted(self.breaks, y, side=side) - 1
        return np.clip(k, 0, self.num_segments - 1)

    def _interp(self, k: np.ndarray, y: np.ndarray) -> np.ndarray:
        w = self.breaks[k + 1] - self.breaks[k]
        v = self.yl[k] + (self.yr[k] - self.yl[k]) * ((y - self.breaks[k]) / w)
        # rounding may poke past a segment endpoint; pin it back
        return np.minimum(np.maximum(v, self.yl[k]), self.yr[k])

    def eval(self, y):
        """Right-continuous evaluation; the top break returns ``yr[-1]``."""
        arr = np.asarray(y, dtype=np.float64)
        lo, hi = self.breaks[0], self.breaks[-1]
        if np.any(arr < lo) or np.any(arr > hi):
            raise ValueError("evaluation point outside the domain")
        k = self._segment_index(arr, "right")
        v = self._interp(k, arr)
        v = np.where(arr == self.breaks[k], self.yl[k], v)
        v = np.where(arr == hi, self.yr[-1], v)
        return v if arr.ndim else float(v)

    def left_limit(self, y):
        """Limit from the left; at the bottom break returns ``yl[0]``."""
        arr = np.asarray(y, dtype=np.float64)
        lo, hi = self.breaks[0], self.breaks[-1]
        if np.any(arr < lo) or np.any(arr > hi):
            raise ValueError("evaluation point outside the domain")
        k = self._segment_index(arr, "left")
        v = self._interp(k, arr)
        v = np.where(arr == self.breaks[k + 1], self.yr[k], v)
        v = np.where(arr <= lo, self.yl[0], v)
        return v if arr.ndim else float(v)

    # ------------------------------------------------------------------
    # regridding

    def on_grid(self, grid: np.ndarray) -> "PLF":
        """Re-express on ``grid``, a strictly increasing superset of breaks.

        Inserted nodes get the interpolated value on both sides, computed
        by one shared expression, so the two sides agree bit for bit and
        refinement never introduces spurious jumps.
        """
        if len(grid) == len(self.breaks) and np.array_equal(grid, self.breaks):
            return self
        left = grid[:-1]
        right = grid[1:]
        k = self._segment_index(left, "right")
        nyl = self._interp(k, left)
        nyr = self._interp(k, right)
        nyl = np.where(left == self.breaks[k], self.yl[k], nyl)
        nyr = np.where(right == self.breaks[k + 1], self.yr[k], nyr)
        return PLF(grid, nyl, nyr)

    def refine(self, points) -> "PLF":
        pts = np.asarray(points, dtype=np.float64).ravel()
        if pts.size == 0:
            return self
        if np.any(pts < self.breaks[0]) or np.any(pts > self.breaks[-1]):
            raise ValueError("refinement point outside the domain")
        return self.on_grid(np.union1d(self.breaks, pts))

    def restrict(self, lo: float, hi: float) -> "PLF":
        """The same function viewed on the window [lo, hi]."""
        lo, hi = float(lo), float(hi)
        if not (self.breaks[0] <= lo < hi <= self.breaks[-1]):
            raise ValueError("window must sit inside the domain")
        h = self.refine(np.array([lo, hi]))
        i0 = int(np.searchsorted(h.breaks, lo, side="left"))
        i1 = int(np.searchsorted(h.breaks, hi, side="left"))
        return PLF(h.breaks[i0 : i1 + 1], h.yl[i0:i1], h.yr[i0:i1])

    # ------------------------------------------------------------------
    # algebra

    def map_values(self, scale: float, shift: float) -> "PLF":
        """Affine action on values; ``scale`` must be nonnegative."""
        if scale < 0:
            raise ValueError("negative scale would reverse monotonicity")
        return PLF(self.breaks, shift + scale * self.yl, shift + scale * self.yr)

    def map_levels(self, scale: float, shift: float) -> "PLF":
        """Affine action on the domain; ``scale`` must be positive."""
        if scale <= 0:
            raise ValueError("level scale must be positive")
        return PLF(shift + scale * self.breaks, self.yl, self.yr)

    # ------------------------------------------------------------------
    # min / max / clip

    def minimum(self, other) -> "PLF":
        f, g = _with_crossings(self, _coerce(other, self))
        return PLF(f.breaks, np.minimum(f.yl, g.yl), np.minimum(f.yr, g.yr))

    def maximum(self, other) -> "PLF":
        f, g = _with_crossings(self, _coerce(other, self))
        return PLF(f.breaks, np.maximum(f.yl, g.yl), np.maximum(f.yr, g.yr))

    # ------------------------------------------------------------------
    # integrals

    def _cell_areas(self) -> np.ndarray:
        w = np.diff(self.breaks)
        return w * ((self.yl + self.yr) * 0.5)

    def integral(self, lo: float | None = None, hi: float | None = None) -> float:
        """Exact trapezoid integral over [lo, hi] (default: whole domain).

        Flat cells contribute w * value with no averaging error, which is
        what the dyadic exactness guarantees elsewhere rely on.
        """
        b0, bm = self.support
        lo = b0 if lo is None else float(lo)
        hi = bm if hi is None else float(hi)
        if not (b0 <= lo <= hi <= bm):
            raise ValueError("integration window outside the domain")
        if lo == hi:
            return 0.0
        h = self.refine(np.array([lo, hi]))
        i0 = int(np.searchsorted(h.breaks, lo, side="left"))
        i1 = int(np.searchsorted(h.breaks, hi, side="left"))
        return float(np.sum(h._cell_areas()[i0:i1]))

    def prefix_integrals(self, points) -> np.ndarray:
        """Integral from the bottom break up to each point, vectorized."""
        t = np.asarray(points, dtype=np.float64)
        if np.any(t < self.breaks[0]) or np.any(t > self.breaks[-1]):
            raise ValueError("integration point outside the domain")
        cum = np.concatenate([[0.0], np.cumsum(self._cell_areas())])
        k = self._segment_index(t, "right")
        vt = self._interp(k, t)
        part = (t - self.breaks[k]) * ((self.yl[k] + vt) * 0.5)
        return cum[k] + part

    # ------------------------------------------------------------------
    # inversion

    def inverse(self) -> "PLF":
        """Generalized inverse under the supremum convention.

        g(v) = sup{t : f(t) <= v}.  Rising pieces swap their roles
        verbatim (no arithmetic, so inverting twice is a bitwise
        involution), flats turn into jumps, and jumps turn into flats
        sitting at the jump location.
        """
        if self.yl[0] == self.yr[-1]:
            raise ValueError("a constant function has a degenerate inverse")
        v_lo: list[float] = []
        v_hi: list[float] = []
        lv: list[float] = []
        rv: list[float] = []
        for k in range(self.num_segments):
            if self.yl[k] != self.yr[k]:
                v_lo.append(float(self.yl[k]))
                v_hi.append(float(self.yr[k]))
                lv.append(float(self.breaks[k]))
                rv.append(float(self.breaks[k + 1]))
            if k + 1 < self.num_segments and self.yr[k] < self.yl[k + 1]:
                v_lo.append(float(self.yr[k]))
                v_hi.append(float(self.yl[k + 1]))
                lv.append(float(self.breaks[k + 1]))
                rv.append(float(self.breaks[k + 1]))
        vb = v_lo + [v_hi[-1]]
        if any(a != b for a, b in zip(v_hi[:-1], v_lo[1:])):
            raise AssertionError("inverse pieces failed to tile the range")
        return PLF(np.array(vb), np.array(lv), np.array(rv))

    # ------------------------------------------------------------------
    # canonical form

    def canonical(self) -> "PLF":
        """Merge adjacent continuous collinear segments.

        Collinearity is decided by exact cross multiplication of the
        increments, so pieces produced by splitting one segment at an
        exactly representable point merge back.  Two mathematically
        distinct products can in principle round to the same double; the
        resulting glue moves the function by at most one ulp, far below
        every library tolerance, and the test is deterministic so equal
        inputs always canonicalize identically.
        """
        if self.num_segments == 1:
            return self
        w = np.diff(self.breaks)
        dy = self.yr - self.yl
        cont = self.yr[:-1] == self.yl[1:]
        collinear = dy[:-1] * w[1:] == dy[1:] * w[:-1]
        merge = cont & collinear
        if not merge.any():
            return self
        keep = np.concatenate([[True], ~merge])
        starts = np.flatnonzero(keep)
        ends = np.concatenate([starts[1:] - 1, [self.num_segments - 1]])
        nb = np.concatenate([self.breaks[starts], self.breaks[-1:]])
        return PLF(nb, self.yl[starts], self.yr[ends])


# ----------------------------------------------------------------------
# module-level constructors and binary operations


def const_plf(lo: float, hi: float, value: float) -> PLF:
    return PLF(np.array([lo, hi]), np.array([value]), np.array([value]))


def concat_plfs(pieces: list[PLF]) -> PLF:
    """Join PLFs with contiguous domains into one; seams must be monotone."""
    if not pieces:
        raise ValueError("nothing to concatenate")
    breaks = [pieces[0].breaks]
    for prev, nxt in zip(pieces, pieces[1:]):
        if prev.breaks[-1] != nxt.breaks[0]:
            raise ValueError("pieces do not tile the domain")
        breaks.append(nxt.breaks[1:])
    return PLF(
        np.concatenate(breaks),
        np.concatenate([p.yl for p in pieces]),
        np.concatenate([p.yr for p in pieces]),
    )


def common_grid(f: PLF, g: PLF) -> np.ndarray:
    if f.breaks[0] != g.breaks[0] or f.breaks[-1] != g.breaks[-1]:
        raise ValueError("functions live on different domains")
    if len(f.breaks) == len(g.breaks) and np.array_equal(f.breaks, g.breaks):
        return f.breaks
    return np.union1d(f.breaks, g.breaks)


def on_common_grid(f: PLF, g: PLF) -> tuple[PLF, PLF]:
    grid = common_grid(f, g)
    return f.on_grid(grid), g.on_grid(grid)


def _coerce(other, like: PLF) -> PLF:
    if isinstance(other, PLF):
        return other
    lo, hi = like.support
    return const_plf(lo, hi, float(other))


def _with_crossings(f: PLF, g: PLF) -> tuple[PLF, PLF]:
    """Common refinement with sign changes of f-g added as nodes.

    After this, f-g has one sign per cell, so pointwise min/max of the
    node arrays represents min/max of the functions (the crossing
    location itself carries at most one ulp of error).
    """
    F, G = on_common_grid(f, g)
    dl = F.yl - G.yl
    dr = F.yr - G.yr
    hit = (dl * dr) < 0.0
    if np.any(hit):
        a = F.breaks[:-1][hit]
        w = np.diff(F.breaks)[hit]
        tau = a + w * (dl[hit] / (dl[hit] - dr[hit]))
        grid = np.union1d(F.breaks, tau)
        F, G = f.on_grid(grid), g.on_grid(grid)
    return F, G


def plf_combine(fns: list[PLF], coeffs, shift: float = 0.0) -> PLF:
    """sum_i coeffs[i] * fns[i] + shift on the common grid.

    Nonnegative coefficients keep monotonicity automatically.  Signed
    combinations (geodesic extrapolation) can produce one-ulp decreases
    in exact-zero cells; those are flattened, anything larger raises.
    """
    if len(fns) != len(np.atleast_1d(coeffs)) or not fns:
        raise ValueError("need one coefficient per function")
    grid = fns[0].breaks
    for h in fns[1:]:
        if h.breaks[0] != grid[0] or h.breaks[-1] != grid[-1]:
            raise ValueError("functions live on different domains")
        grid = np.union1d(grid, h.breaks)
    coeffs = np.asarray(coeffs, dtype=np.float64)
    yl = np.full(len(grid) - 1, shift)
    yr = np.full(len(grid) - 1, shift)
    for c, h in zip(coeffs, fns):
        hh = h.on_grid(grid)
        yl = yl + c * hh.yl
        yr = yr + c * hh.yr
    if np.any(coeffs < 0.0):
        yl, yr = _repair_monotone(yl, yr)
    return PLF(grid, yl, yr)


def _repair_monotone(yl: np.ndarray, yr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nodes = np.empty(2 * len(yl))
    nodes[0::2] = yl
    nodes[1::2] = yr
    fixed = np.maximum.accumulate(nodes)
    slack = float(np.max(fixed - nodes))
    if slack > 1e-9 * max(1.0, float(np.max(np.abs(nodes)))):
        raise NotMonotone("combination is decreasing beyond rounding noise")
    return fixed[0::2], fixed[1::2]


def plf_splice(low: PLF, high: PLF, t: float) -> PLF:
    """``low`` strictly below level t, ``high`` from t on.

    Both inputs must share the full domain; the seam has to be
    nondecreasing (low's left limit at t at most high's value at t).
    """
    t = float(t)
    lo, hi = low.support
    if (lo, hi) != high.support:
        raise ValueError("functions live on different domains")
    if t <= lo:
        return high
    if t >= hi:
        return low
    if low.left_limit(t) > high.eval(t):
        raise NotMonotone("splice seam would decrease")
    a = low.restrict(lo, t)
    b = high.restrict(t, hi)
    return concat_plfs([a, b])


# ----------------------------------------------------------------------
# exact cells of |affine|^p


def _signed_pow_primitive(u: np.ndarray, p: float) -> np.ndarray:
    return np.sign(u) * np.abs(u) ** (p + 1.0) / (p + 1.0)


def abs_pow_cells(w, a, b, p: float) -> np.ndarray:
    """Exact integral of |l(t)|^p per cell, for l affine from a to b over
    width w.  Uses the closed-form divided difference of the signed power
    primitive; for a ~ b that difference cancels catastrophically, and the
    midpoint value (exact in the limit) takes over.
    """
    w = np.asarray(w, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    d = b - a
    steep = np.abs(d) > 1e-9 * np.maximum(np.abs(a), np.abs(b))
    safe = np.where(steep, d, 1.0)
    divided = (_signed_pow_primitive(b, p) - _signed_pow_primitive(a, p)) / safe
    flat = np.abs((a + b) * 0.5) ** p
    return w * np.where(steep, divided, flat)


def abs_pow_gap(f: PLF, g: PLF, p: float, lo: float | None = None, hi: float | None = None) -> float:
    """integral of |f - g|^p over [lo, hi], exact per cell."""
    F, G = on_common_grid(f, g)
    if lo is not None or hi is not None:
        b0, bm = F.support
        lo = b0 if lo is None else float(lo)
        hi = bm if hi is None else float(hi)
        if lo == hi:
            return 0.0
        F = F.restrict(lo, hi)
        G = G.restrict(lo, hi)
    w = np.diff(F.breaks)
    return float(np.sum(abs_pow_cells(w, F.yl - G.yl, F.yr - G.yr, p)))
