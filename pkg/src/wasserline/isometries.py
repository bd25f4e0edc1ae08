"""The isometry and embedding catalogue.

Descriptors are small frozen dataclasses; ``apply`` turns one into an
actual map on measures, and ``verify_isometry`` measures how well it
preserves distances at a requested order p over random trials.

Scope is two-sided.  Domain scope is enforced by ``apply`` (a flip of a
real-line measure has no meaning and raises ScopeMismatch).  Order
scope is deliberately *not* enforced: every descriptor has the orders
at which it is a genuine isometry (``natural_orders``), but the
verifier will happily run Phi^q at p = 1 and report the honest failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LevelOutOfRange, QOutOfRange, ScopeMismatch
from .measures import (
    DiscreteMeasure,
    Domain,
    Measure,
    barycenter,
    flip,
    measure_from_json,
    measure_to_json,
    pushforward_affine,
)
from .metric import check_order, wasserstein_distance
from .plf import PLF, concat_plfs, const_plf, plf_combine
from .reports import VerificationReport, digest
from .sampling import random_discrete_measure, rng_for

Q_LIMIT = 30.0


def _check_q(q: float) -> float:
    q = float(q)
    if not np.isfinite(q) or abs(q) > Q_LIMIT:
        raise QOutOfRange(f"|q| <= {Q_LIMIT} required, got {q!r}")
    return q


# ----------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Trivial:
    """x -> orientation * x + offset."""

    orientation: int
    offset: float

    def __post_init__(self) -> None:
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


@dataclass(frozen=True)
class Flip:
    """Mass/position exchange on [0, 1]; an isometry for p = 1 only."""


@dataclass(frozen=True)
class Translation:
    """Quantile translation mu -> mu *translated by* nu: Q = Q_mu + Q_nu.

    An isometry of W_p(R) onto its image for every p; for a Dirac nu it
    is the ordinary shift.
    """

    nu: Measure

    def __post_init__(self) -> None:
        if self.nu.domain is not Domain.REAL_LINE:
            raise ScopeMismatch("translation directions live on the real line")


@dataclass(frozen=True)
class BarycentricReflection:
    """Reflect each measure through its own barycenter; fixes W_2(R)."""


@dataclass(frozen=True)
class Exotic:
    """The flow Phi^q on W_2(R): shear in the two-point chart coordinates
    (x, sigma, p) -> (x, sigma, p + q), extended to finite discrete
    measures by its closed form.  Not a rigid motion of the line."""

    q: float

    def __post_init__(self) -> None:
        _check_q(self.q)


@dataclass(frozen=True)
class Composition:
    """Apply ``items`` right to left, like function composition."""

    items: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ValueError("empty composition")


IsometryDescriptor = Trivial | Flip | Translation | BarycentricReflection | Exotic | Composition


# ----------------------------------------------------------------------
# scope bookkeeping

_BOTH = frozenset({Domain.REAL_LINE, Domain.UNIT_INTERVAL})


def _direct_domains(iso) -> frozenset:
    if isinstance(iso, Trivial):
        if iso.orientation == 1 and iso.offset == 0.0:
            return _BOTH
        if iso.orientation == -1 and iso.offset == 1.0:
            return _BOTH
        return frozenset({Domain.REAL_LINE})
    if isinstance(iso, Flip):
        return frozenset({Domain.UNIT_INTERVAL})
    if isinstance(iso, (Translation, BarycentricReflection, Exotic)):
        return frozenset({Domain.REAL_LINE})
    raise TypeError(f"unknown descriptor {type(iso).__name__}")


def _output_domain(iso, d: Domain) -> Domain:
    if isinstance(iso, (Trivial,)):
        return d
    if isinstance(iso, Flip):
        return Domain.UNIT_INTERVAL
    return Domain.REAL_LINE


def admissible_domains(iso) -> frozenset:
    """Input domains a measure may have for ``apply(iso, .)`` to succeed."""
    if not isinstance(iso, Composition):
        return _direct_domains(iso)
    ok = set()
    for start in _BOTH:
        d = start
        good = True
        for item in reversed(iso.items):
            doms = admissible_domains(item)
            if d not in doms:
                good = False
                break
            d = _chain_output(item, d)
        if good:
            ok.add(start)
    return frozenset(ok)


def _chain_output(item, d: Domain) -> Domain:
    if isinstance(item, Composition):
        for sub in reversed(item.items):
            d = _chain_output(sub, d)
        return d
    return _output_domain(item, d)


def natural_orders(iso):
    """Orders p at which the descriptor is an actual isometry.

    Returns ``None`` for "every p >= 1", otherwise a frozenset.  Purely
    informational; nothing gates on it.
    """
    if isinstance(iso, (Trivial, Translation)):
        return None
    if isinstance(iso, Flip):
        return frozenset({1.0})
    if isinstance(iso, (BarycentricReflection, Exotic)):
        return frozenset({2.0})
    if isinstance(iso, Composition):
        out = None
        for item in iso.items:
            cur = natural_orders(item)
            if cur is None:
                continue
            out = cur if out is None else out & cur
        return out
    raise TypeError(f"unknown descriptor {type(iso).__name__}")


# ----------------------------------------------------------------------
# application


def apply(iso, mu: Measure) -> Measure:
    if isinstance(iso, Trivial):
        return pushforward_affine(mu, iso.orientation, iso.offset)
    if isinstance(iso, Flip):
        if mu.domain is not Domain.UNIT_INTERVAL:
            raise ScopeMismatch("flip acts on unit-interval measures")
        return flip(mu)
    if isinstance(iso, Translation):
        if mu.domain is not Domain.REAL_LINE:
            raise ScopeMismatch("translation acts on real-line measures")
        q = plf_combine([mu.quantile, iso.nu.quantile], [1.0, 1.0])
        return Measure(Domain.REAL_LINE, q)
    if isinstance(iso, BarycentricReflection):
        if mu.domain is not Domain.REAL_LINE:
            raise ScopeMismatch("barycentric reflection acts on real-line measures")
        return pushforward_affine(mu, -1, 2.0 * barycenter(mu))
    if isinstance(iso, Exotic):
        if mu.domain is not Domain.REAL_LINE:
            raise ScopeMismatch("the exotic flow acts on real-line measures")
        if iso.q == 0.0:
            return mu
        if not mu.is_discrete:
            raise ScopeMismatch(
                "the exotic flow is implemented on finite discrete measures; "
                "use exotic_apply_grid for quantile profiles of general ones"
            )
        out = exotic_apply_discrete(DiscreteMeasure.from_measure(mu), iso.q)
        return out.to_measure(Domain.REAL_LINE)
    if isinstance(iso, Composition):
        for item in reversed(iso.items):
            mu = apply(item, mu)
        return mu
    raise TypeError(f"unknown descriptor {type(iso).__name__}")


# ----------------------------------------------------------------------
# the exotic flow


def h_q_eval(x, q: float):
    """The interval automorphism h_q(x) = x e^{2q} / (1 + (e^{2q}-1) x)."""
    q = _check_q(q)
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise LevelOutOfRange("h_q acts on the open interval (0, 1)")
    out = _h(arr, q)
    return out if arr.ndim else float(out)


def h_q_inverse(y, q: float):
    """h_q^{-1} = h_{-q}; the group law h_a . h_b = h_{a+b} makes this
    the only inverse."""
    return h_q_eval(y, -float(q))


def _h(x: np.ndarray, q: float) -> np.ndarray:
    # expm1 keeps small q stable; endpoints are pinned exactly
    out = x * np.exp(2.0 * q) / (1.0 + np.expm1(2.0 * q) * x)
    out = np.where(x == 0.0, 0.0, out)
    out = np.where(x == 1.0, 1.0, out)
    return np.minimum(np.maximum(out, 0.0), 1.0)


def exotic_apply_discrete(mu: DiscreteMeasure, q: float) -> DiscreteMeasure:
    """Closed form of Phi^q on a finite discrete measure.

    With atoms v_k, weights w_k, cumulative c_k and barycenter m:

        v'_k = (1 - e^q) m + e^q v_k + (e^q - e^{-q}) (S_{k-1} - v_k c_{k-1})
        c'_k = h_{-q}(c_k)

    where S_k = sum_{j<=k} v_j w_j.  The new positions are strictly
    increasing (consecutive gaps scale by e^q (1 - c) + e^{-q} c > 0),
    and on a two-atom measure this is exactly the chart shear
    (x, sigma, p) -> (x, sigma, p + q).
    """
    q = _check_q(q)
    if q == 0.0:
        return mu
    v = mu.positions
    w = mu.weights
    c = np.cumsum(w)
    c[-1] = 1.0
    c_prev = np.concatenate([[0.0], c[:-1]])
    s_prev = np.concatenate([[0.0], np.cumsum(v * w)[:-1]])
    m = float(np.sum(v * w))
    eq = float(np.exp(q))
    emq = float(np.exp(-q))
    v2 = (1.0 - eq) * m + eq * v + (eq - emq) * (s_prev - v * c_prev)
    c2 = _h(c, -q)
    c2[-1] = 1.0
    w2 = np.diff(np.concatenate([[0.0], c2]))
    return DiscreteMeasure(v2, w2)


def exotic_apply_grid(mu: Measure, q: float, grid_size: int) -> list[tuple[float, float]]:
    """Quantile profile of Phi^q(mu) sampled at cell midpoints.

    Works for any measure, discrete or not: the image quantile at level
    x is a closed form in Q_mu and its prefix integral at h_q(x).
    """
    q = _check_q(q)
    if mu.domain is not Domain.REAL_LINE:
        raise ScopeMismatch("the exotic flow acts on real-line measures")
    if int(grid_size) != grid_size or grid_size < 2:
        raise ValueError("grid_size must be an integer >= 2")
    grid_size = int(grid_size)
    x = (np.arange(grid_size) + 0.5) / grid_size
    s = _h(x, q)
    qv = mu.quantile.eval(s)
    pre = mu.quantile.prefix_integrals(s)
    m = mu.quantile.integral()
    eq = float(np.exp(q))
    emq = float(np.exp(-q))
    vals = (1.0 - eq) * m + (eq + (emq - eq) * s) * qv + (eq - emq) * pre
    return list(zip(x.tolist(), vals.tolist()))


# ----------------------------------------------------------------------
# the split embedding


@dataclass(frozen=True, eq=False)
class SplitEmbedding:
    """Isometric embedding of W_1(R) into itself that splits the support.

    The image CDF places the negative part of mu, compressed by 1/3,
    left of -1; the positive part right of +1; and an arbitrary fixed
    monotone profile E with values in [1/3, 2/3] on the middle band
    [-1, 1).  The middle band is the same for every mu, and the outer
    bands reproduce W_1 distances exactly because

        |min(u,0) - min(v,0)| + |max(u,0) - max(v,0)| = |u - v|.
    """

    profile: PLF

    def __post_init__(self) -> None:
        pr = self.profile
        if pr.breaks[0] != -1.0 or pr.breaks[-1] != 1.0:
            raise ValueError("the profile must live on [-1, 1]")
        lo, hi = pr.value_range
        if lo < 1.0 / 3.0 or hi > 2.0 / 3.0:
            raise ValueError("profile values must stay within [1/3, 2/3]")

    @classmethod
    def default(cls) -> "SplitEmbedding":
        return cls(PLF(np.array([-1.0, 1.0]), np.array([1.0 / 3.0]), np.array([2.0 / 3.0])))


_THIRD = 1.0 / 3.0
_TWO_THIRDS = 2.0 / 3.0


def split_embedding_apply(emb: SplitEmbedding, mu: Measure) -> Measure:
    if mu.domain is not Domain.REAL_LINE:
        raise ScopeMismatch("the split embedding acts on real-line measures")
    q = mu.quantile
    low = q.minimum(0.0)
    lowb = low.breaks / 3.0
    lowb = lowb.copy()
    lowb[0] = 0.0
    lowb[-1] = _THIRD
    low_piece = PLF(lowb, 3.0 * low.yl - 1.0, 3.0 * low.yr - 1.0)
    high = q.maximum(0.0)
    highb = (high.breaks + 2.0) / 3.0
    highb = highb.copy()
    highb[0] = _TWO_THIRDS
    highb[-1] = 1.0
    high_piece = PLF(highb, 3.0 * high.yl + 1.0, 3.0 * high.yr + 1.0)
    middle = _middle_band(emb)
    return Measure(Domain.REAL_LINE, concat_plfs([low_piece, middle, high_piece]))


def _middle_band(emb: SplitEmbedding) -> PLF:
    """Quantile restriction to [1/3, 2/3): the profile's sup-inverse with
    constant pads; independent of the embedded measure by construction."""
    pr = emb.profile
    lo, hi = pr.value_range
    if lo == hi:  # constant profile: the band splits at its single value
        pieces = []
        if lo > _THIRD:
            pieces.append(const_plf(_THIRD, lo, -1.0))
        if lo < _TWO_THIRDS:
            pieces.append(const_plf(lo, _TWO_THIRDS, 1.0))
        return concat_plfs(pieces)
    pieces = []
    if lo > _THIRD:
        pieces.append(const_plf(_THIRD, lo, -1.0))
    pieces.append(pr.inverse())
    if hi < _TWO_THIRDS:
        pieces.append(const_plf(hi, _TWO_THIRDS, 1.0))
    return concat_plfs(pieces)


# ----------------------------------------------------------------------
# verification


def verify_isometry(iso, p: float, trials: int = 200, seed: int = 0) -> VerificationReport:
    """Empirical distance preservation of ``apply(iso, .)`` at order p.

    Samples pairs of random discrete measures from an admissible input
    domain and compares d_p before and after.  The order is taken as
    given: running a p = 2 isometry at p = 1 is allowed and will fail
    honestly.  Only an unsatisfiable domain scope raises.
    """
    p = check_order(p)
    doms = admissible_domains(iso)
    if not doms:
        raise ScopeMismatch("no input domain can pass through this composition")
    dom = Domain.REAL_LINE if Domain.REAL_LINE in doms else Domain.UNIT_INTERVAL
    tol = 1e-9
    worst = 0.0
    details = []
    for trial in range(int(trials)):
        rng = rng_for(seed, trial)
        mu = random_discrete_measure(rng, dom)
        nu = random_discrete_measure(rng, dom)
        before = wasserstein_distance(mu, nu, p)
        after = wasserstein_distance(apply(iso, mu), apply(iso, nu), p)
        viol = abs(after - before)
        if viol > worst:
            worst = viol
        if len(details) < 50:
            key = digest(f"{trial}|{mu.atoms()}|{nu.atoms()}")
            details.append((key, viol))
    return VerificationReport(
        claim_id=f"isometry:{describe(iso)}@p={p:g}",
        trials=int(trials),
        max_violation=worst,
        tolerance=tol,
        passed=worst <= tol,
        details=tuple(details),
    )


# ----------------------------------------------------------------------
# descriptor serialization


def describe(iso) -> str:
    if isinstance(iso, Trivial):
        return f"trivial({iso.orientation:+d},{iso.offset:g})"
    if isinstance(iso, Flip):
        return "flip"
    if isinstance(iso, Translation):
        return "translation"
    if isinstance(iso, BarycentricReflection):
        return "barycentric_reflection"
    if isinstance(iso, Exotic):
        return f"exotic({iso.q:g})"
    if isinstance(iso, Composition):
        return "compose(" + ",".join(describe(i) for i in iso.items) + ")"
    raise TypeError(f"unknown descriptor {type(iso).__name__}")


def isometry_to_json(iso) -> dict:
    if isinstance(iso, Trivial):
        return {"kind": "trivial", "orientation": iso.orientation, "offset": iso.offset}
    if isinstance(iso, Flip):
        return {"kind": "flip"}
    if isinstance(iso, Translation):
        return {"kind": "translation", "nu": measure_to_json(iso.nu)}
    if isinstance(iso, BarycentricReflection):
        return {"kind": "barycentric_reflection"}
    if isinstance(iso, Exotic):
        return {"kind": "exotic", "q": iso.q}
    if isinstance(iso, Composition):
        return {"kind": "compose", "items": [isometry_to_json(i) for i in iso.items]}
    raise TypeError(f"unknown descriptor {type(iso).__name__}")


def isometry_from_json(data: dict):
    try:
        kind = data["kind"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed isometry object: {exc}") from exc
    if kind == "trivial":
        return Trivial(int(data["orientation"]), float(data["offset"]))
    if kind == "flip":
        return Flip()
    if kind == "translation":
        return Translation(measure_from_json(data["nu"]))
    if kind == "barycentric_reflection":
        return BarycentricReflection()
    if kind == "exotic":
        return Exotic(float(data["q"]))
    if kind == "compose":
        return Composition(tuple(isometry_from_json(i) for i in data["items"]))
    raise ValueError(f"unknown isometry kind {kind!r}")
