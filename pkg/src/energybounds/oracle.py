"""Theory-independent verification oracles.

Two mechanisms cross-check every closed-form bound:

* exhaustive enumeration of critical configurations — two-value splits,
  padded with zeros for the boundary strata — which is where constrained
  extrema of the energy must live;
* randomized projected gradient search on the constraint manifold, which
  knows nothing about the two-value structure.

Both are deterministic given their inputs (and seed).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .core import REL_TOL, PowerSumConstraints, TraceNormConstraints
from .rootfind import (
    Branch,
    branch_exists,
    solve_powersum_alpha,
    solve_trace_norm_alpha,
)

log = logging.getLogger(__name__)

#: Joint relative tolerance for constraint restoration in the search.
_PROJ_TOL = 1e-11


class ConfigKind(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class CriticalConfig:
    """A critical configuration: k copies of x, the rest y, plus ``zeros`` 0s."""

    k: int
    x: float
    y: float
    zeros: int
    E: float
    kind: ConfigKind

    def as_tuple(self, n: int) -> tuple[float, ...]:
        m = n - self.zeros
        return (self.x,) * self.k + (self.y,) * (m - self.k) + (0.0,) * self.zeros


class TwoValueExtrema(NamedTuple):
    candidates: tuple[CriticalConfig, ...]
    min: float
    max: float


class SearchExtrema(NamedTuple):
    min: float
    max: float
    failed: tuple[int, ...]


class TraceNormExtrema(NamedTuple):
    min: float
    max: float
    candidates: tuple[CriticalConfig, ...]
    search_min: float
    search_max: float
    failed: tuple[int, ...]


def extrema_two_value(ps: PowerSumConstraints) -> TwoValueExtrema:
    """All two-value critical configurations of E under ``ps``, with extremes.

    For each admissible number of zeros j (0..k*), the remaining m = n - j
    entries split into k at one value and m - k at another; the Lagrange
    conditions admit no other interior critical points.  Boundary strata are
    lifted by E = (n/m) E' + j S_1^2 / m.
    """
    n, r, s1 = ps.n, ps.r, ps.s1
    cands: list[CriticalConfig] = []
    for j in range(ps.k_star + 1):
        m = n - j
        kind = ConfigKind.INTERIOR if j == 0 else ConfigKind.BOUNDARY
        if m == 1:
            cands.append(
                CriticalConfig(1, s1, 0.0, j, (n - 1) * s1**2, ConfigKind.BOUNDARY)
            )
            continue
        ratio_m = ps.ratio_for(m)
        if ratio_m <= m * (1.0 + REL_TOL):
            if ratio_m >= m * (1.0 - REL_TOL):
                # the m remaining entries are forced equal (ntilde == m)
                e = _lift(0.0, j, n, m, s1)
                cands.append(CriticalConfig(m, s1 / m, 0.0, j, e, kind))
            continue
        for k in range(1, m):
            exists = branch_exists(m, k, r, ratio_m)
            for branch, present in (
                (Branch.NEGATIVE, exists.negative),
                (Branch.POSITIVE, exists.positive),
            ):
                if not present:
                    continue
                root = solve_powersum_alpha(m, k, r, ratio_m, branch)
                mk = m / k - 1.0
                x = s1 * (1.0 + root.alpha * mk) / m
                y = s1 * (1.0 - root.alpha) / m
                e = _lift(mk * root.alpha**2 * s1**2, j, n, m, s1)
                cands.append(CriticalConfig(k, x, y, j, e, kind))
    values = [c.E for c in cands]
    return TwoValueExtrema(tuple(cands), min(values), max(values))


def _lift(e_reduced: float, j: int, n: int, m: int, s1: float) -> float:
    """Energy of an m-point configuration after appending j = n - m zeros."""
    return n / m * e_reduced + j * s1**2 / m


def extrema_search(
    ps: PowerSumConstraints,
    restarts: int = 16,
    seed: int = 0,
    max_iters: int = 200,
) -> SearchExtrema:
    """Projected-gradient extremes of E on the closure {S_1, S_r, x >= 0}.

    ``restarts`` seeded starts run per direction (minimize and maximize),
    all rows advanced together in one vectorized loop.  Support sizes cycle
    deterministically through n, n-1, ..., ntilde_ceil so every admissible
    boundary stratum gets its own rows (when restarts >= k* + 1); a row
    never leaves its stratum — shrinking coordinates are floored at a
    fraction of their previous value, so interior optima with tiny entries
    are approached geometrically instead of being clipped to zero.  Each
    step follows the energy gradient with backtracking, then re-projects:
    a uniform shift of the support restores S_1, a 1-D rescale toward the
    mean restores S_r, alternating to joint relative tolerance 1e-11.
    Rows whose projection fails are excluded from the extremes and reported.
    """
    if not isinstance(restarts, int) or restarts < 1:
        raise ValueError("restarts must be a positive integer")
    n, r, s1, sr = ps.n, ps.r, ps.s1, ps.sr
    rows = 2 * restarts
    strata = n - ps.ntilde_ceil + 1
    X = np.zeros((rows, n))
    free = np.zeros((rows, n), dtype=bool)

    def seed_row(row: int, attempt: int) -> None:
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence([seed, row, attempt]))
        )
        size = n - (row % restarts) % strata
        support = np.arange(n) if size == n else rng.permutation(n)[:size]
        X[row] = 0.0
        free[row] = False
        vals = rng.random(support.size) + 0.05
        X[row, support] = vals / vals.sum() * s1
        free[row, support] = True

    for row in range(rows):
        seed_row(row, 0)
    # direction +1 minimizes E, -1 maximizes
    direction = np.where(np.arange(rows) < restarts, 1.0, -1.0)

    X, ok = _project_power(X, free, s1, sr, r)
    for attempt in range(1, 10):
        if ok.all():
            break
        for row in np.flatnonzero(~ok):
            seed_row(row, attempt)
        X, ok = _project_power(X, free, s1, sr, r)
    failed = ~ok
    energy = _row_energy(X, n)
    best = np.where(ok, direction * energy, np.inf)

    eta0 = 0.1 * s1 / n
    eta = np.full(rows, eta0)
    active = ok.copy()
    for _ in range(max_iters):
        if not active.any():
            break
        raw = 2.0 * (n * X - s1) * direction[:, None]
        grad = _tangent_step(raw, free, r * X ** (r - 1))
        norm = np.sqrt((grad**2).sum(axis=1))
        stalled = norm <= 1e-14 * s1
        active &= ~stalled
        step = np.where(norm > 0.0, eta / np.maximum(norm, 1e-300), 0.0)
        trial = np.where(free, X - step[:, None] * grad, X)
        # multiplicative floor: a coordinate shrinks by at most 1000x per
        # accepted step, so rows stay strictly inside their stratum
        np.maximum(trial, 1e-3 * X, out=trial)
        trial, proj_ok = _project_power(trial, free, s1, sr, r)
        phi = direction * _row_energy(trial, n)
        # the projection may pin a coordinate at zero; reject such trials so
        # the row keeps to its stratum (deeper strata have their own rows)
        alive = np.where(free, trial, 1.0).min(axis=1) > 0.0
        accept = active & proj_ok & alive & (phi < best)
        X = np.where(accept[:, None], trial, X)
        best = np.where(accept, phi, best)
        eta = np.where(accept, np.minimum(eta * 1.3, 8 * eta0), eta * 0.5)
        eta = np.where(active, eta, 0.0)
        active &= eta > 1e-9 * eta0
    if failed.any():
        log.info("projection failed for %d of %d rows", int(failed.sum()), rows)
    mins = best[: restarts][ok[: restarts]]
    maxs = -best[restarts:][ok[restarts:]]
    if mins.size == 0 or maxs.size == 0:
        raise ArithmeticError("all search restarts failed to project onto the manifold")
    return SearchExtrema(
        float(mins.min()), float(maxs.max()), tuple(np.flatnonzero(failed).tolist())
    )


def extrema_trace_norm(
    tn: TraceNormConstraints,
    restarts: int = 16,
    seed: int = 0,
    max_iters: int = 200,
) -> TraceNormExtrema:
    """Extremes of E on {sum x = ns, prod x = p, x > 0}.

    Critical configurations are two-valued (k copies of one value), giving
    E = (n/k - 1)(ns)^2 alpha^2 for each k and branch; a projected search
    with the product restored by 1-D rescale corroborates them.  Returns
    the combined extremes plus both ingredients.
    """
    n, s = tn.n, tn.s
    cands: list[CriticalConfig] = []
    if tn.all_equal:
        cands.append(CriticalConfig(n, s, 0.0, 0, 0.0, ConfigKind.INTERIOR))
    else:
        for k in range(1, n):
            for branch in (Branch.NEGATIVE, Branch.POSITIVE):
                root = solve_trace_norm_alpha(n, k, s, tn.p, branch)
                mk = n / k - 1.0
                x = s * (1.0 + root.alpha * mk)
                y = s * (1.0 - root.alpha)
                e = mk * root.alpha**2 * (n * s) ** 2
                cands.append(CriticalConfig(k, x, y, 0, e, ConfigKind.INTERIOR))
    values = [c.E for c in cands]
    smin, smax, failed = _search_trace_norm(tn, restarts, seed, max_iters)
    return TraceNormExtrema(
        min(min(values), smin),
        max(max(values), smax),
        tuple(cands),
        smin,
        smax,
        failed,
    )


def _search_trace_norm(
    tn: TraceNormConstraints, restarts: int, seed: int, max_iters: int
) -> tuple[float, float, tuple[int, ...]]:
    n, s = tn.n, tn.s
    s1 = n * s
    rows = 2 * restarts
    X = np.zeros((rows, n))
    for row in range(rows):
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, row])))
        vals = rng.random(n) + 0.05
        X[row] = vals / vals.sum() * s1
    direction = np.where(np.arange(rows) < restarts, 1.0, -1.0)

    X, ok = _project_prod(X, s1, tn.log_target + n * math.log(s))
    failed = ~ok
    best = np.where(ok, direction * _row_energy(X, n), np.inf)

    eta0 = 0.1 * s
    eta = np.full(rows, eta0)
    active = ok.copy()
    logp = tn.log_target + n * math.log(s)
    for _ in range(max_iters):
        if not active.any():
            break
        raw = 2.0 * (n * X - s1) * direction[:, None]
        grad = _tangent_step(raw, np.ones_like(X, dtype=bool), 1.0 / X)
        norm = np.sqrt((grad**2).sum(axis=1))
        stalled = norm <= 1e-14 * s1
        active &= ~stalled
        step = np.where(norm > 0.0, eta / np.maximum(norm, 1e-300), 0.0)
        trial = np.maximum(X - step[:, None] * grad, 1e-13 * s)
        trial, proj_ok = _project_prod(trial, s1, logp)
        phi = direction * _row_energy(trial, n)
        accept = active & proj_ok & (phi < best)
        X = np.where(accept[:, None], trial, X)
        best = np.where(accept, phi, best)
        eta = np.where(accept, np.minimum(eta * 1.3, 8 * eta0), eta * 0.5)
        eta = np.where(active, eta, 0.0)
        active &= eta > 1e-9 * eta0
    mins = best[: restarts][ok[: restarts]]
    maxs = -best[restarts:][ok[restarts:]]
    if mins.size == 0 or maxs.size == 0:
        raise ArithmeticError("all search restarts failed to project onto the manifold")
    return float(mins.min()), float(maxs.max()), tuple(np.flatnonzero(failed).tolist())


def _row_energy(X: np.ndarray, n: int) -> np.ndarray:
    centered = X - X.mean(axis=1, keepdims=True)
    return n * (centered**2).sum(axis=1)


def _tangent_step(grad: np.ndarray, mask: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Rowwise projection of ``grad`` onto {v: sum_mask v = 0, <v, w> = 0}.

    These are the tangent spaces of the constraint manifolds: the raw energy
    gradient is parallel to the rescale direction the projector uses, so
    stepping along it would be undone — only its tangent component moves.
    Rows where w is parallel to the ones vector (uniform rows) get 0.
    """
    a = mask.astype(float)
    g = np.where(mask, grad, 0.0)
    wm = np.where(mask, w, 0.0)
    aa = a.sum(axis=1)
    ab = wm.sum(axis=1)
    bb = (wm * wm).sum(axis=1)
    ga = g.sum(axis=1)
    gb = (g * wm).sum(axis=1)
    det = aa * bb - ab * ab
    degenerate = det <= 1e-14 * np.maximum(aa * bb, 1e-300)
    safe = np.where(degenerate, 1.0, det)
    alpha = (ga * bb - gb * ab) / safe
    beta = (aa * gb - ab * ga) / safe
    v = np.where(mask, g - alpha[:, None] * a - beta[:, None] * wm, 0.0)
    return np.where(degenerate[:, None], 0.0, v)


def _project_power(
    X: np.ndarray, free: np.ndarray, s1: float, sr: float, r: int, rounds: int = 25
) -> tuple[np.ndarray, np.ndarray]:
    """Restore S_1 (uniform shift) and S_r (1-D rescale), alternating.

    Absent clamping one round is exact: the rescale direction sums to zero,
    so it preserves S_1.  Extra rounds only repair clamp-induced drift.
    Returns the projected array and a per-row success mask.
    """
    rows = X.shape[0]
    ok = np.zeros(rows, dtype=bool)
    # work on a private copy of the support: a coordinate the rescale pins
    # at zero stays there, so the shift/scale alternation on the remaining
    # coordinates can land on the manifold exactly instead of oscillating
    live = free.copy()
    for _ in range(rounds):
        cnt = np.maximum(live.sum(axis=1), 1)
        cur = np.where(live, X, 0.0).sum(axis=1)
        X = np.where(live, X + ((s1 - cur) / cnt)[:, None], X)
        np.maximum(X, 0.0, out=X)
        mean = (s1 / cnt)[:, None]
        D = np.where(live, X - mean, 0.0)
        t = _scale_root_power(mean, D, live, sr, r)
        good = np.isfinite(t)
        scaled = np.maximum(mean + t[:, None] * D, 0.0)
        X = np.where(live & good[:, None], scaled, X)
        live &= ~(good[:, None] & (X <= 0.0))
        s1_err = np.abs(np.where(free, X, 0.0).sum(axis=1) - s1)
        sr_err = np.abs(np.where(free, X**r, 0.0).sum(axis=1) - sr)
        ok = (s1_err <= _PROJ_TOL * s1) & (sr_err <= _PROJ_TOL * sr)
        if ok.all():
            break
    return X, ok


def _scale_root_power(
    mean: np.ndarray, D: np.ndarray, free: np.ndarray, sr: float, r: int
) -> np.ndarray:
    """Solve sum_free max(mean + t D, 0)^r = sr for t >= 0, rowwise.

    At t = 0 the sum is S_1^r / cnt^(r-1) <= sr whenever the free count is
    at least the effective count; it grows without bound, so a bracketed
    root always exists then.  Rows with no root get NaN.
    """

    # zero the pinned coordinates up front: 0 + t*0 = 0 and 0^r = 0, so
    # they drop out of every evaluation without a mask in the loop
    base = np.where(free, mean, 0.0)
    dm = np.where(free, D, 0.0)

    def h(t: np.ndarray) -> np.ndarray:
        v = np.maximum(base + t[:, None] * dm, 0.0)
        return (v**r).sum(axis=1) - sr

    rows = D.shape[0]
    lo = np.zeros(rows)
    unsolvable = h(lo) > _PROJ_TOL * sr
    # one growing coordinate alone reaching sr bounds the root:
    # (mean + hi*Dmax)^r = sr, the other terms being nonnegative
    dmax = dm.max(axis=1)
    hi = np.where(
        dmax > 0.0,
        np.maximum((sr ** (1.0 / r) - mean[:, 0]) / np.maximum(dmax, 1e-300), 0.0),
        0.0,
    )
    for _ in range(10):
        mid = 0.5 * (lo + hi)
        high = h(mid) > 0.0
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    t = 0.5 * (lo + hi)
    for _ in range(8):
        v = np.maximum(base + t[:, None] * dm, 0.0)
        vr1 = v ** (r - 1)
        ht = (vr1 * v).sum(axis=1) - sr
        hp = r * (dm * vr1).sum(axis=1)
        lo = np.where(ht < 0.0, np.maximum(lo, t), lo)
        hi = np.where(ht > 0.0, np.minimum(hi, t), hi)
        tn = np.where(hp > 0.0, t - ht / np.where(hp > 0.0, hp, 1.0), t)
        # the root can sit exactly at a clip kink: clamp rather than reject,
        # so the polish is never abandoned at bisection resolution
        t = np.clip(tn, lo, hi)
    return np.where(unsolvable, np.nan, t)


def _project_prod(
    X: np.ndarray, s1: float, logp: float, rounds: int = 25
) -> tuple[np.ndarray, np.ndarray]:
    """Restore S_1 and the product (in log form) on strictly positive rows."""
    rows, n = X.shape
    ok = np.zeros(rows, dtype=bool)
    floor = 1e-13 * s1 / n
    for _ in range(rounds):
        cur = X.sum(axis=1)
        X = np.maximum(X + ((s1 - cur) / n)[:, None], floor)
        mean = s1 / n
        D = X - mean
        t = _scale_root_prod(mean, D, logp)
        good = np.isfinite(t)
        scaled = np.maximum(mean + t[:, None] * D, floor)
        X = np.where(good[:, None], scaled, X)
        s1_err = np.abs(X.sum(axis=1) - s1)
        logp_err = np.abs(np.log(X).sum(axis=1) - logp)
        ok = (s1_err <= _PROJ_TOL * s1) & (logp_err <= _PROJ_TOL * max(1.0, abs(logp)))
        if ok.all():
            break
    return X, ok


def _scale_root_prod(mean: float, D: np.ndarray, logp: float) -> np.ndarray:
    """Solve sum log(mean + t D) = log p for the root with t >= 0, rowwise.

    h(t) = sum log(mean + t D) - log p is concave with h(0) >= 0 (AM-GM) and
    h -> -inf as the smallest coordinate approaches 0, so the nonnegative
    root is unique and lies before the first zero crossing.
    """

    def h(t: np.ndarray) -> np.ndarray:
        return np.log(mean + t[:, None] * D).sum(axis=1) - logp

    rows = D.shape[0]
    with np.errstate(divide="ignore"):
        tcap = np.where(D < 0.0, mean / np.maximum(-D, 1e-300), np.inf).min(axis=1)
    lo = np.zeros(rows)
    unsolvable = h(lo) < -_PROJ_TOL * max(1.0, abs(logp))
    hi = np.where(np.isfinite(tcap), tcap * (1.0 - 1e-12), 0.0)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        low = h(mid) > 0.0
        lo = np.where(low, mid, lo)
        hi = np.where(low, hi, mid)
    t = 0.5 * (lo + hi)
    for _ in range(8):
        v = mean + t[:, None] * D
        ht = np.log(v).sum(axis=1) - logp
        lo = np.where(ht > 0.0, np.maximum(lo, t), lo)
        hi = np.where(ht < 0.0, np.minimum(hi, t), hi)
        hp = (D / v).sum(axis=1)
        tn = np.where(hp != 0.0, t - ht / np.where(hp != 0.0, hp, 1.0), t)
        t = np.clip(tn, lo, hi)
    return np.where(unsolvable, np.nan, t)
