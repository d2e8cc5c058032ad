"""Roots of the two-value critical-point equations.

A critical configuration splits n points into k copies of x and n-k copies
of y with k*x + (n-k)*y = S_1.  Writing m = n/k - 1 and parametrising

    x = S_1 (1 + alpha*m) / n,      y = S_1 (1 - alpha) / n,

the remaining constraint pins alpha inside (-k/(n-k), 1):

  * fixed product (trace/norm):  (1 + alpha*m)^k (1 - alpha)^(n-k) = p / s^n,
  * fixed power sum S_r:  k (1 + alpha*m)^r + (n-k)(1 - alpha)^r = n^r S_r / S_1^r.

Both right-hand sides admit at most one root on each side of alpha = 0; the
solvers below bracket the relevant side and polish with Newton.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

from .core import REL_TOL, FeasibilityError

#: Default relative residual target for the polished root.
RESIDUAL_TOL = 1e-10

#: Brackets stay this far inside the open interval of definition.
_EDGE = 1e-14

_MAX_ITER = 80


class Branch(Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"


class BranchMissingError(ValueError):
    """The requested sign branch has no root for these constraints."""

    def __init__(self, condition: str, message: str):
        self.condition = condition
        super().__init__(message)


@dataclass(frozen=True)
class AlphaRoot:
    """A solved branch parameter.

    ``residual`` is the defining function evaluated at ``alpha``;
    ``at_boundary`` marks roots pinned to an endpoint of the open interval
    (degenerate constraints), where the solver did not iterate.
    """

    alpha: float
    branch: Branch
    k: int
    residual: float
    iterations: int
    at_boundary: bool = False


class BranchDiagnostics(NamedTuple):
    """The two-value configuration in ratio form: x/y = t, x = t*y."""

    t: float
    m: float

    @classmethod
    def from_alpha(cls, alpha: float, n: int, k: int) -> "BranchDiagnostics":
        m = n / k - 1.0
        return cls((1.0 + alpha * m) / (1.0 - alpha), m)


class BranchExistence(NamedTuple):
    negative: bool
    positive: bool
    ntilde: float


def branch_exists(n: int, k: int, r: int, ratio: float, tol: float = REL_TOL) -> BranchExistence:
    """Which sign branches of the power-sum equation have a root.

    With ntilde defined by ntilde^(r-1) = n^(r-1) * n / ratio (the effective
    count of the scale-free constraints), the negative root exists iff
    k > n - ntilde and the positive root exists iff k < ntilde.  Values of k
    within ``tol`` of the threshold are reported as existing; the root then
    sits at an interval endpoint.
    """
    _check_nk(n, k)
    if not isinstance(r, int) or r < 3:
        raise ValueError("power sum order must be an integer >= 3")
    if ratio < n * (1.0 - tol) or ratio > float(n) ** r * (1.0 + tol):
        raise FeasibilityError(
            "n <= ratio <= n^r",
            f"scale-free ratio {ratio} outside [n, n^r] for n={n}, r={r}",
        )
    # ratio = n^r Sr / S1^r  =>  ntilde = n / ratio^(1/(r-1)) * n^... ; solve in logs.
    log_nt = (r * math.log(n) - math.log(max(ratio, n))) / (r - 1)
    nt = min(max(math.exp(log_nt), 1.0), float(n))
    neg = k > n - nt - tol * n
    pos = k < nt + tol * n
    return BranchExistence(neg, pos, nt)


def solve_trace_norm_alpha(
    n: int, k: int, s: float, p: float, branch: Branch, tol: float = RESIDUAL_TOL
) -> AlphaRoot:
    """Root of (1 + alpha*m)^k (1 - alpha)^(n-k) = p / s^n on the given branch.

    The left side equals 1 at alpha = 0 and tends to 0 at both ends of
    (-k/(n-k), 1), so for p < s^n there is exactly one root of each sign.
    Feasibility (p <= s^n) is rechecked here; p within relative tolerance of
    s^n degenerates to alpha = 0.
    """
    _check_nk(n, k)
    if not (s > 0.0 and p > 0.0):
        raise ValueError("s and p must be positive")
    log_target = math.log(p) - n * math.log(s)
    if log_target > REL_TOL:
        raise FeasibilityError(
            "p <= s^n", f"p={p} exceeds s^n for s={s}, n={n}"
        )
    m = n / k - 1.0
    if log_target >= -REL_TOL:
        return AlphaRoot(0.0, branch, k, _trace_norm_f(0.0, n, k, m, log_target), 0, True)

    def f(a: float) -> float:
        return _trace_norm_f(a, n, k, m, log_target)

    def fp(a: float) -> float:
        u, v = 1.0 + a * m, 1.0 - a
        return u ** (k - 1) * v ** (n - k - 1) * (k * m * v - (n - k) * u)

    if branch is Branch.NEGATIVE:
        lo = -k / (n - k) * (1.0 - _EDGE)
        hi = 0.0
    else:
        lo = 0.0
        hi = 1.0 - _EDGE
    alpha, res, iters = _bisect_newton(f, fp, lo, hi, tol * max(1.0, math.exp(log_target)))
    return AlphaRoot(alpha, branch, k, res, iters)


def _trace_norm_f(a: float, n: int, k: int, m: float, log_target: float) -> float:
    return (1.0 + a * m) ** k * (1.0 - a) ** (n - k) - math.exp(log_target)


def solve_powersum_alpha(
    n: int, k: int, r: int, ratio: float, branch: Branch, tol: float = RESIDUAL_TOL
) -> AlphaRoot:
    """Root of g(alpha) = k(1+alpha*m)^r + (n-k)(1-alpha)^r - ratio on a branch.

    g decreases strictly on (-k/(n-k), 0) and increases strictly on (0, 1),
    with g(0) = n - ratio < 0 away from the all-equal case, so each branch
    holds at most one root; existence is exactly the branch condition of
    :func:`branch_exists`.  A missing branch raises
    :class:`BranchMissingError`; a threshold case (k at the existence
    boundary within relative 1e-9) returns the interval endpoint flagged
    ``at_boundary``.
    """
    exists = branch_exists(n, k, r, ratio)
    m = n / k - 1.0
    if abs(ratio - n) <= REL_TOL * n:
        return AlphaRoot(0.0, branch, k, _powersum_g(0.0, n, k, r, m, ratio), 0, True)

    def g(a: float) -> float:
        return _powersum_g(a, n, k, r, m, ratio)

    def gp(a: float) -> float:
        return (n - k) * r * ((1.0 + a * m) ** (r - 1) - (1.0 - a) ** (r - 1))

    if branch is Branch.NEGATIVE:
        if not exists.negative:
            raise BranchMissingError(
                "k > n - ntilde",
                f"negative branch needs k > n - ntilde = {n - exists.ntilde:.12g}, got k={k}",
            )
        lo = -k / (n - k) * (1.0 - _EDGE)
        if g(lo) <= 0.0:  # threshold case: root pinned at the left endpoint
            return AlphaRoot(lo, branch, k, g(lo), 0, True)
        alpha, res, iters = _bisect_newton(g, gp, lo, 0.0, tol * max(1.0, ratio))
    else:
        if not exists.positive:
            raise BranchMissingError(
                "k < ntilde",
                f"positive branch needs k < ntilde = {exists.ntilde:.12g}, got k={k}",
            )
        hi = 1.0
        if g(hi) <= 0.0:  # ratio at its maximum n^r and k = 1: root at alpha = 1
            return AlphaRoot(hi, branch, k, g(hi), 0, True)
        alpha, res, iters = _bisect_newton(g, gp, 0.0, hi, tol * max(1.0, ratio))
    return AlphaRoot(alpha, branch, k, res, iters)


def _powersum_g(a: float, n: int, k: int, r: int, m: float, ratio: float) -> float:
    return k * (1.0 + a * m) ** r + (n - k) * (1.0 - a) ** r - ratio


def _check_nk(n: int, k: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not isinstance(k, int) or not 1 <= k <= n - 1:
        raise ValueError(f"k must be an integer in [1, n-1], got {k}")


def _bisect_newton(
    f: Callable[[float], float],
    fp: Callable[[float], float],
    lo: float,
    hi: float,
    ftol: float,
) -> tuple[float, float, int]:
    """Hybrid bracketed solver: bisect to width 1e-6, then Newton with the
    bracket as a safeguard.  Returns (root, residual, iterations).

    Assumes f(lo) and f(hi) have opposite (or zero) signs.  Newton steps that
    leave the bracket fall back to bisection, so convergence is guaranteed;
    iteration stops when the residual target is met and the step has
    collapsed, or after 80 evaluations.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, 0.0, 0
    if fhi == 0.0:
        return hi, 0.0, 0
    if flo * fhi > 0.0:
        raise ArithmeticError(
            f"root not bracketed: f({lo})={flo}, f({hi})={fhi}"
        )
    iters = 0
    while hi - lo > 1e-6 and iters < _MAX_ITER:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        iters += 1
        if fmid == 0.0:
            return mid, 0.0, iters
        if flo * fmid < 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    x = 0.5 * (lo + hi)
    fx = f(x)
    iters += 1
    if fx == 0.0:
        return x, 0.0, iters
    # fold the midpoint into the bracket, so the Newton safeguard below
    # always has a fresh point to bisect to (never the current iterate)
    if flo * fx < 0.0:
        hi, fhi = x, fx
    else:
        lo, flo = x, fx
    while iters < _MAX_ITER:
        d = fp(x)
        if d != 0.0:
            step = fx / d
            x_new = x - step
        else:
            x_new = math.nan
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)  # safeguard: fall back to bisection
        if x_new == x:
            break
        fx_new = f(x_new)
        iters += 1
        if fx_new == 0.0:
            return x_new, 0.0, iters
        if flo * fx_new < 0.0:
            hi, fhi = x_new, fx_new
        else:
            lo, flo = x_new, fx_new
        converged = abs(fx_new) <= ftol and abs(x_new - x) <= 4.0 * math.ulp(max(abs(x_new), 1.0))
        x, fx = x_new, fx_new
        if converged:
            break
    return x, fx, iters
