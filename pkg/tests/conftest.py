"""Shared samplers for random but feasible constraint sets."""

import math

import numpy as np

from energybounds import PowerSumConstraints, TraceNormConstraints


def random_power_sum(rng: np.random.Generator, n: int, r: int, *, margin: float = 0.02
                     ) -> PowerSumConstraints:
    """A feasible (S1, Sr) pair drawn log-uniformly inside the open interval.

    The feasible Sr range at fixed S1 is [S1^r / n^(r-1), S1^r]; ``margin``
    keeps the draw away from both degenerate ends (all-equal and one-point).
    """
    s1 = float(rng.uniform(0.5, 10.0))
    lo = r * math.log(s1) - (r - 1) * math.log(n)
    hi = r * math.log(s1)
    u = float(rng.uniform(margin, 1.0 - margin))
    sr = math.exp(lo + u * (hi - lo))
    return PowerSumConstraints(n=n, r=r, s1=s1, sr=sr)


def random_trace_norm(rng: np.random.Generator, n: int, *, margin: float = 0.02
                      ) -> TraceNormConstraints:
    """A feasible (s, p) pair with p log-uniform in (eps, s^n)."""
    s = float(rng.uniform(0.5, 5.0))
    log_cap = n * math.log(s)
    u = float(rng.uniform(margin, 1.0 - margin))
    # keep log(p/s^n) within a few units so configurations are not absurdly skewed
    spread = min(4.0, abs(log_cap) + 4.0)
    p = math.exp(log_cap - u * spread)
    return TraceNormConstraints(n=n, s=s, p=p)
