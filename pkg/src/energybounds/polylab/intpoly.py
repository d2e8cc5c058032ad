"""Exact arithmetic for integer polynomials.

Everything here is exact: resultants and discriminants go through the
Sylvester matrix with Bareiss fraction-free elimination, and the
squared-difference polynomial (roots (x_i - x_j)^2, i < j) is built from
integer resultant samples and exact interpolation.  Floating point never
enters any value returned by this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntPolynomial:
    """A univariate integer polynomial of degree >= 1, leading coefficient first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise ValueError(f"integer coefficient expected, got {c!r}")
        if coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        out = [1]
        for r in roots:
            out = _poly_mul(out, [1, -r])
        return cls(tuple(out))

    def __call__(self, x):
        acc = self.coeffs[0]
        for c in self.coeffs[1:]:
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(tuple(_poly_mul(list(self.coeffs), list(other.coeffs))))

    def to_line(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def parse_poly_line(line: str) -> IntPolynomial:
    """Parse one polynomial: integer coefficients leading-first, space or
    comma separated, e.g. ``1 -6 11 -6``."""
    tokens = line.replace(",", " ").split()
    if not tokens:
        raise ValueError("empty polynomial line")
    try:
        coeffs = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"malformed polynomial line {line!r}") from exc
    return IntPolynomial(coeffs)


def parse_poly_text(text: str) -> list[IntPolynomial]:
    """Parse a text block, one polynomial per line; '#' lines are comments."""
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(parse_poly_line(stripped))
    return out


# ---------------------------------------------------------------------------
# coefficient-list helpers (leading-first; [] is the zero polynomial)

def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_trim(a: list) -> list:
    i = 0
    while i < len(a) and a[i] == 0:
        i += 1
    return a[i:]


def _derive(a: Sequence) -> list:
    deg = len(a) - 1
    return [(deg - i) * c for i, c in enumerate(a[:-1])]


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division over the rationals; inputs any exact numbers, b nonzero."""
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    lead = Fraction(b[0])
    quot = []
    while len(rem) >= len(b):
        q = rem[0] / lead
        quot.append(q)
        if q != 0:
            for i in range(1, len(b)):
                rem[i] -= q * b[i]
        rem.pop(0)
    return _poly_trim(quot), _poly_trim(rem)


def _divmod_monic_int(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Exact integer division by a monic divisor (quotient and remainder)."""
    if b[0] != 1:
        raise ValueError("divisor must be monic")
    rem = list(a)
    quot = []
    while len(rem) >= len(b):
        q = rem[0]
        quot.append(q)
        for i in range(1, len(b)):
            rem[i] -= q * b[i]
        rem.pop(0)
    return quot, _poly_trim(rem)


def _to_primitive(a: Sequence[Fraction]) -> list[int]:
    """Scale by a positive rational to a primitive integer list (sign kept)."""
    a = _poly_trim(list(a))
    if not a:
        return []
    denom = math.lcm(*(Fraction(c).denominator for c in a))
    ints = [int(Fraction(c) * denom) for c in a]
    g = math.gcd(*(abs(c) for c in ints))
    return [c // g for c in ints]


def _primitive_int(a: Sequence[int]) -> list[int]:
    """Divide out the content of an integer list (sign kept)."""
    a = _poly_trim(list(a))
    if not a:
        return []
    g = math.gcd(*(abs(c) for c in a))
    return [c // g for c in a]


def _pseudo_rem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """lc(g)^(deg f - deg g + 1) * (f mod g), computed purely in integers.

    Each elimination step multiplies the running remainder by lc(g) before
    cancelling its lead, so no step ever needs a fraction.  The result is
    the true remainder scaled by a known power of lc(g).
    """
    rem = list(f)
    lg = g[0]
    while len(rem) >= len(g):
        lead = rem[0]
        rem = [lg * c for c in rem[1:]]
        for i in range(1, len(g)):
            rem[i - 1] -= lead * g[i]
    return _poly_trim(rem)


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive integer gcd (positive leading coefficient); [] for gcd(0,0).

    Euclid on primitive pseudo-remainders: dividing out the content after
    every step keeps coefficients small without leaving integer arithmetic.
    """
    fa = _primitive_int(a)
    fb = _primitive_int(b)
    while fb:
        r = _pseudo_rem(fa, fb)
        fa, fb = fb, _primitive_int(r)
    if fa and fa[0] < 0:
        fa = [-c for c in fa]
    return fa


def _shift(coeffs: Sequence[int], c: int) -> list[int]:
    """Coefficients of f(y + c), exactly (Horner with substituted variable)."""
    out = [coeffs[0]]
    for a in coeffs[1:]:
        out = _poly_mul(out, [1, c])
        out[-1] += a
    return out


# ---------------------------------------------------------------------------
# resultants and discriminants

def _bareiss_det(rows: list[list]) -> object:
    """Determinant by Bareiss fraction-free elimination.

    Exact for integers (all interior divisions are exact) and for Fractions.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    exact_int = all(isinstance(c, int) for r in m for c in r)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num // prev if exact_int else num / prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def resultant(f: Sequence, g: Sequence) -> object:
    """Res(f, g) via the Sylvester matrix; exact for int/Fraction inputs."""
    f = _poly_trim(list(f))
    g = _poly_trim(list(g))
    if not f or not g:
        raise ValueError("resultant of the zero polynomial is undefined")
    df, dg = len(f) - 1, len(g) - 1
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    size = df + dg
    rows = []
    for i in range(dg):
        rows.append([0] * i + f + [0] * (size - i - len(f)))
    for i in range(df):
        rows.append([0] * i + g + [0] * (size - i - len(g)))
    return _bareiss_det(rows)


def discriminant_monic(coeffs: Sequence) -> object:
    """Discriminant of a monic polynomial given leading-first coefficients.

    Delta = (-1)^(n(n-1)/2) * Res(f, f'); degree 1 has the empty product 1.
    Exact for int and Fraction coefficients.
    """
    coeffs = list(coeffs)
    if coeffs[0] != 1:
        raise ValueError("polynomial must be monic")
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return 1
    res = resultant(coeffs, _derive(coeffs))
    return (-1) ** (n * (n - 1) // 2) * res


def discriminant_exact(poly: IntPolynomial) -> int:
    """Exact integer discriminant prod_{i<j} (x_i - x_j)^2 of a monic poly."""
    return discriminant_monic(poly.coeffs)


# ---------------------------------------------------------------------------
# the squared-difference polynomial

def diffsq_poly(poly: IntPolynomial) -> tuple[IntPolynomial, bool]:
    """Monic integer polynomial with roots (x_i - x_j)^2 over pairs i < j.

    Res_y(f(y), f(y+z)) equals z^n * prod_{i<j} (z^2 - (x_i-x_j)^2); removing
    the z^n factor leaves an even polynomial, i.e. P(z^2) with P the target.
    P is recovered exactly from binom(n,2)+1 integer samples of z by
    interpolation.  The second return value reports whether P is squarefree,
    i.e. whether the squared differences are pairwise distinct.
    """
    if not poly.is_monic:
        raise ValueError("polynomial must be monic")
    n = poly.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    f = list(poly.coeffs)
    c = n * (n - 1) // 2
    points: list[int] = []
    values: list[int] = []
    for z in range(1, c + 2):
        res = resultant(f, _shift(f, z))
        q, rem = divmod(res, z**n)
        if rem:
            raise ArithmeticError("resultant lost its z^n factor; input not monic?")
        points.append(z * z)
        values.append(q)
    pcoeffs = _interpolate_int(points, values)
    if len(pcoeffs) != c + 1 or pcoeffs[0] != 1:
        raise ArithmeticError("interpolated difference polynomial is not monic")
    dpoly = IntPolynomial(tuple(pcoeffs))
    gcd = poly_gcd(pcoeffs, _derive(pcoeffs))
    return dpoly, len(gcd) - 1 == 0


def _interpolate_int(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Exact Lagrange interpolation through integer points; asserts the
    result has integer coefficients."""
    k = len(xs)
    master = [Fraction(1)]
    for x in xs:
        master = _poly_mul(master, [Fraction(1), Fraction(-x)])
    acc = [Fraction(0)] * k
    for j, (xj, yj) in enumerate(zip(xs, ys)):
        basis, rem = _poly_divmod(master, [Fraction(1), Fraction(-xj)])
        if rem:
            raise ArithmeticError("interpolation nodes are not distinct")
        den = Fraction(1)
        for i, xi in enumerate(xs):
            if i != j:
                den *= xj - xi
        scale = Fraction(yj) / den
        offset = k - len(basis)
        for idx, b in enumerate(basis):
            acc[idx + offset] += scale * b
    out = []
    for cf in _poly_trim(acc):
        if cf.denominator != 1:
            raise ArithmeticError("interpolation gave a non-integer coefficient")
        out.append(cf.numerator)
    return out
