"""Closed-form invariants and series-level correspondences.

Covers the closed formulas for maximal-tangency genus-zero counts on the
weighted projective pairs and on local P^1, the Kronecker-quiver numerical
DT formula, multi-cover inversion between Omega and Omega-bar, genus-zero
GV extraction, the log/local conversion factors, the degenerate-hypersurface
contribution C_ord and its partition-sum companion, plus the golden fixture
table for the plane-cubic pairs.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .algebra import LaurentPoly, RationalFunc
from .combinat import binomial, divisors, moebius
from .errors import DomainError, FixturesMissing, IndexGap

FIXTURES_ENV = "WALLCROSS_FIXTURES"


@dataclass(frozen=True)
class PairParams:
    """Degree-d curves on the weight-r pair; m = r + 2 arrows, tangency d(r+2)."""

    r: int
    d: int

    def __post_init__(self):
        if self.r < 1:
            raise DomainError(
                f"r = {self.r} is outside this module's range (r >= 1); "
                "r = 0 and r = -1 are handled by the scattering pipeline")
        if self.d < 1:
            raise DomainError(f"degree must be positive, got {self.d}")

    @property
    def m(self) -> int:
        return self.r + 2

    @property
    def tangency(self) -> int:
        return self.d * (self.r + 2)


@dataclass(frozen=True)
class BpsRecord:
    """One degree's worth of BPS data: multi-cover package, refined invariant, GV list."""

    degree: int
    omega_bar: RationalFunc
    omega: LaurentPoly
    gv: tuple[int, ...]

    def validate(self) -> None:
        if not self.omega.is_palindromic():
            raise ValueError(f"omega at degree {self.degree} is not palindromic")
        for k, c in self.omega.items():
            if c.denominator != 1:
                raise ValueError(
                    f"omega at degree {self.degree} has non-integer coefficient at t^{k}")


# ---------------------------------------------------------------------------
# Closed formulas


def gw_selfnodal(r: int, d: int) -> Fraction:
    """Genus-zero maximal-tangency count of the degree-d class on the weight-r pair.

    Equals (r+2)/d^2 * C((r+1)^2 d - 1, d - 1).
    """
    PairParams(r, d)
    return Fraction(r + 2, d * d) * binomial((r + 1) ** 2 * d - 1, d - 1)


def gw_local_p1(r: int, d: int) -> Fraction:
    """Degree-d equivariant count on the total space of O(r) + O(-r-2) over P^1.

    Equals (-1)^(rd-1)/d^3 * C((r+1)^2 d - 1, d - 1), and satisfies
    gw_selfnodal(r, d) = (-1)^(d(r+2)+1) d(r+2) gw_local_p1(r, d).
    """
    PairParams(r, d)
    sign = 1 if (r * d) % 2 == 1 else -1
    return Fraction(sign * binomial((r + 1) ** 2 * d - 1, d - 1), d**3)


def dt_kronecker_numeric(m: int, d: int) -> Fraction:
    """Numerical DT invariant of the m-arrow Kronecker quiver at dimension (d, d).

    Moebius sum (1/(r d^2)) sum_{l | d} mu(d/l) (-1)^(m l + 1) C((m-1)^2 l - 1, l)
    with r = m - 2.  Needs m >= 3 (the formula divides by r); for m <= 2 use
    the scattering pipeline instead.
    """
    if m <= 2:
        raise DomainError(
            f"m = {m}: the Moebius-sum formula divides by m - 2; "
            "use the scattering pipeline for m <= 2")
    if d < 1:
        raise DomainError(f"dimension must be positive, got {d}")
    r = m - 2
    total = 0
    for l in divisors(d):
        sign = -1 if (m * l) % 2 == 0 else 1
        total += moebius(d // l) * sign * binomial((m - 1) ** 2 * l - 1, l)
    return Fraction(total, r * d * d)


def binomial_identity_check(r: int, d: int) -> bool:
    """Evaluate C((r+1)^2 d - 1, d) == r(r+2) C((r+1)^2 d - 1, d - 1) on both sides."""
    PairParams(r, d)
    n = (r + 1) ** 2 * d - 1
    return binomial(n, d) == r * (r + 2) * binomial(n, d - 1)


# ---------------------------------------------------------------------------
# Conversion factors


def log_local_factor(d_beta: int) -> int:
    """Sign/multiplicity factor (-1)^(D.beta + 1) * D.beta for exceptional-divisor pairs."""
    if d_beta < 1:
        raise DomainError(f"tangency order must be positive, got {d_beta}")
    return d_beta if d_beta % 2 == 1 else -d_beta


def nef_local_factor(d_beta: int, e_beta: int) -> int:
    """Factor (-1)^((D+E).beta) * (D.beta)(E.beta) for nef two-divisor pairs."""
    if d_beta < 1 or e_beta < 1:
        raise DomainError("both intersection numbers must be positive")
    sign = 1 if (d_beta + e_beta) % 2 == 0 else -1
    return sign * d_beta * e_beta


def loglocal_prefactor_series(d_beta: int, cutoff: int) -> LaurentPoly:
    """Expansion of (-1)^(D.beta - 1) / (t^(D.beta) - t^(-D.beta)) with t = e^(v/2).

    Returned as a Laurent polynomial in v, truncated at exponent <= cutoff.
    The expansion starts at v^(-1) and only odd powers of v occur, since
    1/sinh is odd.  Coefficients are exact rationals.
    """
    if d_beta < 1:
        raise DomainError(f"tangency order must be positive, got {d_beta}")
    if cutoff < -1:
        raise ValueError("cutoff must be at least -1")
    a = d_beta
    # 2*sinh(a v / 2) = a*v*h(v) with h even; invert h as a power series.
    length = cutoff + 3
    h = [Fraction(0)] * length
    for j in range(0, (length - 1) // 2 + 1):
        if 2 * j < length:
            h[2 * j] = Fraction(a ** (2 * j), 4**j * factorial(2 * j + 1))
    hinv = [Fraction(0)] * length
    hinv[0] = Fraction(1)
    for n in range(1, length):
        acc = Fraction(0)
        for i in range(1, n + 1):
            if h[i]:
                acc += h[i] * hinv[n - i]
        hinv[n] = -acc
    sign = 1 if a % 2 == 1 else -1
    coeffs = {2 * j - 1: sign * hinv[2 * j] / a
              for j in range(0, length // 2 + 1)
              if 2 * j < length and 2 * j - 1 <= cutoff and hinv[2 * j]}
    return LaurentPoly(coeffs)


# ---------------------------------------------------------------------------
# Multi-cover inversion and GV extraction


def _by_degree(values: Sequence | Mapping[int, object], what: str) -> list:
    """Normalise degree-indexed input (sequence: d = 1 first) to a plain list."""
    if isinstance(values, Mapping):
        keys = sorted(values)
        if keys != list(range(1, len(keys) + 1)):
            raise IndexGap(f"{what} must be indexed by 1..N without gaps, got keys {keys}")
        return [values[d] for d in keys]
    return list(values)


def _cover_kernel(l: int) -> RationalFunc:
    """(1/l) (q^(1/2)-q^(-1/2)) / (q^(l/2)-q^(-l/2)) on the t-grid."""
    return RationalFunc(LaurentPoly({1: 1, -1: -1}),
                        LaurentPoly({l: l, -l: -l}))


def multicover_bar_from_omega(omega) -> list[RationalFunc]:
    """Package refined invariants into their multi-cover sums.

    bar_d = sum over l | d of (1/l) (t - t^-1)/(t^l - t^-l) * omega_{d/l}(t^l).
    """
    om = _by_degree(omega, "omega")
    bar: list[RationalFunc] = []
    for d in range(1, len(om) + 1):
        acc = RationalFunc.zero()
        for l in divisors(d):
            inner = om[d // l - 1]
            if isinstance(inner, RationalFunc):
                inner = inner.as_laurent()
            acc = acc + _cover_kernel(l) * RationalFunc(inner.substitute_power(l))
        bar.append(acc)
    return bar


def multicover_omega_from_bar(bar) -> list[LaurentPoly]:
    """Triangular inverse of :func:`multicover_bar_from_omega`.

    Raises ValueError if the recursion does not clear denominators, which
    signals input outside the Laurent-polynomial regime.
    """
    bars = [_to_rf(b) for b in _by_degree(bar, "omega_bar")]
    omega: list[LaurentPoly] = []
    for d in range(1, len(bars) + 1):
        acc = bars[d - 1]
        for l in divisors(d):
            if l == 1:
                continue
            acc = acc - _cover_kernel(l) * RationalFunc(
                omega[d // l - 1].substitute_power(l))
        if not acc.is_laurent:
            raise ValueError(
                f"multi-cover inversion at degree {d} is not a Laurent polynomial: {acc}")
        omega.append(acc.as_laurent())
    return omega


def _to_rf(x) -> RationalFunc:
    if isinstance(x, RationalFunc):
        return x
    return RationalFunc(x)


def gv_from_gw_genus0(gw) -> list[Fraction]:
    """Triangular solve of GW_d = sum_{k | d} n_{d/k} / k^3 for the n's."""
    values = [Fraction(x) for x in _by_degree(gw, "gw")]
    n: list[Fraction] = []
    for d in range(1, len(values) + 1):
        acc = values[d - 1]
        for k in divisors(d):
            if k == 1:
                continue
            acc -= Fraction(n[d // k - 1], k**3)
        n.append(acc)
    return n


def gw_from_gv_genus0(gv) -> list[Fraction]:
    """Multiple-cover sum GW_d = sum_{k | d} n_{d/k} / k^3."""
    values = [Fraction(x) for x in _by_degree(gv, "gv")]
    gw: list[Fraction] = []
    for d in range(1, len(values) + 1):
        acc = Fraction(0)
        for k in divisors(d):
            acc += Fraction(values[d // k - 1], k**3)
        gw.append(acc)
    return gw


# ---------------------------------------------------------------------------
# Degenerate-hypersurface contributions (r = 1)


def c_ord(d: int) -> Fraction:
    """Ordinary multiple-cover contribution (1/d^2) C(4d - 1, d) of a coordinate line."""
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    return Fraction(binomial(4 * d - 1, d), d * d)


def partition_sum_lhs(d: int) -> Fraction:
    """Partition sum equal to c_ord(d) and to gw_selfnodal(1, d).

    sum over partitions (d_1 >= ... >= d_l) of d of
    2^(l-1) d^(l-2) / #Aut * prod_i (-1)^(d_i - 1) C(3 d_i, d_i) / d_i.

    Enumerates partitions by blocks of equal parts, threading the running
    numerator/denominator products through the recursion; p(50) = 204226
    summands stay well inside the acceptance budget this way.
    """
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    c3 = [0] * (d + 1)
    for i in range(1, d + 1):
        c3[i] = binomial(3 * i, i)
    total = Fraction(0)

    def descend(remaining: int, max_val: int, length: int, num: int, den: int) -> None:
        nonlocal total
        for p in range(min(max_val, remaining), 0, -1):
            base = c3[p] if p % 2 == 1 else -c3[p]
            block_num = num
            fact = 1
            power = 1
            for count in range(1, remaining // p + 1):
                block_num *= base
                fact *= count
                power *= p
                rest = remaining - count * p
                block_den = den * fact * power
                if rest == 0:
                    l = length + count
                    total += Fraction(2 ** (l - 1) * d**l * block_num,
                                      block_den * d * d)
                else:
                    descend(rest, p - 1, length + count, block_num, block_den)

    descend(d, d, 0, 1, 1)
    return total


# ---------------------------------------------------------------------------
# Golden fixtures: the plane-cubic table (nodal column computable, smooth
# column shipped read-only and never computed here)


def default_fixtures_path() -> str:
    """Packaged copy of fixtures/p2_table.csv."""
    return os.path.join(os.path.dirname(__file__), "fixtures", "p2_table.csv")


def resolve_fixtures_path(path: str | None = None) -> str:
    """Resolve the fixtures file: explicit path, then $WALLCROSS_FIXTURES, then packaged."""
    candidate = path or os.environ.get(FIXTURES_ENV) or default_fixtures_path()
    if os.path.isdir(candidate):
        candidate = os.path.join(candidate, "p2_table.csv")
    return candidate


def load_p2_table(path: str | None = None) -> list[tuple[int, Fraction, Fraction]]:
    """Load the (d, nodal, smooth) golden rows; raises FixturesMissing if absent."""
    candidate = resolve_fixtures_path(path)
    if not os.path.exists(candidate):
        raise FixturesMissing(f"fixtures file not found: {candidate}")
    rows: list[tuple[int, Fraction, Fraction]] = []
    with open(candidate, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = {"d", "gw_nodal", "gw_smooth"}
        if reader.fieldnames is None or set(reader.fieldnames) != expected:
            raise FixturesMissing(
                f"fixtures file {candidate} must have header d,gw_nodal,gw_smooth")
        for row in reader:
            rows.append((int(row["d"]), Fraction(row["gw_nodal"]), Fraction(row["gw_smooth"])))
    rows.sort(key=lambda r: r[0])
    return rows
