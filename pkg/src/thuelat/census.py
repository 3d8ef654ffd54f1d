"""Distribution of short primitive vectors over all sublattices of fixed
determinant: the experimental side of the short-minimum rarity bound.

All threshold comparisons are exact: for a rational delta = a/b the condition
||v|| <= m^(1/2 - delta) becomes the integer comparison
(norm^2)^b * m^(2a) <= m^b, so no row can be corrupted by float rounding.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import BudgetError, InputError
from .intervals import PI_LO, PI_HI
from . import lattices as lat_mod


@dataclass(frozen=True)
class CensusRow:
    m: int
    delta: Fraction
    total: int
    short_count: int
    minkowski_violations: int

    @property
    def threshold(self):
        return float(self.m) ** (0.5 - float(self.delta))

    @property
    def proportion(self):
        return self.short_count / self.total

    @property
    def bound(self):
        return 4 * math.pi * float(self.m) ** (-2 * float(self.delta))

    def bound_holds(self):
        """Certified check of proportion <= 4*pi*m^(-2*delta)."""
        a, b = self.delta.numerator, self.delta.denominator
        lhs = self.short_count**b * self.m ** (2 * a)
        lo = Fraction(4 * self.total) ** b * PI_LO**b
        if lhs <= lo:
            return True
        hi = Fraction(4 * self.total) ** b * PI_HI**b
        if lhs > hi:
            return False
        raise InputError("pi bounds too coarse for the census comparison")


def max_short_norm_sq(m, delta):
    """Largest integer norm-square within the threshold m^(1/2-delta)."""
    a, b = delta.numerator, delta.denominator
    if m == 1:
        return 1
    if b <= 2 * a:
        return 1 if b == 2 * a else 0
    root, _ = sympy.integer_nthroot(m ** (b - 2 * a), b)
    return int(root)


def _unique_cover_certified(m, nsq):
    """True when det m > (pi/2) * nsq certifiably (unique covering lattice)."""
    return PI_HI.numerator * nsq < 2 * m * PI_HI.denominator


def census_point(m, delta, method="lattice", cross_check=False, shard=None, budget=10**9):
    """One census row: how many of the sigma(m) sublattices of determinant m
    contain a primitive vector no longer than m^(1/2-delta).

    method "lattice" reduces every sublattice; method "points" maps each
    short primitive point to its unique covering lattice (valid when
    m > (pi/2) * threshold^2).  cross_check runs both and requires equality.
    """
    if m < 1 or delta <= 0:
        raise InputError("need m >= 1 and delta > 0")
    delta = Fraction(delta)
    total = lat_mod.sigma(m)
    if total > budget:
        raise BudgetError(f"sigma({m}) exceeds the census budget")
    nsq_max = max_short_norm_sq(m, delta)

    row = None
    if method in ("lattice", "auto") or cross_check:
        row = _census_by_lattices(m, delta, total, nsq_max, shard)
    if method == "points" or cross_check:
        count, valid = _census_by_points(m, nsq_max)
        if not valid:
            if method == "points":
                raise InputError("point-side census needs m > (pi/2) * threshold^2")
        elif row is not None:
            if shard is None and count != row.short_count:
                raise AssertionError(
                    f"census methods disagree at m={m}: {row.short_count} vs {count}"
                )
        if row is None:
            row = CensusRow(m, delta, total, count, 0)
    return row


def _census_by_lattices(m, delta, total, nsq_max, shard):
    # With threshold^2 < 2m/pi any vector inside the threshold is a multiple
    # of the minimal one, so shortness reduces to lambda1 plus primitivity.
    fast = _unique_cover_certified(m, nsq_max)
    minkowski_floor = _minkowski_floor(m)
    short = 0
    violations = 0
    divs = lat_mod.divisors(m)
    if shard is not None:
        divs = divs[shard[0] :: shard[1]]
    gcd = math.gcd
    for a in divs:
        c = m // a
        for b in range(a):
            ux, uy, wx, wy, n1, n2 = lat_mod._gauss_reduce(a, 0, b, c)
            if n1 * n2 < minkowski_floor:
                if not lat_mod.minkowski_holds(n1, n2, m):
                    violations += 1
            if n1 > nsq_max:
                continue
            if fast:
                if gcd(ux, uy) == 1:
                    short += 1
                continue
            for x, y in lat_mod.enumerate_points(
                lat_mod.Lattice2(a, b, c), norm_sq_bound=nsq_max
            ):
                if (x or y) and gcd(x, y) == 1:
                    short += 1
                    break
    return CensusRow(m, delta, total, short, violations)


def _minkowski_floor(m):
    """Integer K with K <= (2m/pi)^2; products below K get the exact check."""
    val = Fraction(4 * m * m) / (PI_HI * PI_HI)
    return val.numerator // val.denominator


def _census_by_points(m, nsq_max):
    """Count lattices via their short primitive points; each such point has a
    unique covering lattice of determinant m when m > (pi/2)*||v||^2."""
    if nsq_max < 1:
        return 0, True
    if not _unique_cover_certified(m, nsq_max):
        return 0, False
    seen = set()
    r = math.isqrt(nsq_max)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y > nsq_max or math.gcd(x, y) != 1:
                continue
            g, s, t = lat_mod._extgcd(x, y)
            # x*(t*m) - y*(s*m) = m: complete (x, y) to determinant m
            lat = lat_mod.hnf_from_generators([(x, y), (-t * m, s * m)])
            seen.add((lat.a, lat.b, lat.c))
    return len(seen), True


@dataclass(frozen=True)
class CensusSummary:
    rows: int
    max_scaled_proportion: float
    bound_violations: int
    minkowski_violations: int


def census_sweep(m_values, delta, method="lattice", cross_check=False, shard=None, budget=10**9):
    """Census rows for each m plus a summary with the implied-constant
    estimate max(proportion * m^(2 delta)) and certified bound violations."""
    delta = Fraction(delta)
    rows = []
    max_scaled = 0.0
    bound_violations = 0
    mink_violations = 0
    for m in m_values:
        row = census_point(m, delta, method=method, cross_check=cross_check, shard=shard, budget=budget)
        rows.append(row)
        scaled = row.proportion * float(m) ** (2 * float(delta))
        max_scaled = max(max_scaled, scaled)
        if not row.bound_holds():
            bound_violations += 1
        mink_violations += row.minkowski_violations
    summary = CensusSummary(
        rows=len(rows),
        max_scaled_proportion=max_scaled,
        bound_violations=bound_violations,
        minkowski_violations=mink_violations,
    )
    return rows, summary


CSV_HEADER = "m,delta,total,short_count,proportion,bound_4pi_m_minus_2delta"


def csv_line(row):
    return ",".join(
        (
            str(row.m),
            f"{float(row.delta):.12g}",
            str(row.total),
            str(row.short_count),
            f"{row.proportion:.12g}",
            f"{row.bound:.12g}",
        )
    )
