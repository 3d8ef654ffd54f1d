"""Primitive solutions of |F(x,y)| = m and |F(x,y)| <= m.

Three search routes: an exhaustive disk scan (the oracle everything else is
checked against), scans restricted to a congruence sublattice, and a
continued-fraction scan that finds all large solutions once |y| passes an
explicit threshold.  Results carry their provenance and honest completeness
flags: only positive-definite forms admit a provably complete disk.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG
from .errors import BudgetError, InputError
from . import forms as forms_mod
from .forms import BinaryForm, real_root_intervals
from . import intervals as ivl
from . import lattices as lat_mod


@dataclass(frozen=True)
class ThueInstance:
    form: BinaryForm
    m: int
    mode: str  # "eq" or "leq"

    def __post_init__(self):
        if self.mode not in ("eq", "leq"):
            raise InputError("mode must be 'eq' or 'leq'")
        if self.m < 1:
            raise InputError("m must be positive")
        if self.form.content() != 1:
            raise InputError("instance requires content 1")
        if self.form.discriminant() == 0:
            raise InputError("instance requires nonzero discriminant")

    def accepts(self, value):
        return abs(value) == self.m if self.mode == "eq" else abs(value) <= self.m


@dataclass(frozen=True)
class SolutionRecord:
    x: int
    y: int
    value: int
    provenance: str

    @property
    def norm_sq(self):
        return self.x * self.x + self.y * self.y

    @property
    def point(self):
        return (self.x, self.y)

    def sort_key(self):
        return (self.norm_sq, self.x, self.y)


@dataclass(frozen=True)
class SearchRegion:
    radius: float
    complete: bool
    justification: str  # definite-form | user-radius | convergent-extended

    def norm_sq_bound(self):
        return Fraction(self.radius) ** 2


def default_region(inst, config=DEFAULT_CONFIG):
    """Complete disk for definite forms, configured fallback otherwise."""
    mu = forms_mod.min_on_unit_circle(inst.form)
    override = config.brute_radius_override
    if mu > 0.0:
        radius = (inst.m / mu) ** (1.0 / inst.form.degree) * (1 + 1e-9)
        if override is not None:
            return SearchRegion(float(override), override >= radius, "user-radius")
        return SearchRegion(radius, True, "definite-form")
    radius = override if override is not None else config.default_radius
    return SearchRegion(float(radius), False, "user-radius")


def _scan_primitive(form, bound, budget, shard=None):
    """Yield (x, y, F(x,y)) over primitive points with norm^2 <= bound."""
    ymax = lat_mod._isqrt_frac(bound)
    if (2 * ymax + 1) ** 2 > budget:
        raise BudgetError("disk scan exceeds the enumeration budget")
    gcd = math.gcd
    for y in range(-ymax, ymax + 1):
        if shard is not None and y % shard[1] != shard[0]:
            continue
        rest = bound - y * y
        xmax = lat_mod._isqrt_frac(rest)
        for x in range(-xmax, xmax + 1):
            if gcd(x, y) != 1:
                continue
            yield x, y, form.evaluate(x, y)


def brute_solutions(inst, region, config=DEFAULT_CONFIG, shards=1):
    """All primitive solutions in the region by exhaustive scan.

    Sharding splits the y-range deterministically; the merged, sorted output
    is identical for every shard count.
    """
    bound = region.norm_sq_bound()
    found = []
    for shard in range(shards):
        marker = (shard, shards) if shards > 1 else None
        for x, y, value in _scan_primitive(inst.form, bound, config.enum_budget, marker):
            if inst.accepts(value):
                found.append(SolutionRecord(x, y, value, "brute"))
    found.sort(key=SolutionRecord.sort_key)
    return found


def lattice_solutions(inst, lattice, region, config=DEFAULT_CONFIG):
    """Primitive solutions in the region that lie in the given sublattice."""
    pts = lat_mod.enumerate_points(lattice, norm_sq_bound=region.norm_sq_bound())
    if len(pts) > config.enum_budget:
        raise BudgetError("lattice scan exceeds the enumeration budget")
    tag = f"lattice({lattice.serialize()})"
    out = []
    for x, y in pts:
        if (x, y) == (0, 0) or math.gcd(x, y) != 1:
            continue
        value = inst.form.evaluate(x, y)
        if inst.accepts(value):
            out.append(SolutionRecord(x, y, value, tag))
    out.sort(key=SolutionRecord.sort_key)
    return out


# ---------------------------------------------------------------------------
# Continued-fraction scan for large solutions


def convergent_threshold(inst):
    """Least Y1 such that every solution with |y| >= Y1 has x/y a convergent
    of a real root: beyond Y1 the root-approximation bound drops below
    1/(2 y^2) and below the imaginary part of every non-real root."""
    form = inst.form
    d = form.degree
    if d < 3:
        raise InputError("convergent threshold needs degree >= 3")
    if forms_mod.real_factor_count(form) == 0:
        raise InputError("rejected-input: form has no real linear factor")
    ctx = ivl.context(96)
    h = forms_mod.height_interval(form, 128)
    absdisc = abs(form.discriminant())
    bound = (
        ctx.mpf(2 * d * 2 ** (d - 1) * inst.m)
        * h ** (d - 2)
        / ctx.sqrt(ctx.mpf(absdisc))
    )
    y1 = math.floor(ivl.upper_float(bound) ** (1.0 / (d - 2)) * (1 + 1e-9)) + 1

    fac = forms_mod.complex_factorization(form)
    min_im = None
    for f in fac.factors:
        if f.is_infinity or f.is_real:
            continue
        lo, hi = float(f.im_lo), float(f.im_hi)
        dist = min(abs(lo), abs(hi))
        min_im = dist if min_im is None else min(min_im, dist)
    if min_im is not None and min_im > 0:
        y1 = max(y1, math.floor(math.sqrt(1.0 / (2.0 * min_im)) * (1 + 1e-9)) + 1)
    return max(y1, 1)


def _rational_convergents(r, y_max):
    num, den = r.numerator, r.denominator
    a = num // den
    hm2, km2, hm1, km1 = 0, 1, 1, 0
    while True:
        h = a * hm1 + hm2
        k = a * km1 + km2
        if k > y_max:
            return
        yield h, k
        rem = num - a * den
        if rem == 0:
            return
        num, den = den, rem
        a = num // den
        hm2, km2, hm1, km1 = hm1, km1, h, k


def _irrational_convergents(desc, lo, hi, y_max):
    """Convergents of the unique root of f in (lo, hi); exact arithmetic.

    The isolating interval is bisected (with exact sign evaluations) until
    each continued-fraction digit is unambiguous.
    """
    slo = forms_mod._sign_frac(desc, lo)
    hm2, km2, hm1, km1 = 0, 1, 1, 0

    def refine():
        nonlocal lo, hi, slo
        mid = (lo + hi) / 2
        smid = forms_mod._sign_frac(desc, mid)
        if smid == slo:
            lo = mid
        else:
            hi = mid

    while km1 <= y_max or km1 == 0:
        # tail t = (h_{k-1} - k_{k-1} a)/(k_k a - h_k) as a Mobius image of the root
        for _ in range(100000):
            d_lo = km1 * lo - hm1
            d_hi = km1 * hi - hm1
            if d_lo == 0 or d_hi == 0 or (d_lo > 0) != (d_hi > 0):
                refine()
                continue
            t_lo = (hm2 - km2 * lo) / d_lo
            t_hi = (hm2 - km2 * hi) / d_hi
            if t_lo > t_hi:
                t_lo, t_hi = t_hi, t_lo
            a_lo = t_lo.numerator // t_lo.denominator
            a_hi = t_hi.numerator // t_hi.denominator
            if a_lo == a_hi:
                a = a_lo
                break
            refine()
        else:
            raise InputError("continued fraction digit did not stabilize")
        h = a * hm1 + hm2
        k = a * km1 + km2
        hm2, km2, hm1, km1 = hm1, km1, h, k
        if k > y_max:
            return
        yield h, k


def root_convergents(form, root_index, y_max):
    """Convergents (numerator, denominator) of the root_index-th real root."""
    roots = real_root_intervals(form.coeffs)
    if not 0 <= root_index < len(roots):
        raise InputError("no such real root")
    lo, hi, exact = roots[root_index]
    if exact is not None:
        return list(_rational_convergents(exact, y_max))
    return list(_irrational_convergents(list(form.coeffs), lo, hi, y_max))


def convergent_scan(inst, y_max, y_min=None):
    """Solutions with y between the threshold and y_max, found by testing
    every continued-fraction convergent of every real root of F."""
    form = inst.form
    if form.degree < 3:
        raise InputError("rejected-input: convergent scan needs degree >= 3")
    roots = real_root_intervals(form.coeffs)
    if not roots:
        raise InputError("rejected-input: form has no real root")
    y_start = convergent_threshold(inst) if y_min is None else y_min
    seen = {}
    for idx in range(len(roots)):
        for p, q in root_convergents(form, idx, y_max):
            if q < y_start:
                continue
            value = form.evaluate(p, q)
            if inst.accepts(value):
                for sx, sy, sval in ((p, q, value), (-p, -q, -value if form.degree % 2 else value)):
                    key = (sx, sy)
                    if key not in seen:
                        seen[key] = SolutionRecord(sx, sy, sval, f"convergent({idx})")
    out = sorted(seen.values(), key=SolutionRecord.sort_key)
    return out


# ---------------------------------------------------------------------------
# Covering check


@dataclass(frozen=True)
class CoverReport:
    m: int
    lattices: tuple
    points_checked: int
    uncovered: tuple
    solutions: tuple
    per_lattice_solution_counts: tuple

    @property
    def covered(self):
        return not self.uncovered


def theorem1_cover_check(form, m, region, config=DEFAULT_CONFIG):
    """Verify that every primitive point with m | F(x,y) in the region lies
    in one of the congruence sublattices, and count solutions per lattice."""
    lats = lat_mod.theorem1_lattices(form, m)
    bound = region.norm_sq_bound()
    uncovered = []
    divisible = []
    for x, y, value in _scan_primitive(form, bound, config.enum_budget):
        if (x, y) == (0, 0) or value % m != 0:
            continue
        divisible.append((x, y, value))
        if not any(L.contains((x, y)) for L in lats):
            uncovered.append((x, y))
    solutions = tuple(
        SolutionRecord(x, y, v, "brute") for x, y, v in divisible if abs(v) == m
    )
    counts = tuple(
        sum(1 for s in solutions if L.contains(s.point)) for L in lats
    )
    return CoverReport(
        m=m,
        lattices=tuple(lats),
        points_checked=len(divisible),
        uncovered=tuple(uncovered),
        solutions=tuple(sorted(solutions, key=SolutionRecord.sort_key)),
        per_lattice_solution_counts=counts,
    )
