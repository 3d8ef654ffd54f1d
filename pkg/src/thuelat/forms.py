"""Exact arithmetic on integer binary forms and their complex linear factors.

A form of degree d is F(X,Y) = sum_{i=0}^{d} a_i X^(d-i) Y^i.  The text
serialization is "d: a_0 a_1 ... a_d", e.g. "3: 1 0 0 1" for X^3 + Y^3.

Complex factorizations carry certified root enclosures: every reported box
provably contains exactly one root, so inequality tests on factor values can
be decided with outward-rounded interval arithmetic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy

from .errors import InputError, PrecisionError
from . import intervals as ivl


# ---------------------------------------------------------------------------
# BinaryForm


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) < 3:
            raise InputError("binary form must have degree >= 2")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise InputError("coefficients must be integers")
        if not any(self.coeffs):
            raise InputError("zero form")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def evaluate(self, x, y):
        d = self.degree
        if y == 1:  # fast path used heavily by the scans
            acc = 0
            for a in self.coeffs:
                acc = acc * x + a
            return acc
        total = 0
        ypow = 1
        xs = [1]
        for _ in range(d):
            xs.append(xs[-1] * x)
        for i, a in enumerate(self.coeffs):
            if a:
                total += a * xs[d - i] * ypow
            ypow *= y
        return total

    def content(self):
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def discriminant(self):
        return _disc_of(self.coeffs)

    def compose(self, T):
        """Coefficients of F(t11*X + t12*Y, t21*X + t22*Y), exactly."""
        (p, q), (r, s) = T
        if p * s - q * r == 0:
            raise InputError("singular-matrix")
        d = self.degree
        pows1 = _linear_powers(p, q, d)
        pows2 = _linear_powers(r, s, d)
        out = [0] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            term = _convolve(pows1[d - i], pows2[i])
            for k, c in enumerate(term):
                out[k] += a * c
        return BinaryForm(tuple(out))

    def serialize(self):
        return f"{self.degree}: " + " ".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text):
        try:
            head, _, tail = text.partition(":")
            d = int(head.strip())
            coeffs = tuple(int(t) for t in tail.split())
        except ValueError as exc:
            raise InputError(f"malformed form string {text!r}") from exc
        if len(coeffs) != d + 1:
            raise InputError(f"form string {text!r}: expected {d + 1} coefficients")
        return cls(coeffs)

    def __str__(self):
        return self.serialize()


def _linear_powers(u, v, n):
    """[(uX+vY)^k for k in 0..n] as coefficient lists."""
    pows = [[1]]
    for _ in range(n):
        pows.append(_convolve(pows[-1], [u, v]))
    return pows


def _convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=4096)
def _disc_of(coeffs):
    """Discriminant of the binary form, including the a_0 = 0 cases.

    Factors of Y are peeled off projectively: D(Y*G) = G(1,0)^2 * D(G);
    two leading zeros force a repeated factor and discriminant 0.
    """
    n = len(coeffs) - 1
    if n == 1:
        return 1
    if coeffs[0] == 0:
        if coeffs[1] == 0:
            return 0
        return coeffs[1] ** 2 * _disc_of(coeffs[1:])
    f = list(coeffs)
    df = [f[i] * (n - i) for i in range(n)]
    res = _resultant(f, df)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    disc, rem = divmod(sign * res, coeffs[0])
    assert rem == 0
    return disc


def _resultant(f, g):
    """Resultant of two integer polynomials given by descending coefficients."""
    n = len(f) - 1
    m = len(g) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + f + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + g + [0] * (n - 1 - i))
    return _bareiss_det([row[:size] for row in rows])


def _bareiss_det(mat):
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
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
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Exact real-root isolation (shared by factorization, enumeration, minima)


def _sign_at(desc, p, q):
    """Sign of f(p/q) for q > 0, f given by descending integer coefficients."""
    n = len(desc) - 1
    total = 0
    qp = 1
    pp = [1]
    for _ in range(n):
        pp.append(pp[-1] * p)
    for i, c in enumerate(desc):
        if c:
            total += c * pp[n - i] * qp
        qp *= q
    return (total > 0) - (total < 0)


def _sign_frac(desc, t):
    return _sign_at(desc, t.numerator, t.denominator)


@lru_cache(maxsize=1024)
def real_root_intervals(coeffs):
    """Disjoint isolating intervals for the real roots of f(t) = F(t, 1).

    Returns a sorted tuple of (lo, hi, exact) with Fraction endpoints; for a
    rational root lo == hi == exact, otherwise exact is None and the sign of
    f changes strictly between lo and hi.
    """
    desc = list(coeffs)
    while desc and desc[0] == 0:
        desc = desc[1:]
    if len(desc) <= 1:
        return ()
    t = sympy.Symbol("t")
    poly = sympy.Poly(desc, t)
    out = []
    for (a, b), _mult in poly.intervals():
        lo = Fraction(int(a.p), int(a.q))
        hi = Fraction(int(b.p), int(b.q))
        if lo == hi:
            out.append((lo, hi, lo))
            continue
        lo, hi = _clean_endpoints(desc, lo, hi)
        out.append((lo, hi, None))
    out.sort(key=lambda r: (r[0], r[1]))
    return tuple(out)


def _clean_endpoints(desc, lo, hi):
    """Shrink an isolating interval until both endpoints have nonzero signs."""
    while _sign_frac(desc, lo) == 0:
        lo = lo + (hi - lo) / 4
    while _sign_frac(desc, hi) == 0:
        hi = hi - (hi - lo) / 4
    if _sign_frac(desc, lo) == _sign_frac(desc, hi):
        raise PrecisionError("real root isolation lost its sign change")
    return lo, hi


def refine_root_interval(desc, lo, hi, width):
    """Bisect an exact isolating interval down to the requested width."""
    slo = _sign_frac(desc, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        smid = _sign_frac(desc, mid)
        if smid == 0:
            return mid, mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def real_factor_count(form):
    """Number of linear factors of F defined over the reals."""
    n_inf = 1 if form.coeffs[0] == 0 else 0
    return len(real_root_intervals(form.coeffs)) + n_inf


# ---------------------------------------------------------------------------
# Certified complex factorization


@dataclass(frozen=True)
class Factor:
    """One linear factor u*X + v*Y with a certified enclosure.

    Finite roots have (u, v) = (1, -alpha) with alpha inside
    [re_lo, re_hi] x [im_lo, im_hi]; the factor at infinity is (0, 1).
    """

    is_infinity: bool
    is_real: bool
    re_lo: object = None
    re_hi: object = None
    im_lo: object = None
    im_hi: object = None
    exact_root: Fraction | None = None

    def root_box(self, ctx):
        if self.is_infinity:
            raise InputError("factor at infinity has no finite root")
        return ivl.Box(ctx.mpf([self.re_lo, self.re_hi]), ctx.mpf([self.im_lo, self.im_hi]))


@dataclass(frozen=True)
class ComplexFactorization:
    form: BinaryForm
    scale: int
    factors: tuple
    precision: int
    error_bound: float

    @property
    def degree(self):
        return self.form.degree

    def factor_values(self, ctx, x, y):
        """Boxes enclosing L_i(x, y) for an exact integer or Fraction point."""
        xs = ivl.from_fraction(ctx, Fraction(x))
        ys = ivl.from_fraction(ctx, Fraction(y))
        zero = ctx.mpf(0)
        out = []
        for f in self.factors:
            if f.is_infinity:
                out.append(ivl.Box(ys * 1, zero))
            else:
                alpha = f.root_box(ctx)
                out.append(ivl.Box(xs - alpha.re * ys, -alpha.im * ys))
        return out

    def pair_determinant(self, ctx, i, j):
        """Box for det of the coefficient vectors of factors i and j."""
        fi, fj = self.factors[i], self.factors[j]
        zero = ctx.mpf(0)
        one = ctx.mpf(1)
        if fi.is_infinity and fj.is_infinity:
            raise InputError("duplicate factor at infinity")
        if fi.is_infinity:
            return ivl.Box(-one, zero)
        if fj.is_infinity:
            return ivl.Box(one, zero)
        ai = fi.root_box(ctx)
        aj = fj.root_box(ctx)
        return ai - aj

    def real_root_indices(self):
        return tuple(i for i, f in enumerate(self.factors) if f.is_real and not f.is_infinity)


@lru_cache(maxsize=256)
def complex_factorization(form, precision=128, max_precision=1 << 14):
    """Factor F into linear forms with certified root boxes.

    Certification: each finite root is enclosed in a disk of radius
    n*|f(r)|/|f'(r)| (which always contains a root); pairwise-disjoint
    enclosures therefore contain exactly one root each.  Real roots are
    re-enclosed by exact bisection so their imaginary part is exactly 0.
    Precision doubles on certification failure up to max_precision.
    """
    if form.discriminant() == 0:
        raise InputError("form has repeated factors (discriminant 0)")
    coeffs = form.coeffs
    desc = list(coeffs)
    n_inf = 0
    while desc[0] == 0:
        desc = desc[1:]
        n_inf += 1
    dp = len(desc) - 1
    real_ivs = real_root_intervals(coeffs)

    prec = max(precision, 64)
    while True:
        try:
            factors, err = _certify_roots(desc, dp, real_ivs, prec)
            break
        except PrecisionError:
            prec *= 2
            if prec > max_precision:
                raise
    for _ in range(n_inf):
        factors.append(Factor(is_infinity=True, is_real=True))
    return ComplexFactorization(
        form=form,
        scale=desc[0],
        factors=tuple(factors),
        precision=prec,
        error_bound=err,
    )


def _certify_roots(desc, dp, real_ivs, prec):
    if dp == 0:
        return [], 0.0
    ctx = ivl.context(prec + 30)
    mpc = mpmath.mp.clone()
    mpc.prec = prec + 60
    roots = mpc.polyroots([mpc.mpf(c) for c in desc], maxsteps=200, extraprec=prec)

    boxes = []
    for r in roots:
        re = mpc.mpf(r.real) if hasattr(r, "real") else r
        im = mpc.mpf(r.imag) if hasattr(r, "imag") else mpc.mpf(0)
        rho = _residual_radius(ctx, desc, dp, re, im)
        boxes.append((re, im, rho))

    # classify real candidates against the exact isolation data
    candidates = [i for i, (re, im, rho) in enumerate(boxes) if not (abs(ctx.mpf(im)) > rho)]
    if len(candidates) != len(real_ivs):
        raise PrecisionError("real root classification ambiguous")
    candidates.sort(key=lambda i: boxes[i][0])

    target = Fraction(1, 2**prec)
    spread = max((abs(Fraction(str(b[0]))) for b in boxes), default=Fraction(1))
    width = target * max(Fraction(1), spread)
    factors = [None] * dp
    for idx, (lo, hi, exact) in zip(candidates, real_ivs):
        if exact is None:
            lo, hi = refine_root_interval(desc, lo, hi, width)
        flo = ivl.from_fraction(ctx, lo)
        fhi = ivl.from_fraction(ctx, hi)
        factors[idx] = Factor(
            is_infinity=False,
            is_real=True,
            re_lo=flo.a,
            re_hi=fhi.b,
            im_lo=mpmath.mpf(0),
            im_hi=mpmath.mpf(0),
            exact_root=exact,
        )
    for i, (re, im, rho) in enumerate(boxes):
        if factors[i] is not None:
            continue
        rb = ctx.mpf(re)
        ib = ctx.mpf(im)
        factors[i] = Factor(
            is_infinity=False,
            is_real=False,
            re_lo=(rb - rho).a,
            re_hi=(rb + rho).b,
            im_lo=(ib - rho).a,
            im_hi=(ib + rho).b,
            exact_root=None,
        )

    if not _pairwise_disjoint(ctx, factors):
        raise PrecisionError("root enclosures overlap")

    factors.sort(key=_factor_sort_key)
    err = _reconstruction_error(ctx, desc, dp, factors)
    return factors, err


def _residual_radius(ctx, desc, dp, re, im):
    """Interval upper bound on dp*|f(r)|/|f'(r)|; a disk of this radius
    around r always contains at least one root of f."""
    dcoeffs = [desc[i] * (dp - i) for i in range(dp)]
    z = ivl.Box(ctx.mpf(re), ctx.mpf(im))
    fz = _poly_box(ctx, desc, z)
    dfz = _poly_box(ctx, dcoeffs, z)
    denom = dfz.abs_sq()
    if denom.a <= 0:
        raise PrecisionError("derivative enclosure touches zero")
    val = ctx.sqrt(fz.abs_sq() / denom) * dp
    return ctx.mpf([0, val.b])


def _poly_box(ctx, desc, z):
    acc = ivl.Box(ctx.mpf(0), ctx.mpf(0))
    for c in desc:
        acc = acc * z + ivl.Box(ctx.mpf(c), ctx.mpf(0))
    return acc


def _pairwise_disjoint(ctx, factors):
    n = len(factors)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = factors[i], factors[j]
            re_sep = a.re_hi < b.re_lo or b.re_hi < a.re_lo
            im_sep = a.im_hi < b.im_lo or b.im_hi < a.im_lo
            if not (re_sep or im_sep):
                return False
    return True


def _factor_sort_key(f):
    return (float(f.re_lo) + float(f.re_hi), float(f.im_lo) + float(f.im_hi))


def _reconstruction_error(ctx, desc, dp, factors):
    """Certified relative error between scale*prod(X - alpha Y) and f."""
    poly = [ivl.Box(ctx.mpf(desc[0]), ctx.mpf(0))]
    zero = ctx.mpf(0)
    for f in factors:
        alpha = f.root_box(ctx)
        nxt = [ivl.Box(zero, zero) for _ in range(len(poly) + 1)]
        for k, c in enumerate(poly):
            nxt[k] = nxt[k] + c
            prod = c * alpha
            nxt[k + 1] = nxt[k + 1] - prod
        poly = nxt
    norm = math.sqrt(sum(c * c for c in desc))
    worst = 0.0
    for k, c in enumerate(poly):
        if not (c.re.a <= desc[k] <= c.re.b and c.im.a <= 0 <= c.im.b):
            raise PrecisionError("reconstruction interval misses exact coefficient")
        worst = max(
            worst,
            float(mpmath.mpf(c.re.b) - mpmath.mpf(c.re.a)),
            float(mpmath.mpf(c.im.b) - mpmath.mpf(c.im.a)),
        )
    return worst / norm


# ---------------------------------------------------------------------------
# Heights


def height_interval(form, prec=128):
    """Interval enclosing H(F) = |scale| * prod sqrt(1 + |alpha_i|^2)."""
    fac = complex_factorization(form, prec)
    ctx = ivl.context(prec + 20)
    h = ctx.mpf(abs(fac.scale))
    one = ctx.mpf(1)
    for f in fac.factors:
        if f.is_infinity:
            continue
        h *= ctx.sqrt(one + f.root_box(ctx).abs_sq())
    return h


def height_H(form, rel_tol=1e-9):
    """H(F), the product of Euclidean norms of the linear factors."""
    prec = 128
    while True:
        h = height_interval(form, prec)
        if float(h.delta) <= rel_tol * float(h.a):
            return float(h.mid)
        prec *= 2
        if prec > 1 << 14:
            raise PrecisionError("height did not certify at max precision")


# ---------------------------------------------------------------------------
# Minimum of |F| on the unit circle


@lru_cache(maxsize=256)
def min_on_unit_circle(form):
    """Certified lower bound for min |F(u)| over the unit circle.

    Exactly 0.0 when F has a real linear factor; otherwise the minimum is
    located through the exact critical equation of |F(cos t, sin t)|^2 and
    bounded from below with outward rounding.
    """
    if real_factor_count(form) > 0:
        return 0.0
    desc = list(form.coeffs)  # a_0 != 0 here, else Y would be a real factor
    d = form.degree
    # critical polynomial of R(t) = f(t)^2 / (1+t^2)^d:  f'(t)(1+t^2) - d t f(t)
    asc = desc[::-1]
    dasc = [asc[i] * i for i in range(1, len(asc))]
    c_asc = _poly_mul_asc(dasc, [1, 0, 1])
    minus = _poly_mul_asc(asc, [0, d])
    n = max(len(c_asc), len(minus))
    c_asc = c_asc + [0] * (n - len(c_asc))
    minus = minus + [0] * (n - len(minus))
    crit = [a - b for a, b in zip(c_asc, minus)]
    while crit and crit[-1] == 0:
        crit.pop()
    if not crit:
        # |F| is constant on the circle
        return float(abs(form.coeffs[d]))

    crit_desc = tuple(crit[::-1])
    best = None  # Fraction: exact squared minimum so far
    best_iv = None
    ctx = ivl.context(160)
    for lo, hi, exact in real_root_intervals(crit_desc):
        if exact is not None:
            val = Fraction(_eval_frac(desc, exact)) ** 2 / (1 + exact**2) ** d
            best = val if best is None else min(best, val)
            continue
        lo, hi = refine_root_interval(list(crit_desc), lo, hi, Fraction(1, 2**96))
        t = ctx.mpf([ivl.from_fraction(ctx, lo).a, ivl.from_fraction(ctx, hi).b])
        ft = _poly_iv(ctx, desc, t)
        val = (ft * ft) / (1 + t * t) ** d
        best_iv = val if best_iv is None else _iv_min(ctx, best_iv, val)
    # the direction (0, 1) escapes the parametrization
    pole = Fraction(form.coeffs[d]) ** 2
    best = pole if best is None else min(best, pole)

    best_frac_iv = ivl.from_fraction(ctx, best)
    sq = best_frac_iv if best_iv is None else _iv_min(ctx, best_frac_iv, best_iv)
    # exact square root when available, else outward-rounded lower bound
    if best_iv is None or best_frac_iv.b <= best_iv.a:
        num, den = best.numerator, best.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return rn / rd
    return ivl.lower_float(ctx.sqrt(sq))


def _poly_mul_asc(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _eval_frac(desc, t):
    acc = Fraction(0)
    for c in desc:
        acc = acc * t + c
    return acc


def _poly_iv(ctx, desc, t):
    acc = ctx.mpf(0)
    for c in desc:
        acc = acc * t + ctx.mpf(c)
    return acc


def _iv_min(ctx, a, b):
    return ctx.mpf([min(a.a, b.a), min(a.b, b.b)])


# ---------------------------------------------------------------------------
# Epsilon-exceptional points and approximation witnesses


@dataclass(frozen=True)
class ExceptionalVerdict:
    verdict: bool
    witness: tuple | None


def epsilon_exceptional(form, point, eps, precision=128, max_precision=1 << 13):
    """Decide whether |L_i(v) L_j(v)| / |det(L_i, L_j)| <= ||v||^(-eps)
    for some pair i != j, with a witnessing pair when true."""
    x, y = point
    if (x, y) == (0, 0):
        raise InputError("point must be nonzero")
    if eps <= 0:
        raise InputError("eps must be positive")
    eps = Fraction(eps)
    norm_sq = x * x + y * y
    prec = precision
    while True:
        fac = complex_factorization(form, prec)
        ctx = ivl.context(prec)
        vals = fac.factor_values(ctx, x, y)
        rhs = ctx.exp(ivl.from_fraction(ctx, -eps) * ctx.log(ctx.mpf(norm_sq)) / 2)
        d = len(fac.factors)
        undecided = False
        hits = []
        for i in range(d):
            for j in range(i + 1, d):
                det = fac.pair_determinant(ctx, i, j)
                q = ctx.sqrt(vals[i].abs_sq() * vals[j].abs_sq() / det.abs_sq())
                ans = ivl.certified_le(q, rhs)
                if ans is True:
                    hits.append((float(q.mid), (i, j)))
                elif ans is None:
                    undecided = True
        if hits:
            hits.sort()
            return ExceptionalVerdict(True, hits[0][1])
        if not undecided:
            return ExceptionalVerdict(False, None)
        prec *= 2
        if prec > max_precision:
            raise PrecisionError("exceptionality test undecidable at max precision")


@dataclass(frozen=True)
class ApproxWitness:
    root_index: int | None
    pair: tuple
    audit: dict


def approx_witness(form, m, point, require_small_root=True, precision=128, max_precision=1 << 13):
    """Indices witnessing the two solution-approximation inequalities.

    For a solution of |F(x,y)| <= m there is always an index i with
    |alpha_i - x/y| below the explicit d 2^(d-1) m H^(d-2) / (|y|^d |D|^(1/2))
    threshold (y != 0), and a pair (i, j) with the normalized product
    |L_i L_j| / |det| below 2^(d-2) m H^(d-2) / (||v||^(d-2) |D|^(1/2)).
    """
    x, y = point
    if math.gcd(x, y) != 1:
        raise InputError("point must be primitive")
    if abs(form.evaluate(x, y)) > m:
        raise InputError("point is not a solution of the inequality")
    if y == 0 and require_small_root:
        raise InputError("rejected-input: y = 0 admits no root-approximation witness")
    d = form.degree
    absdisc = abs(form.discriminant())
    norm_sq = x * x + y * y
    prec = precision
    while True:
        fac = complex_factorization(form, prec)
        ctx = ivl.context(prec)
        h = height_interval(form, prec)
        sq_disc = ctx.sqrt(ctx.mpf(absdisc))
        audit = {}

        pair_rhs = ctx.mpf(2 ** (d - 2) * m) * h ** (d - 2) / (
            ctx.exp(ctx.log(ctx.mpf(norm_sq)) * (d - 2) / 2) * sq_disc
        )
        vals = fac.factor_values(ctx, x, y)
        nf = len(fac.factors)
        pair_hits = []
        pair_undecided = False
        for i in range(nf):
            for j in range(i + 1, nf):
                det = fac.pair_determinant(ctx, i, j)
                q = ctx.sqrt(vals[i].abs_sq() * vals[j].abs_sq() / det.abs_sq())
                ans = ivl.certified_le(q, pair_rhs)
                if ans is True:
                    pair_hits.append((float(q.mid), (i, j)))
                elif ans is None:
                    pair_undecided = True
        audit["pair_rhs"] = float(pair_rhs.mid)

        root_index = None
        root_undecided = False
        if y != 0:
            root_rhs = ctx.mpf(d * 2 ** (d - 1) * m) * h ** (d - 2) / (
                ctx.mpf(abs(y) ** d) * sq_disc
            )
            audit["root_rhs"] = float(root_rhs.mid)
            ratio = ivl.from_fraction(ctx, Fraction(x, y))
            hits = []
            for i, f in enumerate(fac.factors):
                if f.is_infinity:
                    continue
                delta = f.root_box(ctx) - ivl.Box(ratio, ctx.mpf(0))
                q = ctx.sqrt(delta.abs_sq())
                ans = ivl.certified_le(q, root_rhs)
                if ans is True:
                    hits.append((float(q.mid), i))
                elif ans is None:
                    root_undecided = True
            if hits:
                hits.sort()
                root_index = hits[0][1]

        have_root = root_index is not None or y == 0
        if pair_hits and have_root:
            pair_hits.sort()
            return ApproxWitness(root_index=root_index, pair=pair_hits[0][1], audit=audit)
        if not (pair_undecided or root_undecided):
            raise PrecisionError("no certified witness; inequality violated numerically")
        prec *= 2
        if prec > max_precision:
            raise PrecisionError("witness search undecidable at max precision")
