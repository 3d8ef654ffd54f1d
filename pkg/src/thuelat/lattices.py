"""Rank-2 sublattices of Z^2: canonical HNF, congruence lattices, reduction.

The canonical basis is lower-triangular: v1 = (a, 0), v2 = (b, c) with
0 <= b < a, so (a, 0) generates the intersection with the x-axis and the
determinant is a*c.  Text serialization: "det: a b c".
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, HypothesisError, InputError
from .intervals import PI_LO, PI_HI
from . import padic


@dataclass(frozen=True, order=True)
class Lattice2:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0 or not 0 <= self.b < self.a:
            raise InputError(f"not a canonical HNF triple: {(self.a, self.b, self.c)}")

    @property
    def det(self):
        return self.a * self.c

    def basis(self):
        return (self.a, 0), (self.b, self.c)

    def contains(self, v):
        x, y = v
        t, rem = divmod(y, self.c)
        if rem != 0:
            return False
        return (x - t * self.b) % self.a == 0

    def coordinates(self, v):
        """(s, t) with v = s*(a,0) + t*(b,c); InputError when v is outside."""
        x, y = v
        t, rem = divmod(y, self.c)
        if rem != 0 or (x - t * self.b) % self.a != 0:
            raise InputError(f"{v} is not a lattice point")
        return (x - t * self.b) // self.a, t

    def serialize(self):
        return f"{self.det}: {self.a} {self.b} {self.c}"

    @classmethod
    def parse(cls, text):
        try:
            head, _, tail = text.partition(":")
            det = int(head.strip())
            a, b, c = (int(t) for t in tail.split())
        except ValueError as exc:
            raise InputError(f"malformed lattice string {text!r}") from exc
        lat = cls(a, b, c)
        if lat.det != det:
            raise InputError(f"lattice string {text!r}: determinant mismatch")
        return lat

    def __str__(self):
        return self.serialize()


def hnf_from_generators(gens):
    """Canonical HNF of the lattice spanned by integer pairs."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        raise InputError("rank-deficient: no generators")
    # combine to a single vector carrying the gcd of the y-components
    vx, vy = 0, 0
    axis = []  # x-axis vectors produced along the way
    for gx, gy in gens:
        if gy == 0:
            axis.append(gx)
            continue
        if vy == 0:
            vx, vy = gx, gy
            continue
        g, u, w = _extgcd(vy, gy)
        nx, ny = u * vx + w * gx, g
        # the two combinations killing the y-part land on the x-axis
        axis.append((vx * gy - gx * vy) // g)
        vx, vy = nx, ny
    if vy == 0:
        raise InputError("rank-deficient: generators span a line")
    if vy < 0:
        vx, vy = -vx, -vy
    a = 0
    for t in axis:
        a = math.gcd(a, t)
    if a == 0:
        raise InputError("rank-deficient: generators span a line")
    return Lattice2(a, vx % a, vy)


def _extgcd(x, y):
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def from_congruences(constraints):
    """Lattice {(x,y): L_p(x,y) = 0 mod p^e for all given primes}.

    The per-prime forms are CRT-combined into a single A*x + B*y = 0 mod m'
    with gcd(A, B, m') = 1; the result has determinant m' = prod p^e.
    """
    seen = set()
    modulus = 1
    A, B = 0, 0
    for p, e, factor in constraints:
        if p in seen:
            raise InputError(f"duplicate-prime: {p}")
        seen.add(p)
        if e < 1:
            raise InputError("exponent must be positive")
        if factor.p != p or factor.k < e:
            raise InputError("precision-too-low: factor precision below requested exponent")
        pe = p**e
        a_p, b_p = factor.a % pe, factor.b % pe
        if modulus == 1:
            A, B, modulus = a_p, b_p, pe
        else:
            A = _crt(A, modulus, a_p, pe)
            B = _crt(B, modulus, b_p, pe)
            modulus *= pe
    if modulus == 1:
        return Lattice2(1, 0, 1)
    lat = hnf_from_generators([(modulus, 0), (0, modulus), (B, -A)])
    assert lat.det == modulus
    return lat


def _crt(r1, m1, r2, m2):
    g, u, _ = _extgcd(m1, m2)
    assert g == 1
    return (r1 + (r2 - r1) * u % m2 * m1) % (m1 * m2)


def theorem1_lattices(form, m, budget=10**40):
    """The c_F(m) congruence sublattices of determinant m covering all
    primitive points with m | F(x,y); requires v_p(m) > v_p(D) for p | m."""
    if not padic.theorem1_hypothesis(form, m, budget):
        raise HypothesisError(f"v_p({m}) > v_p(D) fails for some prime")
    fac = padic.factorize(m, budget)
    per_prime = []
    D = form.discriminant()
    for p, e in fac.items():
        k = e + 2 * padic.vp(D, p) + 1
        lfs = padic.local_factors(form, p, k)
        if lfs.count == 0:
            return []
        per_prime.append([(p, e, f) for f in lfs.factors])
    out = [from_congruences(combo) for combo in _product(per_prime)]
    assert len(set(out)) == len(out) and all(L.det == m for L in out)
    return out


def _product(pools):
    if not pools:
        yield ()
        return
    head, *rest = pools
    for item in head:
        for tail in _product(rest):
            yield (item, *tail)


# ---------------------------------------------------------------------------
# Lagrange-Gauss reduction


@dataclass(frozen=True)
class ReducedBasis:
    u: tuple
    w: tuple
    lambda1_sq: int
    lambda2_sq: int

    @property
    def lambda1(self):
        return math.sqrt(self.lambda1_sq)

    @property
    def lambda2(self):
        return math.sqrt(self.lambda2_sq)


def reduce_lattice(lattice):
    """Lagrange-Gauss reduced basis achieving both successive minima."""
    ux, uy, wx, wy, n1, n2 = _gauss_reduce(lattice.a, 0, lattice.b, lattice.c)
    u, w = _canonical_sign(ux, uy), _canonical_sign(wx, wy)
    return ReducedBasis(u=u, w=w, lambda1_sq=n1, lambda2_sq=n2)


def _gauss_reduce(ux, uy, wx, wy):
    nu = ux * ux + uy * uy
    nw = wx * wx + wy * wy
    if nw < nu:
        ux, uy, wx, wy, nu, nw = wx, wy, ux, uy, nw, nu
    while True:
        dot = ux * wx + uy * wy
        t = _round_half_even(dot, nu)
        if t:
            wx -= t * ux
            wy -= t * uy
            nw = wx * wx + wy * wy
        if nw >= nu:
            return ux, uy, wx, wy, nu, nw
        ux, uy, wx, wy, nu, nw = wx, wy, ux, uy, nw, nu


def _round_half_even(num, den):
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q % 2):
        q += 1
    return q


def _canonical_sign(x, y):
    if x < 0 or (x == 0 and y < 0):
        return (-x, -y)
    return (x, y)


def shortest_vector_sq(a, b, c):
    """Minimal nonzero norm-square of the HNF lattice (a,0),(b,c), plus the
    achieving vector; allocation-free fast path for census sweeps."""
    ux, uy, wx, wy, n1, _ = _gauss_reduce(a, 0, b, c)
    return n1, (ux, uy)


def minkowski_holds(lambda1_sq, lambda2_sq, det):
    """Certified check of lambda1*lambda2 >= 2*det/pi via rational pi bounds."""
    lhs = Fraction(lambda1_sq) * Fraction(lambda2_sq) * PI_LO * PI_LO
    if lhs >= 4 * det * det:
        return True
    if Fraction(lambda1_sq) * Fraction(lambda2_sq) * PI_HI * PI_HI < 4 * det * det:
        return False
    raise InputError("pi bounds too coarse to decide the Minkowski inequality")


# ---------------------------------------------------------------------------
# Enumeration


def sigma(m):
    """Sum of divisors; the number of sublattices of Z^2 of determinant m."""
    out = 1
    for p, e in padic.factorize(m).items():
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def divisors(m):
    fac = padic.factorize(m)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def all_sublattices(m, shard=None, budget=10**9):
    """Every sublattice of determinant m exactly once, deterministic order.

    shard=(i, k) keeps only the divisors with index congruent to i mod k,
    giving a deterministic partition for parallel sweeps.
    """
    if m < 1:
        raise InputError("m must be positive")
    if sigma(m) > budget:
        raise BudgetError(f"sigma({m}) exceeds the lattice budget")
    divs = divisors(m)
    if shard is not None:
        i, k = shard
        divs = divs[i::k]
    for a in divs:
        c = m // a
        for b in range(a):
            yield Lattice2(a, b, c)


def enumerate_points(lattice, radius=None, norm_sq_bound=None, predicate=None, shard=None, budget=10**8):
    """Lattice points with norm^2 <= bound, ordered by reduced coordinates.

    The bound may be given exactly via norm_sq_bound (int or Fraction);
    a float radius is squared exactly.  An optional predicate filters the
    output; shard=(i, k) keeps the reduced second coordinate congruent to
    i mod k.
    """
    if norm_sq_bound is None:
        if radius is None or radius < 0:
            raise InputError("need a radius or an exact norm-square bound")
        norm_sq_bound = Fraction(radius) ** 2
    bound = Fraction(norm_sq_bound)
    if bound < 0:
        raise InputError("negative norm bound")
    rb = reduce_lattice(lattice)
    (ux, uy), (wx, wy) = rb.u, rb.w
    usq = rb.lambda1_sq
    det = lattice.det
    # |t| <= r*lambda1/det since the w-component orthogonal to u has length det/|u|
    tmax = _isqrt_frac(bound * usq / (det * det))
    uw = ux * wx + uy * wy
    out = []
    visited = 0
    for t in range(-tmax, tmax + 1):
        if shard is not None and t % shard[1] != shard[0] % shard[1]:
            continue
        # s^2 usq + 2 s t uw + t^2 wsq <= bound, discriminant r^2 usq - t^2 det^2
        disc = bound * usq - t * t * det * det
        if disc < 0:
            continue
        root = _sqrt_frac_upper(disc)
        lo = _ceil_frac((-t * uw - root) / usq)
        hi = _floor_frac((-t * uw + root) / usq)
        visited += max(0, hi - lo + 1)
        if visited > budget:
            raise BudgetError("lattice point enumeration exceeds its budget")
        for s in range(lo, hi + 1):
            x = s * ux + t * wx
            y = s * uy + t * wy
            if x * x + y * y <= bound and (predicate is None or predicate((x, y))):
                out.append((x, y))
    return out


def _isqrt_frac(fr):
    fr = Fraction(fr)
    if fr < 0:
        return 0
    return math.isqrt(fr.numerator // fr.denominator)


def _sqrt_frac_upper(fr):
    """Rational upper bound for sqrt of a nonnegative Fraction."""
    fr = Fraction(fr)
    n, d = fr.numerator, fr.denominator
    return Fraction(math.isqrt(n * d) + 1, d)


def _ceil_frac(fr):
    return -((-fr.numerator) // fr.denominator)


def _floor_frac(fr):
    return fr.numerator // fr.denominator
