"""p-adic linear factors of a binary form, local factor counts, and witnesses.

A local factor at p is a linear form L = a*X + b*Y known modulo p^k whose
coefficient pair has p-adic sup-norm 1.  Factors are found by projective root
counting mod p followed by Hensel/Newton lifting, with breadth-first branching
below the separation precision when p divides the discriminant.
"""

import math
from dataclasses import dataclass

import sympy

from .errors import BudgetError, FactorizationError, HypothesisError, InputError, PrecisionError
from .forms import real_factor_count


def vp(n, p):
    """p-adic valuation; math.inf for 0."""
    if n == 0:
        return math.inf
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(q, p):
    return vp(q.numerator, p) - vp(q.denominator, p)


def factorize(m, budget=10**40):
    """Prime factorization {p: e} of a positive integer, budget-guarded."""
    if m < 1:
        raise InputError("m must be positive")
    if m > budget:
        raise FactorizationError(f"refusing to factor m > {budget}")
    return dict(sorted(sympy.factorint(m).items()))


@dataclass(frozen=True)
class LocalFactor:
    """Linear factor a*X + b*Y of F over Z_p, known modulo p^k.

    Normalization: the first coordinate that is a p-adic unit is scaled to 1,
    so either a == 1, or p | a and b == 1.
    """

    p: int
    k: int
    a: int
    b: int

    def __post_init__(self):
        pk = self.p**self.k
        if not (0 <= self.a < pk and 0 <= self.b < pk):
            raise InputError("residues must be reduced mod p^k")
        if self.a % self.p == 0 and self.b % self.p == 0:
            raise InputError("sup-norm must be 1: p divides both coefficients")
        if not (self.a == 1 or (self.a % self.p == 0 and self.b == 1)):
            raise InputError("factor is not normalized")

    def evaluate(self, x, y):
        return self.a * x + self.b * y

    def valuation_at(self, x, y):
        """v_p(L(x,y)) capped at k (the residues only carry k digits)."""
        v = vp(self.evaluate(x, y), self.p)
        return min(v, self.k)

    def reduce_to(self, j):
        if j > self.k:
            raise InputError("cannot raise precision by reduction")
        pj = self.p**j
        a, b = self.a % pj, self.b % pj
        if a % self.p != 0 and a != 1:  # renormalize in the smaller ring
            inv = pow(a, -1, pj)
            a, b = 1, (b * inv) % pj
        return LocalFactor(self.p, j, a, b)

    def serialize(self):
        return f"{self.p}^{self.k}: {self.a} {self.b}"


@dataclass(frozen=True)
class LocalFactorSet:
    p: int
    k: int
    factors: tuple

    @property
    def count(self):
        return len(self.factors)


def _poly_eval(desc, t):
    acc = 0
    for c in desc:
        acc = acc * t + c
    return acc


def _zp_roots(desc, p, k, starts, max_depth, max_width=512):
    """Residues mod p^k of every t in Z_p with f(t) = 0 and t mod p in starts.

    Breadth-first refinement of residue classes; a class is resolved by
    Newton iteration once it provably contains at most one root (level above
    v_p(f'(t)) with the Hensel condition satisfied).
    """
    n = len(desc) - 1
    dd = [desc[i] * (n - i) for i in range(n)]
    roots = []
    frontier = [(t % p, 1) for t in starts if _poly_eval(desc, t) % p == 0]
    while frontier:
        if len(frontier) > max_width:
            raise PrecisionError("lifting frontier exceeded the width budget")
        nxt = []
        for t, j in frontier:
            if j > max_depth:
                raise PrecisionError("lifting exceeded the depth budget")
            ft = _poly_eval(desc, t)
            dft = _poly_eval(dd, t)
            delta = vp(dft, p)
            s = vp(ft, p)
            if delta is not math.inf and j > delta and s > 2 * delta:
                root = t if ft == 0 else _newton_lift(desc, dd, p, t, k, delta)
                if (root - t) % p**j == 0:
                    roots.append(root % p**k)
                # else: the unique nearby root lives in a sibling class
                continue
            pj = p**j
            target = pj * p
            for c in range(p):
                child = t + c * pj
                if _poly_eval(desc, child) % target == 0:
                    nxt.append((child, j + 1))
        frontier = nxt
    return sorted(set(roots))


def _newton_lift(desc, dd, p, t, k, delta):
    modulus = p ** (k + delta + 1)
    while True:
        ft = _poly_eval(desc, t)
        if ft == 0:
            return t % p**k
        s = vp(ft, p)
        if s >= k + delta:
            return t % p**k
        dft = _poly_eval(dd, t)
        unit = (dft // p**delta) % modulus
        t = (t - (ft // p**delta) * pow(unit, -1, modulus)) % modulus


def _require_form(form):
    if form.content() != 1:
        raise InputError("operation requires content 1")
    if form.discriminant() == 0:
        raise InputError("operation requires nonzero discriminant")


def local_factors(form, p, k=None):
    """All linear factors of F defined over Q_p, as residues mod p^k."""
    _require_form(form)
    if not sympy.isprime(p):
        raise InputError(f"{p} is not prime")
    vD = vp(form.discriminant(), p)
    kmin = 2 * vD + 1
    if k is None:
        k = kmin
    if k < kmin:
        raise InputError(f"precision-too-low: need k >= {kmin}")
    pk = p**k
    desc = form.coeffs
    lead_v = vp(next(c for c in desc if c), p)
    max_depth = k + 2 * (vD + lead_v) + 16
    starts = [t for t in range(p) if _poly_eval(desc, t) % p == 0]
    factors = [
        LocalFactor(p, k, 1, (-t) % pk) for t in _zp_roots(desc, p, k, starts, max_depth)
    ]
    if desc[0] % p == 0:
        rdesc = tuple(reversed(desc))
        for s in _zp_roots(rdesc, p, k, [0], max_depth):
            if s % p == 0:  # the affine chart already covers unit ratios
                factors.append(LocalFactor(p, k, (-s) % pk, 1))
    factors.sort(key=lambda f: (0, f.b) if f.a == 1 else (1, f.a))
    return LocalFactorSet(p=p, k=k, factors=tuple(factors))


def c_F_p(form, p):
    """Number of linear factors of F defined over Q_p."""
    return local_factors(form, p).count


def c_F_inf(form):
    """Number of linear factors defined over the reals (informational)."""
    return real_factor_count(form)


def c_F_m(form, m, budget=10**40):
    """Product of c_F(p) over the primes dividing m (1 for m = 1)."""
    _require_form(form)
    out = 1
    for p in factorize(m, budget):
        out *= c_F_p(form, p)
        if out == 0:
            return 0
    return out


def theorem1_hypothesis(form, m, budget=10**40):
    """True when v_p(m) > v_p(D(F)) for every prime p | m."""
    _require_form(form)
    D = form.discriminant()
    return all(e > vp(D, p) for p, e in factorize(m, budget).items())


def m_of_F(form, m, budget=10**40):
    """Largest divisor m' of m with v_p(m') > v_p(D(F)) for all p | m'."""
    _require_form(form)
    D = form.discriminant()
    out = 1
    for p, e in factorize(m, budget).items():
        if e > vp(D, p):
            out *= p**e
    return out


def lemma2_witness(form, p, point):
    """The local factor absorbing the largest share of v_p(F(x,y)).

    Requires v_p(F(x,y)) > v_p(D(F)).  The returned factor is guaranteed to
    satisfy v_p(L(x,y)) >= v_p(F(x,y)) - v_p(D(F)), with exact equality
    v_p(L(x,y)) = v_p(F(x,y)) whenever p does not divide D.

    For ramified primes the stronger bound v_p(L) >= v_p(F) can genuinely
    fail: with F = X^3+Y^3, p = 3 and (x,y) = (-11, 38) the value has
    valuation 4 but the only 3-adic factor X+Y takes valuation 3 there (the
    remaining unit of valuation comes from the irreducible quadratic part).
    """
    x, y = point
    if math.gcd(x, y) != 1:
        raise InputError("point must be primitive")
    _require_form(form)
    value = form.evaluate(x, y)
    vD = vp(form.discriminant(), p)
    vF = vp(value, p)
    if not vF > vD:
        raise HypothesisError(f"need v_p(F(x,y)) > v_p(D): got {vF} <= {vD}")
    vF_finite = 0 if vF is math.inf else vF
    k = vF_finite + 2 * vD + 1
    lfs = local_factors(form, p, k)
    needed = k if vF is math.inf else vF - vD
    best = None
    best_v = -1
    for f in lfs.factors:
        v = f.valuation_at(x, y)
        if v > best_v:
            best, best_v = f, v
    if best is None or best_v < needed or (vD == 0 and best_v != min(vF, k)):
        raise RuntimeError("internal error: no local factor absorbs the value")
    return best


# ---------------------------------------------------------------------------
# Independent projective-root oracles


def projective_root_oracle(form, p, k, budget=10**6):
    """All classes (x : y) in P^1(Z/p^k) with F(x, y) = 0 mod p^k, by scan."""
    pk = p**k
    if pk + pk // p > budget:
        raise BudgetError(f"oracle scan of {pk + pk // p} classes exceeds budget")
    classes = [(t, 1) for t in range(pk) if form.evaluate(t, 1) % pk == 0]
    classes += [(1, s) for s in range(0, pk, p) if form.evaluate(1, s) % pk == 0]
    return classes


def refined_projective_classes(form, p, k, max_width=4096):
    """Level-by-level exhaustive refinement of the oracle classes up to p^k.

    Equivalent to the full scan (children of non-solutions cannot be
    solutions) but with cost proportional to the number of survivors, so it
    reaches levels far beyond the scan budget.  Used to decide which classes
    persist, i.e. contain an actual p-adic root.
    """
    classes = [("a", t) for t in range(p) if form.evaluate(t, 1) % p == 0]
    if form.coeffs[0] % p == 0:
        classes.append(("i", 0))
    for j in range(2, k + 1):
        pj = p**j
        prev = p ** (j - 1)
        nxt = []
        for kind, r in classes:
            for c in range(p):
                cand = r + c * prev
                value = form.evaluate(cand, 1) if kind == "a" else form.evaluate(1, cand)
                if value % pj == 0:
                    nxt.append((kind, cand))
        if len(nxt) > max_width:
            raise BudgetError("refinement width exceeded")
        classes = nxt
    return classes


def stabilized_class_count(form, p):
    """Number of classes at level 2*v_p(D)+1 that persist under refinement.

    A class at level k contains a p-adic root of F exactly when it still has
    descendants at level k + v_p(D): any point surviving that deep forces a
    rational local factor within p^k of it.  For p not dividing D this is the
    plain root count mod p.
    """
    _require_form(form)
    vD = vp(form.discriminant(), p)
    k = 2 * vD + 1
    deep = refined_projective_classes(form, p, k + vD)
    pk = p**k
    return len({(kind, r % pk) for kind, r in deep})
