"""Closed-form evaluators for the solution-counting bounds, with audit data.

Every evaluator returns a BoundReport carrying the inputs, the value, and
all side conditions (recorded even when violated, so callers can present an
honest audit).  Formula evaluation is double precision, cross-checked
against an interval computation; values are quoted to 6 significant digits.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from .config import DEFAULT_CONFIG
from .errors import InputError, PrecisionError
from . import forms as forms_mod
from . import intervals as ivl
from . import lattices as lat_mod
from . import padic
from .enumeration import ThueInstance, lattice_solutions


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict
    value: float
    side_conditions: tuple  # of (condition, holds: bool | None)

    def kv_lines(self):
        lines = [f"name={self.name}", f"value={_fmt(self.value)}"]
        for key in sorted(self.inputs):
            lines.append(f"input.{key}={_fmt(self.inputs[key])}")
        for cond, holds in self.side_conditions:
            shown = "unchecked" if holds is None else str(holds).lower()
            lines.append(f"side.{cond}={shown}")
        return lines

    def csv_rows(self):
        rows = [("name", self.name), ("value", _fmt(self.value))]
        rows += [(f"input.{k}", _fmt(self.inputs[k])) for k in sorted(self.inputs)]
        rows += [
            (f"side.{c}", "unchecked" if h is None else str(h).lower())
            for c, h in self.side_conditions
        ]
        return rows


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _crosscheck(value, formula, prec=120):
    """Re-evaluate the closed form in interval arithmetic and require the
    double-precision value to land inside (with a hair of slack)."""
    ctx = ivl.context(prec)
    iv_type = type(ctx.mpf(1))

    def log(x):
        if isinstance(x, iv_type):
            return ctx.log(x)
        return ctx.log(ivl.from_fraction(ctx, Fraction(x)))

    enclosure = formula(log)
    lo = ivl.lower_float(enclosure) - 1e-9 * (abs(value) + 1)
    hi = ivl.upper_float(enclosure) + 1e-9 * (abs(value) + 1)
    if not lo <= value <= hi:
        raise PrecisionError(f"float/interval mismatch: {value} not in [{lo}, {hi}]")
    return value


def theorem2_bound(d, m, A):
    """Bound for the primitive solutions of the inequality inside one
    sublattice of determinant A*m^(2/d)/|D|^(1/(d(d-1)))."""
    if d < 3:
        raise InputError("domain: d must be at least 3")
    if m < 2:
        raise InputError("domain: m must be at least 2")
    if A <= 0:
        raise InputError("domain: A must be positive")
    large = A >= 5**4

    def expr(log):
        if large:
            inner = log(2 * log(m) / (d * log(A)) + 2)
            return 2 + 2 * d * (11 + 31 / log(d - 1) + inner / log(d - 1))
        inner = log(log(m) / (2 * d * log(5)) + 2)
        core = 2 + 2 * d * (11 + 31 / log(d - 1) + inner / log(d - 1))
        return (2 * 5**4 / A) * core

    value = _crosscheck(expr(math.log), expr)
    return BoundReport(
        name="theorem2-large-A" if large else "theorem2-small-A",
        inputs={"d": d, "m": m, "A": float(A), "branch": "large-A" if large else "small-A"},
        value=value,
        side_conditions=(("A >= 5^4", large),),
    )


def corollary_bound(d, m, A, c_f_m_prime):
    """Bound across all c_F(m') congruence sublattices at once."""
    if d < 3:
        raise InputError("domain: d must be at least 3")
    if m < 2 or A <= 0 or c_f_m_prime < 0:
        raise InputError("domain: need m >= 2, A > 0, c_F(m') >= 0")

    def expr(log):
        return 2500 * d * (43 + log(2 + log(m) / (1 + log(A))) / log(d - 1)) * c_f_m_prime

    value = _crosscheck(expr(math.log), expr)
    return BoundReport(
        name="corollary",
        inputs={"d": d, "m": m, "A": float(A), "c_F_m_prime": c_f_m_prime},
        value=value,
        side_conditions=(("A >= 1", A >= 1),),
    )


def stewart_bound(d, eps, omega_m_prime, m=None, m_prime=None, abs_disc=None):
    """(5600 d + 700/eps) d^omega(m'), with its divisor hypothesis recorded."""
    if d < 3 or eps <= 0 or omega_m_prime < 0:
        raise InputError("domain: need d >= 3, eps > 0, omega >= 0")
    value = (5600 * d + 700 / eps) * d**omega_m_prime
    hypothesis = "(m')^(1+eps) >= m^((2/d)+eps) / |D|^(1/(d(d-1)))"
    holds = None
    if m is not None and m_prime is not None and abs_disc is not None:
        holds = m_prime ** (1 + eps) >= m ** ((2 / d) + eps) / abs_disc ** (1 / (d * (d - 1)))
    return BoundReport(
        name="stewart",
        inputs={"d": d, "eps": float(eps), "omega_m_prime": omega_m_prime},
        value=value,
        side_conditions=((hypothesis, holds),),
    )


def proposition_bound(d, m, B):
    """Count bound phrased via B = M(F_Lambda, m)/m."""
    if d < 3:
        raise InputError("domain: d must be at least 3")
    if m < 2 or B <= 1:
        raise InputError("domain: need m >= 2 and B > 1")

    def expr(log):
        return 2 + 2 * d * (
            11
            + log(2**10 * 3**3 * 5**3) / log(d - 1)
            + log(2**9 * 3**3 * 5**2) / log(d - Fraction(5, 4))
            + log(log(m) / log(B) + 2) / log(d - 1)
        )

    value = _crosscheck(expr(math.log), expr)
    return BoundReport(
        name="proposition",
        inputs={"d": d, "m": m, "B": float(B)},
        value=value,
        side_conditions=(("B >= 5^(2d)", B >= 5 ** (2 * d)),),
    )


def lemma_bounds(d, c, B, C1, C2):
    """The three per-range counts used to assemble the main bound."""
    if d < 3:
        raise InputError("domain: d must be at least 3")
    if c <= 0:
        raise InputError("domain: c must be positive")
    out = {}
    out["lemma6"] = BoundReport(
        name="lemma6",
        inputs={"d": d, "c": float(c)},
        value=float(2 * d * (2 * c + 1)),
        side_conditions=(("B >= 5^(2d)", B >= 5 ** (2 * d)),),
    )
    if not C2 > C1 > B > 1:
        raise InputError("domain: need C2 > C1 > B > 1")

    def expr7(log):
        return 2 * d * (1 + log(log(C2) / (log(C1) - log(B))) / log(d - 1))

    out["lemma7"] = BoundReport(
        name="lemma7",
        inputs={"d": d, "B": float(B), "C1": float(C1), "C2": float(C2)},
        value=_crosscheck(expr7(math.log), expr7),
        side_conditions=(("C2 > C1 > B", True),),
    )

    def expr8(log):
        return 2 * d * (4 + log(2**9 * 3**3 * 5**2) / log(d - Fraction(5, 4)))

    out["lemma8"] = BoundReport(
        name="lemma8",
        inputs={"d": d},
        value=_crosscheck(expr8(math.log), expr8),
        side_conditions=(("|y| >= max(B^(4(d-1)), (8^d M(F_L,m))^(2^10 3^3 5^3))", None),),
    )
    return out


def A_of_lattice(form, m, lattice):
    """Scale parameter A with det = A * m^(2/d) / |D|^(1/(d(d-1)))."""
    d = form.degree
    absD = abs(form.discriminant())
    return lattice.det * absD ** (1.0 / (d * (d - 1))) / m ** (2.0 / d)


def B_lower_bound(form, m, lattice):
    """Certified lower bound A^(d/2) for M(F_Lambda, m)/m."""
    return A_of_lattice(form, m, lattice) ** (form.degree / 2.0)


# ---------------------------------------------------------------------------
# Heights of composed forms


@dataclass(frozen=True)
class HeightReport:
    H: float
    M_upper: float
    MofFLm_upper: float | None
    exact: dict


_UNIMODULAR_TWEAKS = (
    ((0, 1), (1, 0)),
    ((1, 1), (0, 1)),
    ((1, -1), (0, 1)),
    ((1, 0), (1, 1)),
    ((1, 0), (-1, 1)),
    ((1, 2), (0, 1)),
    ((1, -2), (0, 1)),
    ((1, 0), (2, 1)),
    ((1, 0), (-2, 1)),
)


def heights_of_lattice(form, lattice, m, solutions=()):
    """Heights of F restricted to the lattice.

    H is the height in the reduced basis; M_upper bounds the minimum over
    all bases; MofFLm_upper bounds the minimum over bases whose first vector
    is one of the supplied solutions (absent when none are given).
    """
    rb = lat_mod.reduce_lattice(lattice)
    (ux, uy), (wx, wy) = rb.u, rb.w
    FL = form.compose(((ux, wx), (uy, wy)))
    H = forms_mod.height_H(FL)
    m_upper = H
    for S in _UNIMODULAR_TWEAKS:
        m_upper = min(m_upper, forms_mod.height_H(FL.compose(S)))

    best = None
    for sol in solutions:
        point = sol.point if hasattr(sol, "point") else tuple(sol)
        cand = _min_height_with_first_vector(form, lattice, point)
        if cand is not None:
            best = cand if best is None else min(best, cand)
    return HeightReport(
        H=H,
        M_upper=m_upper,
        MofFLm_upper=best,
        exact={"H": True, "M_upper": False, "MofFLm_upper": False},
    )


def _min_height_with_first_vector(form, lattice, z0):
    """min over the shear parameter of H(F in basis (z0, z0' + t z0))."""
    s, t = lattice.coordinates(z0)
    g = math.gcd(s, t)
    if g != 1:
        return None  # not primitive in the lattice; cannot start a basis
    _, a, b = lat_mod._extgcd(s, t)
    # (s, t) and (-b, a) form a unimodular pair of lattice coordinates
    (v1x, v1y), (v2x, v2y) = lattice.basis()
    z0p = (-b * v1x + a * v2x, -b * v1y + a * v2y)

    fac = forms_mod.complex_factorization(form)
    ctx = ivl.context(64)
    centers = []
    for i, f in enumerate(fac.factors):
        if f.is_infinity:
            l0 = complex(z0[1], 0.0)
            l1 = complex(z0p[1], 0.0)
        else:
            alpha = f.root_box(ctx).midpoint()
            l0 = z0[0] - alpha * z0[1]
            l1 = z0p[0] - alpha * z0p[1]
        if abs(l0) > 1e-12:
            centers.append(-(l1 * l0.conjugate()).real / abs(l0) ** 2)
    if centers:
        lo = math.floor(min(centers)) - 2
        hi = math.ceil(max(centers)) + 2
    else:
        lo, hi = -3, 3
    best = None
    for shear in range(lo, hi + 1):
        basis2 = (z0p[0] + shear * z0[0], z0p[1] + shear * z0[1])
        T = ((z0[0], basis2[0]), (z0[1], basis2[1]))
        h = forms_mod.height_H(form.compose(T))
        best = h if best is None else min(best, h)
    return best


# ---------------------------------------------------------------------------
# Large-m classifier


@dataclass(frozen=True)
class ThresholdReport:
    m0: int
    report: BoundReport


def theorem3_threshold(form, eps):
    """Least m(F)-threshold making both largeness conditions hold, computed
    conservatively from m(F) >= m/|D(F)|."""
    d = form.degree
    eps = Fraction(eps)
    if d < 5:
        raise InputError("domain: classifier needs degree >= 5")
    if not 0 < eps < d - 4:
        raise InputError("domain: need 0 < eps < d - 4")
    absD = abs(form.discriminant())
    if form.content() != 1:
        raise InputError("content must be 1")

    # condition (i): m(F)^(1+eps/12) > m, guaranteed once m > |D|^((12+eps)/eps)
    a, b = eps.numerator, eps.denominator
    root, exact = sympy.integer_nthroot(absD ** (12 * b + a), a)
    thr1 = int(root) + 1

    # condition (ii): m(F)^(eps/12) >= 2^(d-2) H^(d-2) / ((2/pi)^(1+eps/2) |D|^(1/2))
    ctx = ivl.context(200)
    h = forms_mod.height_interval(form, 192)
    two_over_pi = ctx.mpf(2) / ctx.pi
    rhs = (
        ctx.mpf(2 ** (d - 2))
        * h ** (d - 2)
        / (ctx.exp(ctx.log(two_over_pi) * ivl.from_fraction(ctx, 1 + eps / 2)) * ctx.sqrt(ctx.mpf(absD)))
    )
    mp = mpmath.mp.clone()
    mp.prec = 220
    rhs_hi = mp.mpf(rhs.b)
    if rhs_hi <= 1:
        thr2 = absD
    else:
        need = mp.mpf(absD) * mp.exp(mp.log(rhs_hi) * 12 * b / a)
        thr2 = int(mp.ceil(need))
    m0 = max(thr1, thr2, 1)
    report = BoundReport(
        name="theorem3-threshold",
        inputs={
            "d": d,
            "eps": float(eps),
            "abs_disc": absD,
            "H": float(h.mid),
            "threshold_condition_i": float(thr1) if thr1 < 10**300 else math.inf,
            "threshold_condition_ii": float(thr2) if thr2 < 10**300 else math.inf,
        },
        value=float(m0) if m0 < 10**300 else math.inf,
        side_conditions=(
            ("m > |D|^((12+eps)/eps) forces m(F)^(1+eps/12) > m", None),
            ("m >= |D| * rhs^(12/eps) forces m(F)^(eps/12) >= rhs", None),
        ),
    )
    return ThresholdReport(m0=m0, report=report)


@dataclass(frozen=True)
class LatticeClassification:
    lattice: object
    solutions: tuple
    exceptional: tuple
    non_exceptional_pairs: tuple
    pair_ok: bool
    norm_ok: bool


@dataclass(frozen=True)
class Theorem3Report:
    m: int
    m_F: int
    eps: float
    threshold: int
    side_conditions: tuple
    rows: tuple

    @property
    def ok(self):
        return all(r.pair_ok and r.norm_ok for r in self.rows)


def theorem3_classify(form, m, eps, region, config=DEFAULT_CONFIG):
    """Per-lattice classification of solutions into exceptional points and
    the (at most one expected) short non-exceptional pair."""
    d = form.degree
    epsf = Fraction(eps)
    if d < 5 or not 0 < epsf < d - 4:
        raise InputError("domain: need degree >= 5 and 0 < eps < d - 4")
    m_F = padic.m_of_F(form, m, config.factorization_budget)
    thr = theorem3_threshold(form, epsf)
    side = (
        ("m >= c(F, eps)", m >= thr.m0),
        ("region complete", region.complete),
    )
    eps_class = Fraction(d - 4) - epsf
    # norm bound: ||v||^2 < m_F^((6b+a)/(6b+3a)) for eps = a/b, exactly compared
    a, b = epsf.numerator, epsf.denominator
    num_exp, den_exp = 6 * b + a, 6 * b + 3 * a

    lats = lat_mod.theorem1_lattices(form, m_F, config.factorization_budget)
    inst = ThueInstance(form, m, "leq")
    rows = []
    for L in lats:
        sols = lattice_solutions(inst, L, region, config)
        pairs = {}
        for s in sols:
            key = s.point if (s.x, s.y) >= (-s.x, -s.y) else (-s.x, -s.y)
            pairs.setdefault(key, []).append(s)
        exceptional = []
        non_exceptional = []
        for key in sorted(pairs):
            verdict = forms_mod.epsilon_exceptional(
                form,
                key,
                eps_class,
                precision=config.precision_bits,
                max_precision=config.max_precision_bits,
            )
            if verdict.verdict:
                exceptional.append(key)
            else:
                non_exceptional.append(key)
        norm_ok = all(
            (p[0] * p[0] + p[1] * p[1]) ** den_exp < m_F**num_exp for p in non_exceptional
        )
        rows.append(
            LatticeClassification(
                lattice=L,
                solutions=tuple(sols),
                exceptional=tuple(exceptional),
                non_exceptional_pairs=tuple(non_exceptional),
                pair_ok=len(non_exceptional) <= 1,
                norm_ok=norm_ok,
            )
        )
    return Theorem3Report(
        m=m,
        m_F=m_F,
        eps=float(epsf),
        threshold=thr.m0,
        side_conditions=side,
        rows=tuple(rows),
    )
