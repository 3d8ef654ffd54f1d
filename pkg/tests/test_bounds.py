import math
import random
from fractions import Fraction

import pytest

from thuelat.bounds import (
    A_of_lattice,
    B_lower_bound,
    corollary_bound,
    heights_of_lattice,
    lemma_bounds,
    proposition_bound,
    stewart_bound,
    theorem2_bound,
    theorem3_classify,
    theorem3_threshold,
)
from thuelat.enumeration import SearchRegion, ThueInstance, brute_solutions, default_region
from thuelat.errors import InputError
from thuelat.forms import BinaryForm, height_H
from thuelat.lattices import Lattice2


def test_theorem2_spot():
    rep = theorem2_bound(3, 10**6, 5**4)
    assert rep.name == "theorem2-large-A"
    assert rep.value == pytest.approx(347.01, abs=0.05)


def test_theorem2_small_branch():
    rep = theorem2_bound(3, 10**6, 5**4 / 2)
    assert rep.name == "theorem2-small-A"
    assert rep.side_conditions == (("A >= 5^4", False),)
    # prefactor 2*5^4/A = 4 against the small-branch core
    core = theorem2_bound(3, 10**6, 5**4).value
    assert rep.value > core


def test_theorem2_branch_cut():
    # the small-A branch carries the prefactor 2*5^4/A, which tends to 2 at
    # the cut while the inner expressions coincide there
    lo = theorem2_bound(5, 10**8, 5**4 - 1e-9).value
    hi = theorem2_bound(5, 10**8, 5**4).value
    assert lo == pytest.approx(2 * hi, rel=1e-6)


def test_theorem2_monotonicity():
    rng = random.Random(15)
    for _ in range(40):
        d = rng.randint(3, 9)
        m = rng.randint(10, 10**7)
        A = rng.uniform(1.5, 10**6)
        v = theorem2_bound(d, m, A).value
        assert theorem2_bound(d, 2 * m, A).value >= v
        if A >= 5**4:
            assert theorem2_bound(d, m, 2 * A).value <= v


def test_theorem2_domain():
    with pytest.raises(InputError):
        theorem2_bound(2, 100, 10)


def test_corollary():
    assert corollary_bound(3, 10**6, 1.0, 0).value == 0.0
    one = corollary_bound(3, 10**6, 1.0, 1).value
    three = corollary_bound(3, 10**6, 1.0, 3).value
    assert three == pytest.approx(3 * one, rel=1e-12)
    expected = 2500 * 3 * (43 + math.log(2 + math.log(10**6)) / math.log(2)) * 3
    assert three == pytest.approx(expected, rel=1e-12)


def test_stewart():
    assert stewart_bound(3, 1.0, 0).value == 17500.0
    assert stewart_bound(3, 1.0, 2).value == pytest.approx(17500.0 * 9)
    big_eps = stewart_bound(4, 1e9, 1)
    assert big_eps.value == pytest.approx(5600 * 4 * 4, rel=1e-6)
    assert stewart_bound(3, 1.0, 0).side_conditions[0][1] is None
    checked = stewart_bound(3, 1.0, 1, m=10**6, m_prime=10**4, abs_disc=27)
    assert checked.side_conditions[0][1] in (True, False)


def test_proposition():
    rep = proposition_bound(3, 10**6, 5.0**6)
    assert rep.side_conditions == (("B >= 5^(2d)", True),)
    weaker = proposition_bound(3, 10**6, 5.0**8)
    assert weaker.value < rep.value
    low_B = proposition_bound(3, 10**6, 5.0)
    assert low_B.side_conditions == (("B >= 5^(2d)", False),)


def test_lemma_bounds():
    d, B = 3, 5.0**6
    reports = lemma_bounds(d, 2, B, B**2, B ** (4 * (d - 1)))
    assert reports["lemma6"].value == 30.0  # 10d at c = 2
    assert reports["lemma7"].value == pytest.approx(
        2 * d * (2 + math.log(4) / math.log(d - 1)), rel=1e-9
    )
    five = lemma_bounds(5, 2, 5.0**10, 5.0**21, 5.0**160)
    assert five["lemma8"].value == pytest.approx(
        10 * (4 + math.log(2**9 * 3**3 * 5**2) / math.log(5 - 1.25)), rel=1e-9
    )


def test_A_of_lattice(cubic):
    a = A_of_lattice(cubic, 7, Lattice2(7, 5, 1))
    assert a == pytest.approx(7 ** (1 / 3) * 27 ** (1 / 6), rel=1e-9)
    double = A_of_lattice(cubic, 7, Lattice2(14, 5, 1))
    assert double == pytest.approx(2 * a, rel=1e-9)
    d = cubic.degree
    disc = abs(cubic.discriminant())
    det_for_unit = 49 ** (1 / 3) / disc ** (1 / 6)
    # A = 1 exactly when det equals m^(2/d)/|D|^(1/(d(d-1)))
    assert A_of_lattice(cubic, 7, Lattice2(7, 0, 1)) * det_for_unit / 7 == pytest.approx(
        det_for_unit * a / 7, rel=1e-9
    )
    assert B_lower_bound(cubic, 7, Lattice2(7, 5, 1)) == pytest.approx(a**1.5, rel=1e-9)


def test_heights_of_lattice(cubic):
    inst = ThueInstance(cubic, 2, "leq")
    sols = brute_solutions(inst, SearchRegion(5.0, False, "user-radius"))
    assert (1, 1) in {s.point for s in sols}
    rep = heights_of_lattice(cubic, Lattice2(1, 0, 1), 2, sols)
    assert rep.H == pytest.approx(height_H(cubic), rel=1e-9)
    assert rep.M_upper <= rep.H + 1e-12
    d = cubic.degree
    floor = abs(cubic.discriminant()) ** (1 / (2 * (d - 1)))
    assert rep.M_upper >= floor * (1 - 1e-9)
    assert rep.MofFLm_upper is not None
    assert rep.MofFLm_upper >= floor * (1 - 1e-9)
    assert rep.exact == {"H": True, "M_upper": False, "MofFLm_upper": False}


def test_heights_no_solutions(cubic):
    rep = heights_of_lattice(cubic, Lattice2(7, 5, 1), 7, ())
    assert rep.MofFLm_upper is None
    # height of the composed form in any basis matches a direct composition
    from thuelat.lattices import reduce_lattice

    rb = reduce_lattice(Lattice2(7, 5, 1))
    T = ((rb.u[0], rb.w[0]), (rb.u[1], rb.w[1]))
    assert rep.H == pytest.approx(height_H(cubic.compose(T)), rel=1e-9)


def test_theorem3_threshold(quintic):
    thr = theorem3_threshold(quintic, Fraction(1, 2))
    assert thr.m0 > 10**100  # far beyond desk scale for this form
    tighter = theorem3_threshold(quintic, Fraction(1, 4))
    assert tighter.m0 > thr.m0  # shrinking eps makes the threshold worse
    with pytest.raises(InputError):
        theorem3_threshold(BinaryForm.parse("4: 1 0 0 1 1"), Fraction(1, 2))
    with pytest.raises(InputError):
        theorem3_threshold(quintic, Fraction(3, 2))  # eps >= d - 4


def test_theorem3_classify_side_condition_path(quintic):
    rep = theorem3_classify(quintic, 7, Fraction(1, 2), SearchRegion(40.0, False, "user-radius"))
    conds = dict(rep.side_conditions)
    assert conds["m >= c(F, eps)"] is False
    assert rep.rows and rep.ok


def test_theorem3_classify_nonempty(quintic):
    rep = theorem3_classify(
        quintic, 1022, Fraction(1, 2), SearchRegion(60.0, False, "user-radius")
    )
    assert rep.m_F == 511
    (row,) = rep.rows
    assert {s.point for s in row.solutions} == {(4, 1), (-4, -1)}
    assert row.non_exceptional_pairs == ((4, 1),)
    assert row.pair_ok and row.norm_ok


def test_corollary_dominates_observed(cubic):
    """The all-lattices bound covers the total observed solution count when
    the divisor is prime to D and A >= 1."""
    m = 7  # gcd(7, 27) = 1
    from thuelat.lattices import theorem1_lattices
    from thuelat.enumeration import lattice_solutions
    from thuelat.padic import c_F_m

    inst = ThueInstance(cubic, m, "leq")
    reg = SearchRegion(50.0, False, "user-radius")
    lats = theorem1_lattices(cubic, m)
    total = sum(len(lattice_solutions(inst, L, reg)) for L in lats)
    A = A_of_lattice(cubic, m, lats[0])
    assert A >= 1
    rep = corollary_bound(cubic.degree, m, A, c_F_m(cubic, m))
    assert total <= rep.value


def test_lemma6_bounds_short_range_count(quartic):
    """In a basis starting at a solution, at most 2d(2c+1) further solutions
    have second coordinate between 1 and B^(2c) in absolute value."""
    inst = ThueInstance(quartic, 16, "leq")
    reg = default_region(inst)
    L = Lattice2(3000, 0, 1)
    A = A_of_lattice(quartic, 16, L)
    B = B_lower_bound(quartic, 16, L)
    assert B >= 5 ** (2 * quartic.degree)
    from thuelat.enumeration import lattice_solutions
    from thuelat.lattices import _extgcd

    sols = lattice_solutions(inst, L, reg)
    assert sols
    z0 = sols[0].point
    s, t = L.coordinates(z0)
    _, a, b = _extgcd(s, t)
    (v1x, v1y), (v2x, v2y) = L.basis()
    z0p = (-b * v1x + a * v2x, -b * v1y + a * v2y)
    det = z0[0] * z0p[1] - z0[1] * z0p[0]
    in_range = 0
    for sol in sols:
        # second coordinate of sol in the basis (z0, z0')
        y_coord, rem = divmod(z0[0] * sol.y - z0[1] * sol.x, det)
        assert rem == 0
        if 1 <= abs(y_coord) <= B**4:
            in_range += 1
    assert in_range < lemma_bounds(quartic.degree, 2, B, B**2, B**16)["lemma6"].value


def test_observed_counts_below_theorem2(quartic):
    """Complete-region instances stay strictly under the theorem2 value."""
    mu_radius_m = 16
    inst = ThueInstance(quartic, mu_radius_m, "leq")
    reg = default_region(inst)
    assert reg.complete
    for L in (Lattice2(3000, 0, 1), Lattice2(5000, 17, 1), Lattice2(2500, 99, 2)):
        A = A_of_lattice(quartic, mu_radius_m, L)
        assert A >= 5**4
        from thuelat.enumeration import lattice_solutions

        count = len(lattice_solutions(inst, L, reg))
        bound = theorem2_bound(quartic.degree, mu_radius_m, A)
        assert count < bound.value
        prop = proposition_bound(quartic.degree, mu_radius_m, B_lower_bound(quartic, mu_radius_m, L))
        assert count < prop.value
