import math
import random

import pytest

from thuelat.errors import HypothesisError, InputError
from thuelat.lattices import (
    Lattice2,
    all_sublattices,
    divisors,
    enumerate_points,
    from_congruences,
    hnf_from_generators,
    minkowski_holds,
    reduce_lattice,
    sigma,
    theorem1_lattices,
)
from thuelat.padic import LocalFactor, local_factors


def test_lattice_invariants():
    L = Lattice2(7, 3, 1)
    assert L.det == 7
    assert L.serialize() == "7: 7 3 1"
    assert Lattice2.parse("7: 7 3 1") == L
    with pytest.raises(InputError):
        Lattice2(7, 7, 1)  # b out of range
    with pytest.raises(InputError):
        Lattice2.parse("6: 7 3 1")  # determinant mismatch


def test_hnf_examples():
    assert hnf_from_generators([(1, 0), (0, 1)]) == Lattice2(1, 0, 1)
    assert hnf_from_generators([(7, 0), (3, 1)]) == Lattice2(7, 3, 1)
    assert hnf_from_generators([(3, 1), (1, 5)]) == Lattice2(14, 3, 1)
    with pytest.raises(InputError):
        hnf_from_generators([(2, 4), (1, 2)])  # rank 1


def test_hnf_generator_order_irrelevant():
    rng = random.Random(2)
    for _ in range(50):
        gens = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(3)]
        try:
            L = hnf_from_generators(gens)
        except InputError:
            continue
        rng.shuffle(gens)
        assert hnf_from_generators(gens) == L


def test_hnf_roundtrip():
    rng = random.Random(9)
    for _ in range(60):
        a, b, c = rng.randint(1, 30), 0, rng.randint(1, 30)
        b = rng.randrange(a)
        L = Lattice2(a, b, c)
        assert hnf_from_generators(L.basis()) == L


def test_membership_matches_congruence():
    L = Lattice2(7, 3, 1)  # x = 3y mod 7
    assert L.contains((3, 1)) and L.contains((0, 0)) and not L.contains((1, 1))
    for x in range(-10, 10):
        for y in range(-10, 10):
            assert L.contains((x, y)) == ((x - 3 * y) % 7 == 0)


def test_from_congruences_examples():
    f7 = LocalFactor(7, 1, 1, 4)  # X - 3Y
    assert from_congruences([(7, 1, f7)]) == Lattice2(7, 3, 1)
    f5 = LocalFactor(5, 1, 1, 3)  # X - 2Y
    assert from_congruences([(7, 1, f7), (5, 1, f5)]) == Lattice2(35, 17, 1)
    assert from_congruences([]) == Lattice2(1, 0, 1)
    with pytest.raises(InputError):
        from_congruences([(7, 1, f7), (7, 1, f7)])
    with pytest.raises(InputError):
        from_congruences([(7, 2, f7)])  # factor only known mod 7


def test_from_congruences_pointwise(corpus):
    """Membership in the CRT lattice equals the per-prime congruences."""
    rng = random.Random(31)
    for form in corpus:
        sets = []
        for p in (3, 5, 7, 11, 13):
            lfs = local_factors(form, p, 2 * _vp(form.discriminant(), p) + 2)
            if lfs.count:
                sets.append((p, lfs.factors[0]))
            if len(sets) == 2:
                break
        if len(sets) < 2:
            continue
        (p1, f1), (p2, f2) = sets
        e1, e2 = 1, 2
        if f2.k < e2:
            e2 = 1
        L = from_congruences([(p1, e1, f1), (p2, e2, f2)])
        assert L.det == p1**e1 * p2**e2
        for _ in range(200):
            x, y = rng.randint(-60, 60), rng.randint(-60, 60)
            inside = (
                f1.evaluate(x, y) % p1**e1 == 0 and f2.evaluate(x, y) % p2**e2 == 0
            )
            assert L.contains((x, y)) == inside


def _vp(n, p):
    v = 0
    n = abs(n)
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def test_theorem1_lattices_examples(cubic, gauss):
    lats = theorem1_lattices(cubic, 7)
    assert sorted(L.serialize() for L in lats) == ["7: 7 3 1", "7: 7 5 1", "7: 7 6 1"]
    assert theorem1_lattices(gauss, 3) == []
    lats35 = theorem1_lattices(cubic, 35)
    assert len(lats35) == 3 and all(L.det == 35 for L in lats35)
    with pytest.raises(HypothesisError):
        theorem1_lattices(cubic, 21)


def test_reduce_examples():
    rb = reduce_lattice(Lattice2(7, 3, 1))
    assert (rb.lambda1_sq, rb.lambda2_sq) == (5, 10)
    assert rb.u == (1, -2)
    rb2 = reduce_lattice(Lattice2(1, 0, 1))
    assert (rb2.lambda1_sq, rb2.lambda2_sq) == (1, 1)
    rb3 = reduce_lattice(Lattice2(12, 0, 1))
    assert (rb3.lambda1_sq, rb3.lambda2_sq) == (1, 144)


def test_reduce_against_brute_force():
    """lambda1^2 equals the brute-force minimum over enumerated points."""
    rng = random.Random(6)
    for _ in range(80):
        m = rng.randint(2, 400)
        a = rng.choice(divisors(m))
        L = Lattice2(a, rng.randrange(a), m // a)
        rb = reduce_lattice(L)
        pts = enumerate_points(L, norm_sq_bound=4 * m)
        nonzero = [x * x + y * y for x, y in pts if (x, y) != (0, 0)]
        assert rb.lambda1_sq == min(nonzero)
        # reduced basis is a genuine basis: determinant matches
        (ux, uy), (wx, wy) = rb.u, rb.w
        assert abs(ux * wy - uy * wx) == L.det
        # Lagrange condition
        assert 2 * abs(ux * wx + uy * wy) <= rb.lambda1_sq


def test_minkowski_certified():
    for m in range(1, 120):
        for L in all_sublattices(m):
            rb = reduce_lattice(L)
            assert minkowski_holds(rb.lambda1_sq, rb.lambda2_sq, m)


def test_sigma_counts():
    assert sigma(6) == 12
    assert sigma(12) == 28
    assert len(list(all_sublattices(6))) == 12
    assert len(list(all_sublattices(1))) == 1


def test_all_sublattices_exact(corpus):
    for m in (1, 2, 6, 12, 60, 97):
        lats = list(all_sublattices(m))
        assert len(lats) == sigma(m)
        assert len(set(lats)) == len(lats)
        assert all(L.det == m for L in lats)


def test_all_sublattices_sharding():
    for m in (12, 36, 97):
        whole = set(all_sublattices(m))
        parts = [set(all_sublattices(m, shard=(i, 3))) for i in range(3)]
        assert whole == parts[0] | parts[1] | parts[2]
        assert sum(len(p) for p in parts) == len(whole)


def test_enumerate_points_examples():
    assert set(enumerate_points(Lattice2(1, 0, 1), radius=1)) == {
        (0, 0), (1, 0), (-1, 0), (0, 1), (0, -1),
    }
    assert set(enumerate_points(Lattice2(7, 3, 1), radius=math.sqrt(5))) == {
        (0, 0), (1, -2), (-1, 2),
    }
    assert enumerate_points(Lattice2(7, 3, 1), radius=0) == [(0, 0)]


def test_enumerate_points_predicate_and_budget():
    from thuelat.errors import BudgetError

    pts = enumerate_points(Lattice2(1, 0, 1), radius=3, predicate=lambda v: v[0] > 0)
    assert pts and all(x > 0 for x, _ in pts)
    with pytest.raises(BudgetError):
        enumerate_points(Lattice2(1, 0, 1), radius=10**5, budget=100)


def test_enumerate_points_against_direct_scan():
    rng = random.Random(12)
    for _ in range(40):
        m = rng.randint(2, 150)
        a = rng.choice(divisors(m))
        L = Lattice2(a, rng.randrange(a), m // a)
        bound = rng.randint(1, 4 * m)
        got = set(enumerate_points(L, norm_sq_bound=bound))
        r = math.isqrt(bound)
        expected = {
            (x, y)
            for x in range(-r, r + 1)
            for y in range(-r, r + 1)
            if x * x + y * y <= bound and L.contains((x, y))
        }
        assert got == expected


def test_unique_covering_lattice():
    """A primitive v with m > (pi/2)||v||^2 lies in exactly one sublattice
    of determinant m."""
    rng = random.Random(77)
    for _ in range(25):
        x, y = rng.randint(-6, 6), rng.randint(-6, 6)
        if math.gcd(x, y) != 1:
            continue
        nsq = x * x + y * y
        m = rng.randint(int(math.pi / 2 * nsq) + 1, int(math.pi / 2 * nsq) + 40)
        owners = [L for L in all_sublattices(m) if L.contains((x, y))]
        assert len(owners) == 1
