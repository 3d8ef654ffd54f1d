import math
from fractions import Fraction

import pytest

from thuelat.census import (
    CSV_HEADER,
    census_point,
    census_sweep,
    csv_line,
    max_short_norm_sq,
)
from thuelat.errors import InputError
from thuelat.lattices import sigma


def test_census_101():
    row = census_point(101, Fraction(1, 4), cross_check=True)
    assert (row.total, row.short_count) == (102, 12)
    assert row.proportion == pytest.approx(12 / 102)
    assert row.bound == pytest.approx(4 * math.pi / math.sqrt(101))
    assert row.bound_holds()


def test_census_trivial_rows():
    row = census_point(1, Fraction(1, 8))
    assert (row.total, row.short_count) == (1, 1)
    for m in (2, 17, 50):
        assert census_point(m, Fraction(51, 100)).short_count == 0


def test_max_short_norm_sq():
    assert max_short_norm_sq(101, Fraction(1, 4)) == 10  # floor(sqrt(101))
    assert max_short_norm_sq(100, Fraction(1, 4)) == 10
    assert max_short_norm_sq(99, Fraction(1, 4)) == 9
    assert max_short_norm_sq(7, Fraction(1, 2)) == 1
    assert max_short_norm_sq(7, Fraction(3, 4)) == 0


def test_methods_agree_ranges():
    for m in range(2, 160):
        a = census_point(m, Fraction(1, 4), method="lattice")
        b = census_point(m, Fraction(1, 4), method="points")
        assert a.short_count == b.short_count, m
        assert a.total == sigma(m)


def test_shrinking_delta_monotone():
    for m in (36, 97, 144):
        counts = [
            census_point(m, d).short_count
            for d in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2))
        ]
        assert counts == sorted(counts, reverse=True)


def test_sweep_summary():
    rows, summary = census_sweep(range(100, 140), Fraction(1, 4), cross_check=True)
    assert summary.rows == 40
    assert summary.bound_violations == 0
    assert summary.minkowski_violations == 0
    assert summary.max_scaled_proportion <= 4 * math.pi


def test_sharded_census_matches():
    from thuelat.pipeline import census_pipeline

    plain_rows, plain_sum = census_pipeline(100, 110, "0.25")
    shard_rows, shard_sum = census_pipeline(100, 110, "0.25", shards=3)
    assert [(r.m, r.total, r.short_count) for r in plain_rows] == [
        (r.m, r.total, r.short_count) for r in shard_rows
    ]
    assert plain_sum == shard_sum


def test_csv_format():
    row = census_point(101, Fraction(1, 4))
    assert CSV_HEADER == "m,delta,total,short_count,proportion,bound_4pi_m_minus_2delta"
    line = csv_line(row)
    assert line.startswith("101,0.25,102,12,")
    assert len(line.split(",")) == 6


def test_census_validation():
    with pytest.raises(InputError):
        census_point(0, Fraction(1, 4))
    with pytest.raises(InputError):
        census_point(10, Fraction(0))
    with pytest.raises(InputError):
        # delta so small that the disk holds points with (pi/2)||v||^2 >= m
        census_point(100, Fraction(1, 100), method="points")
