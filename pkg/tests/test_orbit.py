import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models import Algebra, InvalidPartitionError, Orbit, Partition, Series
from orbit import (
    centralizer_dimension,
    dim_orbit,
    enumerate_orbits,
    h2_orbit,
    h2_universal_cover,
    make_orbit,
    minimal_orbit,
    orbit_table,
    pi1_adjoint,
    regular_orbit,
)
from partition import dominates

SO = Series.SO
SP = Series.SP


def orbit(series, size, *parts):
    return make_orbit(Algebra(series, size), Partition(parts))


def test_make_orbit_rejects_invalid_partition():
    with pytest.raises(InvalidPartitionError) as excinfo:
        orbit(SO, 15, 9, 4, 2)
    assert "even part 4 occurs once" in str(excinfo.value)
    assert excinfo.value.violating_part == 4
    assert excinfo.value.multiplicity == 1


def test_make_orbit_flags_very_even():
    assert orbit(SO, 8, 4, 4).very_even
    assert not orbit(SO, 8, 5, 3).very_even


def test_enumerate_orbits():
    sp4 = enumerate_orbits(Algebra(SP, 4))
    assert [o.partition.parts for o in sp4] == [(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    so8 = [o.partition.parts for o in enumerate_orbits(Algebra(SO, 8))]
    assert len(so8) == 10
    assert (4, 4) in so8
    assert (6, 2) not in so8


@pytest.mark.parametrize("series,size,parts,expected", [
    (SO, 8, (5, 3), 22),
    (SO, 8, (4, 4), 20),
    (SO, 8, (5, 1, 1, 1), 20),
    (SP, 4, (2, 2), 6),
    (SP, 4, (2, 1, 1), 4),
    (SO, 9, (5, 2, 2), 26),
    (SO, 9, (3, 3, 3), 24),
    (SO, 12, (4, 4, 3, 1), 48),
    (SP, 30, (10, 8, 4, 3, 3, 1, 1), 400),
    (SP, 8, (6, 2), 30),
])
def test_dim_orbit(series, size, parts, expected):
    o = orbit(series, size, *parts)
    assert dim_orbit(o) == expected
    assert centralizer_dimension(o) == Algebra(series, size).dimension - expected


def test_zero_orbit_has_dimension_zero():
    assert dim_orbit(orbit(SP, 6, 1, 1, 1, 1, 1, 1)) == 0
    assert dim_orbit(Orbit(Algebra(SO, 0), Partition(()))) == 0


@pytest.mark.parametrize("series,size,parts,exponent", [
    (SP, 30, (10, 8, 4, 3, 3, 1, 1), 2),
    (SO, 15, (9, 3, 3), 1),
    (SP, 4, (2, 2), 1),
    (SP, 4, (2, 1, 1), 0),
    (SO, 8, (5, 3), 0),
    (SO, 8, (3, 3, 1, 1), 1),
    (SO, 8, (4, 4), 0),
    (SO, 7, (7,), 0),
])
def test_pi1_adjoint(series, size, parts, exponent):
    assert pi1_adjoint(orbit(series, size, *parts)).exponent == exponent


def test_pi1_rendering():
    assert str(pi1_adjoint(orbit(SP, 30, 10, 8, 4, 3, 3, 1, 1))) == "(Z/2)^2"
    assert pi1_adjoint(orbit(SP, 30, 10, 8, 4, 3, 3, 1, 1)).order == 4
    assert str(pi1_adjoint(orbit(SO, 8, 5, 3))) == "1"


def test_h2_orbit():
    assert h2_orbit(orbit(SO, 14, 4, 4, 3, 3)) == 1
    assert h2_orbit(orbit(SO, 6, 3, 3)) == 1
    assert h2_orbit(orbit(SO, 8, 5, 3)) == 0
    assert h2_orbit(orbit(SO, 9, 3, 3, 3)) == 0
    assert h2_orbit(orbit(SP, 4, 2, 2)) == 0


def test_h2_universal_cover():
    assert h2_universal_cover(orbit(SO, 9, 5, 2, 2)) == 0
    assert h2_universal_cover(orbit(SO, 9, 3, 3, 1, 1, 1)) == 1
    assert h2_universal_cover(orbit(SP, 4, 2, 2)) == 1
    assert h2_universal_cover(orbit(SP, 8, 4, 4)) == 1
    assert h2_universal_cover(orbit(SP, 30, 10, 8, 4, 3, 3, 1, 1)) == 0


def test_regular_orbit():
    assert regular_orbit(Algebra(SP, 6)).partition == Partition((6,))
    assert regular_orbit(Algebra(SO, 8)).partition == Partition((7, 1))
    for g in [Algebra(SO, n) for n in range(3, 12)] + [Algebra(SP, n) for n in range(2, 13, 2)]:
        assert dim_orbit(regular_orbit(g)) == g.dimension - g.rank


@pytest.mark.parametrize("n", range(1, 7))
def test_minimal_orbit_of_symplectic_algebra(n):
    o = minimal_orbit(Algebra(SP, 2 * n))
    assert o.partition == Partition((2,) + (1,) * (2 * n - 2))
    assert dim_orbit(o) == 2 * n


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([Algebra(SO, n) for n in range(3, 11)] + [Algebra(SP, n) for n in range(2, 11, 2)]))
def test_dimensions_are_even_and_monotone(g):
    orbits = enumerate_orbits(g)
    for upper in orbits:
        assert dim_orbit(upper) % 2 == 0
        for lower in orbits:
            if upper.partition != lower.partition and dominates(upper.partition, lower.partition):
                assert dim_orbit(upper) > dim_orbit(lower)


def test_orbit_table_rows():
    rows = orbit_table(Algebra(SP, 4))
    assert [row['partition'] for row in rows] == ["4", "2,2", "2,1,1", "1,1,1,1"]
    assert [row['dimension'] for row in rows] == [8, 6, 4, 0]


def test_orbit_from_parts():
    o = Orbit.from_parts(Algebra(SO, 8), [4, 4])
    assert o.very_even
    assert o == orbit(SO, 8, 4, 4)
    assert Orbit.from_parts(Algebra(SP, 6), (1, 2, 1, 2)).partition == Partition((2, 2, 1, 1))
    with pytest.raises(InvalidPartitionError):
        Orbit.from_parts(Algebra(SP, 4), [3, 1])
