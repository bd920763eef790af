import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from models import Algebra, Orbit, Partition, Pi1Group, Series
from partition import (
    collapse_down,
    enumerate_partitions,
    is_valid,
    is_very_even,
    require_valid,
    special_indices,
    transpose,
)


def make_orbit(g: Algebra, p: Partition) -> Orbit:
    """Validate p for g and wrap it; raises InvalidPartitionError naming the offending part"""
    require_valid(p, g)
    return Orbit(g, p, is_very_even(p, g))


@lru_cache(maxsize=None)
def enumerate_orbits(g: Algebra) -> Tuple[Orbit, ...]:
    """Every nilpotent orbit partition of g in reverse lexicographic order, very even ones once"""
    orbits = tuple(Orbit(g, p, is_very_even(p, g)) for p in enumerate_partitions(g.size) if is_valid(p, g))
    logging.debug(f"{g.name} has {len(orbits)} orbit partitions")
    return orbits


@lru_cache(maxsize=None)
def dim_orbit(o: Orbit) -> int:
    """dim g minus the centralizer dimension computed from the columns of the diagram"""
    columns = np.array(transpose(o.partition).parts, dtype=np.int64)
    odd_rows = sum(1 for x in o.partition.parts if x % 2)
    centralizer = (int(np.square(columns).sum()) - o.algebra.epsilon * odd_rows) // 2
    return o.algebra.dimension - centralizer


def centralizer_dimension(o: Orbit) -> int:
    return o.algebra.dimension - dim_orbit(o)


def pi1_adjoint(o: Orbit) -> Pi1Group:
    """Component group of the centralizer in the adjoint group, (Z/2)^e"""
    p = o.partition
    distinct = p.distinct_parts()
    odd_values = [v for v in distinct if v % 2]
    even_values = [v for v in distinct if v % 2 == 0]
    a, b = len(odd_values), len(even_values)
    if o.algebra.series is Series.SP:
        if all(p.multiplicity(v) % 2 == 0 for v in even_values):
            return Pi1Group(b)
        return Pi1Group(b - 1)
    if o.algebra.size % 2:
        return Pi1Group(max(0, a - 1))
    if all(p.multiplicity(v) % 2 == 0 for v in odd_values):
        return Pi1Group(max(0, a - 1))
    return Pi1Group(max(0, a - 2))


def h2_orbit(o: Orbit) -> int:
    return 1 if special_indices(o.partition, o.algebra) else 0


def h2_universal_cover(o: Orbit) -> int:
    """Values of multiplicity exactly 2 whose parity is not the constrained one"""
    wanted = 1 if o.algebra.series is Series.SO else 0
    p = o.partition
    return sum(1 for v in p.distinct_parts() if v % 2 == wanted and p.multiplicity(v) == 2)


def regular_orbit(g: Algebra) -> Orbit:
    return make_orbit(g, collapse_down([g.size], g))


def minimal_orbit(g: Algebra) -> Orbit:
    """Smallest nonzero orbit; for very even ties the first in enumeration order"""
    nonzero = [o for o in enumerate_orbits(g) if any(x > 1 for x in o.partition.parts)]
    if not nonzero:
        return make_orbit(g, Partition((1,) * g.size))
    return min(nonzero, key=dim_orbit)


def orbit_table(g: Algebra) -> List[dict]:
    rows = []
    for o in enumerate_orbits(g):
        rows.append({
            'partition': str(o.partition) or "0",
            'very_even': o.very_even,
            'dimension': dim_orbit(o),
            'pi1': str(pi1_adjoint(o)),
            'h2': h2_orbit(o),
        })
    return rows
