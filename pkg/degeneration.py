import logging
from typing import List, Optional, Tuple

from app import app
from models import (
    MinimalDegeneration,
    NotSingularError,
    Orbit,
    Partition,
    ShapeMismatchError,
    Singularity,
)
from orbit import dim_orbit, enumerate_orbits, make_orbit
from partition import collapse_down, dominates, singular_set


def _match_shape(alpha_prime: Partition, beta_prime: Partition) -> Tuple[str, int]:
    upper, lower = alpha_prime.parts, beta_prime.parts
    if upper == (2,) and lower == (1, 1):
        return 'a', 1
    if len(upper) == 1:
        x = upper[0]
        if x % 2 == 0 and x > 2 and lower == (x - 2, 2):
            return 'b', x // 2
        if x % 2 == 1 and x >= 3 and lower == (x - 2, 1, 1):
            return 'c', (x - 1) // 2
    if len(upper) == 2 and upper[0] == upper[1]:
        x = upper[0]
        if x % 2 == 1 and x >= 3 and lower == (x - 1, x - 1, 2):
            return 'd', (x - 1) // 2
        if x % 2 == 0 and x >= 2 and lower == (x - 1, x - 1, 1, 1):
            return 'e', x // 2
    raise ShapeMismatchError(f"Reduced pair {alpha_prime} > {beta_prime} is not one of the minimal shapes")


def minimal_degeneration(alpha: Partition, beta: Partition) -> MinimalDegeneration:
    """Erase the rows and columns alpha and beta share and classify what is left"""
    if alpha.size != beta.size:
        raise ShapeMismatchError(f"{alpha} and {beta} have different sizes")
    length = max(alpha.length, beta.length)
    differing = [i for i in range(1, length + 1) if alpha.row(i) != beta.row(i)]
    if not differing:
        raise ShapeMismatchError(f"{alpha} and {beta} coincide")
    first, last = differing[0], differing[-1]
    s = alpha.row(last)
    upper_rows = [alpha.row(i) - s for i in range(first, last + 1)]
    lower_rows = [beta.row(i) - s for i in range(first, last + 1)]
    if min(upper_rows + lower_rows) < 0:
        raise ShapeMismatchError(f"{alpha} and {beta} do not reduce to a minimal pair")
    try:
        alpha_prime = Partition(tuple(upper_rows))
        beta_prime = Partition(tuple(lower_rows))
    except ValueError as e:
        raise ShapeMismatchError(f"{alpha} and {beta} do not reduce to a minimal pair: {e}") from e
    case, k = _match_shape(alpha_prime, beta_prime)
    q = first
    m = q if case in ('a', 'b', 'c') else q + 1
    d_m = (alpha.row(m) - alpha.row(m + 1)) // 2
    return MinimalDegeneration(
        upper=alpha,
        lower=beta,
        r=first - 1,
        s=s,
        q=q,
        m=m,
        alpha_prime=alpha_prime,
        beta_prime=beta_prime,
        case=case,
        k=k,
        d_m=d_m,
    )


def closure_singularity(md: MinimalDegeneration) -> Singularity:
    """Transverse slice type of the child inside the orbit closure"""
    if md.case == 'a':
        return Singularity.kleinian('A', 1)
    if md.case == 'b':
        return Singularity.kleinian('D', md.k + 1)
    if md.case in ('c', 'd'):
        return Singularity.kleinian('A', 2 * md.k - 1)
    return Singularity.kleinian('A', 2 * md.k - 1, union_of_two=True)


def degeneration_at(o: Orbit, m: int) -> Orbit:
    """Move one box from row m to row m+1 and collapse"""
    rows = {sd.m for sd in singular_set(o.partition)}
    if m not in rows:
        raise NotSingularError(f"Row {m} of {o.partition} is not singular; singular rows are {sorted(rows)}")
    p = o.partition
    seq = [p.row(i) for i in range(1, max(p.length, m + 1) + 1)]
    seq[m - 1] -= 1
    seq[m] += 1
    return make_orbit(o.algebra, collapse_down(seq, o.algebra))


def _children_exhaustive(o: Orbit) -> List[Orbit]:
    target = dim_orbit(o) - 2
    return [
        child for child in enumerate_orbits(o.algebra)
        if child.partition != o.partition
        and dim_orbit(child) == target
        and dominates(o.partition, child.partition)
    ]


def codim2_children(o: Orbit, bound: Optional[int] = None) -> List[Tuple[Orbit, MinimalDegeneration]]:
    """Orbits of codimension 2 in the closure of o, sorted by singular row"""
    bound = app.exhaustive_bound if bound is None else bound
    if o.algebra.size <= bound:
        children = _children_exhaustive(o)
    else:
        logging.debug(f"{o.algebra.name} exceeds exhaustive bound {bound}, using singular rows")
        children = [degeneration_at(o, sd.m) for sd in singular_set(o.partition)]
    pairs = [(child, minimal_degeneration(o.partition, child.partition)) for child in children]
    pairs.sort(key=lambda pair: pair[1].m)
    return pairs
