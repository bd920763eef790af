import logging
from typing import List, Sequence, Tuple

from models import (
    Algebra,
    DomainError,
    InductionStep,
    LeviShape,
    NamikawaReport,
    Orbit,
    Partition,
    Series,
    SizeMismatchError,
)
from orbit import h2_orbit
from partition import (
    add_two_then_collapse,
    is_odd_pair_at,
    is_valid,
    raise_rows,
    require_valid,
    singular_set,
    special_indices,
)


def _source_algebra(p0: Partition, blocks: Sequence[int], g_target: Algebra) -> Algebra:
    if any(m < 1 for m in blocks):
        raise DomainError(f"gl blocks must be positive: {list(blocks)}")
    residual = g_target.size - 2 * sum(blocks)
    if residual < 0:
        raise SizeMismatchError(f"Blocks {list(blocks)} do not fit inside {g_target.name}")
    g_source = g_target.with_size(residual)
    if p0.size != residual:
        raise SizeMismatchError(f"Source {p0} has size {p0.size}, {g_source.name} needs {residual}")
    return g_source


def is_birational_step(p0: Partition, m: int, g_target: Algebra) -> bool:
    """Whether inducing p0 from gl_m x g_{N-2m} gives a birational generalized Springer map"""
    if is_valid(raise_rows(p0, m), g_target):
        return True
    return g_target.series is Series.SO and all(x % 2 == 0 for x in p0.parts)


def induction_steps(p0: Partition, blocks: Sequence[int], g_target: Algebra) -> List[InductionStep]:
    """Blocks are applied left to right, each one growing the residual algebra by 2m"""
    g_source = _source_algebra(p0, blocks, g_target)
    require_valid(p0, g_source)
    steps = []
    current, size = p0, g_source.size
    for m in blocks:
        size += 2 * m
        g_step = g_target.with_size(size)
        raised = raise_rows(current, m)
        after = add_two_then_collapse(current, m, g_step)
        steps.append(InductionStep(
            m=m,
            before=current,
            raised=raised,
            raised_valid=is_valid(raised, g_step),
            after=after,
            birational=is_birational_step(current, m, g_step),
        ))
        current = after
    return steps


def induce(p0: Partition, blocks: Sequence[int], g_target: Algebra) -> Partition:
    steps = induction_steps(p0, blocks, g_target)
    if not steps:
        return p0
    return steps[-1].after


def rigid_levi_orbit(o: Orbit) -> Tuple[LeviShape, Partition]:
    """Levi subalgebra and rigid source orbit from which o is birationally induced"""
    p, g = o.partition, o.algebra
    singular = singular_set(p)
    blocks = [sd.m for sd in singular for _ in range(sd.d_m)]
    shifts = [2 * sum(sd.d_m for sd in singular if sd.m >= k) for k in range(1, p.length + 1)]
    source = Partition(tuple(p.row(k) - shifts[k - 1] for k in range(1, p.length + 1)))
    residual = g.with_size(g.size - 2 * sum(blocks))
    require_valid(source, residual)

    special = special_indices(source, residual)
    if special:
        k = special[0]
        blocks.append(k)
        rows = []
        for i in range(1, source.length + 1):
            if i < k:
                rows.append(source.row(i) - 2)
            elif i in (k, k + 1):
                rows.append(source.row(i) - 1)
            else:
                rows.append(source.row(i))
        residual = residual.with_size(residual.size - 2 * k)
        source = Partition(tuple(rows))
        logging.debug(f"Source of {o} is special at row {k}, peeled one more gl{k}")
    return LeviShape(tuple(blocks), residual), source


def is_birationally_rigid_orbit(o: Orbit) -> bool:
    return not singular_set(o.partition) and h2_orbit(o) == 0


def namikawa_orbit(o: Orbit) -> NamikawaReport:
    """Namikawa space dimension split into the smooth part and one leaf per singular row"""
    p = o.partition
    leaves = {}
    for sd in singular_set(p):
        # two odd rows at m give the very even split, one more direction
        leaves[sd.m] = sd.d_m + (1 if is_odd_pair_at(p, sd.m) else 0)
    smooth = h2_orbit(o)
    return NamikawaReport(dim_total=smooth + sum(leaves.values()), dim_smooth=smooth, leaves=leaves)


def levi_dimension(levi: LeviShape) -> int:
    return sum(m * m for m in levi.gl_blocks) + levi.residual.dimension


def nilradical_dimension(levi: LeviShape, g: Algebra) -> int:
    return (g.dimension - levi_dimension(levi)) // 2
