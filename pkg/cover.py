from typing import List, Optional, Tuple

from models import (
    CoverLeaf,
    CoverReport,
    CoverSingularity,
    HmGroup,
    MinimalDegeneration,
    NamikawaReport,
    Orbit,
    Partition,
    Series,
    Singularity,
)
from degeneration import closure_singularity, codim2_children
from induction import namikawa_orbit
from orbit import h2_universal_cover
from partition import is_odd_pair_at


def odd_multiplicity_condition(alpha: Partition, q: int) -> bool:
    """The parts with odd multiplicity are exactly the nonzero values among rows q and q+1"""
    odd = {v for v in alpha.distinct_parts() if alpha.multiplicity(v) % 2}
    return odd == {alpha.row(q), alpha.row(q + 1)} - {0}


def hm(md: MinimalDegeneration, alpha: Partition) -> HmGroup:
    """Image of the local fundamental group of the leaf in pi_1 of the orbit"""
    if md.case in ('c', 'd', 'e'):
        return HmGroup(1)
    return HmGroup(1 if odd_multiplicity_condition(alpha, md.q) else 2)


def cover_singularity(md: MinimalDegeneration, alpha: Partition) -> CoverSingularity:
    """Transverse type of the leaf inside Spec C[universal cover]"""
    if md.case == 'a':
        if odd_multiplicity_condition(alpha, md.q):
            return CoverSingularity(Singularity.kleinian('A', 1))
        return CoverSingularity(Singularity.smooth())
    if md.case == 'b':
        if odd_multiplicity_condition(alpha, md.q):
            return CoverSingularity(Singularity.kleinian('D', md.k + 1))
        return CoverSingularity(Singularity.kleinian('A', 2 * md.k - 3))
    return CoverSingularity(Singularity.kleinian('A', 2 * md.k - 1))


def dim_leaf_cover(md: MinimalDegeneration, alpha: Partition) -> int:
    dim = md.d_m if hm(md, alpha).order == 1 else md.d_m - 1
    if is_odd_pair_at(alpha, md.m):
        dim += 1
    return dim


def is_etale(md: MinimalDegeneration, alpha: Partition) -> bool:
    return md.case in ('c', 'd') or odd_multiplicity_condition(alpha, md.q)


def etale_locus(o: Orbit, bound: Optional[int] = None) -> List[Tuple[Orbit, bool]]:
    """Children over which the universal cover restricts to an etale map of slices"""
    return [(child, is_etale(md, o.partition)) for child, md in codim2_children(o, bound)]


def cover_report(o: Orbit, bound: Optional[int] = None) -> CoverReport:
    alpha = o.partition
    orbit_namikawa = namikawa_orbit(o)
    leaves = []
    for child, md in codim2_children(o, bound):
        leaves.append(CoverLeaf(
            child=child,
            degeneration=md,
            closure=closure_singularity(md),
            hm=hm(md, alpha),
            cover=cover_singularity(md, alpha),
            dim_orbit_leaf=orbit_namikawa.leaves.get(md.m, 0),
            dim_cover_leaf=dim_leaf_cover(md, alpha),
            etale=is_etale(md, alpha),
            leaf_count=2 if child.very_even else 1,
        ))
    namikawa = namikawa_cover(o, leaves)
    return CoverReport(
        orbit=o,
        namikawa=namikawa,
        leaves=tuple(leaves),
        levi_blocks=tuple(cover_levi_blocks(o, leaves)),
    )


def namikawa_cover(o: Orbit, leaves: List[CoverLeaf]) -> NamikawaReport:
    """Cover Namikawa space: one leaf per codimension 2 child plus the smooth part"""
    by_row = {leaf.m: leaf.dim_cover_leaf for leaf in leaves}
    smooth = h2_universal_cover(o)
    return NamikawaReport(
        dim_total=smooth + sum(by_row.values()),
        dim_smooth=smooth,
        leaves=by_row,
        smooth_derived=True,
    )


def cover_levi_blocks(o: Orbit, leaves: Optional[List[CoverLeaf]] = None) -> List[int]:
    """gl block sizes matching the cover Namikawa space, one per dimension"""
    if leaves is None:
        leaves = list(cover_report(o).leaves)
    blocks = [leaf.m for leaf in leaves for _ in range(leaf.dim_cover_leaf)]
    wanted = 1 if o.algebra.series is Series.SO else 0
    p = o.partition
    for value in p.distinct_parts():
        if value % 2 == wanted and p.multiplicity(value) == 2:
            # so_N pairs sit at their first row, sp_N pairs at their second
            first = p.parts.index(value) + 1
            blocks.append(first if o.algebra.series is Series.SO else first + 1)
    return sorted(blocks, reverse=True)


def is_birationally_rigid_cover(o: Orbit) -> bool:
    return cover_report(o).namikawa.dim_total == 0
