"""
Brute force referees and the consistency suite.

The referees enumerate partitions and compare prefix sums with their own loops,
so they never share a code path with collapse_down or degeneration_at.
"""
import logging
from itertools import accumulate, permutations
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from app import app
from models import (
    Algebra,
    ConsistencyReport,
    DomainError,
    NilcoverError,
    OracleBoundError,
    Orbit,
    Partition,
    Series,
    SizeMismatchError,
)
from cover import (
    cover_levi_blocks,
    cover_report,
    odd_multiplicity_condition,
)
from degeneration import (
    closure_singularity,
    codim2_children,
    degeneration_at,
    minimal_degeneration,
)
from induction import (
    induce,
    induction_steps,
    is_birational_step,
    is_birationally_rigid_orbit,
    namikawa_orbit,
    rigid_levi_orbit,
)
from orbit import (
    dim_orbit,
    enumerate_orbits,
    h2_orbit,
    h2_universal_cover,
    make_orbit,
    minimal_orbit,
    pi1_adjoint,
    regular_orbit,
)
from partition import (
    add_two_then_collapse,
    collapse_down,
    dominates,
    enumerate_partitions,
    is_odd_pair_at,
    is_valid,
    raise_rows,
    singular_set,
    special_indices,
    transpose,
)


def _prefix(parts: Sequence[int], length: int) -> List[int]:
    padded = list(parts) + [0] * (length - len(parts))
    return list(accumulate(padded))


def _below(upper: Sequence[int], lower: Sequence[int]) -> bool:
    length = max(len(upper), len(lower), 1)
    return all(a >= b for a, b in zip(_prefix(upper, length), _prefix(lower, length)))


def _check_bound(g: Algebra, bound: Optional[int]):
    bound = app.oracle_bound if bound is None else bound
    if g.size > bound:
        raise OracleBoundError(f"{g.name} is beyond the oracle bound {bound}")


def brute_children2(o: Orbit, bound: Optional[int] = None) -> List[Partition]:
    """Orbits dominated by o whose dimension is exactly two less"""
    _check_bound(o.algebra, bound)
    target = dim_orbit(o) - 2
    upper = o.partition.parts
    children = []
    for candidate in enumerate_orbits(o.algebra):
        lower = candidate.partition.parts
        if lower != upper and _below(upper, lower) and dim_orbit(candidate) == target:
            children.append(candidate.partition)
    return children


def brute_collapse(seq: Sequence[int], g: Algebra, bound: Optional[int] = None) -> Partition:
    """Dominance maximum of the valid partitions lying below seq"""
    _check_bound(g, bound)
    rows = sorted((int(x) for x in seq if int(x) > 0), reverse=True)
    if sum(rows) != g.size:
        raise SizeMismatchError(f"Sequence {rows} has size {sum(rows)}, {g.name} needs {g.size}")
    below = [o.partition.parts for o in enumerate_orbits(g) if _below(rows, o.partition.parts)]
    maxima = [p for p in below if not any(q != p and _below(q, p) for q in below)]
    if len(maxima) != 1:
        raise DomainError(f"Collapse of {rows} in {g.name} has {len(maxima)} maximal candidates")
    return Partition(maxima[0])


class _Checks:
    """Collects named checks; exceptions inside a check count as failures"""

    def __init__(self):
        self.run = 0
        self.failures: List[Tuple[str, str]] = []

    def expect(self, name: str, witness: str, check: Callable[[], bool]):
        self.run += 1
        try:
            ok = bool(check())
        except Exception as e:
            ok = False
            witness = f"{witness} raised {type(e).__name__}: {e}"
        if not ok:
            logging.warning(f"Check {name} failed on {witness}")
            self.failures.append((name, witness))

    def fail(self, name: str, witness: str):
        self.run += 1
        logging.warning(f"Check {name} failed on {witness}")
        self.failures.append((name, witness))


def _fold(leaf, alpha: Partition) -> int:
    kind = leaf.cover.kind
    md = leaf.degeneration
    if is_odd_pair_at(alpha, md.m):
        return leaf.leaf_count * kind.rank
    if kind.is_smooth:
        return 0
    if md.case == 'a':
        return 1
    if md.case == 'b':
        if kind.family == 'A' and kind.rank == 2 * md.k - 3:
            return md.k - 1
        return md.k
    return md.k


def check_orbit(o: Orbit, bound: Optional[int] = None) -> Tuple[int, List[Tuple[str, str]]]:
    """Every per-orbit law: degenerations, induction, Namikawa counts and cover data"""
    checks = _Checks()
    try:
        _orbit_laws(o, bound, checks)
    except Exception as e:
        checks.fail("orbit_laws", f"{o} raised {type(e).__name__}: {e}")
    return checks.run, checks.failures


def _orbit_laws(o: Orbit, bound: Optional[int], checks: _Checks):
    g, alpha = o.algebra, o.partition
    tag = f"{g.name} ({alpha})"
    singular = singular_set(alpha)

    # Children against the brute-force referee
    brute = brute_children2(o, bound)
    children = codim2_children(o, bound=g.size)
    constructive = [degeneration_at(o, sd.m).partition for sd in singular]

    checks.expect("bijection", tag, lambda: len(children) == len(singular) == len(brute))
    checks.expect("oracle_agreement", tag,
                  lambda: sorted(constructive, key=lambda p: p.parts) == sorted(brute, key=lambda p: p.parts))
    checks.expect("exhaustive_agreement", tag,
                  lambda: sorted(c.partition.parts for c, _ in children) == sorted(p.parts for p in brute))
    checks.expect("children_antichain", tag,
                  lambda: not any(a != b and _below(a.parts, b.parts) for a in brute for b in brute))
    checks.expect("dimension_even", tag, lambda: dim_orbit(o) % 2 == 0)

    # Shape of each minimal degeneration
    for sd in singular:
        child = degeneration_at(o, sd.m).partition
        witness = f"{tag} -> ({child})"
        checks.expect("shape_totality", witness, lambda: minimal_degeneration(alpha, child).case in 'abcde')
        checks.expect("singular_row", witness, lambda: minimal_degeneration(alpha, child).m == sd.m)
        checks.expect("d_m_consistency", witness, lambda: (
            minimal_degeneration(alpha, child).d_m == sd.d_m
            and minimal_degeneration(alpha, child).k == sd.d_m
        ))
        checks.expect("no_intermediate_orbit", witness, lambda: not any(
            mid.partition not in (alpha, child)
            and _below(alpha.parts, mid.partition.parts)
            and _below(mid.partition.parts, child.parts)
            for mid in enumerate_orbits(g)
        ))

    # Rigid Levi and induction
    levi, source = rigid_levi_orbit(o)
    witness = f"{tag} levi {levi.notation()} source ({source})"
    source_orbit = Orbit(levi.residual, source)
    checks.expect("rigid_source", witness,
                  lambda: is_valid(source, levi.residual) and is_birationally_rigid_orbit(source_orbit))
    checks.expect("rigid_round_trip", witness, lambda: induce(source, levi.gl_blocks, g) == alpha)
    checks.expect("rigid_birational", witness,
                  lambda: all(step.birational for step in induction_steps(source, levi.gl_blocks, g)))
    if len(levi.gl_blocks) <= 5:
        checks.expect("order_independence", witness, lambda: len({
            _induction_outcome(source, order, g) for order in set(permutations(levi.gl_blocks))
        }) == 1)

    # Namikawa counts
    report = namikawa_orbit(o)
    checks.expect("namikawa_block_count", witness, lambda: report.dim_total == len(levi.gl_blocks))
    checks.expect("namikawa_leaves", tag, lambda: set(report.leaves) == {sd.m for sd in singular})

    # Universal cover leaves
    cover = cover_report(o, bound=g.size)
    e = pi1_adjoint(o).exponent
    for leaf in cover.leaves:
        md = leaf.degeneration
        witness = f"{tag} -> ({leaf.child.partition}) case {md.case}"
        checks.expect("fold_consistency", witness, lambda: leaf.dim_cover_leaf == _fold(leaf, alpha))
        checks.expect("connectedness", witness, lambda: leaf.cover.components == 1)
        checks.expect("hm_vs_pi1", witness, lambda: leaf.hm.order == _hm_from_pi1(o, md))
        checks.expect("leaf_count", witness, lambda: (leaf.leaf_count == 2) == (
            is_odd_pair_at(alpha, md.m) and md.d_m == 1
        ))
        if leaf.etale:
            checks.expect("etale_type_match", witness, lambda: leaf.cover.kind.same_kleinian_type(leaf.closure))
        if md.case == 'b' and not odd_multiplicity_condition(alpha, md.q) and md.k >= 2:
            checks.expect("case_b_cross_law", witness, lambda: (
                leaf.cover.kind.family, leaf.cover.kind.rank) == ('A', 2 * md.d_m - 3))
        if e == 0:
            checks.expect("trivial_cover_degeneration", witness,
                          lambda: leaf.cover.kind.same_kleinian_type(closure_singularity(md)))

    checks.expect("cover_levi_count", tag, lambda: len(cover.levi_blocks) == cover.namikawa.dim_total)
    if e == 0:
        checks.expect("trivial_cover_smooth", tag, lambda: h2_universal_cover(o) == h2_orbit(o))
        checks.expect("trivial_cover_namikawa", tag, lambda: (
            cover.namikawa.to_dict() | {'smooth_derived': False}
        ) == report.to_dict())
        checks.expect("trivial_cover_levi", tag,
                      lambda: tuple(cover_levi_blocks(o, list(cover.leaves))) == levi.gl_blocks)


def _induction_outcome(source: Partition, blocks, g: Algebra) -> Tuple[Partition, bool]:
    steps = induction_steps(source, list(blocks), g)
    induced = steps[-1].after if steps else source
    return induced, all(step.birational for step in steps)


def _hm_from_pi1(o: Orbit, md) -> int:
    """Order of H_m read off from the drop in pi_1 exponent along the leaf"""
    g, alpha = o.algebra, o.partition
    shifted = [alpha.row(i) - 2 * md.d_m for i in range(1, md.m + 1)]
    reduced = Partition(tuple(shifted) + alpha.parts[md.m:])
    reduced_algebra = g.with_size(g.size - 2 * md.m * md.d_m)
    e_reduced = pi1_adjoint(make_orbit(reduced_algebra, reduced)).exponent
    return 2 ** (pi1_adjoint(o).exponent - e_reduced)


def check_algebra(g: Algebra, bound: Optional[int] = None) -> Tuple[int, List[Tuple[str, str]]]:
    """Laws over the whole orbit set of one algebra"""
    checks = _Checks()
    try:
        _algebra_laws(g, bound, checks)
    except Exception as e:
        checks.fail("algebra_laws", f"{g.name} raised {type(e).__name__}: {e}")
    return checks.run, checks.failures


def dominance_matrix(partitions: Sequence[Partition]) -> np.ndarray:
    """order[i, j] is True when partitions[i] dominates partitions[j]"""
    return np.array([[dominates(a, b) for b in partitions] for a in partitions], dtype=bool).reshape(
        len(partitions), len(partitions))


def dominance_violations(order: np.ndarray) -> List[str]:
    """Names of the partial order axioms the matrix breaks"""
    found = []
    if not order.diagonal().all():
        found.append("reflexive")
    off_diagonal = ~np.eye(len(order), dtype=bool)
    if (order & order.T & off_diagonal).any():
        found.append("antisymmetric")
    steps = order.astype(np.int64)
    if ((steps @ steps > 0) & ~order).any():
        found.append("transitive")
    return found


def _algebra_laws(g: Algebra, bound: Optional[int], checks: _Checks):
    orbits = enumerate_orbits(g)
    partitions = list(enumerate_partitions(g.size))

    # Every partition of N
    checks.expect("dominance_partial_order", g.name, lambda: not dominance_violations(dominance_matrix(partitions)))
    for p in partitions:
        witness = f"{g.name} ({p})"
        checks.expect("transpose_involution", witness, lambda: transpose(transpose(p)) == p)
        checks.expect("collapse_brute", witness, lambda: collapse_down(p.parts, g) == brute_collapse(p.parts, g, bound))
        checks.expect("collapse_below", witness, lambda: dominates(p, collapse_down(p.parts, g)))

    # Valid orbits
    for o in orbits:
        witness = f"{g.name} ({o.partition})"
        checks.expect("validity_parity", witness, lambda: is_valid(o.partition, g))
        checks.expect("collapse_fixes_valid", witness, lambda: collapse_down(o.partition.parts, g) == o.partition)
        checks.expect("brute_collapse_idempotent", witness,
                      lambda: brute_collapse(brute_collapse(o.partition.parts, g, bound).parts, g, bound) == o.partition)

    # Closure order
    for upper in orbits:
        for lower in orbits:
            if upper.partition != lower.partition and dominates(upper.partition, lower.partition):
                witness = f"{g.name} ({upper.partition}) > ({lower.partition})"
                checks.expect("dimension_monotone", witness, lambda: dim_orbit(upper) > dim_orbit(lower))
                checks.expect("dominance_antisymmetric", witness,
                              lambda: not dominates(lower.partition, upper.partition))

    # Regular and minimal orbits
    checks.expect("regular_orbit_dimension", g.name,
                  lambda: dim_orbit(regular_orbit(g)) == g.dimension - g.rank)
    if g.series is Series.SP:
        checks.expect("minimal_orbit_dimension", g.name, lambda: dim_orbit(minimal_orbit(g)) == g.size)
    if g.series is Series.SO and g.size % 2:
        checks.expect("regular_pi1", g.name, lambda: pi1_adjoint(regular_orbit(g)).exponent == 0)

    # Induction through one gl block
    for m in range(1, g.size // 2 + 1):
        source_algebra = g.with_size(g.size - 2 * m)
        for p0 in enumerate_orbits(source_algebra):
            witness = f"{source_algebra.name} ({p0.partition}) via gl{m} into {g.name}"
            try:
                induced = add_two_then_collapse(p0.partition, m, g)
            except NilcoverError as e:
                checks.fail("collapse_assertion", f"{witness} raised {type(e).__name__}: {e}")
                continue
            checks.expect("collapse_cross_law", witness,
                          lambda: induced == collapse_down(raise_rows(p0.partition, m).parts, g))
            levi_dim = m * m + source_algebra.dimension
            checks.expect("induction_dimension_law", witness, lambda: (
                dim_orbit(make_orbit(g, induced)) == dim_orbit(p0) + g.dimension - levi_dim
            ))
            if is_birational_step(p0.partition, m, g):
                checks.expect("birational_restriction", witness, lambda: (
                    m in {sd.m for sd in singular_set(induced)} or m in special_indices(induced, g)
                ))


def suite_algebras(series: Series, max_size: int) -> List[Algebra]:
    series = Series(series)
    if series is Series.SP:
        return [Algebra(series, n) for n in range(2, max_size + 1, 2)]
    return [Algebra(series, n) for n in range(3, max_size + 1)]


def run_suite(series, max_size: int, n_jobs: Optional[int] = None) -> ConsistencyReport:
    """Run every cross law for all orbits of the series up to max_size"""
    n_jobs = app.jobs if n_jobs is None else n_jobs
    algebras = suite_algebras(series, max_size)
    bound = max(max_size, 0)
    tasks = [delayed(check_algebra)(g, bound) for g in algebras]
    tasks += [delayed(check_orbit)(o, bound) for g in algebras for o in enumerate_orbits(g)]
    logging.info(f"Running {len(tasks)} consistency tasks for {Series(series).value} up to {max_size}")
    results = Parallel(n_jobs=n_jobs)(tasks)
    checks_run = sum(count for count, _ in results)
    failures = tuple(failure for _, found in results for failure in found)
    return ConsistencyReport(checks_run=checks_run, failures=failures)
