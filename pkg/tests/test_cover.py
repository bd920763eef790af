import pytest

from models import Algebra, Partition, Series, Singularity
from cover import (
    cover_levi_blocks,
    cover_report,
    cover_singularity,
    dim_leaf_cover,
    etale_locus,
    hm,
    is_birationally_rigid_cover,
    odd_multiplicity_condition,
)
from degeneration import closure_singularity, minimal_degeneration
from orbit import enumerate_orbits, make_orbit, pi1_adjoint

SO = Series.SO
SP = Series.SP

SP30 = (10, 8, 4, 3, 3, 1, 1)
SP22 = (4, 4, 4, 2, 2, 2, 2, 2)


def P(*parts):
    return Partition(parts)


def orbit(series, size, *parts):
    return make_orbit(Algebra(series, size), P(*parts))


def test_odd_multiplicity_condition():
    assert odd_multiplicity_condition(P(*SP22), 3)
    assert not odd_multiplicity_condition(P(*SP30), 2)
    assert not odd_multiplicity_condition(P(2, 2), 2)
    assert odd_multiplicity_condition(P(2), 1)


def test_hm_table():
    case_c = minimal_degeneration(P(7, 3), P(7, 1, 1, 1))
    assert hm(case_c, P(7, 3)).order == 1
    case_b = minimal_degeneration(P(*SP30), P(10, 6, 6, 3, 3, 1, 1))
    assert hm(case_b, P(*SP30)).order == 2
    case_a = minimal_degeneration(P(*SP22), P(4, 4, 3, 3, 2, 2, 2, 2))
    assert hm(case_a, P(*SP22)).order == 1


def test_cover_singularity_examples():
    alpha = P(*SP22)
    md = minimal_degeneration(alpha, P(4, 4, 3, 3, 2, 2, 2, 2))
    assert cover_singularity(md, alpha).kind == Singularity.kleinian('A', 1)
    assert cover_singularity(md, alpha).components == 1

    alpha = P(*SP30)
    md = minimal_degeneration(alpha, P(10, 6, 6, 3, 3, 1, 1))
    assert (md.case, md.k) == ('b', 2)
    assert str(cover_singularity(md, alpha)) == "A_1"
    assert str(closure_singularity(md)) == "A_3"

    md = minimal_degeneration(P(2, 2), P(2, 1, 1))
    assert cover_singularity(md, P(2, 2)).kind.is_smooth


def test_cover_singularity_case_b_with_condition():
    alpha = P(6, 2)
    md = minimal_degeneration(alpha, P(4, 4))
    assert str(cover_singularity(md, alpha)) == "A_3"
    assert hm(md, alpha).order == 1


def test_cover_singularity_wide_case_b():
    md = minimal_degeneration(P(8), P(6, 2))
    assert cover_singularity(md, P(8)).kind == Singularity.kleinian('D', 5)
    md = minimal_degeneration(P(8, 2), P(6, 4))
    assert (md.case, md.k) == ('b', 3)
    assert odd_multiplicity_condition(P(8, 2), md.q)
    assert str(cover_singularity(md, P(8, 2))) == "D_4"


def test_dim_leaf_cover():
    alpha = P(*SP30)
    md = minimal_degeneration(alpha, P(10, 6, 6, 3, 3, 1, 1))
    assert dim_leaf_cover(md, alpha) == 1
    case_e = minimal_degeneration(P(6, 6), P(5, 5, 1, 1))
    assert (case_e.case, case_e.k) == ('e', 3)
    assert dim_leaf_cover(case_e, P(6, 6)) == 3
    alpha = P(*SP22)
    md = minimal_degeneration(alpha, P(4, 4, 3, 3, 2, 2, 2, 2))
    assert dim_leaf_cover(md, alpha) == 1


def test_etale_locus():
    flags = {child.partition.parts: flag for child, flag in etale_locus(orbit(SP, 22, *SP22))}
    assert flags[(4, 4, 3, 3, 2, 2, 2, 2)]
    flags = {child.partition.parts: flag for child, flag in etale_locus(orbit(SP, 30, *SP30))}
    assert not flags[(10, 6, 6, 3, 3, 1, 1)]
    flags = dict((child.partition.parts, flag) for child, flag in etale_locus(orbit(SP, 6, 3, 3)))
    assert flags == {(2, 2, 2): True}


def test_cover_report_of_sp4():
    report = cover_report(orbit(SP, 4, 2, 2))
    assert report.namikawa.dim_total == 1
    assert report.namikawa.dim_smooth == 1
    assert report.namikawa.smooth_derived
    assert report.namikawa.leaves == {2: 0}
    assert report.leaves[0].cover.kind.is_smooth
    assert report.levi_blocks == (2,)


def test_cover_report_of_sp22():
    report = cover_report(orbit(SP, 22, *SP22))
    leaf = next(leaf for leaf in report.leaves if leaf.degeneration.q == 3)
    assert leaf.dim_cover_leaf == 1
    assert str(leaf.cover) == "A_1"
    assert leaf.hm.order == 1
    assert leaf.etale


def test_cover_report_of_sp30():
    report = cover_report(orbit(SP, 30, *SP30))
    assert [leaf.m for leaf in report.leaves] == [1, 2, 5]
    assert [leaf.dim_cover_leaf for leaf in report.leaves] == [0, 1, 1]
    assert [leaf.dim_orbit_leaf for leaf in report.leaves] == [1, 2, 1]
    assert report.namikawa.dim_total == 2
    assert len(report.levi_blocks) == 2


def test_trivial_pi1_case_e_reports_main_value():
    o = orbit(SO, 8, 4, 4)
    assert pi1_adjoint(o).exponent == 0
    (leaf,) = cover_report(o).leaves
    assert leaf.case_e_normalization
    assert leaf.closure.union_of_two
    assert str(leaf.cover) == "A_3"
    assert leaf.cover.kind.same_kleinian_type(leaf.closure)


def test_very_even_child_counts_two_leaves():
    o = orbit(SO, 12, 4, 4, 3, 1)
    (leaf,) = cover_report(o).leaves
    assert leaf.child.very_even
    assert leaf.leaf_count == 2
    assert leaf.dim_cover_leaf == 2
    assert leaf.dim_orbit_leaf == 2


def test_birationally_rigid_cover():
    assert is_birationally_rigid_cover(orbit(SP, 4, 1, 1, 1, 1))
    assert not is_birationally_rigid_cover(orbit(SP, 4, 2, 2))


@pytest.mark.parametrize("g", [Algebra(SP, n) for n in range(2, 11, 2)] + [Algebra(SO, n) for n in range(3, 11)])
def test_trivial_cover_agrees_with_orbit_closure(g):
    for o in enumerate_orbits(g):
        if pi1_adjoint(o).exponent:
            continue
        report = cover_report(o)
        for leaf in report.leaves:
            assert leaf.hm.order == 1
            assert leaf.cover.kind.same_kleinian_type(leaf.closure)
            assert leaf.dim_cover_leaf == leaf.dim_orbit_leaf


@pytest.mark.parametrize("g", [Algebra(SP, n) for n in range(2, 11, 2)] + [Algebra(SO, n) for n in range(3, 11)])
def test_cover_levi_blocks_count_namikawa_dimension(g):
    for o in enumerate_orbits(g):
        report = cover_report(o)
        assert len(cover_levi_blocks(o)) == report.namikawa.dim_total
        for leaf in report.leaves:
            assert leaf.cover.components == 1
            if leaf.etale:
                assert leaf.cover.kind.same_kleinian_type(leaf.closure)
