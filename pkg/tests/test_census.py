# pylint: disable=redefined-outer-name
"""
Tests for the census pipelines.
"""
import pytest

from fk3census.census import (
    CUBIC_FOURFOLD,
    aenumerate_extra_families,
    aenumerate_k3_surfaces,
    analyze_family,
    associate_k3,
    brute_force_census,
    condition_report,
    fourfolds_from_k3,
    nondecreasing_tuples,
    verify_brute_force,
    verify_extra_families,
    verify_fk3_census,
    verify_k3_census,
)
from fk3census.config import CensusConfig
from fk3census.errors import ConditionFailedError, CrossCheckError, InvalidArgumentError
from fk3census.models import FamilyRecord, FamilyTag, K3Record, Rationality, SingClass, WeightSystem

MIXED = WeightSystem(weights=(1, 1, 1, 2, 3, 4), degree=6)
SUSPENSION = WeightSystem(weights=(1, 1, 1, 3, 3, 3), degree=6)
CYCLIC_SMALL = WeightSystem(weights=(1, 2, 2, 2, 2, 3), degree=6)
CYCLIC_LARGE = WeightSystem(weights=(3, 3, 4, 4, 4, 6), degree=12)
SEXTIC_K3 = WeightSystem(weights=(1, 1, 1, 3), degree=6)


def test_nondecreasing_tuples() -> None:
    """
    Test the candidate generator of the sweeps.
    """
    assert list(nondecreasing_tuples(3, 5, 1, 3)) == [(1, 1, 3), (1, 2, 2)]
    assert list(nondecreasing_tuples(2, 9, 1, 4)) == []
    assert list(nondecreasing_tuples(0, 0, 1, 4)) == [()]


def test_condition_report() -> None:
    """
    Test the condition by condition report.
    """
    report = dict(condition_report(WeightSystem(weights=(1, 1, 1, 1, 5, 5), degree=7)))

    assert report == {
        "well_formed": True,
        "weights_below_degree": True,
        "k3_type": True,
        "quasi_smooth": False,
        "dim_sing": True,
        "census_residues": False,
    }
    assert [name for name, _ in condition_report(SEXTIC_K3)] == [
        "well_formed",
        "weights_below_degree",
        "k3_type",
        "quasi_smooth",
    ]


def test_fourfolds_from_k3() -> None:
    """
    The partitions 2 + 4 and 3 + 3 of the degree of the sextic K3 surface give fourfolds of the census.
    """
    fourfolds = [ws.sort_key for ws in fourfolds_from_k3(SEXTIC_K3)]

    assert MIXED.sort_key in fourfolds
    assert SUSPENSION.sort_key in fourfolds
    assert all(degree == 6 for degree, _ in fourfolds)

    with pytest.raises(InvalidArgumentError):
        fourfolds_from_k3(MIXED)


def test_associate_k3() -> None:
    """
    Test the K3 surface associated through a_i + a_5 = d.
    """
    association = associate_k3(MIXED)
    assert association.index == 3
    assert association.k3.sort_key == SEXTIC_K3.sort_key
    assert association.double_cover_base is None

    assert associate_k3(CUBIC_FOURFOLD) is None
    assert associate_k3(CYCLIC_SMALL) is None

    association = associate_k3(SUSPENSION)
    assert association.double_cover_base.sort_key == SEXTIC_K3.sort_key


def test_analyze_family_mixed() -> None:
    """
    Test the record of (1,1,1,2,3,4; d=6).
    """
    record = analyze_family(MIXED)

    assert record.fk3
    assert record.hodge.middle_total == 20
    assert record.sing_dim == 0
    assert record.sing_class == SingClass.TERMINAL
    assert record.tags == (FamilyTag.LINEAR_IN_LAST_VARIABLE,)
    assert record.rationality == Rationality.RATIONAL
    assert record.del_pezzo is None


def test_analyze_family_double_suspension() -> None:
    record = analyze_family(SUSPENSION)

    assert record.tags == (FamilyTag.LINEAR_IN_LAST_VARIABLE, FamilyTag.DOUBLE_SUSPENSION)
    assert record.rationality == Rationality.RATIONAL


def test_analyze_family_cubic() -> None:
    record = analyze_family(CUBIC_FOURFOLD)

    assert record.tags == (FamilyTag.CUBIC,)
    assert record.rationality == Rationality.CONJECTURAL_CUBIC
    assert record.association is None
    assert record.hodge.middle_total == 21
    assert record.sing_dim == -1


def test_analyze_family_cyclic() -> None:
    """
    The larger cyclic family carries its del Pezzo surface S_12 in P(3,3,4,4) with K = O(-2).
    """
    record = analyze_family(CYCLIC_LARGE)

    assert record.tags == (FamilyTag.CYCLIC_DEL_PEZZO,)
    assert record.rationality == Rationality.UNKNOWN
    assert record.sing_dim == 2
    assert record.sing_class == SingClass.CANONICAL
    assert record.del_pezzo.surface.sort_key == (12, (3, 3, 4, 4))
    assert record.del_pezzo.canonical_degree == -2
    assert record.del_pezzo.well_formed
    assert record.del_pezzo.quasi_smooth


@pytest.mark.parametrize(
    "ws, condition",
    [
        (WeightSystem(weights=(1, 1, 1, 1, 5, 5), degree=7), "quasi_smooth"),
        (WeightSystem(weights=(1, 1, 1, 1, 1, 2), degree=3), "k3_type"),
        (WeightSystem(weights=(1, 1, 2, 2, 4, 4), degree=7), "well_formed"),
    ],
)
def test_analyze_family_failed_condition(ws: WeightSystem, condition: str) -> None:
    """
    Test that the failing condition is named.
    """
    with pytest.raises(ConditionFailedError) as exc_info:
        analyze_family(ws)
    assert exc_info.value.condition == condition


def test_analyze_family_needs_six_weights() -> None:
    with pytest.raises(InvalidArgumentError):
        analyze_family(SEXTIC_K3)


def test_brute_force_census_small_degrees() -> None:
    """
    Only the cubic survives up to degree 3, nothing below.
    """
    assert [ws.sort_key for ws in brute_force_census(3)] == [CUBIC_FOURFOLD.sort_key]
    assert brute_force_census(2) == []
    assert brute_force_census(1) == []
    with pytest.raises(InvalidArgumentError):
        brute_force_census(0)


def test_k3_census(k3_surfaces: list[WeightSystem]) -> None:
    """
    The K3 census has 95 surfaces, the largest degree is 66.
    """
    keys = [ws.sort_key for ws in k3_surfaces]

    assert len(keys) == 95
    assert len(set(keys)) == 95
    assert keys == sorted(keys)
    assert (4, (1, 1, 1, 1)) in keys
    assert SEXTIC_K3.sort_key in keys
    assert max(degree for degree, _ in keys) == 66


def test_verify_k3_census(k3_records: list[K3Record]) -> None:
    """
    Every K3 surface of the census has h^{2,0} = 1 and at worst du Val singularities.
    """
    assert "k3_du_val" in verify_k3_census(k3_records)

    with pytest.raises(CrossCheckError) as exc_info:
        verify_k3_census(k3_records[1:])
    assert exc_info.value.check == "k3_count"


@pytest.mark.asyncio
async def test_k3_census_stabilization() -> None:
    """
    A surface above the expected maximum degree is a cross-check failure.
    """
    with pytest.raises(CrossCheckError) as exc_info:
        await aenumerate_k3_surfaces(CensusConfig(k3_degree_bound=30, expected_k3_max_degree=20))
    assert exc_info.value.check == "k3_stabilization"


@pytest.mark.asyncio
async def test_k3_census_small_bound_warns(caplog: pytest.LogCaptureFixture) -> None:
    surfaces = await aenumerate_k3_surfaces(CensusConfig(k3_degree_bound=10))

    assert all(ws.degree <= 10 for ws in surfaces)
    assert "stabilization is not confirmed" in caplog.text


@pytest.mark.asyncio
async def test_k3_census_worker_processes(k3_surfaces: list[WeightSystem]) -> None:
    """
    The K3 census does not depend on the number of worker processes.
    """
    surfaces = await aenumerate_k3_surfaces(CensusConfig(jobs=4))

    assert [ws.sort_key for ws in surfaces] == [ws.sort_key for ws in k3_surfaces]


def test_fk3_census(fk3_records: list[FamilyRecord], k3_surfaces: list[WeightSystem]) -> None:
    """
    244 families, 202 of them terminal, and every cross-check against the K3 census passes.
    """
    assert len(fk3_records) == 244
    assert sum(1 for record in fk3_records if record.is_terminal) == 202
    assert fk3_records[7].ws.sort_key == MIXED.sort_key
    assert fk3_records[31].ws.sort_key == (10, (1, 2, 2, 5, 5, 5))
    assert fk3_records[0].ws.sort_key == CUBIC_FOURFOLD.sort_key
    assert all(record.sing_dim <= 1 for record in fk3_records)
    assert sum(1 for record in fk3_records if record.association is not None) == 243

    assert "hodge_correspondence" in verify_fk3_census(fk3_records, k3_surfaces)


def test_fk3_census_count_mismatch(fk3_records: list[FamilyRecord], k3_surfaces: list[WeightSystem]) -> None:
    with pytest.raises(CrossCheckError) as exc_info:
        verify_fk3_census(fk3_records[:-1], k3_surfaces)
    assert exc_info.value.check == "fk3_count"


def test_brute_force_matches_census_up_to_degree_12(fk3_records: list[FamilyRecord]) -> None:
    """
    The brute force sweep and the K3 construction agree on the low degrees.
    """
    low_degree = [record for record in fk3_records if record.ws.degree <= 12]

    assert verify_brute_force(low_degree, brute_force_census(12)) == ["brute_force_equality"]
    with pytest.raises(CrossCheckError):
        verify_brute_force(low_degree, brute_force_census(11))


@pytest.mark.slow
def test_brute_force_matches_census(fk3_records: list[FamilyRecord], k3_surfaces: list[WeightSystem]) -> None:
    """
    The brute force sweep up to the largest K3 degree finds exactly the families of the census.
    """
    max_degree = max(ws.degree for ws in k3_surfaces)

    assert verify_brute_force(fk3_records, brute_force_census(max_degree, jobs=4)) == ["brute_force_equality"]


@pytest.mark.asyncio
async def test_extra_families() -> None:
    """
    Exactly the two cyclic families, with h^{2,2} = 15 and 3.
    """
    records = await aenumerate_extra_families()

    assert [record.ws.sort_key for record in records] == [CYCLIC_SMALL.sort_key, CYCLIC_LARGE.sort_key]
    assert [record.hodge.middle_total for record in records] == [15, 3]
    assert all(FamilyTag.CYCLIC_DEL_PEZZO in record.tags for record in records)
    assert verify_extra_families(records) == ["extra_count", "extra_dim"]


@pytest.mark.parametrize(
    "ws",
    [
        WeightSystem(weights=(1, 1, 3, 4, 5, 6), degree=10),
        WeightSystem(weights=(1, 1, 4, 5, 6, 7), degree=12),
        WeightSystem(weights=(2, 2, 3, 5, 5, 13), degree=15),
    ],
)
def test_residue_conditions_bound_the_census(ws: WeightSystem, fk3_records: list[FamilyRecord]) -> None:
    """
    Quasi-smooth fourfolds with a small singular locus whose residues d mod a_i are not weights are analyzable, but
    not part of the census.
    """
    report = dict(condition_report(ws))

    assert report["quasi_smooth"]
    assert report["dim_sing"]
    assert not report["census_residues"]
    assert ws.sort_key not in {record.ws.sort_key for record in fk3_records}
    index = next(idx for idx in range(5) if ws.weights[idx] + ws.weights[5] == ws.degree)
    assert ws.sort_key not in [fourfold.sort_key for fourfold in fourfolds_from_k3(ws.without(index, 5))]
    assert analyze_family(ws).fk3


def test_fk3_census_singularity_classes(fk3_records: list[FamilyRecord]) -> None:
    """
    No family is strictly klt, and the canonical ones are exactly the families whose general member cuts a surface
    stratum P(a_i, a_j, a_k) in a curve (of canonical type 1/r(b_1, b_2, b_3) with b_1 + b_2 + b_3 = r).
    """
    classes = [record.sing_class for record in fk3_records]

    assert (classes.count(SingClass.TERMINAL), classes.count(SingClass.CANONICAL)) == (202, 42)
    for record in fk3_records:
        cuts_surface_stratum = any(
            stratum.on_x and not stratum.contained_in_x and len(stratum.indices) == 3 for stratum in record.strata
        )
        assert cuts_surface_stratum is (record.sing_class == SingClass.CANONICAL), record.ws


def test_analyze_family_curve_of_canonical_singularities() -> None:
    """
    The double suspension (1,1,1,3,3,3; d=6) meets the plane P(3,3,3) in a cubic curve of 1/3(1,1,1) points.
    """
    record = analyze_family(SUSPENSION)

    (stratum,) = record.strata
    assert stratum.indices == (3, 4, 5)
    assert stratum.transverse.label == "1/3(1,1,1)"
    assert not stratum.contained_in_x
    assert stratum.locus_dim == 1
    assert record.sing_class == SingClass.CANONICAL


def test_fk3_census_terminal_count_mismatch(
    fk3_records: list[FamilyRecord], k3_surfaces: list[WeightSystem]
) -> None:
    with pytest.raises(CrossCheckError) as exc_info:
        verify_fk3_census(fk3_records, k3_surfaces, CensusConfig(expected_terminal_count=197))
    assert exc_info.value.check == "terminal_count"
