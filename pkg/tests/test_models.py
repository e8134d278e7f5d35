"""Tests for the Immutable models."""
import hashlib
from typing import Optional
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from fk3census.models import (
    FamilyRecord,
    FamilyTag,
    HodgeRow,
    Immutable,
    K3Association,
    QuotientType,
    Rationality,
    SingClass,
    SubsetBranch,
    SubsetVerdict,
    WeightSystem,
    sort_tags,
)


class SampleImmutable(Immutable):
    """A sample Immutable subclass."""

    some_req_field: str
    some_opt_field: int = 2
    sub_immutable: Optional["SampleImmutable"] = None


def _cubic_record(**overrides) -> FamilyRecord:
    values = {
        "ws": WeightSystem(weights=(1, 1, 1, 1, 1, 1), degree=3),
        "fk3": True,
        "hodge": HodgeRow(dim=4, primitive=(0, 1, 20, 1, 0), middle_total=21),
        "sing_dim": -1,
        "sing_class": SingClass.TERMINAL,
        "strata": (),
        "rationality": Rationality.CONJECTURAL_CUBIC,
        "tags": (FamilyTag.CUBIC,),
    }
    values.update(overrides)
    return FamilyRecord(**values)


def test_immutable_frozen() -> None:
    """Test that the `Immutable` class is frozen."""
    sample = SampleImmutable(some_req_field="test")

    with pytest.raises(ValidationError):
        sample.some_req_field = "test2"
    with pytest.raises(ValidationError):
        sample.some_opt_field = 3

    assert sample.some_req_field == "test"
    assert sample.some_opt_field == 2


def test_weight_system_frozen() -> None:
    """Test that the `WeightSystem` class is frozen."""
    ws = WeightSystem(weights=(1, 1, 1, 3), degree=6)

    with pytest.raises(ValidationError):
        ws.degree = 7

    assert ws.degree == 6


def test_immutable_hash_key() -> None:
    """Test the `Immutable.hash_key` property."""
    sample = SampleImmutable(
        some_req_field="test", sub_immutable=SampleImmutable(some_req_field="юнікод", some_opt_field=3)
    )

    expected_hash_key = hashlib.sha256(
        '{"some_opt_field": 2, "some_req_field": "test", "sub_immutable": '
        '{"some_opt_field": 3, "some_req_field": "юнікод", "sub_immutable": null}}'.encode("utf-8")
    ).hexdigest()
    assert sample.hash_key == expected_hash_key


def test_weight_system_hash_key() -> None:
    """Test the hash key of a `WeightSystem` (the key of the family store)."""
    ws = WeightSystem(weights=(1, 1, 1, 2, 3, 4), degree=6)

    expected_hash_key = hashlib.sha256('{"degree": 6, "weights": [1, 1, 1, 2, 3, 4]}'.encode("utf-8")).hexdigest()
    assert ws.hash_key == expected_hash_key


def test_nested_object_not_copied() -> None:
    """Test that nested objects are not copied when the outer pydantic model is created."""
    k3 = WeightSystem(weights=(1, 1, 1, 3), degree=6)
    association = K3Association(index=3, k3=k3)

    assert association.k3 is k3


def test_immutable_hash_key_calculated_once() -> None:
    """
    Test that the `Immutable.hash_key` property is calculated only once and all subsequent calls return the same
    value without calculating it again.
    """
    original_sha256 = hashlib.sha256

    with patch("hashlib.sha256", side_effect=original_sha256) as mock_sha256:
        ws = WeightSystem(weights=(1, 1, 1, 1), degree=4)
        mock_sha256.assert_not_called()  # not calculated yet

        first = ws.hash_key
        mock_sha256.assert_called_once()  # calculated once

        assert ws.hash_key == first
        mock_sha256.assert_called_once()  # check that it wasn't calculated again


def test_lists_become_tuples() -> None:
    """Test that list values are converted into tuples (so that the models stay hashable)."""
    ws = WeightSystem(weights=[1, 1, 1, 3], degree=6)

    assert ws.weights == (1, 1, 1, 3)
    assert hash(ws) == hash(WeightSystem(weights=(1, 1, 1, 3), degree=6))


def test_mutable_values_rejected() -> None:
    """Test that values which are not immutable are rejected."""
    with pytest.raises(ValidationError):
        SampleImmutable(some_req_field="test", sub_immutable={"some_req_field": "nested"})


@pytest.mark.parametrize(
    "weights, degree",
    [
        ((), 3),
        ((0, 1, 1), 3),
        ((1, -1), 3),
        ((2, 1), 3),
        ((1, 1), 0),
    ],
)
def test_weight_system_validation(weights: tuple[int, ...], degree: int) -> None:
    """Test that empty, nonpositive and unsorted weights (and nonpositive degrees) are rejected."""
    with pytest.raises(ValidationError):
        WeightSystem(weights=weights, degree=degree)


def test_weight_system_helpers() -> None:
    """Test sorting, rendering and removing weights."""
    ws = WeightSystem.of([4, 3, 2, 1, 1, 1], 6)

    assert ws.weights == (1, 1, 1, 2, 3, 4)
    assert ws.n_weights == 6
    assert ws.weight_sum == 12
    assert ws.sort_key == (6, (1, 1, 1, 2, 3, 4))
    assert ws.render() == "1,1,1,2,3,4:6"
    assert str(ws) == "(1,1,1,2,3,4; d=6)"
    assert ws.without(3, 5) == WeightSystem(weights=(1, 1, 1, 3), degree=6)


def test_subset_verdict_validation() -> None:
    """Test the invariants of the second branch of the subset criterion."""
    verdict = SubsetVerdict(subset=(5,), branch=SubsetBranch.TANGENT_INDICES, tangent_indices=(3,))
    assert verdict.render_subset() == "I={5}"
    assert not verdict.fails

    with pytest.raises(ValidationError):
        SubsetVerdict(subset=(4, 5), branch=SubsetBranch.TANGENT_INDICES, tangent_indices=(3,))
    with pytest.raises(ValidationError):
        SubsetVerdict(subset=(3,), branch=SubsetBranch.TANGENT_INDICES, tangent_indices=(3,))


def test_hodge_row_validation() -> None:
    """Test that a Hodge row needs dim + 1 nonnegative entries."""
    row = HodgeRow(dim=4, primitive=(0, 1, 20, 1, 0), middle_total=21)
    assert row.middle_primitive == 20

    with pytest.raises(ValidationError):
        HodgeRow(dim=4, primitive=(0, 1, 20, 1), middle_total=21)
    with pytest.raises(ValidationError):
        HodgeRow(dim=2, primitive=(1, -1, 1), middle_total=0)


def test_sing_class_worst() -> None:
    """Test the aggregation of singularity classes."""
    assert SingClass.worst([]) == SingClass.TERMINAL
    assert SingClass.worst([SingClass.TERMINAL, SingClass.CANONICAL]) == SingClass.CANONICAL
    assert SingClass.worst([SingClass.KLT, SingClass.CANONICAL, SingClass.TERMINAL]) == SingClass.KLT


def test_quotient_type() -> None:
    """Test the label, the reducedness and the well-formedness of cyclic quotient types."""
    quotient = QuotientType(r=4, residues=(1, 1, 1, 3))
    assert quotient.label == "1/4(1,1,1,3)"
    assert quotient.is_reduced
    assert quotient.is_well_formed

    assert not QuotientType(r=4, residues=(2, 2, 1)).is_well_formed
    assert not QuotientType(r=3, residues=(3, 1)).is_reduced
    with pytest.raises(ValidationError):
        QuotientType(r=1, residues=())


def test_sort_tags() -> None:
    """Test that tags are deduplicated and put in their rendering order."""
    assert sort_tags(
        [FamilyTag.DOUBLE_SUSPENSION, FamilyTag.LINEAR_IN_LAST_VARIABLE, FamilyTag.DOUBLE_SUSPENSION]
    ) == (FamilyTag.LINEAR_IN_LAST_VARIABLE, FamilyTag.DOUBLE_SUSPENSION)


def test_family_record_invariants() -> None:
    """Test the invariants of a family record."""
    assert _cubic_record().ws.degree == 3

    with pytest.raises(ValidationError):
        # not of K3 type
        _cubic_record(ws=WeightSystem(weights=(1, 1, 1, 1, 1, 2), degree=3))
    with pytest.raises(ValidationError):
        # an associated K3 makes a non-cubic family rational
        _cubic_record(
            tags=(),
            rationality=Rationality.UNKNOWN,
            association=K3Association(index=0, k3=WeightSystem(weights=(1, 1, 1, 1), degree=4)),
        )
    with pytest.raises(ValidationError):
        _cubic_record(tags=(FamilyTag.CUBIC, FamilyTag.DOUBLE_SUSPENSION))
