"""
Typing definitions that involve imports from fk3census.
"""
from typing import Protocol, Union

from fk3census.models import FamilyRecord, K3Record

Weights = tuple[int, ...]
CatalogRecord = Union[FamilyRecord, K3Record]


class CandidateFilter(Protocol):
    """
    A protocol for the predicates the census sweeps apply to raw candidates (plain weight tuples, no models, so that
    they stay cheap in the hot loops).
    """

    def __call__(self, weights: Weights, degree: int) -> bool:
        ...
