# pylint: disable=import-outside-toplevel
"""Storage classes of the census."""
import typing
from abc import ABC, abstractmethod

if typing.TYPE_CHECKING:
    from fk3census.models import FamilyRecord, WeightSystem


class FamilyStore(ABC):
    """
    "Write Once Read Many" storage for analyzed families, keyed by their weight system. Different constructions can
    land on the same family, so the census asks `acontains_family` before analyzing a candidate. Once a family is
    stored, it cannot be replaced.
    """

    @abstractmethod
    async def astore_family(self, record: "FamilyRecord") -> None:
        """
        Store a family record.
        """

    @abstractmethod
    async def aretrieve_family(self, ws: "WeightSystem") -> "FamilyRecord":
        """
        Retrieve the record of the family with the given weight system.
        """

    @abstractmethod
    async def acontains_family(self, ws: "WeightSystem") -> bool:
        """
        Check whether a family with the given weight system is stored already.
        """
