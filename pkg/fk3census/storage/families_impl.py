"""Storage classes of the census."""
from fk3census.errors import FamilyAlreadyStored, FamilyDoesNotExist
from fk3census.models import FamilyRecord, WeightSystem
from fk3census.storage.families import FamilyStore


class InMemoryFamilyStore(FamilyStore):
    """An in-memory storage."""

    def __init__(self) -> None:
        self._families: dict[str, FamilyRecord] = {}

    async def astore_family(self, record: FamilyRecord) -> None:
        if record.ws.hash_key in self._families:
            raise FamilyAlreadyStored(f"family {record.ws} is already stored")
        self._families[record.ws.hash_key] = record

    async def aretrieve_family(self, ws: WeightSystem) -> FamilyRecord:
        try:
            return self._families[ws.hash_key]
        except KeyError as exc:
            raise FamilyDoesNotExist(str(ws)) from exc

    async def acontains_family(self, ws: WeightSystem) -> bool:
        return ws.hash_key in self._families
