"""
Weight spec parsing and catalog emission (CSV, JSON and Markdown pipe tables). Emission is deterministic: the same
records always produce the same bytes.
"""
import csv
import hashlib
import io
import json
import logging
import re
from enum import Enum
from typing import Any, Optional, Sequence

from fk3census.errors import InvalidArgumentError, WeightDomainError, WeightSpecParseError
from fk3census.models import FamilyRecord, K3Record, Stratum, WeightSystem
from fk3census.singularity import reid_tai_classify
from fk3census.typing import CatalogRecord

logger = logging.getLogger(__name__)

FK3_COLUMNS = (
    "index",
    "weights",
    "d",
    "h22_total",
    "h22_primitive",
    "sing_dim",
    "sing_class",
    "association_k3",
    "rationality",
    "tags",
)
K3_COLUMNS = ("index", "weights", "d", "h11_total", "h11_primitive", "sing_dim", "sing_class")
STRATA_COLUMNS = ("r", "indices", "ambient_type", "relation", "tangent_index", "transverse_type", "locus_dim", "class")

_INTEGER_TOKEN = re.compile(r"-?\d+")


class CatalogFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    MARKDOWN = "md"


def _parse_integer(token: str, column: int) -> int:
    if not _INTEGER_TOKEN.fullmatch(token):
        bad = next(
            (pos for pos, char in enumerate(token) if not (char.isdigit() or (char == "-" and pos == 0))), len(token)
        )
        raise WeightSpecParseError(f"expected an integer at column {column + bad}", column=column + bad)
    value = int(token)
    if value < 1:
        raise WeightDomainError(f"weights and the degree must be positive, got {value} at column {column}")
    return value


def parse_weight_spec(text: str) -> WeightSystem:
    """
    Parse `w0,w1,...,wn:d` (surrounding whitespace ignored) into a weight system with sorted weights.
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip()) + 1
    if stripped.count(":") != 1:
        position = stripped.find(":", stripped.find(":") + 1) if ":" in stripped else len(stripped)
        raise WeightSpecParseError("expected exactly one ':' before the degree", column=offset + position)

    weights_text, degree_text = stripped.split(":")
    weights = []
    column = offset
    for token in weights_text.split(","):
        weights.append(_parse_integer(token, column))
        column += len(token) + 1
    degree = _parse_integer(degree_text, column)
    return WeightSystem.of(weights, degree)


def _join(values: Sequence[Any]) -> str:
    return " ".join(str(value) for value in values)


def family_row(index: int, record: FamilyRecord) -> dict[str, Any]:
    return {
        "index": index,
        "weights": list(record.ws.weights),
        "d": record.ws.degree,
        "h22_total": record.hodge.middle_total,
        "h22_primitive": record.hodge.middle_primitive,
        "sing_dim": record.sing_dim,
        "sing_class": record.sing_class.value,
        "association_k3": list(record.association.k3.weights) if record.association else None,
        "rationality": record.rationality.value,
        "tags": [tag.value for tag in record.tags],
    }


def k3_row(index: int, record: K3Record) -> dict[str, Any]:
    return {
        "index": index,
        "weights": list(record.ws.weights),
        "d": record.ws.degree,
        "h11_total": record.hodge.middle_total,
        "h11_primitive": record.hodge.middle_primitive,
        "sing_dim": record.sing_dim,
        "sing_class": record.sing_class.value,
    }


def stratum_row(stratum: Stratum) -> dict[str, Any]:
    if stratum.contained_in_x:
        relation = "contained"
    elif stratum.on_x:
        relation = "transverse"
    else:
        relation = "not_on_x"
    return {
        "r": stratum.r,
        "indices": list(stratum.indices),
        "ambient_type": stratum.ambient_transverse.label,
        "relation": relation,
        "tangent_index": stratum.tangent_index,
        "transverse_type": stratum.transverse.label if stratum.transverse else None,
        "locus_dim": stratum.locus_dim,
        "class": reid_tai_classify(stratum.transverse).value if stratum.transverse else None,
    }


def catalog_rows(records: Sequence[CatalogRecord]) -> tuple[tuple[str, ...], list[dict[str, Any]]]:
    """
    The columns and the (1-based) rows of a K3 or an FK3 catalog. An empty catalog gets the FK3 columns.
    """
    if records and isinstance(records[0], K3Record):
        return K3_COLUMNS, [k3_row(index, record) for index, record in enumerate(records, start=1)]
    return FK3_COLUMNS, [family_row(index, record) for index, record in enumerate(records, start=1)]


def _render_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return _join(value) if value else "-"
    return str(value)


def emit_table(columns: Sequence[str], rows: Sequence[dict[str, Any]], fmt: CatalogFormat) -> bytes:
    """
    Render rows (dicts keyed by the columns) in the given format. Absent values and empty lists become `-` in CSV and
    Markdown, `null` and `[]` in JSON.
    """
    if fmt == CatalogFormat.JSON:
        payload = [{column: row[column] for column in columns} for row in rows]
        return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")

    if fmt == CatalogFormat.MARKDOWN:
        lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
        for row in rows:
            lines.append("| " + " | ".join(_render_cell(row[column]) for column in columns) + " |")
        return ("\n".join(lines) + "\n").encode("utf-8")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_render_cell(row[column]) for column in columns])
    return buffer.getvalue().encode("utf-8")


def emit_catalog(
    records: Sequence[CatalogRecord], fmt: CatalogFormat = CatalogFormat.CSV, columns: Optional[Sequence[str]] = None
) -> bytes:
    """
    Emit a K3 or FK3 catalog. The records are expected to be sorted by (d, weights); the index column numbers them
    from 1. `columns` selects (and orders) a subset of the columns.
    """
    default_columns, rows = catalog_rows(records)
    if columns:
        unknown = [column for column in columns if column not in default_columns]
        if unknown:
            raise InvalidArgumentError(f"unknown catalog columns: {', '.join(unknown)}")
    return emit_table(columns or default_columns, rows, fmt)


def emit_strata(strata: Sequence[Stratum], fmt: CatalogFormat = CatalogFormat.CSV) -> bytes:
    return emit_table(STRATA_COLUMNS, [stratum_row(stratum) for stratum in strata], fmt)


def catalog_fingerprint(data: bytes) -> str:
    """
    The sha256 of the emitted bytes, to compare catalogs across runs and job counts.
    """
    return hashlib.sha256(data).hexdigest()
