"""Import of curated and crowd-annotated CSV files, plus conflict resolution.

Curated files carry one row per street and map straight to RawRecords.
Annotated files carry one row per (street, annotator); rows are grouped
into AnnotationSets and merged by per-field majority vote, with exact ties
flagged for manual review instead of silently picking a side.
"""

from __future__ import annotations

import csv
from collections import Counter
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from ..domain import Source
from ..errors import EmptyFile, SchemaMismatch
from .raw import RAW_FIELDS, AnnotationSet, RawRecord

CURATED_REQUIRED = ("streetname", "honoree")
ANNOTATED_REQUIRED = ("streetname", "annotator")

# Fields an annotator may fill; street identity comes from the row key.
ANNOTATED_FIELDS = tuple(f for f in RAW_FIELDS if f != "streetname")


def _now_utc() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _norm(value: str) -> str:
    """Comparison key: case- and whitespace-insensitive."""
    return " ".join(value.split()).casefold()


def _read_rows(path: Union[str, Path], required: tuple[str, ...]) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [name for name in required if name not in header]
        if missing:
            raise SchemaMismatch(missing)
        rows = [row for row in reader if any((v or "").strip() for v in row.values())]
    if not rows:
        raise EmptyFile(str(path))
    return rows


def sniff_annotated(path: Union[str, Path]) -> bool:
    """True when the file has per-annotator rows (an ``annotator`` column)."""
    with open(path, newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), [])
    return "annotator" in header


def import_annotated_csv(
    path: Union[str, Path],
    source: Source,
    city: str = "",
    retrieved_at: Optional[str] = None,
) -> Union[list[RawRecord], list[AnnotationSet]]:
    """Curated files become RawRecords; annotated files become AnnotationSets."""
    if source is Source.CURATED:
        rows = _read_rows(path, CURATED_REQUIRED)
        retrieved = retrieved_at or _now_utc()
        records = []
        for row in rows:
            def opt(name):
                value = (row.get(name) or "").strip()
                return value or None

            records.append(
                RawRecord(
                    street_name=(row.get("streetname") or "").strip(),
                    source=Source.CURATED,
                    city=city or (row.get("city") or "").strip(),
                    district=opt("district"),
                    denomination=opt("denomination"),
                    honoree=opt("honoree"),
                    gender=opt("gender"),
                    occupation=opt("occupation"),
                    country=opt("country"),
                    dob=opt("dob"),
                    dod=opt("dod"),
                    honoree_url=opt("honoree_url"),
                    image_url=opt("image_url"),
                    source_url=str(path),
                    retrieved_at=retrieved,
                )
            )
        return records

    rows = _read_rows(path, ANNOTATED_REQUIRED)
    grouped: dict[str, dict] = {}
    for row in rows:
        street = (row.get("streetname") or "").strip()
        if not street:
            continue
        key = _norm(street)
        entry = grouped.setdefault(key, {"street": street, "values": {f: [] for f in ANNOTATED_FIELDS}})
        for name in ANNOTATED_FIELDS:
            value = (row.get(name) or "").strip()
            if value:
                entry["values"][name].append(value)
    return [
        AnnotationSet(
            street_key=entry["street"],
            city=city,
            values={f: tuple(vals) for f, vals in entry["values"].items() if vals},
        )
        for entry in grouped.values()
    ]


def resolve_conflicts(
    annotations: AnnotationSet, retrieved_at: Optional[str] = None
) -> tuple[RawRecord, list[str]]:
    """Merge annotator values per field by strict majority.

    Unanimous or strictly most-frequent values are adopted (in the spelling
    of their first occurrence); an exact tie adopts nothing and flags the
    field for manual review.
    """
    review_flags: list[str] = []
    resolved: dict[str, Optional[str]] = {}
    for name, values in annotations.values.items():
        counts = Counter(_norm(v) for v in values)
        ranked = counts.most_common()
        top_count = ranked[0][1]
        winners = [key for key, count in ranked if count == top_count]
        if len(winners) > 1:
            review_flags.append(name)
            resolved[name] = None
            continue
        winner = winners[0]
        resolved[name] = next(v for v in values if _norm(v) == winner)

    record = RawRecord(
        street_name=annotations.street_key,
        source=Source.ANNOTATED_CSV,
        city=annotations.city,
        district=resolved.get("district"),
        denomination=resolved.get("denomination"),
        honoree=resolved.get("honoree"),
        gender=resolved.get("gender"),
        occupation=resolved.get("occupation"),
        country=resolved.get("country"),
        dob=resolved.get("dob"),
        dod=resolved.get("dod"),
        honoree_url=resolved.get("honoree_url"),
        image_url=resolved.get("image_url"),
        retrieved_at=retrieved_at or _now_utc(),
        flags=tuple(f"review:{name}" for name in review_flags),
    )
    return record, review_flags
