"""Pre-normalization record forms produced by the source adapters."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from ..domain import Source

# Fields annotators and adapters may supply as free text; matches the
# canonical CSV column names.
RAW_FIELDS = (
    "streetname",
    "district",
    "denomination",
    "honoree",
    "gender",
    "occupation",
    "country",
    "dob",
    "dod",
    "honoree_url",
    "image_url",
)

RAW_CSV_HEADER = list(RAW_FIELDS) + ["source", "city", "source_url", "retrieved_at", "flags"]


@dataclass(frozen=True)
class RawRecord:
    """One street as a source delivered it: free text, holes allowed."""

    street_name: str
    source: Source
    city: str = ""
    district: Optional[str] = None
    denomination: Optional[str] = None
    honoree: Optional[str] = None
    gender: Optional[str] = None
    occupation: Optional[str] = None
    country: Optional[str] = None
    dob: Optional[str] = None
    dod: Optional[str] = None
    honoree_url: Optional[str] = None
    image_url: Optional[str] = None
    source_url: Optional[str] = None
    retrieved_at: str = ""
    flags: tuple[str, ...] = ()

    def with_flag(self, flag: str) -> "RawRecord":
        if flag in self.flags:
            return self
        return replace(self, flags=self.flags + (flag,))


@dataclass(frozen=True)
class AnnotationSet:
    """Per-field value lists gathered from several annotators for one street."""

    street_key: str
    city: str
    values: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def annotated_fields(self) -> list[str]:
        return [name for name, vals in self.values.items() if vals]


def raw_to_row(record: RawRecord) -> list[str]:
    def opt(value):
        return "" if value is None else str(value)

    return [
        record.street_name,
        opt(record.district),
        opt(record.denomination),
        opt(record.honoree),
        opt(record.gender),
        opt(record.occupation),
        opt(record.country),
        opt(record.dob),
        opt(record.dod),
        opt(record.honoree_url),
        opt(record.image_url),
        record.source.value,
        record.city,
        opt(record.source_url),
        record.retrieved_at,
        ";".join(record.flags),
    ]


def raw_from_row(row: dict[str, str]) -> RawRecord:
    def opt(name):
        return row[name] if row.get(name) else None

    return RawRecord(
        street_name=row["streetname"],
        source=Source(row["source"]),
        city=row.get("city", ""),
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
        source_url=opt("source_url"),
        retrieved_at=row.get("retrieved_at", ""),
        flags=tuple(f for f in row.get("flags", "").split(";") if f),
    )


def write_raw_csv(records: Iterable[RawRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RAW_CSV_HEADER)
    for record in records:
        writer.writerow(raw_to_row(record))


def read_raw_csv(fh) -> list[RawRecord]:
    reader = csv.DictReader(fh)
    missing = [n for n in ("streetname", "source") if n not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"raw CSV missing columns: {', '.join(missing)}")
    return [raw_from_row(row) for row in reader]
