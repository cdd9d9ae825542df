"""Canonical record types, the occupation taxonomy, city registry and validation.

Every other module trades in the types defined here. All types are immutable
values and safe to share between threads.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Iterable, Optional


class CityId(str, Enum):
    PARIS = "paris"
    VIENNA = "vienna"
    LONDON = "london"
    NEWYORK = "newyork"


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"
    UNKNOWN = "unknown"


class OccupationGroup(str, Enum):
    """Closed 17-member taxonomy of honoree occupations (ISCO-derived).

    ``OTHER`` absorbs occupations no keyword covers, which keeps the
    mapping total.
    """

    LEGISLATORS = "legislators"
    WRITERS = "writers"
    CREATIVE_PERFORMING_ARTISTS = "creative_performing_artists"
    SCIENCE_ENGINEERING_PROFESSIONALS = "science_engineering_professionals"
    HEALTH_ASSOCIATE_PROFESSIONALS = "health_associate_professionals"
    SPORTSMEN = "sportsmen"
    SOCIAL_WORKERS = "social_workers"
    TEACHING_PROFESSIONALS = "teaching_professionals"
    BUSINESSMEN = "businessmen"
    CRAFT_TRADES_WORKERS = "craft_trades_workers"
    LEGAL_SOCIAL_PROFESSIONALS = "legal_social_professionals"
    RELIGION_REPRESENTATIVES = "religion_representatives"
    MILITARY_PERSONNEL = "military_personnel"
    ROYALS = "royals"
    POLITICIANS = "politicians"
    RESPONDERS_VICTIMS_911 = "responders_victims_911"
    OTHER = "other"


class ThemeLayer(str, Enum):
    OCCUPATION = "occupation"
    GENDER = "gender"
    COUNTRY = "country"
    PERIOD = "period"


class Source(str, Enum):
    WIKIDATA = "wikidata"
    WIKIHISTORY = "wikihistory"
    ANNOTATED_CSV = "annotated_csv"
    CURATED = "curated"


COUNTRY_UNKNOWN = "unknown"

# Denomination years are accepted within this window; the datasets span
# 1030 (London) to 2018 (Vienna).
YEAR_MIN = 1000
YEAR_MAX = date.today().year


@dataclass(frozen=True)
class StreetRecord:
    """One honorific street with its honoree attributes and provenance."""

    record_id: str
    street_name: str
    city: CityId
    honoree_name: str
    gender: Gender = Gender.UNKNOWN
    occupation_raw: str = ""
    occupation_group: OccupationGroup = OccupationGroup.OTHER
    country: str = COUNTRY_UNKNOWN
    district: Optional[str] = None
    denomination_year: Optional[int] = None
    birth_year: Optional[int] = None
    death_year: Optional[int] = None
    honoree_url: Optional[str] = None
    image_url: Optional[str] = None
    source: Source = Source.CURATED


@dataclass(frozen=True)
class Violation:
    """One broken invariant: which field, which rule."""

    field: str
    rule: str


def validate_record(record: StreetRecord) -> list[Violation]:
    """Return every invariant the record breaks; empty list means valid."""
    violations = []
    if not record.street_name or not record.street_name.strip():
        violations.append(Violation("street_name", "non-empty"))
    if not record.honoree_name or not record.honoree_name.strip():
        violations.append(Violation("honoree_name", "non-empty"))
    if not record.record_id:
        violations.append(Violation("record_id", "non-empty"))
    if record.birth_year is not None and record.death_year is not None:
        if record.birth_year >= record.death_year:
            violations.append(Violation("birth_year", "birth_year < death_year"))
    if record.denomination_year is not None:
        if not YEAR_MIN <= record.denomination_year <= YEAR_MAX:
            violations.append(
                Violation("denomination_year", f"within [{YEAR_MIN}, {YEAR_MAX}]")
            )
    if not isinstance(record.city, CityId):
        violations.append(Violation("city", "known city"))
    if not isinstance(record.gender, Gender):
        violations.append(Violation("gender", "valid gender value"))
    if not isinstance(record.occupation_group, OccupationGroup):
        violations.append(Violation("occupation_group", "valid occupation group"))
    if not isinstance(record.source, Source):
        violations.append(Violation("source", "valid source value"))
    if not record.country:
        violations.append(Violation("country", "code or unknown, never empty"))
    return violations


def make_record_id(city: CityId, street_name: str, source: Source) -> str:
    """Deterministic opaque identifier; stable across pipeline reruns."""
    key = f"{city.value}|{street_name.casefold().strip()}|{source.value}"
    digest = hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]
    return f"{city.value}-{digest}"


def theme_value(record: StreetRecord, theme: ThemeLayer) -> str:
    """The record's value under a theme layer, as a tag string.

    Period theming keys off the denomination year; a street without one has
    the value ``unknown`` (it cannot be placed on the timeline).
    """
    if theme is ThemeLayer.OCCUPATION:
        return record.occupation_group.value
    if theme is ThemeLayer.GENDER:
        return record.gender.value
    if theme is ThemeLayer.COUNTRY:
        return record.country
    if record.denomination_year is None:
        return COUNTRY_UNKNOWN
    return str(record.denomination_year)


# ---------------------------------------------------------------------------
# Per-city configuration


@dataclass(frozen=True)
class LonLat:
    lon: float
    lat: float


@dataclass(frozen=True)
class BoundingBox:
    """WGS84 rectangle: west/south/east/north in degrees."""

    west: float
    south: float
    east: float
    north: float

    def contains(self, point: LonLat) -> bool:
        return self.west <= point.lon <= self.east and self.south <= point.lat <= self.north


@dataclass(frozen=True)
class SourceDescriptor:
    """Where one city's records come from: adapter kind + location.

    ``location`` is a URL for live sources or a local path for snapshots;
    adapters accept both.
    """

    kind: Source
    location: str


@dataclass(frozen=True)
class CityConfig:
    city: CityId
    display_name: str
    bounding_box: BoundingBox
    center: LonLat
    year_range: tuple[int, int]
    language: str = "en"
    sources: tuple[SourceDescriptor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.bounding_box.contains(self.center):
            raise ValueError(f"{self.city.value}: bounding box does not contain center")
        if self.year_range[0] > self.year_range[1]:
            raise ValueError(f"{self.city.value}: min_year > max_year")


CITY_CONFIGS: dict[CityId, CityConfig] = {
    CityId.PARIS: CityConfig(
        city=CityId.PARIS,
        display_name="Paris",
        bounding_box=BoundingBox(2.224, 48.815, 2.470, 48.902),
        center=LonLat(2.3522, 48.8566),
        year_range=(1202, 2011),
        language="fr",
    ),
    CityId.VIENNA: CityConfig(
        city=CityId.VIENNA,
        display_name="Vienna",
        bounding_box=BoundingBox(16.18, 48.11, 16.58, 48.33),
        center=LonLat(16.3738, 48.2082),
        year_range=(1778, 2018),
        language="de",
    ),
    CityId.LONDON: CityConfig(
        city=CityId.LONDON,
        display_name="London",
        bounding_box=BoundingBox(-0.51, 51.28, 0.33, 51.70),
        center=LonLat(-0.1276, 51.5072),
        year_range=(1030, 2013),
        language="en",
    ),
    CityId.NEWYORK: CityConfig(
        city=CityId.NEWYORK,
        display_name="New York",
        bounding_box=BoundingBox(-74.26, 40.49, -73.70, 40.92),
        center=LonLat(-73.9857, 40.7484),
        year_range=(1998, 2013),
        language="en",
    ),
}


# ---------------------------------------------------------------------------
# Canonical CSV exchange format

CSV_HEADER = [
    "record_id",
    "streetname",
    "district",
    "denomination",
    "honoree",
    "gender",
    "occupation",
    "occupation_group",
    "country",
    "dob",
    "dod",
    "honoree_url",
    "image_url",
    "source",
    "city",
]


def _opt_str(value) -> str:
    return "" if value is None else str(value)


def record_to_row(record: StreetRecord) -> list[str]:
    return [
        record.record_id,
        record.street_name,
        _opt_str(record.district),
        _opt_str(record.denomination_year),
        record.honoree_name,
        record.gender.value,
        record.occupation_raw,
        record.occupation_group.value,
        record.country,
        _opt_str(record.birth_year),
        _opt_str(record.death_year),
        _opt_str(record.honoree_url),
        _opt_str(record.image_url),
        record.source.value,
        record.city.value,
    ]


def record_from_row(row: dict[str, str]) -> StreetRecord:
    def opt(name):
        return row[name] if row.get(name) else None

    def opt_int(name):
        return int(row[name]) if row.get(name) else None

    return StreetRecord(
        record_id=row["record_id"],
        street_name=row["streetname"],
        city=CityId(row["city"]),
        honoree_name=row["honoree"],
        gender=Gender(row["gender"]),
        occupation_raw=row.get("occupation", ""),
        occupation_group=OccupationGroup(row["occupation_group"]),
        country=row["country"],
        district=opt("district"),
        denomination_year=opt_int("denomination"),
        birth_year=opt_int("dob"),
        death_year=opt_int("dod"),
        honoree_url=opt("honoree_url"),
        image_url=opt("image_url"),
        source=Source(row["source"]),
    )


def write_records_csv(records: Iterable[StreetRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record_to_row(record))


def read_records_csv(fh) -> list[StreetRecord]:
    reader = csv.DictReader(fh)
    missing = [name for name in CSV_HEADER if name not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"canonical CSV missing columns: {', '.join(missing)}")
    return [record_from_row(row) for row in reader]


def records_to_csv_text(records: Iterable[StreetRecord]) -> str:
    buf = io.StringIO()
    write_records_csv(records, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# GeoJSON property mapping (shared by geomatch output, store and API)


def record_to_properties(record: StreetRecord) -> dict:
    """Feature properties under the canonical CSV field names; null for absent."""
    return {
        "record_id": record.record_id,
        "streetname": record.street_name,
        "district": record.district,
        "denomination": record.denomination_year,
        "honoree": record.honoree_name,
        "gender": record.gender.value,
        "occupation": record.occupation_raw,
        "occupation_group": record.occupation_group.value,
        "country": record.country,
        "dob": record.birth_year,
        "dod": record.death_year,
        "honoree_url": record.honoree_url,
        "image_url": record.image_url,
        "source": record.source.value,
        "city": record.city.value,
    }


def record_from_properties(props: dict) -> StreetRecord:
    def opt_int(name):
        value = props.get(name)
        return int(value) if value is not None and value != "" else None

    return StreetRecord(
        record_id=str(props["record_id"]),
        street_name=str(props["streetname"]),
        city=CityId(props["city"]),
        honoree_name=str(props["honoree"]),
        gender=Gender(props.get("gender", "unknown")),
        occupation_raw=str(props.get("occupation") or ""),
        occupation_group=OccupationGroup(props.get("occupation_group", "other")),
        country=str(props.get("country") or COUNTRY_UNKNOWN),
        district=props.get("district") or None,
        denomination_year=opt_int("denomination"),
        birth_year=opt_int("dob"),
        death_year=opt_int("dod"),
        honoree_url=props.get("honoree_url") or None,
        image_url=props.get("image_url") or None,
        source=Source(props.get("source", "curated")),
    )


__all__ = [
    "CityId",
    "Gender",
    "OccupationGroup",
    "ThemeLayer",
    "Source",
    "StreetRecord",
    "Violation",
    "validate_record",
    "make_record_id",
    "theme_value",
    "LonLat",
    "BoundingBox",
    "SourceDescriptor",
    "CityConfig",
    "CITY_CONFIGS",
    "CSV_HEADER",
    "COUNTRY_UNKNOWN",
    "YEAR_MIN",
    "YEAR_MAX",
    "write_records_csv",
    "read_records_csv",
    "records_to_csv_text",
    "record_to_row",
    "record_from_row",
    "record_to_properties",
    "record_from_properties",
]
