"""Shared builders for tests: records, features, synthetic datasets."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from eponymap.domain import (
    CityId,
    Gender,
    OccupationGroup,
    Source,
    StreetRecord,
)
from eponymap.geo import Geometry
from eponymap.geomatch import MatchMethod, StreetFeature

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CITY_LON_LAT = {
    CityId.PARIS: (2.35, 48.85),
    CityId.VIENNA: (16.37, 48.21),
    CityId.LONDON: (-0.12, 51.50),
    CityId.NEWYORK: (-73.98, 40.75),
}


def make_record(record_id="paris-000000000001", street_name="Rue Test", city=CityId.PARIS,
                honoree_name="Test Honoree", **kwargs) -> StreetRecord:
    return StreetRecord(
        record_id=record_id,
        street_name=street_name,
        city=city,
        honoree_name=honoree_name,
        **kwargs,
    )


def make_feature(record: StreetRecord, offset: float = 0.0) -> StreetFeature:
    lon, lat = CITY_LON_LAT[record.city]
    line = ((lon + offset, lat), (lon + offset + 0.001, lat + 0.001))
    geometry = Geometry("LineString", (line,))
    mid = ((line[0][0] + line[1][0]) / 2, (line[0][1] + line[1][1]) / 2)
    return StreetFeature(record, geometry, mid, MatchMethod.EXACT)


GENDERS = [Gender.FEMALE, Gender.MALE, Gender.UNKNOWN]
GROUPS = list(OccupationGroup)
COUNTRIES = ["FR", "AT", "GB", "US", "DE", "IT", "PL", "unknown"]


def synthetic_features(n: int, seed: int = 42) -> list[StreetFeature]:
    """Deterministic synthetic dataset spanning all cities and theme values."""
    rng = random.Random(seed)
    cities = list(CityId)
    features = []
    for i in range(n):
        city = cities[i % len(cities)]
        year = rng.choice([None] + list(range(1030, 2019)))
        record = make_record(
            record_id=f"{city.value}-{i:06d}",
            street_name=f"Synthetic Street {i}",
            city=city,
            honoree_name=f"Person {i}",
            gender=rng.choice(GENDERS),
            occupation_group=rng.choice(GROUPS),
            country=rng.choice(COUNTRIES),
            denomination_year=year,
        )
        features.append(make_feature(record, offset=(i % 50) * 0.0004))
    return features


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES
