"""Honorific street names: collection, normalization, geo-matching, serving."""

__version__ = "0.1.0"

from .domain import (
    CITY_CONFIGS,
    CityConfig,
    CityId,
    Gender,
    OccupationGroup,
    Source,
    StreetRecord,
    ThemeLayer,
    validate_record,
)
from .store import QueryFilter, Snapshot, load_snapshot, open_db, save_db

__all__ = [
    "__version__",
    "CityId",
    "CityConfig",
    "CITY_CONFIGS",
    "Gender",
    "OccupationGroup",
    "Source",
    "StreetRecord",
    "ThemeLayer",
    "validate_record",
    "QueryFilter",
    "Snapshot",
    "load_snapshot",
    "open_db",
    "save_db",
]
