"""Immutable indexed snapshot of street features behind one filter contract.

Loading builds a new snapshot; queries are lock-free reads, so swapping in a
fresh snapshot is a single reference assignment. Persistence is the snapshot
file itself (canonical GeoJSON): rebuilding the indexes from it takes
milliseconds at dataset scale, which keeps the zero-infrastructure path. A
relational backend stays a deployment option behind the same surface.
"""

from __future__ import annotations

import bisect
import json
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .domain import (
    CITY_CONFIGS,
    CityId,
    Gender,
    OccupationGroup,
    ThemeLayer,
    theme_value,
    validate_record,
)
from .errors import InvalidSnapshot, NoMatch, UnknownCity
from .geo import canonical_dumps, coords_in_range
from .geomatch import StreetFeature, feature_from_geojson, features_to_collection

_COUNTRY_TAG = re.compile(r"^[A-Z]{2}$")
_YEAR_TAG = re.compile(r"^\d{1,4}$")


class FilterError(ValueError):
    """A filter parameter is malformed; carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


def validate_tag(theme: ThemeLayer, tag: str) -> bool:
    if theme is ThemeLayer.OCCUPATION:
        return tag in {g.value for g in OccupationGroup}
    if theme is ThemeLayer.GENDER:
        return tag in {g.value for g in Gender}
    if theme is ThemeLayer.COUNTRY:
        return tag == "unknown" or bool(_COUNTRY_TAG.match(tag))
    return tag == "unknown" or bool(_YEAR_TAG.match(tag))


@dataclass(frozen=True)
class QueryFilter:
    """City + theme + optional year range + optional tag set.

    The single filtering contract shared by the store, the HTTP API and the
    UI selectors: city (S1), theme (S2), denomination-year range (S3), tags
    (S4).
    """

    city: CityId
    theme: ThemeLayer = ThemeLayer.OCCUPATION
    year_range: Optional[tuple[int, int]] = None
    tags: Optional[frozenset[str]] = None

    def __post_init__(self):
        if self.year_range is not None:
            low, high = self.year_range
            if low > high:
                raise FilterError("from", f"inverted year range: {low} > {high}")
        if self.tags is not None:
            for tag in self.tags:
                if not validate_tag(self.theme, tag):
                    raise FilterError("tags", f"unknown tag for theme {self.theme.value}: {tag!r}")

    def matches(self, feature: StreetFeature) -> bool:
        record = feature.record
        if record.city is not self.city:
            return False
        if self.year_range is not None:
            year = record.denomination_year
            if year is None or not self.year_range[0] <= year <= self.year_range[1]:
                return False
        if self.tags is not None:
            if theme_value(record, self.theme) not in self.tags:
                return False
        return True


class Snapshot:
    """Features indexed by city, denomination year and each theme value."""

    def __init__(self, features: list[StreetFeature]):
        self.features = sorted(features, key=lambda f: f.record.record_id)
        self._by_city: dict[CityId, list[StreetFeature]] = {city: [] for city in CITY_CONFIGS}
        for feature in self.features:
            self._by_city.setdefault(feature.record.city, []).append(feature)
        self._by_year: dict[CityId, tuple[list[int], list[StreetFeature]]] = {}
        self._by_theme: dict[tuple[CityId, ThemeLayer, str], list[StreetFeature]] = {}
        for city, rows in self._by_city.items():
            dated = sorted(
                (f for f in rows if f.record.denomination_year is not None),
                key=lambda f: (f.record.denomination_year, f.record.record_id),
            )
            self._by_year[city] = ([f.record.denomination_year for f in dated], dated)
            for feature in rows:
                for theme in ThemeLayer:
                    key = (city, theme, theme_value(feature.record, theme))
                    self._by_theme.setdefault(key, []).append(feature)

    @property
    def count(self) -> int:
        return len(self.features)

    def count_for(self, city: CityId) -> int:
        return len(self._by_city.get(city, []))

    def require_city(self, city_id: str) -> CityId:
        try:
            return CityId(city_id)
        except ValueError:
            raise UnknownCity(city_id) from None

    def query(self, flt: QueryFilter) -> list[StreetFeature]:
        """Exactly the features satisfying every filter conjunct, by record_id."""
        if flt.city not in self._by_city:
            raise UnknownCity(flt.city)
        if flt.year_range is not None:
            years, dated = self._by_year[flt.city]
            low = bisect.bisect_left(years, flt.year_range[0])
            high = bisect.bisect_right(years, flt.year_range[1])
            pool = dated[low:high]
        else:
            pool = self._by_city[flt.city]
        if flt.tags is not None:
            pool = [f for f in pool if theme_value(f.record, flt.theme) in flt.tags]
        return sorted(pool, key=lambda f: f.record.record_id)

    def random_street(self, flt: QueryFilter, seed: Optional[int] = None) -> StreetFeature:
        """Uniform draw from the filter's result set; seeded draws reproduce."""
        matches = self.query(flt)
        if not matches:
            raise NoMatch("no street satisfies the filter")
        rng = random.Random(seed)
        return matches[rng.randrange(len(matches))]

    def stats(self, city: CityId, theme: ThemeLayer) -> dict[str, int]:
        """Feature counts per theme value; values sum to the city total."""
        if city not in self._by_city:
            raise UnknownCity(city)
        counts: dict[str, int] = {}
        for feature in self._by_city[city]:
            value = theme_value(feature.record, theme)
            counts[value] = counts.get(value, 0) + 1
        return dict(sorted(counts.items()))


def load_snapshot(collection: dict) -> Snapshot:
    """Index a matcher output collection; reject invariant violations."""
    if not isinstance(collection, dict) or collection.get("type") != "FeatureCollection":
        raise InvalidSnapshot(["not a GeoJSON FeatureCollection"])
    diagnostics: list[str] = []
    features: list[StreetFeature] = []
    seen_ids: set[str] = set()
    for index, data in enumerate(collection.get("features", [])):
        label = f"feature[{index}]"
        try:
            feature = feature_from_geojson(data)
        except (KeyError, ValueError) as exc:
            diagnostics.append(f"{label}: unreadable feature: {exc}")
            continue
        violations = validate_record(feature.record)
        if violations:
            rules = "; ".join(f"{v.field}: {v.rule}" for v in violations)
            diagnostics.append(f"{label} ({feature.record.street_name!r}): {rules}")
            continue
        if feature.geometry is None:
            diagnostics.append(f"{label} ({feature.record.street_name!r}): missing geometry")
            continue
        if not coords_in_range(feature.geometry):
            diagnostics.append(f"{label} ({feature.record.street_name!r}): coordinates out of range")
            continue
        if feature.record.record_id in seen_ids:
            diagnostics.append(f"{label}: duplicate record_id {feature.record.record_id}")
            continue
        seen_ids.add(feature.record.record_id)
        features.append(feature)
    if diagnostics:
        raise InvalidSnapshot(diagnostics)
    return Snapshot(features)


def save_db(snapshot: Snapshot, path: Union[str, Path]) -> None:
    collection = features_to_collection(snapshot.features)
    Path(path).write_text(canonical_dumps(collection) + "\n", encoding="utf-8")


def open_db(path: Union[str, Path]) -> Snapshot:
    collection = json.loads(Path(path).read_text(encoding="utf-8"))
    return load_snapshot(collection)
