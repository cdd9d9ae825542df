"""Match street records to named OSM ways and compute their map point.

The extract is a pre-filtered GeoJSON collection of named ways for one city
(see README for the extraction recipe). Matching runs exact-name first,
then abbreviation-normalized; several same-name ways merge into one
MultiLineString when they sit within the merge radius, otherwise the way
nearest the record's district (or the city center) wins. Everything is
deterministic: candidate order never changes the result.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .domain import (
    CITY_CONFIGS,
    CityId,
    StreetRecord,
    record_from_properties,
    record_to_properties,
)
from .geo import (
    Geometry,
    Position,
    canonical_dumps,
    centroid,
    coords_in_range,
    haversine_m,
    representative_point,
)

MERGE_RADIUS_M = 2000.0

# Abbreviation expansions per language; keys are dot-stripped lowercase tokens.
_ABBREVIATIONS: dict[str, dict[str, str]] = {
    "en": {
        "st": "street",
        "ave": "avenue",
        "av": "avenue",
        "rd": "road",
        "blvd": "boulevard",
        "sq": "square",
        "dr": "drive",
        "ln": "lane",
        "pl": "place",
        "ct": "court",
        "pkwy": "parkway",
        "hwy": "highway",
        "n": "north",
        "s": "south",
        "e": "east",
        "w": "west",
        "mt": "mount",
        "ft": "fort",
    },
    "de": {
        "str": "straße",
        "g": "gasse",
        "pl": "platz",
    },
    "fr": {
        "av": "avenue",
        "bd": "boulevard",
        "blvd": "boulevard",
        "pl": "place",
        "r": "rue",
        "imp": "impasse",
        "sq": "square",
        "st": "saint",
        "ste": "sainte",
    },
}

_APOSTROPHES = str.maketrans({"’": "'", "ʼ": "'", "`": "'"})

# German street types attach to the name ("Billrothstr." = Billrothstraße),
# so abbreviations also expand as word suffixes.
_DE_SUFFIXES = [("str", "straße"), ("g.", "gasse"), ("pl.", "platz")]


def normalize_street_name(name: str, language: str = "en") -> str:
    """Lowercased, abbreviation-expanded matching form of a street name.

    German keeps its sharp s (folding to ss happens at comparison time);
    French detaches elided articles (d'Alésia -> de alésia) so apostrophe
    variants meet in one form. Hyphens count as spaces in every language.
    """
    table = _ABBREVIATIONS.get(language, _ABBREVIATIONS["en"])
    text = name.strip().lower().translate(_APOSTROPHES)
    text = text.replace("-", " ")
    if language == "fr":
        text = text.replace("d'", "de ").replace("l'", "l ")
    tokens = []
    for token in text.split():
        bare = token.rstrip(".")
        if not bare:
            continue
        expanded = table.get(bare)
        if expanded is None and language == "de":
            for suffix, full in _DE_SUFFIXES:
                stem = token if suffix.endswith(".") else bare
                if stem.endswith(suffix) and len(stem) > len(suffix):
                    expanded = stem[: -len(suffix)] + full
                    break
        tokens.append(expanded if expanded is not None else bare)
    return " ".join(tokens)


class MatchMethod:
    EXACT = "exact"
    NORMALIZED = "normalized"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class NamedWay:
    way_id: str
    name: str
    geometry: Geometry
    district: Optional[str] = None


@dataclass(frozen=True)
class StreetFeature:
    """A record joined with map geometry; unmatched records carry none."""

    record: StreetRecord
    geometry: Optional[Geometry]
    representative_point: Optional[Position]
    match_method: str


@dataclass
class OsmExtract:
    """Named ways for one city plus the lookup indexes matching needs."""

    ways: list[NamedWay]
    _exact: dict[str, list[NamedWay]] = field(init=False, repr=False)
    _normalized: dict[str, dict[str, list[NamedWay]]] = field(init=False, repr=False)
    _district_centroids: dict[str, Position] = field(init=False, repr=False)

    def __post_init__(self):
        seen: set[str] = set()
        for way in self.ways:
            if way.way_id in seen:
                raise ValueError(f"duplicate way_id: {way.way_id}")
            seen.add(way.way_id)
            if not any(way.geometry.positions()):
                raise ValueError(f"way {way.way_id} has empty geometry")
            if not coords_in_range(way.geometry):
                raise ValueError(f"way {way.way_id} has out-of-range coordinates")
        self.ways = sorted(self.ways, key=lambda w: w.way_id)
        self._exact = {}
        for way in self.ways:
            self._exact.setdefault(" ".join(way.name.split()).casefold(), []).append(way)
        self._normalized = {}
        districts: dict[str, list[Position]] = {}
        for way in self.ways:
            if way.district:
                districts.setdefault(way.district.casefold(), []).append(centroid(way.geometry))
        self._district_centroids = {
            name: (
                sum(p[0] for p in points) / len(points),
                sum(p[1] for p in points) / len(points),
            )
            for name, points in districts.items()
        }

    def exact_candidates(self, name: str) -> list[NamedWay]:
        return self._exact.get(" ".join(name.split()).casefold(), [])

    def normalized_candidates(self, name: str, language: str) -> list[NamedWay]:
        index = self._normalized.get(language)
        if index is None:
            index = {}
            for way in self.ways:
                key = normalize_street_name(way.name, language).casefold()
                index.setdefault(key, []).append(way)
            self._normalized[language] = index
        return index.get(normalize_street_name(name, language).casefold(), [])

    def district_centroid(self, district: str) -> Optional[Position]:
        return self._district_centroids.get(" ".join(district.split()).casefold())


def _merge_ways(ways: list[NamedWay]) -> Geometry:
    members = []
    for way in sorted(ways, key=lambda w: w.way_id):
        members.extend(way.geometry.lines)
    if len(members) == 1:
        return Geometry("LineString", tuple(members))
    return Geometry("MultiLineString", tuple(members))


def _resolve_candidates(
    candidates: list[NamedWay],
    anchor: Position,
    merge_radius_m: float,
) -> Geometry:
    if len(candidates) == 1:
        return candidates[0].geometry
    centers = [(way, centroid(way.geometry)) for way in candidates]
    spread = max(
        haversine_m(a[1], b[1]) for i, a in enumerate(centers) for b in centers[i + 1 :]
    )
    if spread <= merge_radius_m:
        return _merge_ways(candidates)
    # Distant homonyms: nearest to the anchor wins; ties fall to way_id.
    best = min(centers, key=lambda entry: (haversine_m(entry[1], anchor), entry[0].way_id))
    return best[0].geometry


def match_street(
    record: StreetRecord,
    extract: OsmExtract,
    merge_radius_m: float = MERGE_RADIUS_M,
) -> StreetFeature:
    """Join one record with its way geometry; unmatched is a value, not an error."""
    language = CITY_CONFIGS[record.city].language
    city_center = CITY_CONFIGS[record.city].center
    anchor: Position = (city_center.lon, city_center.lat)
    if record.district:
        district_center = extract.district_centroid(record.district)
        if district_center is not None:
            anchor = district_center

    candidates = extract.exact_candidates(record.street_name)
    method = MatchMethod.EXACT
    if not candidates:
        candidates = extract.normalized_candidates(record.street_name, language)
        method = MatchMethod.NORMALIZED
    if not candidates:
        return StreetFeature(record, None, None, MatchMethod.UNMATCHED)

    geometry = _resolve_candidates(candidates, anchor, merge_radius_m)
    return StreetFeature(record, geometry, representative_point(geometry), method)


def match_dataset(
    records: Iterable[StreetRecord],
    extract: OsmExtract,
    merge_radius_m: float = MERGE_RADIUS_M,
) -> tuple[list[StreetFeature], list[StreetFeature]]:
    """(matched, unmatched) for a whole record list."""
    matched, unmatched = [], []
    for record in records:
        feature = match_street(record, extract, merge_radius_m)
        (matched if feature.geometry is not None else unmatched).append(feature)
    return matched, unmatched


# ---------------------------------------------------------------------------
# GeoJSON I/O


def read_extract(source: Union[str, Path, dict]) -> OsmExtract:
    """Load a named-way extract from a GeoJSON FeatureCollection."""
    if isinstance(source, (str, Path)):
        collection = json.loads(Path(source).read_text(encoding="utf-8"))
    else:
        collection = source
    if collection.get("type") != "FeatureCollection":
        raise ValueError("extract must be a GeoJSON FeatureCollection")
    ways = []
    for feature in collection.get("features", []):
        props = feature.get("properties") or {}
        name = props.get("name")
        way_id = props.get("way_id") or props.get("id") or feature.get("id")
        if not name or way_id is None:
            continue
        ways.append(
            NamedWay(
                way_id=str(way_id),
                name=str(name),
                geometry=Geometry.from_geojson(feature.get("geometry") or {}),
                district=props.get("district"),
            )
        )
    return OsmExtract(ways)


def feature_to_geojson(feature: StreetFeature) -> dict:
    props = record_to_properties(feature.record)
    props["representative_point"] = (
        list(feature.representative_point) if feature.representative_point else None
    )
    props["match_method"] = feature.match_method
    return {
        "type": "Feature",
        "geometry": feature.geometry.to_geojson() if feature.geometry else None,
        "properties": props,
    }


def feature_from_geojson(data: dict) -> StreetFeature:
    props = dict(data.get("properties") or {})
    point = props.pop("representative_point", None)
    method = props.pop("match_method", MatchMethod.EXACT)
    geometry = data.get("geometry")
    return StreetFeature(
        record=record_from_properties(props),
        geometry=Geometry.from_geojson(geometry) if geometry else None,
        representative_point=tuple(point) if point else None,
        match_method=method,
    )


def features_to_collection(features: Iterable[StreetFeature]) -> dict:
    return {
        "type": "FeatureCollection",
        "features": [feature_to_geojson(f) for f in features],
    }


def write_features_geojson(features: Iterable[StreetFeature], path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_dumps(features_to_collection(features)) + "\n", encoding="utf-8")


def read_features_geojson(path: Union[str, Path]) -> list[StreetFeature]:
    collection = json.loads(Path(path).read_text(encoding="utf-8"))
    return [feature_from_geojson(f) for f in collection.get("features", [])]


def write_unmatched_csv(features: Iterable[StreetFeature], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["record_id", "city", "streetname", "reason"])
    for feature in features:
        writer.writerow(
            [
                feature.record.record_id,
                feature.record.city.value,
                feature.record.street_name,
                "no way with this name in extract",
            ]
        )
