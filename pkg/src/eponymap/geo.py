"""Small WGS84 geometry kit: polylines, lengths, midpoints, centroids.

Geometries are immutable tuples of line members; a plain LineString is a
single-member geometry. Arc-length arithmetic is planar in degree space
(street-scale geometries; matches are ranked, not measured), while the
merge-radius rule uses haversine meters because it is a physical threshold.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyGeometry

Position = tuple[float, float]  # (lon, lat)
Line = tuple[Position, ...]

EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True)
class Geometry:
    """LineString or MultiLineString; ``lines`` always holds the members."""

    kind: str  # "LineString" | "MultiLineString"
    lines: tuple[Line, ...]

    @classmethod
    def line(cls, coords: Sequence[Sequence[float]]) -> "Geometry":
        return cls("LineString", (tuple((float(x), float(y)) for x, y in coords),))

    @classmethod
    def multi(cls, members: Iterable[Sequence[Sequence[float]]]) -> "Geometry":
        lines = tuple(tuple((float(x), float(y)) for x, y in member) for member in members)
        return cls("MultiLineString", lines)

    def to_geojson(self) -> dict:
        if self.kind == "LineString":
            return {"type": "LineString", "coordinates": [list(p) for p in self.lines[0]]}
        return {
            "type": "MultiLineString",
            "coordinates": [[list(p) for p in line] for line in self.lines],
        }

    @classmethod
    def from_geojson(cls, geometry: dict) -> "Geometry":
        kind = geometry.get("type")
        coords = geometry.get("coordinates")
        if kind == "LineString":
            return cls.line(coords)
        if kind == "MultiLineString":
            return cls.multi(coords)
        raise ValueError(f"unsupported geometry type: {kind!r}")

    def positions(self) -> Iterable[Position]:
        for line in self.lines:
            yield from line


def coords_in_range(geometry: Geometry) -> bool:
    return all(-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0 for lon, lat in geometry.positions())


def planar_length(line: Line) -> float:
    """Arc length of a polyline in degree space."""
    return sum(math.dist(a, b) for a, b in zip(line, line[1:]))


def line_midpoint(line: Line) -> Position:
    """Point at half the arc length; exact vertices for degenerate lines."""
    if not line:
        raise EmptyGeometry("empty line")
    total = planar_length(line)
    if total == 0.0:
        return line[0]
    target = total / 2.0
    walked = 0.0
    for a, b in zip(line, line[1:]):
        segment = math.dist(a, b)
        if walked + segment >= target:
            t = (target - walked) / segment
            return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
        walked += segment
    return line[-1]


def representative_point(geometry: Geometry) -> Position:
    """Midpoint by arc length of the longest member; always on the line."""
    if not geometry.lines or all(not line for line in geometry.lines):
        raise EmptyGeometry("geometry has no coordinates")
    longest = max((line for line in geometry.lines if line), key=planar_length)
    return line_midpoint(longest)


def centroid(geometry: Geometry) -> Position:
    """Length-weighted centroid of the members; vertex mean when degenerate."""
    sx = sy = weight = 0.0
    for line in geometry.lines:
        for a, b in zip(line, line[1:]):
            w = math.dist(a, b)
            sx += (a[0] + b[0]) / 2.0 * w
            sy += (a[1] + b[1]) / 2.0 * w
            weight += w
    if weight > 0.0:
        return (sx / weight, sy / weight)
    points = list(geometry.positions())
    if not points:
        raise EmptyGeometry("geometry has no coordinates")
    return (sum(p[0] for p in points) / len(points), sum(p[1] for p in points) / len(points))


def haversine_m(a: Position, b: Position) -> float:
    """Great-circle distance in meters."""
    lon1, lat1, lon2, lat2 = map(math.radians, (a[0], a[1], b[0], b[1]))
    dlon, dlat = lon2 - lon1, lat2 - lat1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(math.sqrt(h))


def canonical_dumps(obj) -> str:
    """Fixed JSON serialization so identical data yields identical bytes."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)
