"""Structural GeoJSON validator used as an independent oracle in tests.

Checks the RFC 7946 rules the API promises: collection/feature framing,
geometry types and coordinate nesting, WGS84 ranges, minimum positions.
Deliberately not implemented in terms of the package's own serializers.
"""

from __future__ import annotations


def _check_position(pos, errors, path):
    if not isinstance(pos, (list, tuple)) or len(pos) < 2:
        errors.append(f"{path}: position must be [lon, lat]")
        return
    lon, lat = pos[0], pos[1]
    if not isinstance(lon, (int, float)) or not isinstance(lat, (int, float)):
        errors.append(f"{path}: non-numeric coordinate")
        return
    if not -180.0 <= lon <= 180.0:
        errors.append(f"{path}: longitude {lon} out of range")
    if not -90.0 <= lat <= 90.0:
        errors.append(f"{path}: latitude {lat} out of range")


def _check_linestring(coords, errors, path):
    if not isinstance(coords, list) or len(coords) < 2:
        errors.append(f"{path}: LineString needs >= 2 positions")
        return
    for i, pos in enumerate(coords):
        _check_position(pos, errors, f"{path}[{i}]")


def check_geometry(geometry, errors, path="geometry"):
    if geometry is None:
        errors.append(f"{path}: missing geometry")
        return
    gtype = geometry.get("type")
    coords = geometry.get("coordinates")
    if gtype == "Point":
        _check_position(coords, errors, path)
    elif gtype == "LineString":
        _check_linestring(coords, errors, path)
    elif gtype == "MultiLineString":
        if not isinstance(coords, list) or not coords:
            errors.append(f"{path}: MultiLineString needs members")
            return
        for i, member in enumerate(coords):
            _check_linestring(member, errors, f"{path}[{i}]")
    else:
        errors.append(f"{path}: unsupported type {gtype!r}")


def check_feature(feature, errors, path="feature"):
    if feature.get("type") != "Feature":
        errors.append(f"{path}: type must be 'Feature'")
    if "properties" not in feature or not isinstance(feature["properties"], dict):
        errors.append(f"{path}: properties must be an object")
    check_geometry(feature.get("geometry"), errors, f"{path}.geometry")


def check_feature_collection(document) -> list[str]:
    """Return every structural violation; empty list means valid."""
    errors: list[str] = []
    if not isinstance(document, dict):
        return ["document is not an object"]
    if document.get("type") != "FeatureCollection":
        errors.append("type must be 'FeatureCollection'")
    features = document.get("features")
    if not isinstance(features, list):
        errors.append("features must be an array")
        return errors
    for i, feature in enumerate(features):
        check_feature(feature, errors, f"features[{i}]")
    return errors
