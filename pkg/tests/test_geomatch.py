import math
import random

import pytest
from hypothesis import given, strategies as st

from eponymap.domain import CityId
from eponymap.errors import EmptyGeometry
from eponymap.geo import Geometry, centroid, haversine_m, planar_length, representative_point
from eponymap.geomatch import (
    MatchMethod,
    NamedWay,
    OsmExtract,
    match_street,
    normalize_street_name,
    read_extract,
)

from conftest import make_record


# ---------------------------------------------------------------------------
# name normalization


def test_normalize_expands_english_abbreviations():
    assert normalize_street_name("Main St") == "main street"
    assert normalize_street_name("Fifth Ave") == "fifth avenue"
    assert normalize_street_name("Av. Foo") == "avenue foo"


def test_normalize_is_a_fixed_point():
    assert normalize_street_name("main street") == "main street"
    for name in ["Main St", "Kärntner Str.", "Avenue Victor-Hugo"]:
        for lang in ["en", "de", "fr"]:
            once = normalize_street_name(name, lang)
            assert normalize_street_name(once, lang) == once


def test_normalize_german_expansions():
    assert normalize_street_name("Kärntner Str.", "de") == "kärntner straße"
    assert normalize_street_name("Billrothstr.", "de") == "billrothstraße"
    assert normalize_street_name("Mozartg.", "de") == "mozartgasse"


def test_normalize_french_elision_and_hyphens():
    assert normalize_street_name("Rue d'Alésia", "fr") == "rue de alésia"
    assert normalize_street_name("Avenue Victor-Hugo", "fr") == "avenue victor hugo"
    assert normalize_street_name("Bd Haussmann", "fr") == "boulevard haussmann"


# ---------------------------------------------------------------------------
# representative point


def test_midpoint_of_straight_segment():
    geometry = Geometry.line([(0, 0), (2, 0)])
    assert representative_point(geometry) == (1.0, 0.0)


def test_longest_member_is_chosen_by_length_oracle():
    short = ((0.0, 0.0), (1.0, 0.0))
    long = ((10.0, 10.0), (13.0, 10.0))
    geometry = Geometry("MultiLineString", (short, long))
    # brute-force member-length comparison picks the 3-unit member
    lengths = [planar_length(m) for m in geometry.lines]
    assert lengths.index(max(lengths)) == 1
    assert representative_point(geometry) == (11.5, 10.0)


def test_single_vertex_degenerate_geometry():
    geometry = Geometry("LineString", (((5.0, 6.0),),))
    assert representative_point(geometry) == (5.0, 6.0)


def test_empty_geometry_raises():
    with pytest.raises(EmptyGeometry):
        representative_point(Geometry("LineString", ()))


def _point_on_geometry(point, geometry, tol=1e-9):
    for line in geometry.lines:
        if len(line) == 1 and math.dist(point, line[0]) <= tol:
            return True
        for a, b in zip(line, line[1:]):
            seg_sq = math.dist(a, b) ** 2
            if seg_sq == 0.0:  # zero or subnormal-length segment
                if math.dist(point, a) <= tol:
                    return True
                continue
            t = ((point[0] - a[0]) * (b[0] - a[0]) + (point[1] - a[1]) * (b[1] - a[1])) / seg_sq
            t = max(0.0, min(1.0, t))
            closest = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            if math.dist(point, closest) <= tol:
                return True
    return False


_coord = st.tuples(
    st.floats(min_value=-179, max_value=179, allow_nan=False),
    st.floats(min_value=-89, max_value=89, allow_nan=False),
)


@given(st.lists(st.lists(_coord, min_size=2, max_size=6), min_size=1, max_size=4))
def test_representative_point_lies_on_geometry(members):
    geometry = Geometry.multi(members)
    point = representative_point(geometry)
    assert _point_on_geometry(point, geometry)


# ---------------------------------------------------------------------------
# matching


def way(way_id, name, coords, district=None):
    return NamedWay(way_id, name, Geometry.line(coords), district)


PARIS_CENTER = (2.3522, 48.8566)


def test_exact_match():
    extract = OsmExtract([way("w1", "Rue de Rivoli", [(2.35, 48.85), (2.36, 48.86)])])
    record = make_record(street_name="Rue de Rivoli")
    feature = match_street(record, extract)
    assert feature.match_method == MatchMethod.EXACT
    assert feature.geometry is not None
    assert feature.representative_point is not None


def test_normalized_match_via_abbreviation():
    extract = OsmExtract([way("w1", "Main Street", [(-0.12, 51.5), (-0.11, 51.51)])])
    record = make_record(street_name="Main St", city=CityId.LONDON)
    feature = match_street(record, extract)
    assert feature.match_method == MatchMethod.NORMALIZED


def test_unmatched_is_a_value():
    extract = OsmExtract([way("w1", "Somewhere Else", [(2.35, 48.85), (2.36, 48.86)])])
    feature = match_street(make_record(street_name="Rue Absente"), extract)
    assert feature.match_method == MatchMethod.UNMATCHED
    assert feature.geometry is None
    assert feature.representative_point is None


def test_nearby_same_name_ways_merge_into_multilinestring():
    extract = OsmExtract(
        [
            way("w1", "Rue Split", [(2.350, 48.850), (2.352, 48.851)]),
            way("w2", "Rue Split", [(2.352, 48.851), (2.354, 48.852)]),
        ]
    )
    feature = match_street(make_record(street_name="Rue Split"), extract)
    assert feature.geometry.kind == "MultiLineString"
    assert len(feature.geometry.lines) == 2


def test_distant_homonyms_resolve_by_district_centroid_oracle():
    near_way = way("w1", "Rue Double", [(2.30, 48.85), (2.31, 48.85)], district="West End")
    far_way = way("w2", "Rue Double", [(2.45, 48.90), (2.46, 48.90)], district="East End")
    anchor_mate = way("w3", "Rue Anchor", [(2.29, 48.84), (2.30, 48.84)], district="West End")
    extract = OsmExtract([near_way, far_way, anchor_mate])
    record = make_record(street_name="Rue Double", district="West End")
    feature = match_street(record, extract)

    # brute-force oracle: centroid of each candidate vs the district centroid
    district_points = [centroid(w.geometry) for w in (near_way, anchor_mate)]
    anchor = (
        sum(p[0] for p in district_points) / 2,
        sum(p[1] for p in district_points) / 2,
    )
    candidates = {w.way_id: haversine_m(centroid(w.geometry), anchor) for w in (near_way, far_way)}
    expected = min(candidates, key=candidates.get)
    assert expected == "w1"
    assert feature.geometry == near_way.geometry


def test_no_district_falls_back_to_city_center():
    near_center = way("w1", "Rue Double", [(2.35, 48.85), (2.36, 48.85)])
    far_out = way("w2", "Rue Double", [(2.46, 48.90), (2.47, 48.90)])
    extract = OsmExtract([near_center, far_out])
    feature = match_street(make_record(street_name="Rue Double"), extract)
    assert feature.geometry == near_center.geometry


def test_shuffled_extract_never_changes_the_result():
    ways = [
        way(f"w{i}", f"Street {i % 7}", [(2.30 + i * 0.01, 48.84), (2.31 + i * 0.01, 48.85)])
        for i in range(20)
    ]
    records = [make_record(record_id=f"r{i}", street_name=f"Street {i % 7}") for i in range(7)]
    baseline = [match_street(r, OsmExtract(list(ways))) for r in records]
    rng = random.Random(7)
    for _ in range(5):
        shuffled = list(ways)
        rng.shuffle(shuffled)
        result = [match_street(r, OsmExtract(shuffled)) for r in records]
        assert result == baseline


def test_every_record_with_unique_exact_way_matches_exact():
    ways = [way(f"w{i}", f"Unique Street {i}", [(2.30 + i * 0.001, 48.85), (2.301 + i * 0.001, 48.851)]) for i in range(30)]
    extract = OsmExtract(ways)
    for i in range(30):
        feature = match_street(make_record(record_id=f"r{i}", street_name=f"Unique Street {i}"), extract)
        assert feature.match_method == MatchMethod.EXACT


def test_extract_rejects_duplicate_way_ids():
    with pytest.raises(ValueError, match="duplicate way_id"):
        OsmExtract(
            [
                way("w1", "A", [(0, 0), (1, 1)]),
                way("w1", "B", [(2, 2), (3, 3)]),
            ]
        )


def test_extract_rejects_out_of_range_coordinates():
    with pytest.raises(ValueError, match="out-of-range"):
        OsmExtract([way("w1", "A", [(200, 0), (1, 1)])])


def test_read_extract_fixture(fixture_dir):
    extract = read_extract(fixture_dir / "paris/osm/extract.geojson")
    assert len(extract.ways) == 12
    assert extract.exact_candidates("Rue Monge")
