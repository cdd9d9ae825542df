from hypothesis import given, strategies as st

from eponymap.domain import COUNTRY_UNKNOWN, Gender, OccupationGroup, Source
from eponymap.ingest.raw import RawRecord
from eponymap.normalize import (
    clean_dataset,
    country_names,
    map_occupation,
    normalize_country,
    normalize_gender,
    occupation_keywords,
    parse_year,
    parse_year_checked,
)


def test_map_occupation_spec_examples():
    assert map_occupation("writer") is OccupationGroup.WRITERS
    assert map_occupation("") is OccupationGroup.OTHER
    assert map_occupation(None) is OccupationGroup.OTHER
    assert map_occupation("composer") is OccupationGroup.CREATIVE_PERFORMING_ARTISTS


def test_map_occupation_longest_match_wins():
    # "prime minister" must not fall into the religion bucket via "minister"
    assert map_occupation("prime minister") is OccupationGroup.POLITICIANS
    assert map_occupation("baptist minister") is OccupationGroup.RELIGION_REPRESENTATIVES
    assert map_occupation("lord mayor") is OccupationGroup.POLITICIANS
    assert map_occupation("lord") is OccupationGroup.ROYALS


def test_map_occupation_matches_on_word_boundaries():
    # "cartographer" must not match the keyword "art"
    assert map_occupation("cartographer") is OccupationGroup.SCIENCE_ENGINEERING_PROFESSIONALS
    assert map_occupation("no such profession") is OccupationGroup.OTHER


def test_map_occupation_covers_published_group_names():
    names = {
        "legislators": OccupationGroup.LEGISLATORS,
        "writers": OccupationGroup.WRITERS,
        "creative and performing artists": OccupationGroup.CREATIVE_PERFORMING_ARTISTS,
        "science and engineering professionals": OccupationGroup.SCIENCE_ENGINEERING_PROFESSIONALS,
        "health associate professionals": OccupationGroup.HEALTH_ASSOCIATE_PROFESSIONALS,
        "sportsmen": OccupationGroup.SPORTSMEN,
        "social workers": OccupationGroup.SOCIAL_WORKERS,
        "teaching professionals": OccupationGroup.TEACHING_PROFESSIONALS,
        "businessmen": OccupationGroup.BUSINESSMEN,
        "craft and related trades workers": OccupationGroup.CRAFT_TRADES_WORKERS,
        "legal and social professionals": OccupationGroup.LEGAL_SOCIAL_PROFESSIONALS,
        "religion representatives": OccupationGroup.RELIGION_REPRESENTATIVES,
        "military personnel": OccupationGroup.MILITARY_PERSONNEL,
        "royals": OccupationGroup.ROYALS,
        "politicians": OccupationGroup.POLITICIANS,
        "9-11 Responders and Victims": OccupationGroup.RESPONDERS_VICTIMS_911,
    }
    assert len(names) == 16
    for text, group in names.items():
        assert map_occupation(text) is group, text


def test_keyword_table_is_consistent():
    table = occupation_keywords()
    assert len(table) >= 300
    assert set(table.values()) == set(OccupationGroup) - {OccupationGroup.OTHER}


def test_normalize_gender():
    assert normalize_gender("Female") is Gender.FEMALE
    assert normalize_gender("weiblich") is Gender.FEMALE
    assert normalize_gender("männlich") is Gender.MALE
    assert normalize_gender("M") is Gender.MALE
    assert normalize_gender("n/a") is Gender.UNKNOWN
    assert normalize_gender("") is Gender.UNKNOWN
    assert normalize_gender(None) is Gender.UNKNOWN


def test_normalize_country():
    assert normalize_country("France") == "FR"
    assert normalize_country("Austria-Hungary") == "AT"  # successor-state rule
    assert normalize_country("Prussia") == "DE"
    assert normalize_country("Österreich") == "AT"
    assert normalize_country("fr") == "FR"  # ISO code passes through
    assert normalize_country("Atlantis") == COUNTRY_UNKNOWN
    assert normalize_country("") == COUNTRY_UNKNOWN


def test_country_table_codes_are_well_formed():
    table, codes = country_names()
    assert all(len(code) == 2 and code.isupper() for code in codes)


def test_parse_year_formats():
    assert parse_year("1853") == 1853
    assert parse_year("1030-06-01") == 1030
    assert parse_year("27.01.1756") == 1756
    assert parse_year("June 1, 1030") == 1030
    assert parse_year("1 June 1030") == 1030
    assert parse_year("1881-02-26T00:00:00Z") == 1881


def test_parse_year_rejects_out_of_range_with_warning():
    year, warning = parse_year_checked("53")
    assert year is None
    assert warning and "out of range" in warning
    year, warning = parse_year_checked("2525")
    assert year is None and warning
    year, warning = parse_year_checked("not a date")
    assert year is None
    assert warning and "unparseable" in warning
    assert parse_year_checked("") == (None, None)
    assert parse_year_checked(None) == (None, None)


@given(st.text(max_size=30))
def test_scalar_normalizers_are_total(text):
    assert map_occupation(text) in OccupationGroup
    assert normalize_gender(text) in Gender
    country = normalize_country(text)
    assert country == COUNTRY_UNKNOWN or (len(country) == 2 and country.isupper())
    parse_year(text)  # never raises


@given(st.sampled_from(["writer", "Komponist", "FIELD MARSHAL", "queen", "x"]))
def test_gender_country_idempotent_fixed_points(text):
    g = normalize_gender(text)
    assert normalize_gender(g.value) is g
    c = normalize_country(text)
    assert normalize_country(c) == c


# ---------------------------------------------------------------------------
# clean_dataset


def raw(street, city="paris", honoree="Some Person", retrieved="2024-01-01T00:00:00Z", **kwargs):
    return RawRecord(
        street_name=street,
        source=Source.CURATED,
        city=city,
        honoree=honoree,
        retrieved_at=retrieved,
        **kwargs,
    )


def test_clean_dataset_known_defects():
    records = [raw(f"Street {i}", denomination="1900") for i in range(9)]
    records.append(raw("Street Without Honoree A", honoree=None))
    records.append(raw("Street Without Honoree B", honoree=""))
    # duplicate of Street 0, strictly richer (district on top of denomination)
    records.append(raw("Street 0", denomination="1900", district="Somewhere"))
    cleaned, report = clean_dataset(records)
    assert len(cleaned) == 9
    assert len(report.rejections) == 3
    assert report.dropped == 2
    assert report.merged == 1
    assert len(cleaned) + report.dropped + report.merged == len(records)
    # the richer duplicate survived
    street0 = next(r for r in cleaned if r.street_name == "Street 0")
    assert street0.district == "Somewhere"


def test_clean_dataset_identity_on_clean_input():
    records = [raw(f"Street {i}", denomination="1900") for i in range(5)]
    cleaned, report = clean_dataset(records)
    assert len(cleaned) == 5
    assert report.rejections == []


def test_birth_after_death_is_dropped():
    cleaned, report = clean_dataset([raw("Bad Years", dob="1900", dod="1850")])
    assert cleaned == []
    assert report.dropped == 1
    assert "birth year" in report.rejections[0].reason


def test_out_of_range_year_becomes_warning_not_drop():
    cleaned, report = clean_dataset([raw("Old Street", denomination="53")])
    assert len(cleaned) == 1
    assert cleaned[0].denomination_year is None
    assert any("denomination" in w for w in report.warnings)


def test_richer_duplicate_wins_by_field_count_oracle():
    poor = raw("Dup Street", denomination="1900")
    rich = raw("Dup Street", denomination="1900", district="D", dob="1800", dod="1870")
    cleaned, report = clean_dataset([poor, rich])
    assert len(cleaned) == 1
    assert cleaned[0].district == "D"
    assert cleaned[0].birth_year == 1800

    def oracle_count(r):
        return sum(
            [
                r.district is not None,
                r.denomination_year is not None,
                r.birth_year is not None,
                r.death_year is not None,
                r.honoree_url is not None,
                r.image_url is not None,
                bool(r.occupation_raw),
                r.gender is not Gender.UNKNOWN,
                r.country != COUNTRY_UNKNOWN,
                r.occupation_group is not OccupationGroup.OTHER,
            ]
        )

    # survivor is the one the brute-force richness count prefers
    poor_clean, _ = clean_dataset([poor])
    assert oracle_count(cleaned[0]) > oracle_count(poor_clean[0])


def test_duplicate_tie_keeps_earliest_retrieved():
    first = raw("Tie Street", retrieved="2024-01-01T00:00:00Z", gender="female")
    later = raw("Tie Street", retrieved="2024-06-01T00:00:00Z", gender="male")
    cleaned, _ = clean_dataset([later, first])
    assert cleaned[0].gender is Gender.FEMALE


def test_unknown_city_is_dropped():
    cleaned, report = clean_dataset([raw("Street", city="gotham")])
    assert cleaned == []
    assert "unknown city" in report.rejections[0].reason


def test_cleaned_records_all_validate():
    from eponymap.domain import validate_record

    records = [
        raw("Street A", gender="weiblich", occupation="Komponistin", country="Österreich",
            denomination="1862", dob="27.01.1756", dod="05.12.1791"),
        raw("Street B", gender="nope", occupation="", country=""),
    ]
    cleaned, _ = clean_dataset(records)
    assert cleaned
    for record in cleaned:
        assert validate_record(record) == []
