import pytest

from eponymap.domain import CityId
from eponymap.errors import NotAStreetPage
from eponymap.ingest.wikihistory import ingest_wikihistory, parse_wiki_street_page

FULL_PAGE = """<!DOCTYPE html>
<html><head><title>Teststraße</title></head>
<body>
<h1>Teststraße</h1>
<table class="infobox">
<tr><th>Art des Objekts</th><td>Verkehrsfläche</td></tr>
<tr><th>Bezirk</th><td>Wieden</td></tr>
<tr><th>Benennung</th><td>1862</td></tr>
<tr><th>Benannt nach</th><td>Max Mustermann</td></tr>
<tr><th>Beruf</th><td>Komponist</td></tr>
<tr><th>Geschlecht</th><td>männlich</td></tr>
<tr><th>Geburtsdatum</th><td>27.01.1756</td></tr>
<tr><th>Sterbedatum</th><td>05.12.1791</td></tr>
<tr><th>Herkunftsland</th><td>Österreich</td></tr>
<tr><th>Artikel</th><td><a href="https://de.wikipedia.org/wiki/Max">Max Mustermann</a></td></tr>
</table>
<p>Prose about the street.</p>
</body></html>
"""


def test_full_infobox_populates_all_fields():
    record = parse_wiki_street_page(FULL_PAGE, city="vienna")
    assert record.street_name == "Teststraße"
    assert record.district == "Wieden"
    assert record.denomination == "1862"
    assert record.honoree == "Max Mustermann"
    assert record.occupation == "Komponist"
    assert record.gender == "männlich"
    assert record.dob == "27.01.1756"
    assert record.dod == "05.12.1791"
    assert record.country == "Österreich"
    assert record.honoree_url == "https://de.wikipedia.org/wiki/Max"


def test_missing_honoree_row_leaves_fields_absent():
    page = FULL_PAGE.replace(
        "<tr><th>Benannt nach</th><td>Max Mustermann</td></tr>", ""
    )
    record = parse_wiki_street_page(page)
    assert record.honoree is None
    assert record.street_name == "Teststraße"


def test_unrecognized_labels_are_ignored():
    page = FULL_PAGE.replace(
        "<tr><th>Bezirk</th><td>Wieden</td></tr>",
        "<tr><th>Bezirk</th><td>Wieden</td></tr><tr><th>Frühere Namen</th><td>Altgasse</td></tr>",
    )
    record = parse_wiki_street_page(page)
    assert record.district == "Wieden"


def test_document_without_infobox_is_rejected():
    with pytest.raises(NotAStreetPage):
        parse_wiki_street_page("<html><body><h1>Hauptseite</h1><p>hello</p></body></html>")


def test_english_labels_are_recognized():
    page = """<html><body><h1>Test Street</h1>
    <table class="infobox">
    <tr><th>Named after</th><td>Jane Doe</td></tr>
    <tr><th>Named since</th><td>1900</td></tr>
    <tr><th>Occupation</th><td>writer</td></tr>
    </table></body></html>"""
    record = parse_wiki_street_page(page)
    assert record.honoree == "Jane Doe"
    assert record.denomination == "1900"
    assert record.occupation == "writer"


def test_directory_ingest_skips_non_street_pages(fixture_dir):
    records, skipped = ingest_wikihistory(
        CityId.VIENNA, str(fixture_dir / "vienna/wikihistory"), retrieved_at="2024-01-01T00:00:00Z"
    )
    assert len(records) == 10
    assert skipped == ["hauptseite.html"]
    by_name = {r.street_name: r for r in records}
    strauss = by_name["Johann-Strauß-Gasse"]
    assert strauss.occupation == "Komponist"
    assert strauss.gender == "männlich"
    assert all(r.retrieved_at == "2024-01-01T00:00:00Z" for r in records)


def test_directory_ingest_is_deterministic(fixture_dir):
    path = str(fixture_dir / "vienna/wikihistory")
    first, _ = ingest_wikihistory(CityId.VIENNA, path, retrieved_at="2024-01-01T00:00:00Z")
    second, _ = ingest_wikihistory(CityId.VIENNA, path, retrieved_at="2024-01-01T00:00:00Z")
    assert first == second
