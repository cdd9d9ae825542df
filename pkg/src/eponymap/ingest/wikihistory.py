"""Parser for structured-wiki street pages (history-wiki infobox template).

Pages describe one street each: an ``infobox`` table of labeled rows carries
the denomination date and the honoree's attributes. Labels are matched
case-insensitively against a German/English table; unknown labels are
ignored and missing rows simply leave fields absent.
"""

from __future__ import annotations

from datetime import datetime, timezone
from html.parser import HTMLParser
from pathlib import Path
from typing import Optional

from ..domain import CityId, Source
from ..errors import NotAStreetPage
from .fetcher import Fetcher
from .raw import RawRecord

# infobox label -> RawRecord field
LABELS = {
    "benannt nach": "honoree",
    "named after": "honoree",
    "benennung": "denomination",
    "name seit": "denomination",
    "named since": "denomination",
    "denomination": "denomination",
    "bezirk": "district",
    "district": "district",
    "borough": "district",
    "beruf": "occupation",
    "occupation": "occupation",
    "geschlecht": "gender",
    "gender": "gender",
    "geburtsdatum": "dob",
    "geboren": "dob",
    "born": "dob",
    "sterbedatum": "dod",
    "gestorben": "dod",
    "died": "dod",
    "herkunftsland": "country",
    "land": "country",
    "country": "country",
    "artikel": "honoree_url",
    "article": "honoree_url",
    "bild": "image_url",
    "image": "image_url",
}


class _InfoboxParser(HTMLParser):
    """Collects the page <h1> and (label, text, href) infobox table rows."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.title_parts: list[str] = []
        self.rows: list[tuple[str, str, Optional[str]]] = []
        self.saw_infobox = False
        self._in_h1 = False
        self._table_depth = 0
        self._in_infobox = False
        self._cell: Optional[str] = None  # "th" | "td"
        self._label_parts: list[str] = []
        self._value_parts: list[str] = []
        self._href: Optional[str] = None

    def handle_starttag(self, tag, attrs):
        attrs = dict(attrs)
        if tag == "h1":
            self._in_h1 = True
        elif tag == "table":
            self._table_depth += 1
            if "infobox" in (attrs.get("class") or "").split():
                self._in_infobox = True
                self.saw_infobox = True
        elif self._in_infobox and tag == "tr":
            self._label_parts = []
            self._value_parts = []
            self._href = None
        elif self._in_infobox and tag in ("th", "td"):
            self._cell = tag
        elif self._in_infobox and tag in ("a", "img") and self._cell == "td":
            if self._href is None:
                self._href = attrs.get("href") or attrs.get("src")

    def handle_endtag(self, tag):
        if tag == "h1":
            self._in_h1 = False
        elif tag == "table":
            if self._in_infobox and self._table_depth == 1:
                self._in_infobox = False
            self._table_depth = max(0, self._table_depth - 1)
        elif self._in_infobox and tag == "tr":
            label = " ".join("".join(self._label_parts).split())
            value = " ".join("".join(self._value_parts).split())
            if label and (value or self._href):
                self.rows.append((label, value, self._href))
            self._cell = None
        elif tag in ("th", "td"):
            self._cell = None

    def handle_data(self, data):
        if self._in_h1:
            self.title_parts.append(data)
        elif self._in_infobox and self._cell == "th":
            self._label_parts.append(data)
        elif self._in_infobox and self._cell == "td":
            self._value_parts.append(data)


def _now_utc() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_wiki_street_page(
    html: str,
    city: str = "",
    source_url: Optional[str] = None,
    retrieved_at: Optional[str] = None,
) -> RawRecord:
    """Extract one RawRecord from a street page; NotAStreetPage without infobox."""
    parser = _InfoboxParser()
    parser.feed(html)
    if not parser.saw_infobox:
        raise NotAStreetPage(source_url or "document has no infobox")
    street_name = " ".join("".join(parser.title_parts).split())
    if not street_name:
        raise NotAStreetPage(source_url or "infobox page has no street title")

    fields: dict[str, str] = {}
    for label, value, href in parser.rows:
        target = LABELS.get(label.casefold())
        if not target or target in fields:
            continue
        # URL-ish fields take the row's link; everything else takes the text.
        if target in ("honoree_url", "image_url"):
            fields[target] = href or value
        else:
            fields[target] = value

    url = fields.get("honoree_url")
    if url and not (url.startswith("http") or url.startswith("/")):
        url = None

    return RawRecord(
        street_name=street_name,
        source=Source.WIKIHISTORY,
        city=city,
        district=fields.get("district"),
        denomination=fields.get("denomination"),
        honoree=fields.get("honoree"),
        gender=fields.get("gender"),
        occupation=fields.get("occupation"),
        country=fields.get("country"),
        dob=fields.get("dob"),
        dod=fields.get("dod"),
        honoree_url=url,
        image_url=fields.get("image_url"),
        source_url=source_url,
        retrieved_at=retrieved_at or _now_utc(),
    )


def ingest_wikihistory(
    city: CityId,
    location: str,
    fetcher: Optional[Fetcher] = None,
    retrieved_at: Optional[str] = None,
) -> tuple[list[RawRecord], list[str]]:
    """Parse every street page under a location.

    ``location`` is a directory of saved ``*.html`` pages, or a text file of
    URLs (one per line) crawled politely with the shared fetcher. Returns the
    records plus a list of skipped documents (non-street pages).
    """
    records: list[RawRecord] = []
    skipped: list[str] = []
    path = Path(location)
    if path.is_dir():
        for page in sorted(path.glob("*.html")):
            try:
                records.append(
                    parse_wiki_street_page(
                        page.read_text(encoding="utf-8"),
                        city=city.value,
                        source_url=page.name,
                        retrieved_at=retrieved_at,
                    )
                )
            except NotAStreetPage:
                skipped.append(page.name)
        return records, skipped

    # URL-list crawl mode
    urls = [line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    fetcher = fetcher or Fetcher()
    for url in urls:
        html = fetcher.fetch_text(url)
        try:
            records.append(
                parse_wiki_street_page(
                    html, city=city.value, source_url=url, retrieved_at=retrieved_at
                )
            )
        except NotAStreetPage:
            skipped.append(url)
    return records, skipped
