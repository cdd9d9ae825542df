"""Street ingestion from a Wikidata-style SPARQL endpoint.

One query pattern: streets located in the city whose ``named after`` target
is a person. The endpoint may be an HTTP(S) URL speaking the standard SPARQL
results protocol, or a local path to a saved results document (snapshots,
tests and offline pipeline runs).
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from ..domain import CityId, Source
from ..errors import MalformedResponse
from .fetcher import Fetcher
from .raw import RawRecord

PERSON_CLASS = "http://www.wikidata.org/entity/Q5"

CITY_ENTITY = {
    CityId.PARIS: "wd:Q90",
    CityId.VIENNA: "wd:Q1741",
    CityId.LONDON: "wd:Q84",
    CityId.NEWYORK: "wd:Q60",
}

STREET_QUERY = """
SELECT ?street ?streetLabel ?district ?districtLabel ?namedDate
       ?eponym ?eponymLabel ?eponymClass ?genderLabel ?occupationLabel
       ?birth ?death ?countryLabel ?article ?image
WHERE {{
  ?street wdt:P31/wdt:P279* wd:Q79007 ;
          wdt:P131 {city} ;
          wdt:P138 ?eponym .
  ?eponym wdt:P31 ?eponymClass .
  OPTIONAL {{ ?street wdt:P1448 ?officialName . }}
  OPTIONAL {{ ?street wdt:P131 ?district . }}
  OPTIONAL {{ ?street wdt:P571 ?namedDate . }}
  OPTIONAL {{ ?eponym wdt:P21 ?gender . }}
  OPTIONAL {{ ?eponym wdt:P106 ?occupation . }}
  OPTIONAL {{ ?eponym wdt:P569 ?birth . }}
  OPTIONAL {{ ?eponym wdt:P570 ?death . }}
  OPTIONAL {{ ?eponym wdt:P27 ?country . }}
  OPTIONAL {{
    ?article schema:about ?eponym ;
             schema:isPartOf <https://en.wikipedia.org/> .
  }}
  OPTIONAL {{ ?eponym wdt:P18 ?image . }}
  SERVICE wikibase:label {{ bd:serviceParam wikibase:language "en". }}
}}
"""


def _binding_value(binding: dict, name: str) -> Optional[str]:
    entry = binding.get(name)
    if not entry:
        return None
    value = entry.get("value")
    return str(value) if value is not None else None


def _now_utc() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_sparql_results(document: dict) -> list[dict]:
    """Validate the SPARQL JSON results envelope and return its bindings."""
    if not isinstance(document, dict):
        raise MalformedResponse("results document is not a JSON object")
    results = document.get("results")
    if not isinstance(results, dict) or not isinstance(results.get("bindings"), list):
        raise MalformedResponse("document lacks results.bindings")
    for binding in results["bindings"]:
        if not isinstance(binding, dict):
            raise MalformedResponse("binding is not an object")
    return results["bindings"]


def bindings_to_records(
    bindings: list[dict], city: CityId, source_url: str, retrieved_at: Optional[str] = None
) -> list[RawRecord]:
    """One RawRecord per street whose eponym is an instance of the person class.

    A street may appear in several bindings (one per eponym class or
    occupation); the first person-class binding wins. Non-person eponyms
    (events, places) are dropped.
    """
    retrieved = retrieved_at or _now_utc()
    records: list[RawRecord] = []
    seen: set[str] = set()
    for binding in bindings:
        eponym_class = _binding_value(binding, "eponymClass")
        if eponym_class != PERSON_CLASS:
            continue
        street_name = _binding_value(binding, "streetLabel")
        if not street_name:
            continue
        street_key = _binding_value(binding, "street") or street_name
        if street_key in seen:
            continue
        seen.add(street_key)
        records.append(
            RawRecord(
                street_name=street_name,
                source=Source.WIKIDATA,
                city=city.value,
                district=_binding_value(binding, "districtLabel"),
                denomination=_binding_value(binding, "namedDate"),
                honoree=_binding_value(binding, "eponymLabel"),
                gender=_binding_value(binding, "genderLabel"),
                occupation=_binding_value(binding, "occupationLabel"),
                country=_binding_value(binding, "countryLabel"),
                dob=_binding_value(binding, "birth"),
                dod=_binding_value(binding, "death"),
                honoree_url=_binding_value(binding, "article"),
                image_url=_binding_value(binding, "image"),
                source_url=source_url,
                retrieved_at=retrieved,
            )
        )
    return records


def fetch_wikidata_streets(
    city: CityId,
    endpoint: str,
    fetcher: Optional[Fetcher] = None,
    retrieved_at: Optional[str] = None,
) -> list[RawRecord]:
    """Run the street-eponym query against an endpoint or load a saved result."""
    if endpoint.startswith(("http://", "https://")):
        fetcher = fetcher or Fetcher()
        query = STREET_QUERY.format(city=CITY_ENTITY[city])
        body = fetcher.fetch_text(
            endpoint,
            params={"query": query, "format": "json"},
            headers={"Accept": "application/sparql-results+json"},
        )
    else:
        body = Path(endpoint).read_text(encoding="utf-8")
    try:
        document = json.loads(body)
    except json.JSONDecodeError as exc:
        raise MalformedResponse(f"not a JSON document: {exc}") from exc
    bindings = parse_sparql_results(document)
    return bindings_to_records(bindings, city, source_url=endpoint, retrieved_at=retrieved_at)
