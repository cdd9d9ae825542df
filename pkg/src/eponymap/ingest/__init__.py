"""Source adapters turning open data sources into RawRecords."""

from .annotated import import_annotated_csv, resolve_conflicts, sniff_annotated
from .fetcher import Fetcher
from .raw import (
    RAW_CSV_HEADER,
    AnnotationSet,
    RawRecord,
    read_raw_csv,
    write_raw_csv,
)
from .translate import DictionaryTranslator, IdentityTranslator, Translator, translate_fields
from .wikidata import bindings_to_records, fetch_wikidata_streets, parse_sparql_results
from .wikihistory import ingest_wikihistory, parse_wiki_street_page

__all__ = [
    "AnnotationSet",
    "RawRecord",
    "RAW_CSV_HEADER",
    "read_raw_csv",
    "write_raw_csv",
    "Fetcher",
    "fetch_wikidata_streets",
    "parse_sparql_results",
    "bindings_to_records",
    "parse_wiki_street_page",
    "ingest_wikihistory",
    "import_annotated_csv",
    "resolve_conflicts",
    "sniff_annotated",
    "Translator",
    "IdentityTranslator",
    "DictionaryTranslator",
    "translate_fields",
]
