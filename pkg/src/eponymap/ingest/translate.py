"""Pluggable translation for non-English source fields.

Only descriptive fields (occupation, district) are translated; street and
honoree names are proper nouns and pass through untouched. The bundled
dictionary stub keeps tests deterministic; any object with a
``translate(text) -> text`` method can stand in for a real service.
"""

from __future__ import annotations

import csv
from dataclasses import replace
from importlib import resources
from typing import Protocol

from ..errors import TranslationFailed
from .raw import RawRecord

TRANSLATED_FIELDS = ("occupation", "district")


class Translator(Protocol):
    def translate(self, text: str) -> str: ...


class IdentityTranslator:
    def translate(self, text: str) -> str:
        return text


class DictionaryTranslator:
    """Term lookup against the bundled German-English dictionary.

    Lookup is case-insensitive and word-by-word for compound values
    ("Komponist und Dirigent"); unknown terms pass through unchanged.
    """

    def __init__(self, entries: dict[str, str] | None = None):
        if entries is None:
            entries = load_bundled_dictionary()
        self.entries = {k.casefold(): v for k, v in entries.items()}

    def translate(self, text: str) -> str:
        key = " ".join(text.split()).casefold()
        if key in self.entries:
            return self.entries[key]
        words = text.split()
        if len(words) > 1:
            return " ".join(self.entries.get(w.casefold(), w) for w in words)
        return text


def load_bundled_dictionary() -> dict[str, str]:
    entries: dict[str, str] = {}
    data = resources.files("eponymap.data").joinpath("translations_de_en.csv")
    with data.open(encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            entries[row["term"]] = row["translation"]
    return entries


def translate_fields(record: RawRecord, translator: Translator) -> RawRecord:
    """Translate occupation and district; on failure pass through with a flag."""
    updates = {}
    try:
        for name in TRANSLATED_FIELDS:
            value = getattr(record, name)
            if value:
                updates[name] = translator.translate(value)
    except TranslationFailed:
        return record.with_flag("translation_failed")
    except Exception:
        return record.with_flag("translation_failed")
    if not updates:
        return record
    return replace(record, **updates)
