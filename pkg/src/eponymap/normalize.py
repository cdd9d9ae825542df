"""RawRecord -> StreetRecord: taxonomy mapping, normalization, cleaning, dedup.

All scalar normalizers are pure, total and idempotent; feeding a normalized
value back through is a fixed point. The occupation mapping is a shipped
keyword table (data/occupation_keywords.csv) reviewed against ISCO-08 group
definitions; deterministic table lookup was chosen over classification so
every mapping decision is auditable and regression-testable.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

from .domain import (
    COUNTRY_UNKNOWN,
    CityId,
    Gender,
    OccupationGroup,
    StreetRecord,
    make_record_id,
)
from .ingest.raw import RawRecord

_WORD_CLEAN = re.compile(r"[^\w]+", re.UNICODE)


def _fold(text: str) -> str:
    """Comparison form: casefold, punctuation to spaces, collapsed whitespace."""
    return " ".join(_WORD_CLEAN.sub(" ", text.casefold()).split())


def _collapse(text: str) -> str:
    return " ".join(text.split())


# ---------------------------------------------------------------------------
# Occupation taxonomy


@lru_cache(maxsize=1)
def occupation_keywords() -> dict[str, OccupationGroup]:
    """keyword (folded) -> group; every keyword belongs to exactly one group."""
    table: dict[str, OccupationGroup] = {}
    data = resources.files("eponymap.data").joinpath("occupation_keywords.csv")
    with data.open(encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            keyword = _fold(row["keyword"])
            group = OccupationGroup(row["group"])
            if keyword in table and table[keyword] is not group:
                raise ValueError(f"occupation keyword maps to two groups: {keyword!r}")
            table[keyword] = group
    return table


def map_occupation(raw: Optional[str]) -> OccupationGroup:
    """Deterministic total mapping of a free-text occupation onto the taxonomy.

    The longest table keyword contained in the folded text (on word
    boundaries) wins; ties break lexicographically. No keyword -> OTHER.
    """
    if not raw:
        return OccupationGroup.OTHER
    text = _fold(raw)
    if not text:
        return OccupationGroup.OTHER
    table = occupation_keywords()
    padded = f" {text} "
    best: Optional[str] = None
    for keyword in table:
        if f" {keyword} " not in padded:
            continue
        if best is None or len(keyword) > len(best) or (len(keyword) == len(best) and keyword < best):
            best = keyword
    return table[best] if best else OccupationGroup.OTHER


# ---------------------------------------------------------------------------
# Gender

_FEMALE = {
    "female", "f", "w", "woman", "women", "girl", "lady", "weiblich", "frau",
    "femme", "féminin",
}
_MALE = {
    "male", "m", "man", "men", "boy", "männlich", "maennlich", "mann", "herr",
    "homme", "masculin",
}


def normalize_gender(raw: Optional[str]) -> Gender:
    if not raw:
        return Gender.UNKNOWN
    key = _fold(raw)
    if key in _FEMALE:
        return Gender.FEMALE
    if key in _MALE:
        return Gender.MALE
    return Gender.UNKNOWN


# ---------------------------------------------------------------------------
# Country


@lru_cache(maxsize=1)
def country_names() -> tuple[dict[str, str], frozenset[str]]:
    """(folded name -> ISO alpha-2, set of known codes).

    Historical states map to the modern ISO code of the present-day state of
    their capital (successor-state rule; see the table header).
    """
    table: dict[str, str] = {}
    data = resources.files("eponymap.data").joinpath("country_names.csv")
    with data.open(encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            table[_fold(row["name"])] = row["code"].upper()
    return table, frozenset(table.values())


def normalize_country(raw: Optional[str]) -> str:
    if not raw:
        return COUNTRY_UNKNOWN
    table, codes = country_names()
    key = _fold(raw)
    if key in table:
        return table[key]
    candidate = raw.strip().upper()
    if len(candidate) == 2 and candidate in codes:
        return candidate
    return COUNTRY_UNKNOWN


# ---------------------------------------------------------------------------
# Years

PARSE_YEAR_MIN = 1000
PARSE_YEAR_MAX = 2100

_YEAR_PATTERNS = [
    re.compile(r"^(\d{1,4})$"),                                   # 1853
    re.compile(r"^(\d{4})-\d{1,2}(?:-\d{1,2})?(?:[T ].*)?$"),     # 1030-06-01, ISO datetime
    re.compile(r"^\d{1,2}\.\d{1,2}\.(\d{4})\.?$"),                # 27.01.1756
    re.compile(r"^[A-Za-zÀ-ž]+ \d{1,2},? (\d{4})$"),              # June 1, 1030
    re.compile(r"^\d{1,2} [A-Za-zÀ-ž]+,? (\d{4})$"),              # 1 June 1030
]


def parse_year_checked(raw: Optional[str]) -> tuple[Optional[int], Optional[str]]:
    """(year, warning): absent input is silent, rejected input carries a warning."""
    if raw is None or not raw.strip():
        return None, None
    text = _collapse(raw)
    for pattern in _YEAR_PATTERNS:
        match = pattern.match(text)
        if match:
            year = int(match.group(1))
            if PARSE_YEAR_MIN <= year <= PARSE_YEAR_MAX:
                return year, None
            return None, f"year out of range [{PARSE_YEAR_MIN}, {PARSE_YEAR_MAX}]: {raw!r}"
    return None, f"unparseable date: {raw!r}"


def parse_year(raw: Optional[str]) -> Optional[int]:
    return parse_year_checked(raw)[0]


# ---------------------------------------------------------------------------
# Dataset cleaning


@dataclass(frozen=True)
class Rejection:
    street_name: str
    city: str
    reason: str
    kind: str  # "drop" | "merge"


@dataclass
class CleaningReport:
    rejections: list[Rejection] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def dropped(self) -> int:
        return sum(1 for r in self.rejections if r.kind == "drop")

    @property
    def merged(self) -> int:
        return sum(1 for r in self.rejections if r.kind == "merge")


def _populated_count(record: StreetRecord) -> int:
    """Richness score used to pick the survivor among duplicates."""
    score = 0
    score += record.district is not None
    score += record.denomination_year is not None
    score += record.birth_year is not None
    score += record.death_year is not None
    score += record.honoree_url is not None
    score += record.image_url is not None
    score += bool(record.occupation_raw)
    score += record.gender is not Gender.UNKNOWN
    score += record.country != COUNTRY_UNKNOWN
    score += record.occupation_group is not OccupationGroup.OTHER
    return score


def clean_dataset(records: Iterable[RawRecord]) -> tuple[list[StreetRecord], CleaningReport]:
    """Normalize raw records, reject invariant violations, deduplicate.

    Hard rejects: missing street or honoree name, unknown city, birth year
    not before death year. Duplicates deduplicate on (city, casefolded
    street name); the record with more populated fields survives, ties keep
    the earliest retrieved_at. |output| + drops + merges = |input|.
    """
    report = CleaningReport()
    candidates: list[tuple[StreetRecord, str, int]] = []  # (record, retrieved_at, seq)

    for seq, raw in enumerate(records):
        street = _collapse(raw.street_name or "")
        city_text = (raw.city or "").strip().casefold()
        if not street:
            report.rejections.append(Rejection(raw.street_name or "", raw.city, "missing street name", "drop"))
            continue
        try:
            city = CityId(city_text)
        except ValueError:
            report.rejections.append(Rejection(street, raw.city, f"unknown city: {raw.city!r}", "drop"))
            continue
        honoree = _collapse(raw.honoree or "")
        if not honoree:
            report.rejections.append(Rejection(street, city.value, "missing honoree name", "drop"))
            continue

        context = f"{city.value}/{street}"
        denomination, warn = parse_year_checked(raw.denomination)
        if warn:
            report.warnings.append(f"{context}: denomination {warn}")
        birth, warn = parse_year_checked(raw.dob)
        if warn:
            report.warnings.append(f"{context}: dob {warn}")
        death, warn = parse_year_checked(raw.dod)
        if warn:
            report.warnings.append(f"{context}: dod {warn}")
        if birth is not None and death is not None and birth >= death:
            report.rejections.append(
                Rejection(street, city.value, f"birth year {birth} not before death year {death}", "drop")
            )
            continue

        occupation_raw = _collapse(raw.occupation or "")
        record = StreetRecord(
            record_id=make_record_id(city, street, raw.source),
            street_name=street,
            city=city,
            honoree_name=honoree,
            gender=normalize_gender(raw.gender),
            occupation_raw=occupation_raw,
            occupation_group=map_occupation(occupation_raw),
            country=normalize_country(raw.country),
            district=_collapse(raw.district) if raw.district else None,
            denomination_year=denomination,
            birth_year=birth,
            death_year=death,
            honoree_url=raw.honoree_url or None,
            image_url=raw.image_url or None,
            source=raw.source,
        )
        candidates.append((record, raw.retrieved_at or "", seq))

    # Deduplicate per (city, casefolded street name); richer record survives.
    by_key: dict[tuple[str, str], tuple[StreetRecord, str, int]] = {}
    for entry in candidates:
        record = entry[0]
        key = (record.city.value, record.street_name.casefold())
        incumbent = by_key.get(key)
        if incumbent is None:
            by_key[key] = entry
            continue
        winner, loser = _pick_duplicate(incumbent, entry)
        by_key[key] = winner
        report.rejections.append(
            Rejection(
                loser[0].street_name,
                loser[0].city.value,
                f"duplicate of {winner[0].record_id}",
                "merge",
            )
        )

    kept = sorted(by_key.values(), key=lambda entry: entry[2])
    return [record for record, _, _ in kept], report


def _pick_duplicate(a, b):
    """Winner by populated-field count, then earliest retrieved_at, then order."""
    score_a, score_b = _populated_count(a[0]), _populated_count(b[0])
    if score_a != score_b:
        return (a, b) if score_a > score_b else (b, a)
    if a[1] != b[1]:
        return (a, b) if a[1] < b[1] else (b, a)
    return (a, b) if a[2] < b[2] else (b, a)


def write_report_csv(report: CleaningReport, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["kind", "city", "streetname", "reason"])
    for rejection in report.rejections:
        writer.writerow([rejection.kind, rejection.city, rejection.street_name, rejection.reason])
    for warning in report.warnings:
        writer.writerow(["warning", "", "", warning])
