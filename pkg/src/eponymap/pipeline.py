"""End-to-end workflow: ingest -> normalize -> match -> load, per city.

Every stage writes its output to disk before the next one runs, so a failed
or drifting source can be rerun in isolation. Cities run concurrently
(stages within a city are sequential) and results merge in fixed city order,
which keeps reruns byte-identical on unchanged inputs.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from .domain import CityId, Source, write_records_csv
from .errors import PipelineStageError
from .geomatch import (
    StreetFeature,
    features_to_collection,
    match_dataset,
    read_extract,
    write_features_geojson,
    write_unmatched_csv,
)
from .ingest import (
    DictionaryTranslator,
    IdentityTranslator,
    RawRecord,
    fetch_wikidata_streets,
    import_annotated_csv,
    ingest_wikihistory,
    resolve_conflicts,
    translate_fields,
    write_raw_csv,
)
from .normalize import clean_dataset, write_report_csv
from .store import Snapshot, load_snapshot, save_db

SOURCE_KINDS = {
    "wikidata": Source.WIKIDATA,
    "wikihistory": Source.WIKIHISTORY,
    "csv_curated": Source.CURATED,
    "csv_annotated": Source.ANNOTATED_CSV,
}


@dataclass
class CityPlan:
    city: CityId
    sources: list[tuple[Source, str]]  # (kind, location)
    osm_extract: str


@dataclass
class PipelineConfig:
    out_dir: str
    db_path: str
    cities: dict[CityId, CityPlan]
    translator: str = "dictionary"
    retrieved_at: Optional[str] = None

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        path = Path(path)
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        base = path.parent

        def resolve(p: str) -> str:
            candidate = Path(p)
            return str(candidate if candidate.is_absolute() else base / candidate)

        cities: dict[CityId, CityPlan] = {}
        for city_key, spec in (data.get("cities") or {}).items():
            city = CityId(city_key)
            sources = []
            for src in spec.get("sources", []):
                kind = SOURCE_KINDS[src["kind"]]
                location = src["location"]
                if "://" not in location:
                    location = resolve(location)
                sources.append((kind, location))
            cities[city] = CityPlan(
                city=city, sources=sources, osm_extract=resolve(spec["osm_extract"])
            )
        return cls(
            out_dir=resolve(data.get("out_dir", "build/pipeline")),
            db_path=resolve(data.get("db", "build/pipeline/streets.db.json")),
            cities=cities,
            translator=data.get("translator", "dictionary"),
            retrieved_at=data.get("retrieved_at"),
        )


@dataclass
class CityResult:
    city: CityId
    ingested: int = 0
    cleaned: int = 0
    rejected: int = 0
    matched: int = 0
    unmatched: int = 0
    year_min: Optional[int] = None
    year_max: Optional[int] = None
    features: list[StreetFeature] = field(default_factory=list)

    def summary(self) -> dict:
        match_rate = round(self.matched / self.cleaned, 4) if self.cleaned else 0.0
        return {
            "city": self.city.value,
            "ingested": self.ingested,
            "cleaned": self.cleaned,
            "rejected": self.rejected,
            "matched": self.matched,
            "unmatched": self.unmatched,
            "match_rate": match_rate,
            "year_min": self.year_min,
            "year_max": self.year_max,
        }


def _make_translator(name: str):
    if name == "dictionary":
        return DictionaryTranslator()
    if name in ("identity", "none"):
        return IdentityTranslator()
    raise ValueError(f"unknown translator: {name!r}")


def ingest_city(plan: CityPlan, retrieved_at: Optional[str] = None) -> list[RawRecord]:
    records: list[RawRecord] = []
    for kind, location in plan.sources:
        if kind is Source.WIKIDATA:
            records.extend(
                fetch_wikidata_streets(plan.city, location, retrieved_at=retrieved_at)
            )
        elif kind is Source.WIKIHISTORY:
            city_records, _skipped = ingest_wikihistory(
                plan.city, location, retrieved_at=retrieved_at
            )
            records.extend(city_records)
        elif kind is Source.CURATED:
            records.extend(
                import_annotated_csv(
                    location, Source.CURATED, city=plan.city.value, retrieved_at=retrieved_at
                )
            )
        else:
            annotation_sets = import_annotated_csv(
                location, Source.ANNOTATED_CSV, city=plan.city.value, retrieved_at=retrieved_at
            )
            for annotations in annotation_sets:
                record, _flags = resolve_conflicts(annotations, retrieved_at=retrieved_at)
                records.append(record)
    return records


def run_city(config: PipelineConfig, plan: CityPlan) -> CityResult:
    city_dir = Path(config.out_dir) / plan.city.value
    city_dir.mkdir(parents=True, exist_ok=True)
    result = CityResult(city=plan.city)
    translator = _make_translator(config.translator)

    stage = f"ingest[{plan.city.value}]"
    try:
        raw = ingest_city(plan, retrieved_at=config.retrieved_at)
        raw = [translate_fields(r, translator) for r in raw]
        with open(city_dir / "raw.csv", "w", encoding="utf-8", newline="") as fh:
            write_raw_csv(raw, fh)
        result.ingested = len(raw)
    except Exception as exc:
        raise PipelineStageError(stage, exc) from exc

    stage = f"normalize[{plan.city.value}]"
    try:
        records, report = clean_dataset(raw)
        with open(city_dir / "records.csv", "w", encoding="utf-8", newline="") as fh:
            write_records_csv(records, fh)
        with open(city_dir / "rejections.csv", "w", encoding="utf-8", newline="") as fh:
            write_report_csv(report, fh)
        result.cleaned = len(records)
        result.rejected = len(report.rejections)
        years = [r.denomination_year for r in records if r.denomination_year is not None]
        result.year_min = min(years) if years else None
        result.year_max = max(years) if years else None
    except Exception as exc:
        raise PipelineStageError(stage, exc) from exc

    stage = f"match[{plan.city.value}]"
    try:
        extract = read_extract(plan.osm_extract)
        matched, unmatched = match_dataset(records, extract)
        write_features_geojson(matched, city_dir / "features.geojson")
        with open(city_dir / "unmatched.csv", "w", encoding="utf-8", newline="") as fh:
            write_unmatched_csv(unmatched, fh)
        result.matched = len(matched)
        result.unmatched = len(unmatched)
        result.features = matched
    except Exception as exc:
        raise PipelineStageError(stage, exc) from exc

    return result


@dataclass
class PipelineResult:
    summary: dict
    snapshot: Snapshot
    db_path: str


def run_pipeline(config: PipelineConfig, only_city: Optional[CityId] = None) -> PipelineResult:
    """Execute every stage for every configured city and load the snapshot."""
    plans = [
        plan
        for city, plan in sorted(config.cities.items(), key=lambda kv: kv[0].value)
        if only_city is None or city is only_city
    ]
    if not plans:
        raise PipelineStageError("config", ValueError("no cities selected"))
    Path(config.out_dir).mkdir(parents=True, exist_ok=True)

    with ThreadPoolExecutor(max_workers=max(1, len(plans))) as pool:
        results = list(pool.map(lambda plan: run_city(config, plan), plans))

    all_features: list[StreetFeature] = []
    for result in results:
        all_features.extend(result.features)

    stage = "load"
    try:
        write_features_geojson(all_features, Path(config.out_dir) / "all_features.geojson")
        snapshot = load_snapshot(features_to_collection(all_features))
        Path(config.db_path).parent.mkdir(parents=True, exist_ok=True)
        save_db(snapshot, config.db_path)
    except Exception as exc:
        raise PipelineStageError(stage, exc) from exc

    summary = {
        "cities": [r.summary() for r in results],
        "totals": {
            "ingested": sum(r.ingested for r in results),
            "cleaned": sum(r.cleaned for r in results),
            "rejected": sum(r.rejected for r in results),
            "matched": sum(r.matched for r in results),
            "unmatched": sum(r.unmatched for r in results),
        },
        "db": str(config.db_path),
    }
    summary_path = Path(config.out_dir) / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return PipelineResult(summary=summary, snapshot=snapshot, db_path=str(config.db_path))


def format_summary_table(summary: dict) -> str:
    columns = ["city", "ingested", "cleaned", "rejected", "matched", "unmatched", "match_rate"]
    rows = [columns] + [
        [str(entry[c]) for c in columns] for entry in summary["cities"]
    ]
    totals = summary["totals"]
    rows.append(
        ["TOTAL"] + [str(totals[c]) for c in columns[1:-1]] + [""]
    )
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    return "\n".join(lines)
