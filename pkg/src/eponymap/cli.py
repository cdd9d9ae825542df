"""Command-line surface: one subcommand per pipeline stage, plus the runner."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .api import ServeConfig, serve as run_server
from .domain import CityId, Source, read_records_csv, write_records_csv
from .errors import PipelineStageError
from .geomatch import (
    features_to_collection,
    match_dataset,
    read_extract,
    write_features_geojson,
    write_unmatched_csv,
)
from .geo import canonical_dumps
from .ingest import (
    Fetcher,
    fetch_wikidata_streets,
    import_annotated_csv,
    ingest_wikihistory,
    read_raw_csv,
    resolve_conflicts,
    sniff_annotated,
    write_raw_csv,
)
from .normalize import clean_dataset, write_report_csv
from .pipeline import PipelineConfig, format_summary_table, run_pipeline
from .store import load_snapshot, open_db, save_db


@click.group()
def main():
    """Honorific street names: collect, normalize, match, serve."""


@main.command()
@click.option("--city", required=True, type=click.Choice([c.value for c in CityId]))
@click.option("--source", "source_kind", required=True, type=click.Choice(["wikidata", "wikihistory", "csv"]))
@click.option("--endpoint", help="SPARQL endpoint URL, page directory/URL list, or saved results file.")
@click.option("--in", "input_file", type=click.Path(exists=True), help="CSV file for --source csv.")
@click.option("--out", "output_file", required=True, type=click.Path())
@click.option("--rate-limit", default=1.0, show_default=True, help="Minimum seconds between requests.")
@click.option("--cache", "cache_dir", type=click.Path(), help="On-disk URL cache for resumable crawls.")
@click.option("--retrieved-at", help="Fixed retrieval timestamp (reproducible runs).")
def ingest(city, source_kind, endpoint, input_file, output_file, rate_limit, cache_dir, retrieved_at):
    """Pull raw street records from one source into the raw CSV format."""
    city_id = CityId(city)
    fetcher = Fetcher(min_delay=rate_limit, cache_dir=cache_dir)
    if source_kind == "wikidata":
        if not endpoint:
            raise click.UsageError("--source wikidata requires --endpoint")
        records = fetch_wikidata_streets(city_id, endpoint, fetcher=fetcher, retrieved_at=retrieved_at)
    elif source_kind == "wikihistory":
        if not endpoint:
            raise click.UsageError("--source wikihistory requires --endpoint")
        records, skipped = ingest_wikihistory(city_id, endpoint, fetcher=fetcher, retrieved_at=retrieved_at)
        for name in skipped:
            click.echo(f"skipped (not a street page): {name}", err=True)
    else:
        if not input_file:
            raise click.UsageError("--source csv requires --in")
        if sniff_annotated(input_file):
            annotation_sets = import_annotated_csv(
                input_file, Source.ANNOTATED_CSV, city=city, retrieved_at=retrieved_at
            )
            records = []
            for annotations in annotation_sets:
                record, flags = resolve_conflicts(annotations, retrieved_at=retrieved_at)
                if flags:
                    click.echo(f"review needed for {record.street_name}: {', '.join(flags)}", err=True)
                records.append(record)
        else:
            records = import_annotated_csv(
                input_file, Source.CURATED, city=city, retrieved_at=retrieved_at
            )
    with open(output_file, "w", encoding="utf-8", newline="") as fh:
        write_raw_csv(records, fh)
    click.echo(f"{len(records)} raw records -> {output_file}")


@main.command()
@click.option("--in", "input_file", required=True, type=click.Path(exists=True))
@click.option("--out", "output_file", required=True, type=click.Path())
@click.option("--report", "report_file", required=True, type=click.Path())
def normalize(input_file, output_file, report_file):
    """Clean raw records into validated canonical records."""
    with open(input_file, encoding="utf-8", newline="") as fh:
        raw = read_raw_csv(fh)
    records, report = clean_dataset(raw)
    with open(output_file, "w", encoding="utf-8", newline="") as fh:
        write_records_csv(records, fh)
    with open(report_file, "w", encoding="utf-8", newline="") as fh:
        write_report_csv(report, fh)
    click.echo(
        f"{len(records)} records kept, {report.dropped} dropped, "
        f"{report.merged} merged -> {output_file}"
    )


@main.command()
@click.option("--in", "input_file", required=True, type=click.Path(exists=True))
@click.option("--osm", "osm_file", required=True, type=click.Path(exists=True))
@click.option("--out", "output_file", required=True, type=click.Path())
@click.option("--unmatched", "unmatched_file", required=True, type=click.Path())
def match(input_file, osm_file, output_file, unmatched_file):
    """Join records with OSM way geometry."""
    with open(input_file, encoding="utf-8", newline="") as fh:
        records = read_records_csv(fh)
    extract = read_extract(osm_file)
    matched, unmatched = match_dataset(records, extract)
    write_features_geojson(matched, output_file)
    with open(unmatched_file, "w", encoding="utf-8", newline="") as fh:
        write_unmatched_csv(unmatched, fh)
    click.echo(f"{len(matched)} matched, {len(unmatched)} unmatched -> {output_file}")


@main.command()
@click.option("--in", "input_file", required=True, type=click.Path(exists=True))
@click.option("--db", "db_path", required=True, type=click.Path())
def load(input_file, db_path):
    """Validate a feature collection and persist it as the snapshot store."""
    import json

    collection = json.loads(Path(input_file).read_text(encoding="utf-8"))
    snapshot = load_snapshot(collection)
    Path(db_path).parent.mkdir(parents=True, exist_ok=True)
    save_db(snapshot, db_path)
    click.echo(f"{snapshot.count} features -> {db_path}")


@main.command()
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--city", required=True, type=click.Choice([c.value for c in CityId]))
@click.option("--out", "output_file", required=True, type=click.Path())
def export(db_path, city, output_file):
    """Export one city as canonical CSV or GeoJSON (by file extension)."""
    snapshot = open_db(db_path)
    from .store import QueryFilter

    features = snapshot.query(QueryFilter(city=CityId(city)))
    if output_file.endswith(".csv"):
        with open(output_file, "w", encoding="utf-8", newline="") as fh:
            write_records_csv((f.record for f in features), fh)
    else:
        Path(output_file).write_text(
            canonical_dumps(features_to_collection(features)) + "\n", encoding="utf-8"
        )
    click.echo(f"{len(features)} features -> {output_file}")


@main.command()
@click.option("--db", "db_path", required=True, type=click.Path(exists=True))
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_file", type=click.Path(exists=True))
def serve(db_path, port, host, config_file):
    """Serve the HTTP API (and the UI bundle when configured)."""
    config = ServeConfig.from_file(config_file) if config_file else ServeConfig()
    run_server(db_path, port=port, host=host, config=config)


@main.group()
def pipeline():
    """Multi-stage workflow orchestration."""


@pipeline.command("run")
@click.option("--config", "config_file", required=True, type=click.Path(exists=True))
@click.option("--city", type=click.Choice([c.value for c in CityId]))
def pipeline_run(config_file, city):
    """Run ingest, normalize, match and load for every configured city."""
    config = PipelineConfig.from_file(config_file)
    only = CityId(city) if city else None
    try:
        result = run_pipeline(config, only_city=only)
    except PipelineStageError as exc:
        click.echo(f"pipeline failed at stage {exc.stage}: {exc.cause}", err=True)
        sys.exit(1)
    click.echo(format_summary_table(result.summary))
    click.echo(f"snapshot: {result.db_path}")


if __name__ == "__main__":
    main()
