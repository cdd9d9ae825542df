"""HTTP/JSON service exposing the snapshot store to the web map.

Responses are pure functions of (snapshot, request): results are ordered by
record_id and serialized canonically, so identical requests return identical
bytes. Query parameters are parsed by hand so every malformed request gets
a 400 with the {code, field, message} error body instead of a framework 422
or 5xx.
"""

from __future__ import annotations

import signal
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import yaml
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.middleware.gzip import GZipMiddleware
from fastapi.staticfiles import StaticFiles

from .domain import CITY_CONFIGS, CityId, ThemeLayer
from .errors import NoMatch, UnknownCity
from .geo import canonical_dumps
from .geomatch import feature_to_geojson
from .store import FilterError, QueryFilter, Snapshot, open_db

GEOJSON_MEDIA = "application/geo+json"


@dataclass
class ServeConfig:
    """Deployment settings: enabled cities, CORS origins, static UI bundle."""

    db_path: Optional[str] = None
    cities: Optional[list[str]] = None
    cors_origins: list[str] = field(default_factory=list)
    static_dir: Optional[str] = None

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ServeConfig":
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        return cls(
            db_path=data.get("db"),
            cities=data.get("cities"),
            cors_origins=list(data.get("cors_origins", [])),
            static_dir=data.get("static_dir"),
        )


def _error(status: int, code: str, field_name: str, message: str) -> Response:
    body = canonical_dumps({"code": code, "field": field_name, "message": message})
    return Response(content=body, status_code=status, media_type="application/json")


def _parse_int(raw: Optional[str], field_name: str) -> Optional[int]:
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise FilterError(field_name, f"not an integer: {raw!r}") from None


def _parse_filter(city: CityId, params) -> QueryFilter:
    theme_raw = params.get("theme") or ThemeLayer.OCCUPATION.value
    try:
        theme = ThemeLayer(theme_raw)
    except ValueError:
        raise FilterError("theme", f"unknown theme: {theme_raw!r}") from None
    year_from = _parse_int(params.get("from"), "from")
    year_to = _parse_int(params.get("to"), "to")
    year_range = None
    if year_from is not None or year_to is not None:
        if year_from is None:
            raise FilterError("from", "to given without from")
        if year_to is None:
            raise FilterError("to", "from given without to")
        year_range = (year_from, year_to)
    tags = None
    if params.get("tags"):
        tags = frozenset(t.strip() for t in params["tags"].split(",") if t.strip())
    return QueryFilter(city=city, theme=theme, year_range=year_range, tags=tags)


def create_app(snapshot: Optional[Snapshot] = None, config: Optional[ServeConfig] = None) -> FastAPI:
    config = config or ServeConfig()
    app = FastAPI(title="eponymap", docs_url=None, redoc_url=None)
    app.state.snapshot = snapshot
    app.state.config = config

    app.add_middleware(GZipMiddleware, minimum_size=500)
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["GET"],
            allow_headers=["*"],
        )

    def current_snapshot() -> Optional[Snapshot]:
        return app.state.snapshot

    def resolve_city(city_id: str) -> CityId:
        city = CityId(city_id)  # pre-checked by caller
        enabled = app.state.config.cities
        if enabled is not None and city.value not in enabled:
            raise UnknownCity(city_id)
        return city

    @app.get("/cities")
    def cities() -> Response:
        snapshot = current_snapshot()
        if snapshot is None:
            return _error(503, "no_snapshot", "", "no dataset snapshot loaded")
        entries = []
        enabled = app.state.config.cities
        for city, cfg in CITY_CONFIGS.items():
            if enabled is not None and city.value not in enabled:
                continue
            count = snapshot.count_for(city)
            if enabled is None and count == 0:
                continue
            entries.append(
                {
                    "id": city.value,
                    "display_name": cfg.display_name,
                    "center": [cfg.center.lon, cfg.center.lat],
                    "bounding_box": [
                        cfg.bounding_box.west,
                        cfg.bounding_box.south,
                        cfg.bounding_box.east,
                        cfg.bounding_box.north,
                    ],
                    "year_range": list(cfg.year_range),
                    "count": count,
                }
            )
        return Response(content=canonical_dumps(entries), media_type="application/json")

    def _with_city_and_filter(city_id: str, request: Request):
        """(snapshot, filter) or an error Response."""
        snapshot = current_snapshot()
        if snapshot is None:
            return _error(503, "no_snapshot", "", "no dataset snapshot loaded")
        try:
            city = resolve_city(city_id)
        except (ValueError, UnknownCity):
            return _error(404, "unknown_city", "city", f"unknown city: {city_id!r}")
        try:
            flt = _parse_filter(city, request.query_params)
        except FilterError as exc:
            return _error(400, "invalid_parameter", exc.field, str(exc))
        return snapshot, flt

    @app.get("/cities/{city_id}/streets")
    def streets(city_id: str, request: Request) -> Response:
        resolved = _with_city_and_filter(city_id, request)
        if isinstance(resolved, Response):
            return resolved
        snapshot, flt = resolved
        results = snapshot.query(flt)
        body = canonical_dumps(
            {
                "type": "FeatureCollection",
                "features": [feature_to_geojson(f) for f in results],
            }
        )
        return Response(
            content=body,
            media_type=GEOJSON_MEDIA,
            headers={"X-Total-Count": str(len(results))},
        )

    @app.get("/cities/{city_id}/streets/random")
    def random_street(city_id: str, request: Request) -> Response:
        resolved = _with_city_and_filter(city_id, request)
        if isinstance(resolved, Response):
            return resolved
        snapshot, flt = resolved
        try:
            seed = _parse_int(request.query_params.get("seed"), "seed")
        except FilterError as exc:
            return _error(400, "invalid_parameter", exc.field, str(exc))
        try:
            feature = snapshot.random_street(flt, seed=seed)
        except NoMatch:
            return Response(status_code=204)
        return Response(content=canonical_dumps(feature_to_geojson(feature)), media_type=GEOJSON_MEDIA)

    @app.get("/cities/{city_id}/stats")
    def stats(city_id: str, request: Request) -> Response:
        snapshot = current_snapshot()
        if snapshot is None:
            return _error(503, "no_snapshot", "", "no dataset snapshot loaded")
        try:
            city = resolve_city(city_id)
        except (ValueError, UnknownCity):
            return _error(404, "unknown_city", "city", f"unknown city: {city_id!r}")
        theme_raw = request.query_params.get("theme") or ThemeLayer.OCCUPATION.value
        try:
            theme = ThemeLayer(theme_raw)
        except ValueError:
            return _error(400, "invalid_parameter", "theme", f"unknown theme: {theme_raw!r}")
        counts = snapshot.stats(city, theme)
        body = canonical_dumps(
            {"theme": theme.value, "total": sum(counts.values()), "counts": counts}
        )
        return Response(content=body, media_type="application/json")

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def serve(
    db_path: str,
    port: int = 8000,
    host: str = "127.0.0.1",
    config: Optional[ServeConfig] = None,
) -> None:
    """Run the service; SIGHUP swaps in a freshly loaded snapshot atomically."""
    import uvicorn

    config = config or ServeConfig()
    config.db_path = db_path
    snapshot = open_db(db_path)
    app = create_app(snapshot, config)

    def reload_snapshot(signum, frame):
        app.state.snapshot = open_db(db_path)

    try:
        signal.signal(signal.SIGHUP, reload_snapshot)
    except (ValueError, AttributeError):
        pass  # non-main thread or platform without SIGHUP
    uvicorn.run(app, host=host, port=port, log_level="info")
