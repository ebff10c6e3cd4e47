"""Operator command line: ingest raw data, analyze facets, run the service."""

from __future__ import annotations

import socket
from collections import Counter
from pathlib import Path

import click

from .analytics import (
    NavigationQualityParams,
    RankingConfig,
    facet_report,
    render_comparison,
    render_report,
)
from .geo import BoundingBox
from .ingest import (
    OverpassFormatError,
    SnapshotFormatError,
    build_snapshot,
    load_category_config,
    load_snapshot,
    parse_overpass,
    save_snapshot,
)


def _parse_bbox(ctx, param, value: str) -> BoundingBox:
    try:
        south, west, north, east = (float(part) for part in value.split(","))
        return BoundingBox(south=south, west=west, north=north, east=east)
    except ValueError as e:
        raise click.BadParameter(f"expected south,west,north,east degrees: {e}")


@click.group()
def main():
    """Faceted projection tooling for crowdsourced geodata."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--bbox", required=True, callback=_parse_bbox, help="south,west,north,east")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, writable=True))
def ingest(input_path: str, config_path: str, bbox: BoundingBox, out_path: str):
    """Parse an Overpass JSON file into a dataset snapshot."""
    try:
        config = load_category_config(config_path)
        parsed = parse_overpass(Path(input_path).read_bytes())
    except (OverpassFormatError, ValueError) as e:
        raise click.ClickException(str(e))

    snapshot = build_snapshot(parsed.elements, config, bbox, snapshot_id=Path(out_path).stem)
    save_snapshot(snapshot, out_path)

    per_category = Counter(item.category_id for item in snapshot.items)
    breakdown = ", ".join(f"{cid}: {n}" for cid, n in per_category.most_common())
    click.echo(f"{len(snapshot.items)} items ({breakdown})" if breakdown else "0 items")
    uncategorized = len(parsed.elements) - len(snapshot.items)
    click.echo(
        f"dropped: {parsed.dropped} without coordinates, "
        f"{uncategorized} uncategorized or outside bbox"
    )


def _load_category_items(snapshot_path: str, category_id: str):
    try:
        snapshot = load_snapshot(snapshot_path)
    except (SnapshotFormatError, ValueError) as e:
        raise click.ClickException(str(e))
    items = [item for item in snapshot.items if item.category_id == category_id]
    if not items:
        raise click.ClickException(f"no items for category {category_id!r} in snapshot")
    return items


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--category", "category_id", required=True)
@click.option("--max-facets", default=12, show_default=True)
@click.option("--min-coverage", default=0.03, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv"]), default="markdown", show_default=True)
def analyze(snapshot_path: str, category_id: str, max_facets: int, min_coverage: float, fmt: str):
    """Rank the facets of one category and print their statistics."""
    items = _load_category_items(snapshot_path, category_id)
    try:
        cfg = RankingConfig(min_coverage=min_coverage, max_facets=max_facets)
    except ValueError as e:
        raise click.BadParameter(str(e))
    click.echo(render_report(facet_report(items, cfg), fmt), nl=False)


@main.command(name="compare-metrics")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--category", "category_id", required=True)
@click.option("--mu", default=2.0, show_default=True)
@click.option("--sigma", default=4.9, show_default=True)
@click.option("--max-facets", default=12, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv"]), default="markdown", show_default=True)
def compare_metrics(snapshot_path: str, category_id: str, mu: float, sigma: float, max_facets: int, fmt: str):
    """Exploration cost next to the navigation-quality baseline, per facet."""
    if sigma <= 0:
        raise click.BadParameter("sigma must be > 0", param_hint="--sigma")
    items = _load_category_items(snapshot_path, category_id)
    params = NavigationQualityParams(mu=mu, sigma=sigma)
    cfg = RankingConfig(max_facets=max_facets)
    click.echo(render_comparison(facet_report(items, cfg, params), fmt), nl=False)


@main.command()
@click.option("--data-dir", envvar="FACET_DATA_DIR", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(data_dir: str, host: str, port: int):
    """Run the map service until interrupted."""
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as e:
        raise click.ClickException(f"cannot bind {host}:{port}: {e}")
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    try:
        app = create_app(data_dir)
    except (FileNotFoundError, ValueError) as e:
        raise click.ClickException(f"cannot start service: {e}")
    click.echo(f"serving {data_dir} on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
