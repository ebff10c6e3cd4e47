import shutil
from datetime import datetime, timezone
from pathlib import Path

import pytest

from facetmap.geo import BoundingBox
from facetmap.ingest import build_snapshot, load_category_config, parse_overpass, save_snapshot

FIXTURES = Path(__file__).parent / "fixtures"
TORINO_BBOX = BoundingBox(south=45.0, west=7.55, north=45.14, east=7.80)


@pytest.fixture(scope="session")
def category_config():
    return load_category_config(FIXTURES / "categories.json")


@pytest.fixture(scope="session")
def restaurant_snapshot(category_config):
    """The Torino restaurants fixture, ingested once per session."""
    parsed = parse_overpass((FIXTURES / "torino_restaurants.json").read_bytes())
    assert parsed.dropped == 0
    return build_snapshot(
        parsed.elements,
        category_config,
        TORINO_BBOX,
        snapshot_id="torino",
        created=datetime(2019, 9, 20, tzinfo=timezone.utc),
    )


@pytest.fixture(scope="session")
def restaurants(restaurant_snapshot):
    return list(restaurant_snapshot.items)


@pytest.fixture
def data_dir(tmp_path, restaurant_snapshot):
    """A service data directory with the fixture snapshot registered."""
    (tmp_path / "snapshots").mkdir()
    save_snapshot(restaurant_snapshot, tmp_path / "snapshots" / "torino.ndjson")
    shutil.copy(FIXTURES / "categories.json", tmp_path / "categories.json")
    return tmp_path
