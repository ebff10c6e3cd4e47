"""Generate the Torino restaurants fixture.

A synthetic Overpass extract of 719 restaurant nodes whose tag-value
distributions are fixed: Cuisine specified in 432 items over 86
distinct values (30 frequent ones plus 56 singletons), Outdoor Seating
in 92 (NO 59 / YES 33), Takeaway in 76 (YES 62 / NO 10 / ONLY 4), Name
in 675 distinct items, plus two balanced toy facets ex1 (8 x 20) and
ex2 (8 x 3). Coordinates are seeded-random points inside the Torino
city box, so the output is byte-stable across runs.

Usage: python scripts/make_fixture.py [dest_dir]   (default tests/fixtures)
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

CUISINE_HEAD = [
    ("pizza", 111),
    ("italian", 74),
    ("regional", 37),
    ("chinese", 28),
    ("japanese", 17),
    ("italian;pizza", 15),
    ("sushi", 11),
    ("italian;regional", 10),
    ("pizza;italian", 10),
    ("mexican", 9),
    ("kebab", 7),
    ("indian", 4),
    ("asian", 3),
    ("chinese;japanese", 3),
    ("fish", 3),
    ("international", 3),
    ("italian;pizza;regional", 3),
    ("italian_pizza", 3),
    ("peruvian", 3),
    ("steak_house", 3),
    ("american", 2),
    ("chinese;pizza", 2),
    ("greek", 2),
    ("italian_pizza;pizza", 2),
    ("kebab;pizza", 2),
    ("local", 2),
    ("mediterranean", 2),
    ("pizza;kebab", 2),
    ("regional;italian", 2),
    ("african", 1),
]

CUISINE_SINGLETONS = [
    "thai", "vietnamese", "korean", "lebanese", "turkish", "spanish",
    "french", "german", "argentinian", "brazilian", "ethiopian",
    "moroccan", "persian", "pakistani", "nepalese", "tibetan",
    "malaysian", "indonesian", "filipino", "caribbean", "cuban",
    "hawaiian", "portuguese", "russian", "polish", "hungarian",
    "austrian", "swiss", "belgian", "dutch", "danish", "swedish",
    "norwegian", "finnish", "scottish", "irish", "english", "canadian",
    "syrian", "egyptian", "tunisian", "senegalese", "nigerian",
    "georgian", "armenian", "uzbek", "mongolian", "taiwanese",
    "cantonese", "sicilian", "sardinian", "tuscan", "ligurian",
    "venetian", "neapolitan", "friulian",
]

NAME_PREFIXES = ["Trattoria", "Osteria", "Ristorante", "Pizzeria", "Locanda", "Antica Cucina"]

TOTAL_ITEMS = 719
NAMED_ITEMS = 675
OUTDOOR_START = 150   # 59 x no, then 33 x yes
TAKEAWAY_START = 300  # 62 x yes, 10 x no, 4 x only
EX1_START = 120       # 160 items, values group_0..group_7 balanced
EX2_START = 400       # 24 items, values set_0..set_7 balanced

LAT_RANGE = (45.006, 45.132)
LON_RANGE = (7.578, 7.772)


def expand(pairs: list[tuple[str, int]]) -> list[str]:
    values = []
    for value, count in pairs:
        values.extend([value] * count)
    return values


def build_elements() -> list[dict]:
    assert len(CUISINE_SINGLETONS) == 56
    cuisine = expand(CUISINE_HEAD + [(s, 1) for s in CUISINE_SINGLETONS])
    assert len(cuisine) == 432
    outdoor = expand([("no", 59), ("yes", 33)])
    takeaway = expand([("yes", 62), ("no", 10), ("only", 4)])

    rng = random.Random(20190920)
    elements = []
    for i in range(TOTAL_ITEMS):
        tags = {"amenity": "restaurant"}
        if i < NAMED_ITEMS:
            tags["name"] = f"{NAME_PREFIXES[i % len(NAME_PREFIXES)]} {i:03d}"
        if i < len(cuisine):
            tags["cuisine"] = cuisine[i]
        if OUTDOOR_START <= i < OUTDOOR_START + len(outdoor):
            tags["outdoor_seating"] = outdoor[i - OUTDOOR_START]
        if TAKEAWAY_START <= i < TAKEAWAY_START + len(takeaway):
            tags["takeaway"] = takeaway[i - TAKEAWAY_START]
        if EX1_START <= i < EX1_START + 160:
            tags["ex1"] = f"group_{(i - EX1_START) % 8}"
        if EX2_START <= i < EX2_START + 24:
            tags["ex2"] = f"set_{(i - EX2_START) % 8}"
        elements.append(
            {
                "type": "node",
                "id": 5_000_000 + i,
                "lat": round(rng.uniform(*LAT_RANGE), 7),
                "lon": round(rng.uniform(*LON_RANGE), 7),
                "tags": tags,
            }
        )
    return elements


CATEGORIES = [
    {"id": "restaurants", "label": "Restaurants", "color": "#D35400", "icon": "restaurant",
     "tag_key": "amenity", "tag_value": "restaurant"},
    {"id": "parkings", "label": "Parking Lots", "color": "#2E86C1", "icon": "parking",
     "tag_key": "amenity", "tag_value": "parking"},
    {"id": "drugstores", "label": "Drugstores", "color": "#58D68D", "icon": "pharmacy",
     "tag_key": "amenity", "tag_value": "pharmacy"},
    {"id": "museums", "label": "Museums", "color": "#8E44AD", "icon": "museum",
     "tag_key": "tourism", "tag_value": "museum"},
]


def main() -> None:
    dest = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    dest.mkdir(parents=True, exist_ok=True)

    document = {
        "version": 0.6,
        "generator": "Overpass API 0.7.56.9 96e3358d",
        "osm3s": {"timestamp_osm_base": "2019-09-20T00:00:00Z"},
        "elements": build_elements(),
    }
    overpass_path = dest / "torino_restaurants.json"
    overpass_path.write_text(json.dumps(document, indent=1) + "\n", encoding="utf-8")

    config_path = dest / "categories.json"
    config_path.write_text(json.dumps(CATEGORIES, indent=2) + "\n", encoding="utf-8")

    verify(overpass_path, config_path)
    print(f"wrote {overpass_path} and {config_path}")


def verify(overpass_path: Path, config_path: Path) -> None:
    """Re-ingest the generated file and check the headline counts."""
    from facetmap.analytics import build_histogram
    from facetmap.geo import BoundingBox
    from facetmap.ingest import build_snapshot, load_category_config, parse_overpass

    parsed = parse_overpass(overpass_path.read_bytes())
    config = load_category_config(config_path)
    snapshot = build_snapshot(parsed.elements, config, BoundingBox(45.0, 7.55, 45.14, 7.80))
    assert len(snapshot.items) == TOTAL_ITEMS, len(snapshot.items)
    items = list(snapshot.items)

    checks = {
        "Cuisine": (432, 86),
        "Outdoor Seating": (92, 2),
        "Takeaway": (76, 3),
        "Name": (675, 675),
        "Ex1": (160, 8),
        "Ex2": (24, 8),
    }
    for facet, (specified, distinct) in checks.items():
        h = build_histogram(items, facet)
        assert h.specified_count == specified, (facet, h.specified_count)
        assert h.value_count == distinct, (facet, h.value_count)
    outdoor = build_histogram(items, "Outdoor Seating").counts
    assert outdoor == {"NO": 59, "YES": 33}, outdoor
    takeaway = build_histogram(items, "Takeaway").counts
    assert takeaway == {"YES": 62, "NO": 10, "ONLY": 4}, takeaway
    cuisine = build_histogram(items, "Cuisine").counts
    assert cuisine["PIZZA"] == 111 and cuisine["ITALIAN; PIZZA"] == 15, "cuisine head off"
    assert sum(1 for c in cuisine.values() if c == 1) == 57, "cuisine singleton count off"


if __name__ == "__main__":
    main()
