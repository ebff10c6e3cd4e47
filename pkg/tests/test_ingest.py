import json
from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from facetmap.geo import BoundingBox, Category, Point, Polygon
from facetmap.ingest import (
    DatasetSnapshot,
    OverpassFormatError,
    RawElement,
    SnapshotFormatError,
    assign_category,
    build_snapshot,
    normalize_tag_key,
    normalize_tag_value,
    parse_overpass,
    read_snapshot,
    write_snapshot,
)

RESTAURANTS = Category(
    id="restaurants", label="Restaurants", color="#D35400", icon="restaurant",
    tag_key="amenity", tag_value="restaurant",
)
BBOX = BoundingBox(south=45.0, west=7.55, north=45.14, east=7.80)


class TestParseOverpass:
    def test_empty_elements(self):
        parsed = parse_overpass(b'{"elements": []}')
        assert parsed.elements == [] and parsed.dropped == 0

    def test_single_node(self):
        doc = {
            "elements": [
                {"type": "node", "id": 1, "lat": 45.07, "lon": 7.68,
                 "tags": {"amenity": "restaurant", "cuisine": "pizza"}}
            ]
        }
        parsed = parse_overpass(json.dumps(doc))
        assert len(parsed.elements) == 1
        element = parsed.elements[0]
        assert element.element_type == "node"
        assert element.coordinates == Point(lon=7.68, lat=45.07)
        assert element.tags == {"amenity": "restaurant", "cuisine": "pizza"}

    def test_node_without_coordinates_is_dropped(self):
        parsed = parse_overpass(b'{"elements": [{"type": "node", "id": 2, "tags": {}}]}')
        assert parsed.elements == [] and parsed.dropped == 1

    def test_way_geometry_becomes_ring(self):
        doc = {
            "elements": [
                {"type": "way", "id": 3,
                 "geometry": [{"lat": 0, "lon": 0}, {"lat": 0, "lon": 1},
                              {"lat": 1, "lon": 1}, {"lat": 0, "lon": 0}],
                 "tags": {"amenity": "restaurant"}}
            ]
        }
        parsed = parse_overpass(json.dumps(doc))
        # closing vertex is stripped from storage
        assert parsed.elements[0].coordinates == (Point(0, 0), Point(1, 0), Point(1, 1))

    def test_way_center_fallback(self):
        doc = {"elements": [{"type": "way", "id": 4, "center": {"lat": 45.1, "lon": 7.6}}]}
        parsed = parse_overpass(json.dumps(doc))
        assert parsed.elements[0].coordinates == Point(lon=7.6, lat=45.1)

    def test_malformed_json_reports_byte_offset(self):
        with pytest.raises(OverpassFormatError, match="byte offset"):
            parse_overpass(b'{"elements": [} ')

    def test_missing_elements_key(self):
        with pytest.raises(OverpassFormatError, match="elements"):
            parse_overpass(b'{"nodes": []}')


class TestNormalizeTagKey:
    def test_underscores(self):
        assert normalize_tag_key("outdoor_seating") == "Outdoor Seating"

    def test_colons(self):
        assert normalize_tag_key("addr:city") == "Addr City"

    def test_single_word(self):
        assert normalize_tag_key("name") == "Name"

    def test_case_collapses(self):
        assert normalize_tag_key("Cuisine") == normalize_tag_key("cuisine") == "Cuisine"

    @given(st.text(alphabet=st.characters(codec="utf-8", categories=["L", "N", "P"]), min_size=1, max_size=30))
    def test_idempotent_on_own_output(self, raw):
        once = normalize_tag_key(raw)
        assert normalize_tag_key(once) == once


class TestNormalizeTagValue:
    def test_uppercases(self):
        assert normalize_tag_value("pizza") == "PIZZA"

    def test_separator_spacing(self):
        assert normalize_tag_value("italian;pizza") == "ITALIAN; PIZZA"
        assert normalize_tag_value("italian; pizza") == "ITALIAN; PIZZA"

    def test_never_splits(self):
        assert normalize_tag_value("italian_pizza") == "ITALIAN_PIZZA"


class TestAssignCategory:
    def test_matches_predicate(self):
        element = RawElement("node", 1, Point(7.6, 45.1), {"amenity": "restaurant", "cuisine": "pizza"})
        assert assign_category(element, [RESTAURANTS]) is RESTAURANTS

    def test_no_tags(self):
        element = RawElement("node", 1, Point(7.6, 45.1), {})
        assert assign_category(element, [RESTAURANTS]) is None

    def test_no_matching_predicate(self):
        element = RawElement("node", 1, Point(7.6, 45.1), {"amenity": "school"})
        assert assign_category(element, [RESTAURANTS]) is None

    def test_first_match_wins(self):
        shadow = Category(id="other", label="Other", color="#000000", icon="i",
                          tag_key="amenity", tag_value="restaurant")
        element = RawElement("node", 1, Point(7.6, 45.1), {"amenity": "restaurant"})
        assert assign_category(element, [shadow, RESTAURANTS]).id == "other"
        assert assign_category(element, [RESTAURANTS, shadow]).id == "restaurants"


class TestBuildSnapshot:
    def test_empty(self):
        snapshot = build_snapshot([], [RESTAURANTS], BBOX)
        assert snapshot.items == ()

    def test_fixture_has_719_items(self, restaurant_snapshot):
        assert len(restaurant_snapshot.items) == 719

    def test_predicate_tag_is_not_a_facet(self):
        element = RawElement("node", 1, Point(7.6, 45.1), {"amenity": "restaurant", "cuisine": "pizza"})
        snapshot = build_snapshot([element], [RESTAURANTS], BBOX)
        assert snapshot.items[0].facets == {"Cuisine": "PIZZA"}
        assert snapshot.items[0].category_id == "restaurants"

    def test_out_of_bbox_dropped(self):
        inside = RawElement("node", 1, Point(7.6, 45.1), {"amenity": "restaurant"})
        outside = RawElement("node", 2, Point(7.0, 45.1), {"amenity": "restaurant"})
        snapshot = build_snapshot([inside, outside], [RESTAURANTS], BBOX)
        assert [item.id for item in snapshot.items] == ["node/1"]

    def test_item_count_never_exceeds_element_count(self, restaurants):
        assert len(restaurants) <= 719

    def test_display_name_from_name_tag(self):
        element = RawElement("node", 1, Point(7.6, 45.1),
                             {"amenity": "restaurant", "name": "Da Mario"})
        snapshot = build_snapshot([element], [RESTAURANTS], BBOX)
        assert snapshot.items[0].display_name == "Da Mario"
        assert snapshot.items[0].facets["Name"] == "DA MARIO"


class TestSnapshotRoundTrip:
    def test_fixture_round_trips(self, restaurant_snapshot):
        assert read_snapshot(write_snapshot(restaurant_snapshot)) == restaurant_snapshot

    def test_empty_snapshot_round_trips(self):
        snapshot = DatasetSnapshot(
            snapshot_id="empty", bbox=BBOX,
            created=datetime(2020, 1, 1, tzinfo=timezone.utc), items=(),
        )
        assert read_snapshot(write_snapshot(snapshot)) == snapshot

    def test_truncated_file_errors_at_last_line(self, restaurant_snapshot):
        data = write_snapshot(restaurant_snapshot)
        truncated = data[: len(data) - 40]
        last_line = truncated.decode("utf-8").count("\n") + 1
        with pytest.raises(SnapshotFormatError, match=f"line {last_line}"):
            read_snapshot(truncated)

    def test_polygon_items_round_trip(self):
        item_geometry = Polygon(ring=(Point(7.60, 45.05), Point(7.61, 45.05), Point(7.61, 45.06)))
        element = RawElement("way", 9, item_geometry.ring, {"amenity": "restaurant"})
        snapshot = build_snapshot([element], [RESTAURANTS], BBOX)
        assert read_snapshot(write_snapshot(snapshot)) == snapshot


@given(
    order=st.permutations(["a", "b"]),
    tags=st.fixed_dictionaries({"amenity": st.sampled_from(["restaurant", "parking", "school"])}),
)
def test_config_order_only_matters_for_multi_matches(order, tags):
    # both categories share the predicate, so order decides; an element
    # matching neither stays uncategorized under every order
    categories = {
        "a": Category(id="a", label="A", color="#111111", icon="i", tag_key="amenity", tag_value="restaurant"),
        "b": Category(id="b", label="B", color="#222222", icon="i", tag_key="amenity", tag_value="parking"),
    }
    config = [categories[key] for key in order]
    element = RawElement("node", 1, Point(7.6, 45.1), dict(tags))
    result = assign_category(element, config)
    if tags["amenity"] == "school":
        assert result is None
    else:
        # exactly one predicate matches: permuting config cannot change it
        expected = "a" if tags["amenity"] == "restaurant" else "b"
        assert result.id == expected
