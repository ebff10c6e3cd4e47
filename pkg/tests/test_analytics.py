import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetmap.analytics import (
    NavigationQualityParams,
    RankingConfig,
    ValueHistogram,
    build_histogram,
    build_widget_payload,
    entropy_bits,
    exploration_cost,
    mean_cardinality,
    navigation_quality,
    navigation_quality_components,
    rank_facets,
    render_comparison,
    render_report,
    facet_report,
)
from facetmap.geo import NOT_SPECIFIED

from helpers import entropy_by_direct_summation, make_item

# Strategy for histograms with at least one value.
count_dicts = st.dictionaries(
    keys=st.text(st.characters(codec="utf-8", categories=["L", "N"]), min_size=1, max_size=8),
    values=st.integers(min_value=1, max_value=1000),
    min_size=1,
    max_size=20,
)


def histogram(counts: dict[str, int], extra_unspecified: int = 0, key: str = "F") -> ValueHistogram:
    return ValueHistogram(
        facet_key=key, counts=counts, category_total=sum(counts.values()) + extra_unspecified
    )


class TestValueHistogram:
    def test_rejects_sentinel_key(self):
        with pytest.raises(ValueError):
            histogram({NOT_SPECIFIED: 3})

    def test_rejects_specified_above_total(self):
        with pytest.raises(ValueError):
            ValueHistogram(facet_key="F", counts={"A": 5}, category_total=4)

    def test_build_skips_sentinel_and_missing(self):
        items = [
            make_item("1", facets={"F": "A"}),
            make_item("2", facets={"F": NOT_SPECIFIED}),
            make_item("3", facets={}),
        ]
        h = build_histogram(items, "F")
        assert h.counts == {"A": 1}
        assert h.category_total == 3

    def test_build_requires_single_category(self):
        items = [make_item("1", category="a"), make_item("2", category="b")]
        with pytest.raises(ValueError):
            build_histogram(items, "F")

    def test_fixture_outdoor_seating(self, restaurants):
        h = build_histogram(restaurants, "Outdoor Seating")
        assert h.counts == {"NO": 59, "YES": 33}
        assert h.specified_count == 92
        assert h.category_total == 719

    def test_fixture_takeaway(self, restaurants):
        h = build_histogram(restaurants, "Takeaway")
        assert h.counts == {"YES": 62, "NO": 10, "ONLY": 4}
        assert h.specified_count == 76

    def test_unknown_facet_is_empty(self, restaurants):
        h = build_histogram(restaurants, "Bogus")
        assert h.counts == {} and h.specified_count == 0


class TestEntropy:
    def test_single_value_is_zero(self):
        assert entropy_bits(histogram({"A": 42})) == 0.0

    def test_empty_is_zero(self):
        assert entropy_bits(ValueHistogram(facet_key="F", counts={}, category_total=7)) == 0.0

    def test_uniform_two_values(self):
        assert entropy_bits(histogram({"A": 2, "B": 2})) == 1.0

    def test_three_to_one_split(self):
        # by hand: 2 - 0.75 * log2(3)
        expected = 2.0 - 0.75 * math.log2(3.0)
        assert entropy_bits(histogram({"A": 3, "B": 1})) == pytest.approx(expected, abs=1e-12)

    @given(counts=count_dicts)
    @settings(max_examples=150)
    def test_matches_direct_summation_oracle(self, counts):
        h = histogram(counts)
        assert entropy_bits(h) == pytest.approx(entropy_by_direct_summation(counts), rel=1e-9, abs=1e-12)

    @given(counts=count_dicts)
    @settings(max_examples=150)
    def test_bounded_by_log2_m(self, counts):
        h = histogram(counts)
        value = entropy_bits(h)
        assert 0.0 <= value <= math.log2(len(counts)) + 1e-9
        if len(set(counts.values())) == 1 and len(counts) > 1:
            assert value == pytest.approx(math.log2(len(counts)), abs=1e-9)


class TestMeanCardinalityAndCost:
    def test_mean_cardinality(self):
        assert mean_cardinality(histogram({"A": 3, "B": 1})) == 2.0

    def test_empty_facet_is_unusable(self):
        empty = ValueHistogram(facet_key="F", counts={}, category_total=7)
        with pytest.raises(ValueError):
            mean_cardinality(empty)
        with pytest.raises(ValueError):
            exploration_cost(empty)

    def test_cost_three_to_one(self):
        expected = (2.0 - 0.75 * math.log2(3.0)) / 2.0
        assert exploration_cost(histogram({"A": 3, "B": 1})) == pytest.approx(expected, abs=1e-12)

    def test_balanced_toy_cost(self):
        # 8 balanced values over 160 specified items: entropy 3, meanCard 20
        h = histogram({f"V{i}": 20 for i in range(8)}, extra_unspecified=559)
        assert exploration_cost(h) == pytest.approx(3.0 / 20.0, abs=1e-12)

    @given(counts=count_dicts, k=st.integers(min_value=2, max_value=9), extra=st.integers(0, 50))
    @settings(max_examples=150)
    def test_cost_scaling_relation(self, counts, k, extra):
        # scaling all counts and the category total by k keeps entropy,
        # multiplies mean cardinality by k, hence divides cost by k
        h = histogram(counts, extra_unspecified=extra)
        scaled = ValueHistogram(
            facet_key="F",
            counts={v: c * k for v, c in counts.items()},
            category_total=h.category_total * k,
        )
        assert entropy_bits(scaled) == pytest.approx(entropy_bits(h), rel=1e-12, abs=1e-12)
        assert mean_cardinality(scaled) == pytest.approx(k * mean_cardinality(h), rel=1e-12)
        assert exploration_cost(scaled) == pytest.approx(exploration_cost(h) / k, rel=1e-12, abs=1e-15)


class TestNavigationQuality:
    def test_components_three_to_one_full_coverage(self):
        parts = navigation_quality_components(histogram({"A": 3, "B": 1}))
        assert parts.balance == pytest.approx(0.75, abs=1e-12)
        assert parts.cardinality_metric == 1.0  # n = m = 2 hits the mu optimum
        assert parts.frequency == 1.0
        assert parts.quality == pytest.approx(0.75, abs=1e-12)

    def test_partial_coverage_counts_not_specified(self):
        h = histogram({"A": 3, "B": 1}, extra_unspecified=4)
        parts = navigation_quality_components(h)
        assert parts.frequency == 0.5
        assert parts.cardinality_metric == pytest.approx(math.exp(-1.0 / (2 * 4.9**2)), abs=1e-12)

    def test_not_specified_toggle(self):
        h = histogram({"A": 3, "B": 1}, extra_unspecified=4)
        params = NavigationQualityParams(count_not_specified_as_value=False)
        assert navigation_quality_components(h, params).cardinality_metric == 1.0

    def test_sigma_must_be_positive(self):
        with pytest.raises(ValueError):
            NavigationQualityParams(sigma=0.0)

    @given(counts=count_dicts, extra=st.integers(0, 100))
    @settings(max_examples=150)
    def test_balance_in_unit_interval(self, counts, extra):
        parts = navigation_quality_components(histogram(counts, extra_unspecified=extra))
        assert 0.0 <= parts.balance <= 1.0
        if len(set(counts.values())) == 1:  # includes the m = 1 case
            assert parts.balance == 1.0
        else:
            assert parts.balance < 1.0
        assert 0.0 <= parts.quality <= 1.0


class TestRankFacets:
    def test_excludes_below_min_coverage(self):
        # facet "Rare" specified in 2 of 100 items (2%), "Common" in 50
        items = [make_item(str(i), facets={"Common": "A" if i % 2 else "B"}) for i in range(98)]
        items += [make_item("98", facets={"Rare": "X", "Common": "A"}),
                  make_item("99", facets={"Rare": "Y", "Common": "B"})]
        ranked = rank_facets(items, RankingConfig(min_coverage=0.03))
        assert [s.facet_key for s in ranked] == ["Common"]

    def test_excludes_single_valued(self):
        items = [make_item(str(i), facets={"Level": "PRIMARY"}) for i in range(10)]
        assert rank_facets(items) == []

    def test_caps_at_max_facets(self):
        items = [
            make_item(str(i), facets={f"Facet{j:02d}": f"V{i % (j + 2)}" for j in range(15)})
            for i in range(40)
        ]
        ranked = rank_facets(items, RankingConfig(max_facets=12))
        assert len(ranked) == 12

    def test_deterministic_and_subsequence(self, restaurants):
        first = rank_facets(restaurants)
        second = rank_facets(restaurants)
        assert first == second
        all_keys = {f for item in restaurants for f in item.facets}
        assert all(s.facet_key in all_keys for s in first)

    def test_equal_cost_ties_break_by_key(self):
        # identical distributions on two facets: same cost, same coverage
        items = [
            make_item(str(i), facets={"B Facet": f"V{i % 2}", "A Facet": f"W{i % 2}"})
            for i in range(20)
        ]
        ranked = rank_facets(items)
        assert [s.facet_key for s in ranked] == ["A Facet", "B Facet"]

    def test_fixture_order_matches_cost_ranking(self, restaurants):
        ranked = rank_facets(restaurants)
        assert [s.facet_key for s in ranked] == [
            "Outdoor Seating", "Takeaway", "Ex1", "Cuisine", "Ex2", "Name",
        ]

    def test_empty_items(self):
        assert rank_facets([]) == []


class TestWidgetPayload:
    def test_cuisine_visible_and_tail(self, restaurants):
        cfg = RankingConfig(max_values_shown=8)
        ranking = rank_facets(restaurants, cfg)
        payload = build_widget_payload(restaurants, ranking, cfg)
        cuisine = next(f for f in payload.facets if f.facet_key == "Cuisine")
        visible = [(v.value, v.count) for v in cuisine.values]
        assert visible == [
            ("PIZZA", 111), ("ITALIAN", 74), ("REGIONAL", 37), ("CHINESE", 28),
            ("JAPANESE", 17), ("ITALIAN; PIZZA", 15), ("SUSHI", 11),
            ("ITALIAN; REGIONAL", 10),  # ties by value string: before PIZZA; ITALIAN
        ]
        assert cuisine.hidden_tail[0].value == "PIZZA; ITALIAN"
        assert cuisine.not_specified_count == 719 - 432
        assert len(cuisine.values) + len(cuisine.hidden_tail) == 86

    def test_takeaway_fits_entirely(self, restaurants):
        cfg = RankingConfig(max_values_shown=8)
        ranking = rank_facets(restaurants, cfg)
        payload = build_widget_payload(restaurants, ranking, cfg)
        takeaway = next(f for f in payload.facets if f.facet_key == "Takeaway")
        assert [(v.value, v.count) for v in takeaway.values] == [("YES", 62), ("NO", 10), ("ONLY", 4)]
        assert takeaway.hidden_tail == ()
        assert takeaway.not_specified_count == 643

    def test_exactly_max_values_has_empty_tail(self):
        items = [make_item(str(i), facets={"F": f"V{i % 3}"}) for i in range(9)]
        cfg = RankingConfig(max_values_shown=3)
        payload = build_widget_payload(items, rank_facets(items, cfg), cfg)
        assert len(payload.facets[0].values) == 3
        assert payload.facets[0].hidden_tail == ()

    @given(st.data())
    @settings(max_examples=60)
    def test_never_contains_zero_counts(self, data):
        values = [f"V{i}" for i in range(6)]
        n = data.draw(st.integers(1, 40))
        items = [
            make_item(str(i), facets={"F": data.draw(st.sampled_from(values), label=f"v{i}")})
            for i in range(n)
        ]
        payload = build_widget_payload(items, rank_facets(items, RankingConfig(min_coverage=0.0)), RankingConfig())
        for entry in payload.facets:
            assert all(v.count >= 1 for v in entry.values)
            assert all(v.count >= 1 for v in entry.hidden_tail)


class TestReports:
    def test_report_determinism(self, restaurants):
        rows = facet_report(restaurants)
        assert render_report(rows) == render_report(facet_report(restaurants))

    def test_csv_header(self, restaurants):
        out = render_report(facet_report(restaurants), fmt="csv")
        assert out.splitlines()[0] == (
            "facet,coverage,entropy,meanCard,explorationCost,balance,"
            "cardinalityMetric,frequency,navigationQuality"
        )

    def test_comparison_includes_complement(self, restaurants):
        out = render_comparison(facet_report(restaurants), fmt="csv")
        first_data_row = out.splitlines()[1].split(",")
        assert first_data_row[0] == "Outdoor Seating"
        assert first_data_row[1] == "0.0205"
        assert first_data_row[3] == "0.8924"
