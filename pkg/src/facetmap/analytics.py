"""Per-facet statistics and exploration-cost ranking.

Crowdsourced tags are sparse and unbalanced: most facets cover few
items, and value distributions carry a long tail of singletons. The
ranking here is built for that shape of data:

* a facet's exploration cost is the entropy of its value distribution
  divided by the mean cardinality of its value subsets, so facets that
  split the results into a few large groups rank best;
* facets below a minimum coverage are dropped before any scoring;
* facets with a single value (cost 0) discriminate nothing and are
  dropped from ranking output.

A navigation-quality baseline (balance x cardinality metric x
frequency) is computed alongside for comparison reports.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .geo import NOT_SPECIFIED, GeoItem


@dataclass(frozen=True, slots=True)
class ValueHistogram:
    """Value counts of one facet over a category extension.

    ``counts`` maps each atomic value to the number of items carrying
    it; ``category_total`` is the size of the whole extension. Items
    lacking the facet are implied: their count is
    ``category_total - specified_count``. The NOT SPECIFIED sentinel is
    never a key.
    """

    facet_key: str
    counts: dict[str, int]
    category_total: int

    def __post_init__(self) -> None:
        if NOT_SPECIFIED in self.counts:
            raise ValueError(f"{NOT_SPECIFIED!r} cannot appear as a histogram key")
        if any(c <= 0 for c in self.counts.values()):
            raise ValueError("histogram counts must be positive")
        if self.specified_count > self.category_total:
            raise ValueError("specified_count exceeds category_total")

    @property
    def specified_count(self) -> int:
        return sum(self.counts.values())

    @property
    def value_count(self) -> int:
        """Number of distinct values, excluding NOT SPECIFIED."""
        return len(self.counts)

    @property
    def coverage(self) -> float:
        """Fraction of the extension in which the facet is specified."""
        if self.category_total == 0:
            return 0.0
        return self.specified_count / self.category_total


@dataclass(frozen=True, slots=True)
class NavigationQualityParams:
    """Parameters of the navigation-quality baseline metric."""

    mu: float = 2.0
    sigma: float = 4.9
    # Whether the implicit NOT SPECIFIED value counts toward the number
    # of distinct values when coverage is partial.
    count_not_specified_as_value: bool = True

    def __post_init__(self) -> None:
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")


@dataclass(frozen=True, slots=True)
class RankingConfig:
    min_coverage: float = 0.03
    max_facets: int = 12
    max_values_shown: int = 8

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_coverage <= 1.0:
            raise ValueError("min_coverage must be in [0, 1]")
        if self.max_facets < 1:
            raise ValueError("max_facets must be >= 1")
        if self.max_values_shown < 1:
            raise ValueError("max_values_shown must be >= 1")


@dataclass(frozen=True, slots=True)
class FacetStats:
    facet_key: str
    coverage: float
    entropy_bits: float
    mean_cardinality: float
    exploration_cost: float
    navigation_quality: float


@dataclass(frozen=True, slots=True)
class NavigationQualityBreakdown:
    balance: float
    cardinality_metric: float
    frequency: float
    quality: float


@dataclass(frozen=True, slots=True)
class ValueEntry:
    value: str
    count: int


@dataclass(frozen=True, slots=True)
class FacetEntry:
    facet_key: str
    values: tuple[ValueEntry, ...]
    hidden_tail: tuple[ValueEntry, ...]
    not_specified_count: int


@dataclass(frozen=True, slots=True)
class WidgetPayload:
    """Ranked facets with ordered, truncated value lists and counts."""

    category_id: str
    facets: tuple[FacetEntry, ...] = field(default_factory=tuple)


def build_histogram(items: list[GeoItem], facet_key: str) -> ValueHistogram:
    """Count the values of one facet over items of a single category."""
    if len({item.category_id for item in items}) > 1:
        raise ValueError("items must belong to a single category")
    counts: dict[str, int] = {}
    for item in items:
        value = item.facets.get(facet_key)
        if value is None or value == NOT_SPECIFIED:
            continue
        counts[value] = counts.get(value, 0) + 1
    return ValueHistogram(facet_key=facet_key, counts=counts, category_total=len(items))


def entropy_bits(h: ValueHistogram) -> float:
    """Entropy of the specified-value distribution, in bits.

    Probabilities are taken over specified items only, so the implicit
    NOT SPECIFIED share does not contribute. Zero when the facet is
    absent everywhere or single-valued.
    """
    n = h.specified_count
    if n == 0 or h.value_count <= 1:
        return 0.0
    return -sum((c / n) * math.log2(c / n) for c in h.counts.values())


def mean_cardinality(h: ValueHistogram) -> float:
    """Average number of items per distinct value, over specified items."""
    if h.value_count == 0:
        raise ValueError(f"facet {h.facet_key!r} has no specified values")
    return h.specified_count / h.value_count


def exploration_cost(h: ValueHistogram) -> float:
    """Cost of exploring the extension through this facet.

    Entropy divided by mean cardinality: many uneven values are
    penalized unless they identify large subsets; identifier-like
    facets (every value a singleton) get maximal cost.
    """
    return entropy_bits(h) / mean_cardinality(h)


def navigation_quality_components(
    h: ValueHistogram, params: NavigationQualityParams | None = None
) -> NavigationQualityBreakdown:
    """Balance, cardinality metric and frequency of the baseline measure.

    balance    1 - sum(|count - mean|) / (2 * specified); 1 iff the
               values split the specified items evenly.
    cardinality  exp(-(n - mu)^2 / (2 sigma^2)) where n is the number of
               distinct values, counting NOT SPECIFIED when coverage is
               partial (see params).
    frequency  specified / category_total.
    """
    params = params or NavigationQualityParams()
    m = h.value_count
    if m == 0:
        raise ValueError(f"facet {h.facet_key!r} has no specified values")
    n_specified = h.specified_count
    mean = n_specified / m
    balance = 1.0 - sum(abs(c - mean) for c in h.counts.values()) / (2.0 * n_specified)
    n = m + 1 if (h.coverage < 1.0 and params.count_not_specified_as_value) else m
    cardinality_metric = math.exp(-((n - params.mu) ** 2) / (2.0 * params.sigma**2))
    frequency = h.coverage
    return NavigationQualityBreakdown(
        balance=balance,
        cardinality_metric=cardinality_metric,
        frequency=frequency,
        quality=balance * cardinality_metric * frequency,
    )


def navigation_quality(h: ValueHistogram, params: NavigationQualityParams | None = None) -> float:
    return navigation_quality_components(h, params).quality


def facet_keys(items: list[GeoItem]) -> list[str]:
    """All facet keys present on at least one item, sorted."""
    keys: set[str] = set()
    for item in items:
        keys.update(item.facets)
    return sorted(keys)


def compute_facet_stats(
    items: list[GeoItem],
    facet_key: str,
    nav_params: NavigationQualityParams | None = None,
) -> FacetStats:
    h = build_histogram(items, facet_key)
    return FacetStats(
        facet_key=facet_key,
        coverage=h.coverage,
        entropy_bits=entropy_bits(h),
        mean_cardinality=mean_cardinality(h),
        exploration_cost=exploration_cost(h),
        navigation_quality=navigation_quality(h, nav_params),
    )


def rank_facets(
    items: list[GeoItem],
    cfg: RankingConfig | None = None,
    nav_params: NavigationQualityParams | None = None,
) -> list[FacetStats]:
    """Rank the facets of a category extension by ascending cost.

    Facets under the coverage threshold and single-valued facets
    (cost 0) are excluded; the rest are sorted by cost ascending, ties
    broken by coverage descending then facet key, and capped at
    ``max_facets``.
    """
    cfg = cfg or RankingConfig()
    ranked = []
    for key in facet_keys(items):
        h = build_histogram(items, key)
        if h.coverage < cfg.min_coverage:
            continue
        cost = exploration_cost(h)
        if cost == 0.0:
            continue
        ranked.append(
            FacetStats(
                facet_key=key,
                coverage=h.coverage,
                entropy_bits=entropy_bits(h),
                mean_cardinality=mean_cardinality(h),
                exploration_cost=cost,
                navigation_quality=navigation_quality(h, nav_params),
            )
        )
    ranked.sort(key=lambda s: (s.exploration_cost, -s.coverage, s.facet_key))
    return ranked[: cfg.max_facets]


def build_widget_payload(
    items: list[GeoItem],
    ranking: list[FacetStats],
    cfg: RankingConfig | None = None,
    *,
    category_id: str | None = None,
) -> WidgetPayload:
    """Assemble the widget data for a ranked facet list.

    Per facet, values sort by count descending (ties by value string);
    the first ``max_values_shown`` stay visible and the tail is kept
    separately for on-demand display. Values with zero items never
    appear.
    """
    cfg = cfg or RankingConfig()
    if category_id is None:
        category_id = items[0].category_id if items else ""
    entries = []
    for stats in ranking:
        h = build_histogram(items, stats.facet_key)
        ordered = [
            ValueEntry(value=v, count=c)
            for v, c in sorted(h.counts.items(), key=lambda vc: (-vc[1], vc[0]))
        ]
        entries.append(
            FacetEntry(
                facet_key=stats.facet_key,
                values=tuple(ordered[: cfg.max_values_shown]),
                hidden_tail=tuple(ordered[cfg.max_values_shown :]),
                not_specified_count=h.category_total - h.specified_count,
            )
        )
    return WidgetPayload(category_id=category_id, facets=tuple(entries))


# -- analysis reports --------------------------------------------------------

REPORT_COLUMNS = (
    "facet",
    "coverage",
    "entropy",
    "meanCard",
    "explorationCost",
    "balance",
    "cardinalityMetric",
    "frequency",
    "navigationQuality",
)

COMPARISON_COLUMNS = (
    "facet",
    "explorationCost",
    "navigationQuality",
    "complementNavigationQuality",
)


@dataclass(frozen=True, slots=True)
class FacetReportRow:
    facet_key: str
    coverage: float
    entropy_bits: float
    mean_cardinality: float
    exploration_cost: float
    balance: float
    cardinality_metric: float
    frequency: float
    navigation_quality: float


def facet_report(
    items: list[GeoItem],
    cfg: RankingConfig | None = None,
    nav_params: NavigationQualityParams | None = None,
) -> list[FacetReportRow]:
    """One report row per ranked facet, in ranking order."""
    rows = []
    for stats in rank_facets(items, cfg, nav_params):
        h = build_histogram(items, stats.facet_key)
        parts = navigation_quality_components(h, nav_params)
        rows.append(
            FacetReportRow(
                facet_key=stats.facet_key,
                coverage=stats.coverage,
                entropy_bits=stats.entropy_bits,
                mean_cardinality=stats.mean_cardinality,
                exploration_cost=stats.exploration_cost,
                balance=parts.balance,
                cardinality_metric=parts.cardinality_metric,
                frequency=parts.frequency,
                navigation_quality=parts.quality,
            )
        )
    return rows


def format_metric(x: float) -> str:
    """Fixed 4 decimals, switching to scientific for tiny nonzero values."""
    if x != 0.0 and abs(x) < 5e-5:
        return f"{x:.2E}"
    return f"{x:.4f}"


def render_report(rows: list[FacetReportRow], fmt: str = "markdown") -> str:
    cells = [
        (
            row.facet_key,
            format_metric(row.coverage),
            format_metric(row.entropy_bits),
            format_metric(row.mean_cardinality),
            format_metric(row.exploration_cost),
            format_metric(row.balance),
            format_metric(row.cardinality_metric),
            format_metric(row.frequency),
            format_metric(row.navigation_quality),
        )
        for row in rows
    ]
    return _render_table(REPORT_COLUMNS, cells, fmt)


def render_comparison(rows: list[FacetReportRow], fmt: str = "markdown") -> str:
    cells = [
        (
            row.facet_key,
            format_metric(row.exploration_cost),
            format_metric(row.navigation_quality),
            format_metric(1.0 - row.navigation_quality),
        )
        for row in rows
    ]
    return _render_table(COMPARISON_COLUMNS, cells, fmt)


def _render_table(columns: tuple[str, ...], cells: list[tuple[str, ...]], fmt: str) -> str:
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return out.getvalue()
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max(len(columns[i]), *(len(r[i]) for r in cells)) if cells else len(columns[i]) for i in range(len(columns))]
    header = "| " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)) + " |"
    rule = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
    body = ["| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |" for row in cells]
    return "\n".join([header, rule, *body]) + "\n"
