"""Ordinal cost algebra for safety-graded routing.

Street segments carry an ordered safety category (index 1 is best) and a
length in meters.  A route is scored by a vector with one component per
category: component i accumulates the length of every segment whose category
is i or worse, so component 1 is always the plain route length.  Detour
weights >= 1 stretch the contribution that unsafe segments make to the safer
components, which lets bounded detours over safer streets beat shorter but
less safe alternatives.  Pareto dominance over these vectors decides which
routes are worth keeping.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")

#: Absolute tolerance in meters below which two cost components count as equal.
#: Coordinate and float rounding noise at city scale sits far below this.
EPSILON_M = 1e-6

_BIKE_LABELS = ("separated cycleway", "cycleway", "quiet street", "busy street")
_BIKE_COLORS = ("darkgreen", "lightgreen", "orange", "red")


class DimensionError(ValueError):
    """Vector, weight, or scale dimensions do not match."""


class InvalidCategoryError(ValueError):
    """Category index lies outside the scale it is used with."""


def _ramp_colors(size: int) -> tuple[str, ...]:
    # Green-to-red hue sweep for scales without a hand-picked palette.  The
    # size itself is validated by CategoryScale, not here.
    colors = []
    for i in range(size):
        hue = (120.0 - 120.0 * i / max(size - 1, 1)) / 360.0
        r, g, b = colorsys.hsv_to_rgb(hue, 0.85, 0.80)
        colors.append(f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}")
    return tuple(colors)


@dataclass(frozen=True)
class CategoryScale:
    """Ordered safety categories; index 1 is the safest, ``size`` the worst."""

    size: int
    labels: tuple[str, ...]
    colors: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.size < 2:
            raise ValueError(f"a scale needs at least 2 categories, got {self.size}")
        if len(self.labels) != self.size or len(self.colors) != self.size:
            raise DimensionError(
                f"scale of size {self.size} needs {self.size} labels and colors, "
                f"got {len(self.labels)} labels and {len(self.colors)} colors"
            )

    @classmethod
    def of_size(
        cls,
        size: int,
        labels: Sequence[str] | None = None,
        colors: Sequence[str] | None = None,
    ) -> CategoryScale:
        """Scale with generated labels and colors where none are given."""
        if labels is None:
            labels = tuple(f"category {i}" for i in range(1, size + 1))
        if colors is None:
            colors = _BIKE_COLORS if size == 4 else _ramp_colors(size)
        return cls(size, tuple(labels), tuple(colors))

    @classmethod
    def default(cls) -> CategoryScale:
        """The four-step bicycle safety scale used by the ingest rules."""
        return cls(4, _BIKE_LABELS, _BIKE_COLORS)

    def category(self, index: int) -> Category:
        """Category ``index`` of this scale, validated against ``size``."""
        cat = Category(index)
        if index > self.size:
            raise InvalidCategoryError(f"category {index} exceeds scale size {self.size}")
        return cat

    def categories(self) -> Iterator[Category]:
        for index in range(1, self.size + 1):
            yield Category(index)


@dataclass(frozen=True, order=True)
class Category:
    """One step on a :class:`CategoryScale`; smaller index means safer."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise InvalidCategoryError(f"category index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class EdgeCost:
    """Length and safety category of a single street segment."""

    length_m: float
    category: Category

    def __post_init__(self) -> None:
        if not math.isfinite(self.length_m) or self.length_m <= 0.0:
            raise ValueError(f"edge length must be positive and finite, got {self.length_m}")


@dataclass(frozen=True)
class WeightVector:
    """Detour factors, one per boundary between neighbouring categories.

    Entry i says how many meters on category-i streets a detour may spend per
    meter saved on category-(i+1) streets.  All entries are >= 1; all ones
    reproduces the unweighted cost vector.
    """

    components: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(float(w) for w in self.components))
        if not self.components:
            raise DimensionError("a weight vector needs at least one entry")
        for w in self.components:
            if not math.isfinite(w) or w < 1.0:
                raise ValueError(f"detour weights must be finite and >= 1, got {w}")

    @classmethod
    def ones(cls, count: int) -> WeightVector:
        return cls((1.0,) * count)

    @classmethod
    def uniform(cls, value: float, count: int) -> WeightVector:
        return cls((float(value),) * count)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[float]:
        return iter(self.components)


@dataclass(frozen=True)
class CostVector:
    """Per-category cumulative cost of a route, in meters.

    Components never increase with the index: meters counted against
    category i+1 are also counted against category i.  Component 1 therefore
    equals the total length for unweighted costs.
    """

    components: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(float(c) for c in self.components))
        if not self.components:
            raise DimensionError("a cost vector needs at least one component")
        previous = math.inf
        for c in self.components:
            if not math.isfinite(c) or c < 0.0:
                raise ValueError(f"cost components must be finite and >= 0, got {c}")
            if c > previous:
                raise ValueError(
                    f"cost components must be non-increasing, got {self.components}"
                )
            previous = c

    @classmethod
    def zero(cls, size: int) -> CostVector:
        return cls((0.0,) * size)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[float]:
        return iter(self.components)

    def __getitem__(self, i: int) -> float:
        return self.components[i]


def category_indicator(category: Category, scale: CategoryScale) -> CostVector:
    """Indicator vector of a category: 1 for every component at or below it.

    An edge of category j counts its full length against components 1..j and
    nothing against the stricter components above j.
    """
    if category.index > scale.size:
        raise InvalidCategoryError(
            f"category {category.index} exceeds scale size {scale.size}"
        )
    return CostVector(
        tuple(1.0 if i <= category.index else 0.0 for i in range(1, scale.size + 1))
    )


def weighted_indicator(
    category: Category, weights: WeightVector, scale: CategoryScale
) -> CostVector:
    """Weighted indicator of a category under the given detour factors.

    Component i of an edge in category j carries the product of the detour
    factors between i and j (an empty product, so 1.0, at i = j) and 0 above
    j.  The products are accumulated from component j downwards so that each
    component is the previous one times a factor >= 1; that keeps the
    non-increasing component invariant exact even in float arithmetic, and the
    fixed evaluation order keeps results bit-reproducible.
    """
    if len(weights) != scale.size - 1:
        raise DimensionError(
            f"scale of size {scale.size} needs {scale.size - 1} weights, got {len(weights)}"
        )
    if category.index > scale.size:
        raise InvalidCategoryError(
            f"category {category.index} exceeds scale size {scale.size}"
        )
    components = [0.0] * scale.size
    components[category.index - 1] = 1.0
    running = 1.0
    for i in range(category.index - 1, 0, -1):
        running = weights.components[i - 1] * running
        components[i - 1] = running
    return CostVector(tuple(components))


def accumulate(
    edges: Iterable[EdgeCost], weights: WeightVector, scale: CategoryScale
) -> CostVector:
    """Weighted cost vector of an edge sequence; the empty sequence costs zero.

    Components are summed edge by edge in sequence order, matching the way
    the route search extends partial routes, so both sides agree bit for bit.
    """
    per_category: dict[int, CostVector] = {}
    totals = [0.0] * scale.size
    for edge in edges:
        indicator = per_category.get(edge.category.index)
        if indicator is None:
            indicator = weighted_indicator(edge.category, weights, scale)
            per_category[edge.category.index] = indicator
        for i, factor in enumerate(indicator.components):
            if factor:
                totals[i] += edge.length_m * factor
    return CostVector(tuple(totals))


def dominates_components(
    a: Sequence[float], b: Sequence[float], *, eps: float = EPSILON_M
) -> bool:
    """Dominance on raw component sequences, the hot-path core of :func:`dominates`."""
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    better_somewhere = False
    for x, y in zip(a, b):
        if x > y + eps:
            return False
        if x < y - eps:
            better_somewhere = True
    return better_somewhere


def close_components(
    a: Sequence[float], b: Sequence[float], *, eps: float = EPSILON_M
) -> bool:
    """True when every pair of components differs by at most ``eps``."""
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return all(abs(x - y) <= eps for x, y in zip(a, b))


def dominates(a: CostVector, b: CostVector, *, eps: float = EPSILON_M) -> bool:
    """True when ``a`` is at least as good everywhere and clearly better somewhere.

    "At least as good" tolerates ``eps`` of slack per component, "clearly
    better" requires more than ``eps`` of advantage.  The relation is
    irreflexive and antisymmetric; vectors within ``eps`` of each other never
    dominate one another.
    """
    return dominates_components(a.components, b.components, eps=eps)


def pareto_filter(
    entries: Iterable[tuple[CostVector, T]], *, eps: float = EPSILON_M
) -> list[tuple[CostVector, T]]:
    """Nondominated entries, in first-seen order.

    Entries dominated by any other entry are dropped; among entries whose
    vectors agree within ``eps`` only the first survives.  Quadratic in the
    number of entries, which is fine for the route-set sizes this serves.
    """
    pool = list(entries)
    kept: list[tuple[CostVector, T]] = []
    for i, (vector, payload) in enumerate(pool):
        dominated = any(
            j != i and dominates(other, vector, eps=eps)
            for j, (other, _) in enumerate(pool)
        )
        if dominated:
            continue
        if any(close_components(vector.components, k.components, eps=eps) for k, _ in kept):
            continue
        kept.append((vector, payload))
    return kept
