"""Cost algebra: golden vectors, dominance behavior and filter properties."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from saferoutes import (
    Category,
    CategoryScale,
    CostVector,
    DimensionError,
    EdgeCost,
    InvalidCategoryError,
    WeightVector,
    accumulate,
    dominates,
    category_indicator,
    weighted_indicator,
    pareto_filter,
)

SCALE2 = CategoryScale.of_size(2)
SCALE4 = CategoryScale.of_size(4)


class TestScaleAndTypes:
    def test_default_scale_is_four_steps(self):
        scale = CategoryScale.default()
        assert scale.size == 4
        assert scale.colors == ("darkgreen", "lightgreen", "orange", "red")
        assert len(scale.labels) == 4

    def test_generated_palette_matches_size(self):
        scale = CategoryScale.of_size(3)
        assert len(scale.colors) == 3
        assert all(c.startswith("#") for c in scale.colors)

    def test_scale_needs_matching_label_count(self):
        with pytest.raises(DimensionError):
            CategoryScale(3, ("a", "b"), ("x", "y", "z"))

    def test_scale_needs_two_categories(self):
        with pytest.raises(ValueError):
            CategoryScale.of_size(1)

    def test_category_index_starts_at_one(self):
        with pytest.raises(InvalidCategoryError):
            Category(0)

    def test_scale_rejects_category_beyond_size(self):
        with pytest.raises(InvalidCategoryError):
            SCALE2.category(3)

    def test_edge_cost_needs_positive_length(self):
        with pytest.raises(ValueError):
            EdgeCost(0.0, Category(1))

    def test_weights_must_be_at_least_one(self):
        with pytest.raises(ValueError):
            WeightVector((0.5,))

    def test_weights_need_an_entry(self):
        with pytest.raises(DimensionError):
            WeightVector(())

    def test_cost_vector_rejects_increasing_components(self):
        with pytest.raises(ValueError):
            CostVector((1.0, 2.0))

    def test_cost_vector_rejects_negative_components(self):
        with pytest.raises(ValueError):
            CostVector((1.0, -0.5))


class TestIndicators:
    def test_indicator_counts_category_and_better_components(self):
        assert category_indicator(Category(2), SCALE2).components == (1.0, 1.0)
        assert category_indicator(Category(1), SCALE4).components == (1.0, 0.0, 0.0, 0.0)

    def test_indicator_rejects_category_off_scale(self):
        with pytest.raises(InvalidCategoryError):
            category_indicator(Category(5), SCALE4)

    def test_weighted_indicator_products(self):
        # Worst category under weights (1.5, 2.5, 1.5): products of the
        # factors between each component and the category, 1 at the category.
        weights = WeightVector((1.5, 2.5, 1.5))
        vec = weighted_indicator(Category(4), weights, SCALE4)
        assert vec.components == (5.625, 3.75, 1.5, 1.0)

    def test_weighted_indicator_two_categories(self):
        vec = weighted_indicator(Category(2), WeightVector((2.3,)), SCALE2)
        assert vec.components == (2.3, 1.0)

    def test_weighted_indicator_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            weighted_indicator(Category(1), WeightVector((2.0,)), SCALE4)

    @given(size=st.integers(2, 6), index=st.integers(1, 6))
    def test_all_ones_reduces_to_plain_indicator(self, size, index):
        if index > size:
            return
        scale = CategoryScale.of_size(size)
        weights = WeightVector.ones(size - 1)
        assert (
            weighted_indicator(Category(index), weights, scale).components
            == category_indicator(Category(index), scale).components
        )

    @given(
        size=st.integers(2, 6),
        index=st.integers(1, 6),
        raw=st.lists(st.floats(1.0, 10.0, allow_nan=False), min_size=5, max_size=5),
    )
    def test_weighted_indicator_dominates_plain_componentwise(self, size, index, raw):
        if index > size:
            return
        scale = CategoryScale.of_size(size)
        weights = WeightVector(tuple(raw[: size - 1]))
        weighted = weighted_indicator(Category(index), weights, scale)
        plain = category_indicator(Category(index), scale)
        assert all(w >= p for w, p in zip(weighted, plain))


class TestAccumulate:
    def test_empty_sequence_costs_zero(self):
        assert accumulate([], WeightVector.ones(1), SCALE2).components == (0.0, 0.0)

    def test_single_edge(self):
        vec = accumulate(
            [EdgeCost(100.0, Category(2))], WeightVector.ones(1), SCALE2
        )
        assert vec.components == (100.0, 100.0)

    def test_two_route_fixture_unweighted(self):
        # 6 km on the best category plus 1 km on the second, against a plain
        # 8 km on the best: incomparable without detour weights.
        mixed = [EdgeCost(6000.0, Category(1)), EdgeCost(1000.0, Category(2))]
        plain = [EdgeCost(8000.0, Category(1))]
        ones = WeightVector.ones(1)
        mixed_vec = accumulate(mixed, ones, SCALE2)
        plain_vec = accumulate(plain, ones, SCALE2)
        assert mixed_vec.components == pytest.approx((7000.0, 1000.0), rel=1e-9)
        assert plain_vec.components == pytest.approx((8000.0, 0.0), rel=1e-9)
        assert not dominates(mixed_vec, plain_vec)
        assert not dominates(plain_vec, mixed_vec)

    def test_two_route_fixture_weighted(self):
        # A detour factor of 2.3 stretches the unsafe kilometer enough that
        # the plain route dominates.
        mixed = [EdgeCost(6000.0, Category(1)), EdgeCost(1000.0, Category(2))]
        plain = [EdgeCost(8000.0, Category(1))]
        weights = WeightVector((2.3,))
        mixed_vec = accumulate(mixed, weights, SCALE2)
        plain_vec = accumulate(plain, weights, SCALE2)
        assert mixed_vec.components == pytest.approx((8300.0, 1000.0), rel=1e-9)
        assert plain_vec.components == pytest.approx((8000.0, 0.0), rel=1e-9)
        assert dominates(plain_vec, mixed_vec)
        assert not dominates(mixed_vec, plain_vec)

    @given(
        st.lists(
            st.tuples(st.floats(0.1, 10_000.0), st.integers(1, 4)),
            min_size=0,
            max_size=20,
        ),
        st.lists(st.floats(1.0, 8.0), min_size=3, max_size=3),
    )
    def test_components_never_increase_along_the_scale(self, rows, weights):
        edges = [EdgeCost(length, Category(cat)) for length, cat in rows]
        vec = accumulate(edges, WeightVector(tuple(weights)), SCALE4)
        assert all(a >= b for a, b in zip(vec, vec.components[1:]))


def _monotone_vectors(size: int):
    return st.lists(
        st.integers(0, 500), min_size=size, max_size=size
    ).map(
        lambda deltas: CostVector(
            tuple(float(sum(deltas[i:])) for i in range(len(deltas)))
        )
    )


class TestDominance:
    def test_strictly_better_everywhere(self):
        assert dominates(CostVector((5.0, 1.0)), CostVector((7.0, 2.0)))

    def test_needs_a_clear_advantage_somewhere(self):
        a = CostVector((5.0, 1.0))
        assert not dominates(a, CostVector((5.0, 1.0)))
        assert not dominates(a, CostVector((5.0 + 5e-7, 1.0)))

    def test_tolerates_epsilon_slack(self):
        # Worse by less than epsilon in one component still dominates when
        # clearly better in another.
        assert dominates(CostVector((5.0 + 5e-7, 1.0)), CostVector((5.0, 2.0)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            dominates(CostVector((1.0,)), CostVector((1.0, 0.0)))

    @given(_monotone_vectors(3))
    def test_irreflexive(self, vec):
        assert not dominates(vec, vec)

    @given(_monotone_vectors(3), _monotone_vectors(3))
    def test_antisymmetric(self, a, b):
        assert not (dominates(a, b) and dominates(b, a))


class TestParetoFilter:
    def test_drops_dominated_entries(self):
        entries = [
            (CostVector((5.0, 1.0)), "a"),
            (CostVector((7.0, 1.0)), "b"),
            (CostVector((7.0, 0.5)), "c"),
        ]
        kept = pareto_filter(entries)
        assert [payload for _, payload in kept] == ["a", "c"]

    def test_keeps_first_of_equal_vectors(self):
        entries = [
            (CostVector((5.0, 5.0)), "first"),
            (CostVector((5.0, 5.0)), "second"),
        ]
        kept = pareto_filter(entries)
        assert [payload for _, payload in kept] == ["first"]

    def test_empty_input(self):
        assert pareto_filter([]) == []

    @given(
        st.lists(
            st.lists(st.integers(0, 30), min_size=3, max_size=3),
            min_size=0,
            max_size=12,
        )
    )
    def test_output_mutually_nondominated_and_idempotent(self, raw):
        entries = [
            (CostVector(tuple(float(sum(deltas[i:])) for i in range(3))), n)
            for n, deltas in enumerate(raw)
        ]
        kept = pareto_filter(entries)
        for i, (a, _) in enumerate(kept):
            for j, (b, _) in enumerate(kept):
                if i != j:
                    assert not dominates(a, b)
        assert [vec.components for vec, _ in pareto_filter(kept)] == [
            vec.components for vec, _ in kept
        ]

    @given(
        st.lists(
            st.lists(st.integers(0, 30), min_size=3, max_size=3),
            min_size=0,
            max_size=10,
        ),
        st.randoms(use_true_random=False),
    )
    def test_kept_vectors_do_not_depend_on_input_order(self, raw, rng):
        entries = [
            (CostVector(tuple(float(sum(deltas[i:])) for i in range(3))), n)
            for n, deltas in enumerate(raw)
        ]
        shuffled = entries[:]
        rng.shuffle(shuffled)
        direct = sorted(vec.components for vec, _ in pareto_filter(entries))
        permuted = sorted(vec.components for vec, _ in pareto_filter(shuffled))
        assert direct == permuted
