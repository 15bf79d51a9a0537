from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzpa import (
    Antecedent,
    ResourceLimitError,
    RuleBase,
    dc_limited_count,
    generate_dc_limited,
    generate_full_grid,
)
from fuzzpa.membership import FuzzyPartition, triangular_membership


def enumerate_dc_limited(n: int, m: int) -> set[tuple]:
    """Brute-force oracle: every distinct antecedent with at most 2 non-DC axes."""
    rules = set()
    for terms in product([None] + list(range(m)), repeat=n):
        if sum(t is not None for t in terms) <= 2:
            rules.add(terms)
    return rules


class TestFullGrid:
    def test_two_by_two_matches_the_worked_table(self):
        rules = generate_full_grid(2, 2)
        assert rules.num_rules == 4
        assert [a.terms for a in rules.antecedents] == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_three_by_three_grid(self):
        assert generate_full_grid(2, 3).num_rules == 9

    def test_single_axis(self):
        assert generate_full_grid(1, 2).num_rules == 2

    def test_cap_names_the_offending_count(self):
        with pytest.raises(ResourceLimitError, match=str(3**13)):
            generate_full_grid(13, 3)

    def test_custom_cap(self):
        with pytest.raises(ResourceLimitError):
            generate_full_grid(2, 2, cap=3)

    def test_no_dc_terms(self):
        rules = generate_full_grid(3, 2)
        assert all(None not in a.terms for a in rules.antecedents)


class TestDcLimited:
    @pytest.mark.parametrize(
        "n, m, count", [(4, 3, 67), (1, 3, 4), (13, 3, 742), (10, 3, 436)]
    )
    def test_counts_match_the_closed_form(self, n, m, count):
        assert dc_limited_count(n, m) == count
        assert generate_dc_limited(n, m).num_rules == count

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("m", range(2, 6))
    def test_matches_brute_force_enumeration(self, n, m):
        rules = generate_dc_limited(n, m)
        generated = {a.terms for a in rules.antecedents}
        assert generated == enumerate_dc_limited(n, m)

    def test_ordering_all_dc_then_singles_then_pairs(self):
        rules = generate_dc_limited(2, 2)
        assert [a.terms for a in rules.antecedents] == [
            (None, None),
            (0, None),
            (1, None),
            (None, 0),
            (None, 1),
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
        ]

    def test_at_most_two_active_axes(self):
        rules = generate_dc_limited(5, 3)
        assert all(len(a.non_dc_axes()) <= 2 for a in rules.antecedents)


class TestMembershipVector:
    def test_worked_example_values(self):
        rules = generate_full_grid(2, 2)
        mu = rules.membership_vector([0.2, 0.4])
        assert mu == pytest.approx([0.48, 0.32, 0.12, 0.08], abs=1e-12)

    def test_all_dc_rule_is_one(self):
        rules = generate_dc_limited(3, 2)
        for x in ([0.0, 0.5, 1.0], [0.3, 0.3, 0.3]):
            assert rules.membership_vector(x)[0] == 1.0

    def test_dc_limited_against_hand_products(self):
        rules = generate_dc_limited(3, 2)
        x = [0.2, 0.4, 1.0]
        mu = rules.membership_vector(x)
        assert rules.num_rules == 19
        for j, antecedent in enumerate(rules.antecedents):
            expected = 1.0
            for axis, term in enumerate(antecedent.terms):
                if term is not None:
                    expected *= triangular_membership(x[axis], term, 2)
            assert mu[j] == pytest.approx(expected, abs=1e-12)

    def test_dimension_mismatch_rejected(self):
        rules = generate_full_grid(2, 2)
        with pytest.raises(ValueError):
            rules.membership_vector([0.2, 0.4, 0.6])

    def test_out_of_range_point_rejected(self):
        rules = generate_full_grid(2, 2)
        with pytest.raises(ValueError):
            rules.membership_vector([0.2, 1.4])

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1))
    def test_full_grid_sums_to_one(self, seed):
        rng = np.random.default_rng(seed)
        for n, m in ((2, 3), (3, 2), (4, 3)):
            rules = generate_full_grid(n, m)
            x = rng.uniform(0, 1, size=n)
            assert rules.membership_vector(x).sum() == pytest.approx(1.0, abs=1e-10)

    def test_permuting_antecedents_permutes_outputs(self):
        base = generate_full_grid(2, 3)
        perm = [4, 0, 8, 2, 6, 1, 5, 3, 7]
        shuffled = RuleBase(
            2,
            FuzzyPartition(3),
            [base.antecedents[j] for j in perm],
        )
        x = [0.3, 0.7]
        mu = base.membership_vector(x)
        assert np.allclose(shuffled.membership_vector(x), mu[perm])

    def test_dc_limited_norm_at_least_one(self):
        rules = generate_dc_limited(4, 3)
        rng = np.random.default_rng(7)
        for _ in range(20):
            mu = rules.membership_vector(rng.uniform(0, 1, size=4))
            assert mu @ mu >= 1.0


class TestRendering:
    def test_first_grid_rule(self):
        rules = generate_full_grid(2, 2)
        assert rules.describe_rule(0) == "If x1 is small and x2 is small"

    def test_all_dc_rule(self):
        rules = generate_dc_limited(2, 2)
        assert rules.describe_rule(0) == "If (always)"

    def test_single_clause_with_feature_names(self):
        names = ["sepal length", "sepal width", "petal length", "petal width"]
        rules = generate_dc_limited(4, 3, feature_names=names)
        target = Antecedent((None, None, None, 2))
        j = [a.terms for a in rules.antecedents].index(target.terms)
        assert rules.describe_rule(j) == "If petal width is large"

    def test_index_out_of_range(self):
        rules = generate_full_grid(2, 2)
        with pytest.raises(ValueError):
            rules.describe_rule(4)

    def test_grid_labels(self):
        rules = generate_full_grid(2, 3)
        labels = [rules.grid_label(j) for j in range(9)]
        assert labels == ["SS", "SM", "SL", "MS", "MM", "ML", "LS", "LM", "LL"]

    def test_grid_label_falls_back_beyond_two_axes(self):
        rules = generate_full_grid(3, 2)
        assert rules.grid_label(0) == rules.describe_rule(0)

    def test_duplicate_antecedents_rejected(self):
        with pytest.raises(ValueError):
            RuleBase(1, FuzzyPartition(2), [Antecedent((0,)), Antecedent((0,))])
