"""Antecedent rule sets over a gridded input space.

A rule's antecedent assigns each feature axis either one triangular set of
the axis partition or Don't Care (DC).  Two generation modes exist: the
full grid of all set combinations, and a DC-limited set where at most two
axes carry a real fuzzy set (keeping rule counts polynomial in the
dimensionality).  Rule ordering is deterministic in both modes so that
learned consequent indices are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import ResourceLimitError
from .membership import DC_LABEL, FuzzyPartition, set_abbreviations

# Antecedent terms are per-axis set indices; DC is represented by None.
DC = None

FULL_GRID_CAP = 10**6


@dataclass(frozen=True)
class Antecedent:
    """Per-axis terms of one rule: a set index or ``None`` for Don't Care."""

    terms: tuple[int | None, ...]

    def non_dc_axes(self) -> list[int]:
        return [i for i, t in enumerate(self.terms) if t is not None]


def dc_limited_count(num_features: int, num_sets: int) -> int:
    """Closed-form rule count when at most two axes are non-DC."""
    n, m = num_features, num_sets
    return m * m * n * (n - 1) // 2 + m * n + 1


class RuleBase:
    """An ordered, immutable list of antecedents over one shared partition."""

    def __init__(
        self,
        num_features: int,
        partition: FuzzyPartition,
        antecedents: list[Antecedent],
        feature_names: list[str] | None = None,
        mode: str = "custom",
    ):
        if num_features < 1:
            raise ValueError(f"need at least 1 feature, got {num_features}")
        if feature_names is None:
            feature_names = [f"x{i + 1}" for i in range(num_features)]
        if len(feature_names) != num_features:
            raise ValueError(
                f"expected {num_features} feature names, got {len(feature_names)}"
            )
        seen = set()
        for a in antecedents:
            if len(a.terms) != num_features:
                raise ValueError("antecedent length differs from dimensionality")
            if a.terms in seen:
                raise ValueError(f"duplicate antecedent {a.terms}")
            seen.add(a.terms)

        self.num_features = num_features
        self.partition = partition
        self.antecedents = list(antecedents)
        self.feature_names = list(feature_names)
        self.mode = mode

        # Index matrix for vectorized evaluation: DC maps to the extra
        # column of the per-axis membership table, which is constant 1.
        m = partition.num_sets
        self._index = np.array(
            [[m if t is None else t for t in a.terms] for a in antecedents],
            dtype=np.intp,
        )
        self._axes = np.arange(num_features)

    @property
    def num_rules(self) -> int:
        return len(self.antecedents)

    def membership_vector(self, x) -> np.ndarray:
        """Product-conjunction membership of ``x`` in every rule.

        Entry ``j`` is the product over axes of the axis membership for
        rule ``j``'s term, with DC axes contributing a factor of 1.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.num_features,):
            raise ValueError(
                f"expected a point of dimension {self.num_features}, got shape {x.shape}"
            )
        if np.any(x < 0.0) or np.any(x > 1.0):
            raise ValueError("point has coordinates outside [0, 1]; normalize first")
        m = self.partition.num_sets
        peaks = np.arange(m) / (m - 1)
        table = np.empty((self.num_features, m + 1))
        table[:, :m] = np.maximum(0.0, 1.0 - np.abs(x[:, None] - peaks) * (m - 1))
        table[:, m] = 1.0
        return table[self._axes, self._index].prod(axis=1)

    def describe_rule(self, rule_index: int, feature_names: list[str] | None = None) -> str:
        """Linguistic rendering of one antecedent, DC axes omitted."""
        if not 0 <= rule_index < self.num_rules:
            raise ValueError(
                f"rule index {rule_index} outside [0, {self.num_rules - 1}]"
            )
        names = feature_names if feature_names is not None else self.feature_names
        if len(names) != self.num_features:
            raise ValueError(
                f"expected {self.num_features} feature names, got {len(names)}"
            )
        clauses = [
            f"{names[i]} is {self.partition.labels[t]}"
            for i, t in enumerate(self.antecedents[rule_index].terms)
            if t is not None
        ]
        if not clauses:
            return "If (always)"
        return "If " + " and ".join(clauses)

    def grid_label(self, rule_index: int) -> str:
        """Compact per-axis tag concatenation, e.g. ``MS`` for (medium, small).

        Only defined for 2-D rule bases with no DC terms and at most five
        sets per axis; other rule bases fall back to ``describe_rule``.
        """
        if not 0 <= rule_index < self.num_rules:
            raise ValueError(
                f"rule index {rule_index} outside [0, {self.num_rules - 1}]"
            )
        terms = self.antecedents[rule_index].terms
        if (
            self.num_features != 2
            or self.partition.num_sets > 5
            or any(t is None for t in terms)
        ):
            return self.describe_rule(rule_index)
        abbrev = set_abbreviations(self.partition.num_sets)
        return "".join(abbrev[t] for t in terms)

    def term_label(self, rule_index: int, axis: int) -> str:
        t = self.antecedents[rule_index].terms[axis]
        return DC_LABEL if t is None else self.partition.labels[t]


def generate_full_grid(
    num_features: int,
    num_sets: int,
    feature_names: list[str] | None = None,
    cap: int = FULL_GRID_CAP,
) -> RuleBase:
    """All set combinations, lexicographically ordered, no DC terms."""
    if num_features < 1:
        raise ValueError(f"need at least 1 feature, got {num_features}")
    partition = FuzzyPartition(num_sets)
    total = num_sets**num_features
    if total > cap:
        raise ResourceLimitError(
            f"full grid would contain {total} rules, above the cap of {cap}; "
            "use the DC-limited mode instead"
        )
    antecedents = [
        Antecedent(terms) for terms in product(range(num_sets), repeat=num_features)
    ]
    return RuleBase(num_features, partition, antecedents, feature_names, mode="full")


def generate_dc_limited(
    num_features: int,
    num_sets: int,
    feature_names: list[str] | None = None,
) -> RuleBase:
    """Antecedents with at most two non-DC axes.

    Ordering: the all-DC rule first, then single-set rules by axis and set,
    then two-set rules by axis pair and set pair.
    """
    if num_features < 1:
        raise ValueError(f"need at least 1 feature, got {num_features}")
    partition = FuzzyPartition(num_sets)
    n, m = num_features, num_sets
    antecedents = [Antecedent((DC,) * n)]
    for axis in range(n):
        for k in range(m):
            terms = [DC] * n
            terms[axis] = k
            antecedents.append(Antecedent(tuple(terms)))
    for axis_a, axis_b in combinations(range(n), 2):
        for k_a, k_b in product(range(m), repeat=2):
            terms = [DC] * n
            terms[axis_a] = k_a
            terms[axis_b] = k_b
            antecedents.append(Antecedent(tuple(terms)))
    assert len(antecedents) == dc_limited_count(n, m)
    return RuleBase(num_features, partition, antecedents, feature_names, mode="dc")
