"""One-dimensional membership functions on the unit interval.

Each feature axis is covered by ``num_sets`` triangular fuzzy sets with
uniformly spaced peaks at ``k / (num_sets - 1)``, forming a Ruspini
partition (memberships sum to 1 everywhere).  A rectangular Don't-Care
set with constant membership 1 lets a rule ignore an axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Predefined linguistic names and their abbreviations for small partitions.
_LABELS = {
    2: ["small", "large"],
    3: ["small", "medium", "large"],
    4: ["small", "medium small", "medium large", "large"],
    5: ["small", "medium small", "medium", "medium large", "large"],
}
_ABBREVIATIONS = {
    2: ["S", "L"],
    3: ["S", "M", "L"],
    4: ["S", "MS", "ML", "L"],
    5: ["S", "MS", "M", "ML", "L"],
}

DC_LABEL = "don't care"


def triangular_membership(x: float, set_index: int, num_sets: int) -> float:
    """Membership of ``x`` in triangular set ``set_index`` of a partition.

    The set peaks at ``set_index / (num_sets - 1)`` with value 1 and falls
    linearly to 0 over a distance of ``1 / (num_sets - 1)``; edge sets are
    half-triangles.  ``x`` must already be normalized to [0, 1].
    """
    if num_sets < 2:
        raise ValueError(f"partition needs at least 2 sets, got {num_sets}")
    if not 0 <= set_index < num_sets:
        raise ValueError(f"set index {set_index} outside [0, {num_sets - 1}]")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"feature value {x!r} outside [0, 1]; normalize first")
    peak = set_index / (num_sets - 1)
    return max(0.0, 1.0 - abs(x - peak) * (num_sets - 1))


def dc_membership(x: float) -> float:
    """Don't-Care membership: constant 1 over the whole unit interval."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"feature value {x!r} outside [0, 1]; normalize first")
    return 1.0


def partition_labels(num_sets: int) -> list[str]:
    """Ordered linguistic names for the sets of a partition.

    Predefined names exist for 2..5 sets; larger partitions get generated
    ``set-k`` names.
    """
    if num_sets < 2:
        raise ValueError(f"partition needs at least 2 sets, got {num_sets}")
    if num_sets in _LABELS:
        return list(_LABELS[num_sets])
    return [f"set-{k}" for k in range(num_sets)]


def set_abbreviations(num_sets: int) -> list[str]:
    """Short per-set tags used to build compact 2-D grid rule labels."""
    if num_sets < 2:
        raise ValueError(f"partition needs at least 2 sets, got {num_sets}")
    if num_sets in _ABBREVIATIONS:
        return list(_ABBREVIATIONS[num_sets])
    return [str(k) for k in range(num_sets)]


@dataclass(frozen=True)
class FuzzyPartition:
    """A single axis's triangular sets: count, names, and evaluation."""

    num_sets: int
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.num_sets < 2:
            raise ValueError(f"partition needs at least 2 sets, got {self.num_sets}")
        if not self.labels:
            object.__setattr__(self, "labels", partition_labels(self.num_sets))
        if len(self.labels) != self.num_sets:
            raise ValueError(
                f"expected {self.num_sets} labels, got {len(self.labels)}"
            )
        if len(set(self.labels)) != self.num_sets:
            raise ValueError("partition labels must be distinct")

    def membership(self, x: float, set_index: int) -> float:
        return triangular_membership(x, set_index, self.num_sets)

    def peak(self, set_index: int) -> float:
        return set_index / (self.num_sets - 1)
