"""Multi-class composition of binary online classifiers.

One-vs-the-Rest keeps one binary classifier per class and predicts by
highest score; One-vs-One keeps one per unordered class pair, trains each
only on its two classes, and predicts by majority vote.  Score and vote
ties are broken uniformly at random with a caller-supplied generator so
runs stay reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import rulebase as rb
from .learner import DELTA, PASSIVE_AGGRESSIVE, OnlineBinaryClassifier, augment_bias

OVR = "ovr"
OVO = "ovo"

FUZZY = "fuzzy"
PA_LINEAR = "pa-linear"
DELTA_LINEAR = "delta"


class FuzzyRepresentation:
    """Features are the rule-membership vector of a shared rule base."""

    kind = "fuzzy"

    def __init__(self, rules: rb.RuleBase):
        self.rules = rules

    @property
    def num_features(self) -> int:
        return self.rules.num_rules

    def transform(self, x) -> np.ndarray:
        return self.rules.membership_vector(x)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "num_input_features": self.rules.num_features,
            "num_sets": self.rules.partition.num_sets,
            "mode": self.rules.mode,
            "feature_names": self.rules.feature_names,
        }

    @classmethod
    def from_dict(cls, state: dict) -> "FuzzyRepresentation":
        generate = {
            "full": rb.generate_full_grid,
            "dc": rb.generate_dc_limited,
        }.get(state["mode"])
        if generate is None:
            raise ValueError(f"cannot rebuild a {state['mode']!r} rule base")
        return cls(
            generate(
                state["num_input_features"],
                state["num_sets"],
                feature_names=state.get("feature_names"),
            )
        )


class LinearBiasRepresentation:
    """Features are the raw input with a constant bias component appended."""

    kind = "linear-bias"

    def __init__(self, num_input_features: int, feature_names: list[str] | None = None):
        if num_input_features < 1:
            raise ValueError(f"need at least 1 feature, got {num_input_features}")
        self.num_input_features = num_input_features
        self.feature_names = feature_names or [
            f"x{i + 1}" for i in range(num_input_features)
        ]

    @property
    def num_features(self) -> int:
        return self.num_input_features + 1

    def transform(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.num_input_features,):
            raise ValueError(
                f"expected a point of dimension {self.num_input_features}, "
                f"got shape {x.shape}"
            )
        return augment_bias(x)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "num_input_features": self.num_input_features,
            "feature_names": self.feature_names,
        }

    @classmethod
    def from_dict(cls, state: dict) -> "LinearBiasRepresentation":
        return cls(state["num_input_features"], state.get("feature_names"))


def _load_representation(state: dict):
    kinds = {
        FuzzyRepresentation.kind: FuzzyRepresentation,
        LinearBiasRepresentation.kind: LinearBiasRepresentation,
    }
    if state["kind"] not in kinds:
        raise ValueError(f"unknown representation kind {state['kind']!r}")
    return kinds[state["kind"]].from_dict(state)


class MulticlassModel:
    """OvR or OvO composition sharing one feature representation.

    Classes keep their first-appearance order; in OvO the lower-indexed
    class of a pair plays the +1 role of the underlying binary rule.
    """

    def __init__(
        self,
        scheme: str,
        classes: list,
        representation,
        update_rule: str = PASSIVE_AGGRESSIVE,
        learning_rate: float | None = None,
    ):
        if scheme not in (OVR, OVO):
            raise ValueError(f"unknown scheme {scheme!r}")
        if len(classes) < 2:
            raise ValueError("need at least 2 classes")
        if len(set(classes)) != len(classes):
            raise ValueError("class identifiers must be distinct")
        self.scheme = scheme
        self.classes = list(classes)
        self.representation = representation
        self.update_rule = update_rule
        self.learning_rate = learning_rate
        self._class_index = {c: i for i, c in enumerate(self.classes)}
        if scheme == OVR:
            self.pairs = None
            count = len(classes)
        else:
            self.pairs = list(combinations(range(len(classes)), 2))
            count = len(self.pairs)
        self.members = [
            OnlineBinaryClassifier(
                representation.num_features, rule=update_rule, learning_rate=learning_rate
            )
            for _ in range(count)
        ]

    def member_id(self, member_index: int) -> str:
        """Stable name for a member: f_<class> (OvR) or f_<a>_<b> (OvO)."""
        if self.scheme == OVR:
            return f"f_{self.classes[member_index]}"
        a, b = self.pairs[member_index]
        return f"f_{self.classes[a]}_{self.classes[b]}"

    def _index_of(self, y) -> int:
        try:
            return self._class_index[y]
        except KeyError:
            raise ValueError(f"unknown class {y!r}; known: {self.classes}") from None

    def train_step(self, x, y) -> None:
        """One online update with a labeled pattern.

        OvR updates every member (+1 for the member's class, -1 otherwise);
        OvO updates only the members whose pair contains ``y``.
        """
        yi = self._index_of(y)
        features = self.representation.transform(x)
        if self.scheme == OVR:
            for k, member in enumerate(self.members):
                member.update(features, 1 if k == yi else -1)
        else:
            for (a, b), member in zip(self.pairs, self.members):
                if yi == a:
                    member.update(features, 1)
                elif yi == b:
                    member.update(features, -1)

    def member_scores(self, x) -> np.ndarray:
        features = self.representation.transform(x)
        return np.array([m.score(features) for m in self.members])

    def tally_votes(self, x) -> dict:
        """OvO vote counts per class; each pair votes its sign's class."""
        if self.scheme != OVO:
            raise ValueError("vote tallies are only defined for the OvO scheme")
        counts = dict.fromkeys(self.classes, 0)
        scores = self.member_scores(x)
        for (a, b), score in zip(self.pairs, scores):
            winner = a if score >= 0.0 else b
            counts[self.classes[winner]] += 1
        return counts

    def predict(self, x, rng: np.random.Generator):
        """Class prediction; exact ties resolve uniformly at random."""
        if self.scheme == OVR:
            scores = self.member_scores(x)
            best = np.flatnonzero(scores == scores.max())
        else:
            counts = self.tally_votes(x)
            tally = np.array([counts[c] for c in self.classes])
            best = np.flatnonzero(tally == tally.max())
        if len(best) == 1:
            return self.classes[best[0]]
        return self.classes[rng.choice(best)]

    def scale_weights(self, factor: float) -> None:
        """Multiply every member's weights, e.g. for forgetting-style decay."""
        for member in self.members:
            member.weights *= factor

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "classes": self.classes,
            "representation": self.representation.to_dict(),
            "update_rule": self.update_rule,
            "learning_rate": self.learning_rate,
            "members": {
                self.member_id(i): m.to_dict() for i, m in enumerate(self.members)
            },
        }

    @classmethod
    def from_dict(cls, state: dict) -> "MulticlassModel":
        model = cls(
            state["scheme"],
            state["classes"],
            _load_representation(state["representation"]),
            update_rule=state.get("update_rule", PASSIVE_AGGRESSIVE),
            learning_rate=state.get("learning_rate"),
        )
        for i in range(len(model.members)):
            model.members[i] = OnlineBinaryClassifier.from_dict(
                state["members"][model.member_id(i)]
            )
        return model


@dataclass(frozen=True)
class ModelSpec:
    """A buildable model description: kind x scheme x partition settings.

    ``rule_mode`` "auto" uses the full grid for 2-D inputs and the
    DC-limited set otherwise.
    """

    model: str = FUZZY
    scheme: str = OVR
    num_sets: int = 3
    rule_mode: str = "auto"
    learning_rate: float | None = field(default=None)

    def __post_init__(self):
        if self.model not in (FUZZY, PA_LINEAR, DELTA_LINEAR):
            raise ValueError(f"unknown model kind {self.model!r}")
        if self.scheme not in (OVR, OVO):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.rule_mode not in ("auto", "full", "dc"):
            raise ValueError(f"unknown rule mode {self.rule_mode!r}")

    def name(self) -> str:
        return f"{self.model}({self.scheme})"

    def build(
        self,
        num_input_features: int,
        classes: list,
        feature_names: list[str] | None = None,
        learning_rate: float | None = None,
    ) -> MulticlassModel:
        if self.model == FUZZY:
            mode = self.rule_mode
            if mode == "auto":
                mode = "full" if num_input_features == 2 else "dc"
            generate = rb.generate_full_grid if mode == "full" else rb.generate_dc_limited
            representation = FuzzyRepresentation(
                generate(num_input_features, self.num_sets, feature_names=feature_names)
            )
        else:
            representation = LinearBiasRepresentation(num_input_features, feature_names)
        if self.model == DELTA_LINEAR:
            eta = learning_rate if learning_rate is not None else self.learning_rate
            if eta is None:
                raise ValueError("a delta model needs a learning rate to build")
            return MulticlassModel(
                self.scheme, classes, representation, update_rule=DELTA, learning_rate=eta
            )
        return MulticlassModel(self.scheme, classes, representation)
