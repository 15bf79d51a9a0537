"""Binary online classifiers over an arbitrary feature representation.

A classifier is a real weight vector scored by dot product against a
feature vector: rule memberships for the fuzzy classifier, bias-augmented
raw features for the linear baselines.  Two update rules are provided:
passive-aggressive (the minimal correction achieving margin 1 whenever the
margin constraint is violated) and the Widrow-Hoff delta rule.
"""

from __future__ import annotations

import numpy as np

PASSIVE_AGGRESSIVE = "passive-aggressive"
DELTA = "delta"

# Learning rates tried when selecting the delta rule's step size.
DELTA_RATE_GRID = (0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0)


def hinge_loss(features, y: int, weights) -> float:
    """max(0, 1 - y * (weights . features)); zero iff the margin holds."""
    features = np.asarray(features, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if features.shape != weights.shape:
        raise ValueError(
            f"feature length {features.shape} differs from weight length {weights.shape}"
        )
    margin = y * float(weights @ features)
    return 0.0 if margin >= 1.0 else 1.0 - margin


def augment_bias(x) -> np.ndarray:
    """Append a constant 1 as the last feature component."""
    x = np.asarray(x, dtype=float).ravel()
    return np.append(x, 1.0)


def _check_label(y: int) -> int:
    if y not in (1, -1):
        raise ValueError(f"binary label must be +1 or -1, got {y!r}")
    return y


class OnlineBinaryClassifier:
    """A weight vector plus its online update rule.

    Weights start at zero, so the first prediction lands on the tie
    convention (score 0 -> +1) and the first aggressive update steps by
    exactly loss / ||features||^2.
    """

    def __init__(
        self,
        num_features: int,
        rule: str = PASSIVE_AGGRESSIVE,
        learning_rate: float | None = None,
    ):
        if num_features < 1:
            raise ValueError(f"need at least 1 feature, got {num_features}")
        if rule not in (PASSIVE_AGGRESSIVE, DELTA):
            raise ValueError(f"unknown update rule {rule!r}")
        if rule == DELTA:
            if learning_rate is None:
                raise ValueError("the delta rule requires a learning rate")
            if learning_rate <= 0:
                raise ValueError(f"learning rate must be positive, got {learning_rate}")
        elif learning_rate is not None:
            raise ValueError("learning rate is only meaningful for the delta rule")
        self.weights = np.zeros(num_features)
        self.rule = rule
        self.learning_rate = learning_rate
        self.degenerate_updates = 0

    @property
    def num_features(self) -> int:
        return len(self.weights)

    def _check_features(self, features) -> np.ndarray:
        features = np.asarray(features, dtype=float)
        if features.shape != self.weights.shape:
            raise ValueError(
                f"feature length {features.shape} differs from "
                f"weight length {self.weights.shape}"
            )
        return features

    def score(self, features) -> float:
        return float(self.weights @ self._check_features(features))

    def predict(self, features) -> int:
        """+1 when the score is nonnegative (ties resolve to +1), else -1."""
        return 1 if self.score(features) >= 0.0 else -1

    def pa_update(self, features, y: int) -> None:
        """Passive-aggressive step: w += (loss / ||f||^2) * y * f.

        Passive when the margin is already >= 1.  An all-zero feature
        vector is skipped silently and counted in ``degenerate_updates``
        (it cannot occur with DC-limited rule memberships, whose all-DC
        entry is always 1).
        """
        features = self._check_features(features)
        _check_label(y)
        loss = hinge_loss(features, y, self.weights)
        if loss == 0.0:
            return
        squared_norm = float(features @ features)
        if squared_norm == 0.0:
            self.degenerate_updates += 1
            return
        self.weights += (loss / squared_norm) * y * features

    def delta_update(self, features, y: int, learning_rate: float | None = None) -> None:
        """Widrow-Hoff step: w += eta * (y - w . f) * f."""
        features = self._check_features(features)
        _check_label(y)
        eta = self.learning_rate if learning_rate is None else learning_rate
        if eta is None or eta <= 0:
            raise ValueError(f"learning rate must be positive, got {eta}")
        residual = y - float(self.weights @ features)
        self.weights += eta * residual * features

    def update(self, features, y: int) -> None:
        """Apply one step of this classifier's configured update rule."""
        if self.rule == PASSIVE_AGGRESSIVE:
            self.pa_update(features, y)
        else:
            self.delta_update(features, y)

    def to_dict(self) -> dict:
        state = {
            "rule": self.rule,
            "weights": self.weights.tolist(),
            "degenerate_updates": self.degenerate_updates,
        }
        if self.learning_rate is not None:
            state["learning_rate"] = self.learning_rate
        return state

    @classmethod
    def from_dict(cls, state: dict) -> "OnlineBinaryClassifier":
        weights = np.asarray(state["weights"], dtype=float)
        clf = cls(
            len(weights),
            rule=state["rule"],
            learning_rate=state.get("learning_rate"),
        )
        clf.weights = weights
        clf.degenerate_updates = int(state.get("degenerate_updates", 0))
        return clf
