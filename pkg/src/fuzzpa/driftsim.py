"""Synthetic rotating-Gaussian streams and the prequential drift experiment.

Three class distributions sit on the unit square: two mirror-image means
on a diagonal through the center plus one fixed at the center.  Each step
emits a small batch of labeled samples, then every mean rotates one
increment counterclockwise about the center.  The experiment trains a
2-D full-grid fuzzy classifier test-then-train on that stream and logs,
per step and per binary classifier, which rule currently carries the
largest and smallest consequent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .datastream import LabeledPattern
from .multiclass import FUZZY, ModelSpec, MulticlassModel
from .rulebase import RuleBase
from .tracker import RuleTrace, record_step, trace_records


@dataclass(frozen=True)
class DriftConfig:
    """Rotating-Gaussian stream settings.

    ``sigma`` is the per-axis standard deviation of every class Gaussian.
    ``decay`` multiplies all consequents once per step; 1.0 disables the
    forgetting behavior.
    """

    means0: tuple
    sigma: float = 0.1
    center: tuple[float, float] = (0.5, 0.5)
    step_degrees: float = 1.0
    patterns_per_step: int = 10
    total_steps: int = 360
    seed: int = 0
    decay: float = 1.0

    def __post_init__(self):
        means = np.asarray(self.means0, dtype=float)
        if means.ndim != 2 or means.shape[1] != 2 or means.shape[0] < 2:
            raise ValueError("means0 must list at least two 2-D class means")
        if np.any(means < 0.0) or np.any(means > 1.0):
            raise ValueError("class means must lie inside the unit square")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError(f"decay must be in (0, 1], got {self.decay}")
        if self.patterns_per_step < 1 or self.total_steps < 1:
            raise ValueError("patterns_per_step and total_steps must be >= 1")
        object.__setattr__(self, "means0", tuple(map(tuple, means)))

    @property
    def num_classes(self) -> int:
        return len(self.means0)

    def to_dict(self) -> dict:
        return {
            "means0": [list(m) for m in self.means0],
            "sigma": self.sigma,
            "center": list(self.center),
            "step_degrees": self.step_degrees,
            "patterns_per_step": self.patterns_per_step,
            "total_steps": self.total_steps,
            "seed": self.seed,
            "decay": self.decay,
        }


def rotating_gaussians_preset(**overrides) -> DriftConfig:
    """The reference three-class setup: symmetric diagonal means at radius
    1/(2 sqrt 2) around (0.5, 0.5), sigma 0.1, one degree per step, ten
    patterns per step, a full 360-step revolution."""
    low = (2.0 - math.sqrt(2.0)) / 4.0
    high = (2.0 + math.sqrt(2.0)) / 4.0
    config = DriftConfig(means0=((low, low), (0.5, 0.5), (high, high)))
    return replace(config, **overrides) if overrides else config


@dataclass(frozen=True)
class DriftState:
    """Current class means and the step counter."""

    means: tuple
    t: int = 0

    @classmethod
    def initial(cls, config: DriftConfig) -> "DriftState":
        return cls(means=config.means0, t=0)


def rotate(state: DriftState, degrees: float, center) -> DriftState:
    """Rotate every class mean counterclockwise about ``center``."""
    theta = math.radians(degrees)
    rotation = np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )
    center = np.asarray(center, dtype=float)
    means = np.asarray(state.means, dtype=float)
    moved = (means - center) @ rotation.T + center
    return DriftState(means=tuple(map(tuple, moved)), t=state.t + 1)


def sample_batch(
    state: DriftState, config: DriftConfig, rng: np.random.Generator
) -> list[LabeledPattern]:
    """Draw one step's batch: uniform class choice, axis-aligned Gaussian
    features around the class's current mean, clamped into the unit square."""
    batch = []
    means = np.asarray(state.means, dtype=float)
    for _ in range(config.patterns_per_step):
        cls = int(rng.integers(config.num_classes))
        point = rng.normal(means[cls], config.sigma)
        batch.append(LabeledPattern(np.clip(point, 0.0, 1.0), cls + 1))
    return batch


@dataclass
class DriftReport:
    """Outcome of one prequential drift run."""

    scheme: str
    num_sets: int
    config: DriftConfig
    accuracy: float
    num_patterns: int
    traces: list[RuleTrace]
    rules: RuleBase = field(repr=False, default=None)
    model: MulticlassModel = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "num_sets": self.num_sets,
            "config": self.config.to_dict(),
            "prequential_accuracy": self.accuracy,
            "num_patterns": self.num_patterns,
            "traces": {
                trace.classifier_id: trace_records(trace, self.rules)
                for trace in self.traces
            },
        }


def run_drift_experiment(
    scheme: str,
    config: DriftConfig,
    num_sets: int = 3,
    seed: int | None = None,
) -> DriftReport:
    """Test-then-train a full-grid fuzzy model on the rotating stream.

    Per step: predict then train on each pattern of the batch, apply the
    optional consequent decay, record each binary classifier's extreme
    rules, and only then rotate the means.  Accuracy is prequential: every
    pattern is scored before the model sees its label.
    """
    if seed is None:
        seed = config.seed
    classes = list(range(1, config.num_classes + 1))
    spec = ModelSpec(model=FUZZY, scheme=scheme, num_sets=num_sets, rule_mode="full")
    model = spec.build(2, classes)
    rules = model.representation.rules
    traces = [RuleTrace(model.member_id(i)) for i in range(len(model.members))]

    rng_data = np.random.default_rng(np.random.SeedSequence([seed, 0]))
    rng_tie = np.random.default_rng(np.random.SeedSequence([seed, 1]))

    state = DriftState.initial(config)
    correct = 0
    total = 0
    for step in range(1, config.total_steps + 1):
        for pattern in sample_batch(state, config, rng_data):
            if model.predict(pattern.features, rng_tie) == pattern.label:
                correct += 1
            total += 1
            model.train_step(pattern.features, pattern.label)
        if config.decay < 1.0:
            model.scale_weights(config.decay)
        for member, trace in zip(model.members, traces):
            record_step(trace, step, member)
        state = rotate(state, config.step_degrees, config.center)

    return DriftReport(
        scheme=scheme,
        num_sets=num_sets,
        config=config,
        accuracy=correct / total,
        num_patterns=total,
        traces=traces,
        rules=rules,
        model=model,
    )
