"""Interpretability reporting over learned rule consequents.

The sign of a rule's consequent says which class it supports and its
magnitude how much influence it carries, so ranking rules by consequent
value surfaces the classifier's most representative rules, and logging
the per-step argmax/argmin rule shows which rules a classifier leans on
as a drifting stream evolves.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .learner import OnlineBinaryClassifier
from .rulebase import RuleBase

LARGEST = "largest"
SMALLEST = "smallest"


@dataclass(frozen=True)
class RankedRule:
    rule_index: int
    description: str
    consequent: float


@dataclass(frozen=True)
class RuleRanking:
    direction: str
    rules: list[RankedRule]


def top_rules(
    clf: OnlineBinaryClassifier,
    rules: RuleBase,
    k: int,
    direction: str = LARGEST,
) -> RuleRanking:
    """The k rules with the most extreme consequents, ties by rule index."""
    if k < 1:
        raise ValueError(f"need at least 1 rule, got k={k}")
    if direction not in (LARGEST, SMALLEST):
        raise ValueError(f"direction must be {LARGEST!r} or {SMALLEST!r}")
    if clf.num_features != rules.num_rules:
        raise ValueError(
            f"classifier has {clf.num_features} weights but the rule base "
            f"has {rules.num_rules} rules; not a fuzzy classifier over this base"
        )
    sign = -1.0 if direction == LARGEST else 1.0
    # Sorting (signed value, index) makes the index the deterministic tie-break.
    order = sorted(range(rules.num_rules), key=lambda j: (sign * clf.weights[j], j))
    picked = order[: min(k, rules.num_rules)]
    return RuleRanking(
        direction,
        [
            RankedRule(j, rules.describe_rule(j), float(clf.weights[j]))
            for j in picked
        ],
    )


@dataclass(frozen=True)
class TraceEntry:
    t: int
    argmax_rule: int
    argmin_rule: int
    max_consequent: float
    min_consequent: float


@dataclass
class RuleTrace:
    """Per-step argmax/argmin consequent log for one binary classifier."""

    classifier_id: str
    entries: list[TraceEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)


def record_step(trace: RuleTrace, t: int, clf: OnlineBinaryClassifier) -> None:
    """Append the current extreme-consequent rules; ties take the lowest index."""
    if trace.entries and t <= trace.entries[-1].t:
        raise ValueError(
            f"step {t} is not after the last recorded step {trace.entries[-1].t}"
        )
    argmax = int(np.argmax(clf.weights))
    argmin = int(np.argmin(clf.weights))
    trace.entries.append(
        TraceEntry(
            t,
            argmax,
            argmin,
            float(clf.weights[argmax]),
            float(clf.weights[argmin]),
        )
    )


def trace_records(trace: RuleTrace, rules: RuleBase) -> list[dict]:
    return [
        {
            "t": e.t,
            "argmax_label": rules.grid_label(e.argmax_rule),
            "argmin_label": rules.grid_label(e.argmin_rule),
            "max_c": e.max_consequent,
            "min_c": e.min_consequent,
        }
        for e in trace.entries
    ]


def emit_trace(trace: RuleTrace, rules: RuleBase, format: str, path) -> None:
    """Write a trace as CSV (columns t, argmax_label, argmin_label, max_c,
    min_c) or as the same records in JSON."""
    records = trace_records(trace, rules)
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(
                handle, fieldnames=["t", "argmax_label", "argmin_label", "max_c", "min_c"]
            )
            writer.writeheader()
            writer.writerows(records)
    elif format == "json":
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(
                {"classifier": trace.classifier_id, "steps": records},
                handle,
                indent=2,
                sort_keys=True,
            )
            handle.write("\n")
    else:
        raise ValueError(f"unknown trace format {format!r}")
