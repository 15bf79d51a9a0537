"""Dataset ingestion and the one-epoch online cross-validation protocol.

Datasets arrive as CSV (header row, label in the last column), are min-max
normalized to the unit hypercube, and are evaluated by stratified k-fold
cross-validation: per fold, a fresh model sees each training pattern
exactly once in a seeded shuffle order and is scored on the held-out fold.
All randomness derives from one master seed so results are reproducible
and independent of fold-level parallelism.
"""

from __future__ import annotations

import csv
import time
import urllib.error
import urllib.parse
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    FeatureParseError,
    RaggedRowError,
    SingleClassError,
)
from .learner import DELTA_RATE_GRID
from .multiclass import DELTA_LINEAR, ModelSpec, MulticlassModel

# Fraction of the training fold held out when selecting the delta rule's
# learning rate.
RATE_SELECTION_FRACTION = 0.2


@dataclass(frozen=True)
class LabeledPattern:
    features: np.ndarray
    label: object


@dataclass
class Dataset:
    """Feature matrix plus labels; classes keep first-appearance order."""

    X: np.ndarray
    labels: list
    feature_names: list[str]
    classes: list = field(default_factory=list)
    name: str = "dataset"

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        if self.X.ndim != 2:
            raise ValueError("feature matrix must be 2-dimensional")
        if len(self.labels) != self.X.shape[0]:
            raise ValueError("label count differs from pattern count")
        if len(self.feature_names) != self.X.shape[1]:
            raise ValueError("feature name count differs from dimensionality")
        if not self.classes:
            self.classes = list(dict.fromkeys(self.labels))

    @property
    def num_patterns(self) -> int:
        return self.X.shape[0]

    @property
    def num_features(self) -> int:
        return self.X.shape[1]

    def pattern(self, i: int) -> LabeledPattern:
        return LabeledPattern(self.X[i], self.labels[i])


def load_csv(path) -> Dataset:
    """Load a UTF-8 CSV with a header row and the class label last.

    Feature columns must parse as reals; parse failures report the 1-based
    file row and the offending column.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise RaggedRowError(f"{path}: file is empty, expected a header row") from None
        if len(header) < 2:
            raise RaggedRowError(
                f"{path}: header has {len(header)} columns, need at least one "
                "feature column plus the label column"
            )
        feature_names = [name.strip() for name in header[:-1]]
        rows = []
        labels = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise RaggedRowError(
                    f"{path}: row {line_no} has {len(row)} columns, expected {len(header)}"
                )
            values = []
            for col, cell in zip(feature_names, row[:-1]):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise FeatureParseError(
                        f"{path}: row {line_no}, column {col!r}: "
                        f"{cell!r} is not a number"
                    ) from None
            rows.append(values)
            labels.append(row[-1].strip())
    classes = list(dict.fromkeys(labels))
    if len(classes) < 2:
        raise SingleClassError(
            f"{path}: label column contains {len(classes)} class(es), need at least 2"
        )
    X = np.array(rows, dtype=float)
    return Dataset(X, labels, feature_names, classes, name=path.stem)


def minmax_normalize(ds: Dataset) -> Dataset:
    """Map each feature to [0, 1] over the whole dataset; constant features to 0."""
    mins = ds.X.min(axis=0)
    maxs = ds.X.max(axis=0)
    return Dataset(
        _apply_minmax(ds.X, mins, maxs),
        list(ds.labels),
        list(ds.feature_names),
        list(ds.classes),
        name=ds.name,
    )


def _apply_minmax(X: np.ndarray, mins, maxs, clamp: bool = False) -> np.ndarray:
    span = maxs - mins
    safe = np.where(span == 0, 1.0, span)
    out = (X - mins) / safe
    out[:, span == 0] = 0.0
    if clamp:
        out = np.clip(out, 0.0, 1.0)
    return out


@dataclass(frozen=True)
class FoldSplit:
    """k disjoint index sets covering a dataset."""

    folds: tuple

    @property
    def k(self) -> int:
        return len(self.folds)

    def test_indices(self, fold: int) -> np.ndarray:
        return self.folds[fold]

    def train_indices(self, fold: int) -> np.ndarray:
        return np.concatenate([f for i, f in enumerate(self.folds) if i != fold])


def stratified_kfold(ds: Dataset, k: int, seed: int) -> FoldSplit:
    """Per-class seeded shuffle followed by round-robin fold assignment.

    Every fold's class counts differ from the proportional share by less
    than one pattern.
    """
    if k < 2:
        raise ValueError(f"need at least 2 folds, got {k}")
    rng = np.random.default_rng(np.random.SeedSequence([_check_seed(seed), 0]))
    labels = np.array(ds.labels, dtype=object)
    assigned = [[] for _ in range(k)]
    for cls in ds.classes:
        members = np.flatnonzero(labels == cls)
        if len(members) < k:
            raise ConfigError(
                f"class {cls!r} has only {len(members)} patterns, "
                f"fewer than the {k} folds requested"
            )
        members = rng.permutation(members)
        for i, idx in enumerate(members):
            assigned[i % k].append(idx)
    folds = tuple(np.sort(np.array(f, dtype=np.intp)) for f in assigned)
    return FoldSplit(folds)


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed!r}")
    return int(seed)


@dataclass
class CVResult:
    """Per-fold accuracies and timings of one cross-validated run."""

    model: str
    dataset: str
    k: int
    seed: int
    fold_accuracies: list[float]
    fold_times_s: list[float]
    wall_time_s: float
    learning_rates: list[float] | None = None

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def std_accuracy(self) -> float:
        # Population standard deviation, matching mean +/- std style reporting.
        return float(np.std(self.fold_accuracies))

    def summary(self) -> str:
        return (
            f"{self.model} on {self.dataset}: "
            f"{100 * self.mean_accuracy:.2f} +/- {100 * self.std_accuracy:.2f} % "
            f"({self.wall_time_s:.2f} s)"
        )


def _train_one_epoch(model: MulticlassModel, ds: Dataset, order) -> None:
    for i in order:
        model.train_step(ds.X[i], ds.labels[i])


def _stratified_order(ds: Dataset, indices, rng) -> np.ndarray:
    """Shuffle within each class, then interleave the classes round-robin.

    A single-epoch online learner keeps whatever its last few updates left
    behind, so a uniform shuffle makes the final weights hostage to the
    class mix at the tail of the stream. Presenting the classes in rotation
    removes that bias while staying seeded and pattern-unique.
    """
    groups = []
    for cls in ds.classes:
        members = [i for i in indices if ds.labels[i] == cls]
        if members:
            groups.append(rng.permutation(members))
    order = []
    for j in range(max(len(g) for g in groups)):
        for g in groups:
            if j < len(g):
                order.append(g[j])
    return np.asarray(order)


def _evaluate(model: MulticlassModel, ds: Dataset, indices, rng) -> float:
    correct = sum(
        1 for i in indices if model.predict(ds.X[i], rng) == ds.labels[i]
    )
    return correct / len(indices)


def _select_delta_rate(
    spec: ModelSpec, ds: Dataset, train_idx, rng
) -> float:
    """Pick the delta learning rate on a held-out tail of the training fold.

    Each candidate rate trains a throwaway model for one epoch on the
    remaining patterns and is scored on the held-out part; ties go to the
    smallest rate.
    """
    order = _stratified_order(ds, train_idx, rng)
    held_out = max(1, int(round(RATE_SELECTION_FRACTION * len(order))))
    fit_part, val_part = order[:-held_out], order[-held_out:]
    if len(fit_part) == 0:
        fit_part, val_part = order, order
    best_rate, best_acc = None, -1.0
    for rate in DELTA_RATE_GRID:
        candidate = spec.build(
            ds.num_features, ds.classes, ds.feature_names, learning_rate=rate
        )
        _train_one_epoch(candidate, ds, fit_part)
        acc = _evaluate(candidate, ds, val_part, rng)
        if acc > best_acc:
            best_rate, best_acc = rate, acc
    return best_rate


def _run_fold(
    ds: Dataset,
    split: FoldSplit,
    spec: ModelSpec,
    fold: int,
    seed: int,
    fold_local_norm: bool,
):
    start = time.perf_counter()
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1, fold]))
    train_idx = split.train_indices(fold)
    test_idx = split.test_indices(fold)

    if fold_local_norm:
        mins = ds.X[train_idx].min(axis=0)
        maxs = ds.X[train_idx].max(axis=0)
        ds = Dataset(
            _apply_minmax(ds.X, mins, maxs, clamp=True),
            ds.labels,
            ds.feature_names,
            ds.classes,
            name=ds.name,
        )

    rate = spec.learning_rate
    if spec.model == DELTA_LINEAR and rate is None:
        rate = _select_delta_rate(spec, ds, train_idx, rng)

    model = spec.build(ds.num_features, ds.classes, ds.feature_names, learning_rate=rate)
    _train_one_epoch(model, ds, _stratified_order(ds, train_idx, rng))
    accuracy = _evaluate(model, ds, test_idx, rng)
    return accuracy, time.perf_counter() - start, rate


def run_cv(
    ds: Dataset,
    spec: ModelSpec,
    k: int = 10,
    seed: int = 0,
    jobs: int = 1,
    fold_local_norm: bool = False,
) -> CVResult:
    """Stratified k-fold accuracy of one model specification.

    By default the whole dataset is normalized up front (the protocol this
    reproduces); ``fold_local_norm`` instead fits the normalization on each
    training fold and clamps the held-out fold into [0, 1].  Fold results
    are identical for any ``jobs`` value because every fold derives its own
    generator from (seed, fold index).
    """
    seed = _check_seed(seed)
    start = time.perf_counter()
    if not fold_local_norm:
        ds = minmax_normalize(ds)
    split = stratified_kfold(ds, k, seed)
    args = [(ds, split, spec, fold, seed, fold_local_norm) for fold in range(k)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda a: _run_fold(*a), args))
    else:
        outcomes = [_run_fold(*a) for a in args]
    accuracies = [acc for acc, _, _ in outcomes]
    times = [t for _, t, _ in outcomes]
    rates = [r for _, _, r in outcomes]
    return CVResult(
        model=spec.name(),
        dataset=ds.name,
        k=k,
        seed=seed,
        fold_accuracies=accuracies,
        fold_times_s=times,
        wall_time_s=time.perf_counter() - start,
        learning_rates=rates if spec.model == DELTA_LINEAR else None,
    )


def train_full(
    ds: Dataset, spec: ModelSpec, seed: int = 0
) -> tuple[MulticlassModel, float | None]:
    """Normalize and train one model for one epoch over the whole dataset.

    Used to produce an inspectable model after a benchmark run; returns the
    model and, for delta models, the selected learning rate.
    """
    seed = _check_seed(seed)
    ds = minmax_normalize(ds)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
    indices = np.arange(ds.num_patterns)
    rate = spec.learning_rate
    if spec.model == DELTA_LINEAR and rate is None:
        rate = _select_delta_rate(spec, ds, indices, rng)
    model = spec.build(ds.num_features, ds.classes, ds.feature_names, learning_rate=rate)
    _train_one_epoch(model, ds, _stratified_order(ds, indices, rng))
    return model, rate


@dataclass(frozen=True)
class FetchResult:
    url: str
    path: Path | None
    error: str | None


def fetch_datasets(manifest_path, dest_dir) -> list[FetchResult]:
    """Download every URL listed in a plain-text manifest (one per line).

    Blank lines and ``#`` comments are skipped.  A failing entry is
    recorded with its error and never aborts the remaining downloads.
    """
    dest = Path(dest_dir)
    dest.mkdir(parents=True, exist_ok=True)
    results = []
    with open(manifest_path, encoding="utf-8") as handle:
        urls = [
            line.strip()
            for line in handle
            if line.strip() and not line.lstrip().startswith("#")
        ]
    for i, url in enumerate(urls):
        name = Path(urllib.parse.urlparse(url).path).name or f"entry-{i}"
        target = dest / name
        try:
            with urllib.request.urlopen(url) as response:
                target.write_bytes(response.read())
            results.append(FetchResult(url, target, None))
        except (urllib.error.URLError, OSError, ValueError) as exc:
            results.append(FetchResult(url, None, str(exc)))
    return results
