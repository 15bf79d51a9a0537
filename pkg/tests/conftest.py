"""Shared fixtures: the iris CSV and a couple of toy datasets."""

from __future__ import annotations

import csv

import pytest
from sklearn.datasets import load_iris

from fuzzpa import load_csv


@pytest.fixture(scope="session")
def iris_path(tmp_path_factory):
    iris = load_iris()
    path = tmp_path_factory.mktemp("data") / "iris.csv"
    names = [n.replace(" (cm)", "") for n in iris.feature_names]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["species"])
        for row, target in zip(iris.data, iris.target):
            writer.writerow(list(row) + [iris.target_names[target]])
    return path


@pytest.fixture(scope="session")
def iris_dataset(iris_path):
    return load_csv(iris_path)


@pytest.fixture()
def toy_csv(tmp_path):
    """4 patterns, 2 classes, 2 features; enough for a k=2 CV smoke run."""
    path = tmp_path / "toy.csv"
    path.write_text(
        "a,b,label\n"
        "0.0,0.0,red\n"
        "0.1,0.2,red\n"
        "1.0,1.0,blue\n"
        "0.9,0.8,blue\n"
    )
    return path
