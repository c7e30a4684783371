import numpy as np
import pytest

from defectcost import Artifact, Defect, Prediction, Project, classify


@pytest.fixture
def project_e() -> Project:
    """Three files, two defects: d1 touches s1, d2 touches s1 and s2."""
    return Project(
        id="E",
        artifacts=(Artifact("s1", 100), Artifact("s2", 50), Artifact("s3", 10)),
        defects=(Defect("d1", frozenset({"s1"})), Defect("d2", frozenset({"s1", "s2"}))),
    )


@pytest.fixture
def prediction_e() -> Prediction:
    """Only s1 predicted defective."""
    return Prediction({"s1": 1, "s2": 0, "s3": 0})


@pytest.fixture
def outcome_e(project_e, prediction_e):
    return classify(project_e, prediction_e)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
