"""Bernoulli simulation of defect predictors over an accuracy grid.

A simulated predictor of a given expected accuracy runs one Bernoulli
experiment per artifact: with probability equal to the accuracy the artifact
keeps its true label, otherwise the label is flipped.  ``run_grid`` sweeps a
grid of accuracies and repetitions, evaluates every labeling under the
requested failure probabilities and cost-model kinds, and emits one record
per grid cell.

Determinism contract
--------------------
Labels are drawn from numpy's PCG64 generator.  The seed of each grid cell is
derived from the master seed and the cell's (accuracy index, repetition index)
by chaining the SplitMix64 finalizer:

    h = splitmix64(master_seed)
    h = splitmix64(h ^ accuracy_index)
    h = splitmix64(h ^ repetition_index)

so results are a pure function of the inputs, independent of evaluation order
and of how many workers evaluate the grid.  One labeling per (accuracy,
repetition) cell is shared by all failure probabilities and model kinds, which
isolates their effect from sampling noise.  Records are sorted by (accuracy,
repetition, p_qf, kind) before they are returned.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .costs import ALL_KINDS, ModelKind, QAMode
from .errors import InputContractError
from .model import (
    ConfusionMatrix,
    Prediction,
    Project,
    Relationship,
    precision,
    recall,
)

_MASK64 = (1 << 64) - 1

DEFAULT_ACCURACIES: tuple[float, ...] = tuple(round(0.05 * i, 2) for i in range(1, 20))
DEFAULT_P_QF_VALUES: tuple[float, ...] = (0.0, 0.5)


def splitmix64(value: int) -> int:
    """One step of the SplitMix64 finalizer; a fixed, portable 64-bit mixer."""
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def cell_seed(master_seed: int, accuracy_index: int, repetition_index: int) -> int:
    """Deterministic per-cell seed; see the module docstring for the scheme."""
    mixed = splitmix64(master_seed & _MASK64)
    mixed = splitmix64(mixed ^ (accuracy_index & _MASK64))
    mixed = splitmix64(mixed ^ (repetition_index & _MASK64))
    return mixed


def _simulate_labels(project: Project, accuracy: float, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    truth = project.defective_mask
    correct = rng.random(len(truth)) < accuracy
    return np.where(correct, truth, ~truth).astype(np.int8)


def simulate_prediction(project: Project, accuracy: float, cell_seed: int) -> Prediction:
    """Draw one simulated labeling at the given expected accuracy.

    Artifacts are processed in the project's stored order; each keeps its true
    label with probability ``accuracy`` and is flipped otherwise.  The result
    is fully determined by ``cell_seed``.
    """
    if not 0.0 <= accuracy <= 1.0:
        raise InputContractError(f"accuracy must be in [0, 1], got {accuracy}")
    labels = _simulate_labels(project, accuracy, cell_seed)
    return Prediction(labels={a.id: int(v) for a, v in zip(project.artifacts, labels)})


@dataclass(frozen=True)
class GridConfig:
    """Sweep settings: accuracy grid, repetitions, failure probabilities, seed, kinds."""

    accuracies: tuple[float, ...] = DEFAULT_ACCURACIES
    repetitions: int = 100
    p_qf_values: tuple[float, ...] = DEFAULT_P_QF_VALUES
    seed: int = 0
    model_kinds: tuple[ModelKind, ...] = ALL_KINDS

    def __post_init__(self):
        object.__setattr__(self, "accuracies", tuple(self.accuracies))
        object.__setattr__(self, "p_qf_values", tuple(sorted(set(self.p_qf_values))))
        object.__setattr__(
            self, "model_kinds", tuple(sorted(set(self.model_kinds), key=lambda k: k.sort_key))
        )
        if not self.accuracies:
            raise InputContractError("accuracies must not be empty")
        for a in self.accuracies:
            if not 0.0 <= a <= 1.0:
                raise InputContractError(f"accuracy {a} outside [0, 1]")
        if self.repetitions < 1:
            raise InputContractError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.p_qf_values:
            raise InputContractError("p_qf_values must not be empty")
        for p in self.p_qf_values:
            if not 0.0 <= p < 1.0:
                raise InputContractError(f"p_qf {p} outside [0, 1)")
        if not 0 <= self.seed <= _MASK64:
            raise InputContractError("seed must be an unsigned 64-bit integer")
        if not self.model_kinds:
            raise InputContractError("model_kinds must not be empty")


@dataclass(frozen=True)
class ExperimentRecord:
    """One grid cell: the simulated outcome, its metrics, and its cost boundaries."""

    project: str
    accuracy: float
    repetition: int
    p_qf: float
    kind: ModelKind
    cm: ConfusionMatrix
    precision: float | None
    recall: float | None
    lower: float
    upper: float
    cost_saving: bool


class _GridEvaluator:
    """Precomputed per-view incidence data for fast cell evaluation.

    Produces, per labeling, exactly the boundary values that ``classify`` plus
    ``boundary_interval`` would on the corresponding view; the equivalence is
    pinned by tests.
    """

    def __init__(self, project: Project, config: GridConfig):
        self.project = project
        self.config = config
        self.truth = project.defective_mask
        self.sizes = project.sizes.astype(np.float64)
        self.total_size = float(self.sizes.sum())
        self.cards = project.defect_cardinalities
        self.indices, self.starts = project._member_csr
        # expected escape weight (1 - p_qf)^|d| per defect, per p_qf value
        self.nm_weights = {
            p: (1.0 - p) ** self.cards.astype(np.float64) for p in config.p_qf_values
        }
        self.nm_weight_totals = {p: float(w.sum()) for p, w in self.nm_weights.items()}
        # number of (defect, artifact) incidence pairs touching each artifact
        degree = np.zeros(len(project.artifacts), dtype=np.int64)
        if len(self.indices):
            np.add.at(degree, self.indices, 1)
        self.degree = degree.astype(np.float64)
        self.total_pairs = float(self.cards.sum())
        self.needs_nm = any(k.relationship is Relationship.N_TO_M for k in config.model_kinds)

    def cell_records(self, accuracy_index: int, repetition: int) -> list[ExperimentRecord]:
        config = self.config
        accuracy = config.accuracies[accuracy_index]
        seed = cell_seed(config.seed, accuracy_index, repetition)
        labels = _simulate_labels(self.project, accuracy, seed)
        predicted = labels.astype(bool)
        tp = int(np.count_nonzero(self.truth & predicted))
        fp = int(np.count_nonzero(predicted)) - tp
        fn = int(np.count_nonzero(self.truth)) - tp
        tn = len(labels) - tp - fp - fn
        cm = ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)
        prec = precision(cm)
        rec = recall(cm)
        size_pred = float(self.sizes[predicted].sum())
        qa_terms = {
            QAMode.CONSTANT: (float(tp + fp), float(tn + fn)),
            QAMode.SIZE_AWARE: (size_pred, self.total_size - size_pred),
        }
        if self.needs_nm and len(self.cards):
            pred_defects = np.minimum.reduceat(predicted[self.indices], self.starts[:-1])
        else:
            pred_defects = np.zeros(0, dtype=bool)
        n_pred_1m = float(self.degree[predicted].sum())
        records = []
        for p_qf in config.p_qf_values:
            keep = 1.0 - p_qf
            denominators = {}
            if self.needs_nm:
                if len(self.cards):
                    lower_den_nm = float(self.nm_weights[p_qf][pred_defects].sum())
                else:
                    lower_den_nm = 0.0
                denominators[Relationship.N_TO_M] = (
                    lower_den_nm,
                    self.nm_weight_totals[p_qf] - lower_den_nm,
                )
            denominators[Relationship.ONE_TO_M] = (
                n_pred_1m * keep,
                (self.total_pairs - n_pred_1m) * keep,
            )
            denominators[Relationship.ONE_TO_ONE] = (tp * keep, fn * keep)
            for kind in config.model_kinds:
                qa_spent, qa_unspent = qa_terms[kind.qa_mode]
                lower_den, upper_den = denominators[kind.relationship]
                lower = qa_spent / lower_den if lower_den != 0 else math.inf
                upper = qa_unspent / upper_den if upper_den != 0 else math.inf
                records.append(
                    ExperimentRecord(
                        project=self.project.id,
                        accuracy=accuracy,
                        repetition=repetition,
                        p_qf=p_qf,
                        kind=kind,
                        cm=cm,
                        precision=prec,
                        recall=rec,
                        lower=lower,
                        upper=upper,
                        cost_saving=math.isfinite(lower) and lower < upper,
                    )
                )
        return records


def run_grid(project: Project, config: GridConfig, workers: int = 1) -> list[ExperimentRecord]:
    """Evaluate the full simulation grid on an n-m project.

    Emits exactly ``len(accuracies) * repetitions * len(p_qf_values) *
    len(model_kinds)`` records.  Equal inputs produce equal outputs no matter
    how many workers are used.
    """
    if project.relationship is not Relationship.N_TO_M:
        raise InputContractError("run_grid expects the full n-m project")
    if workers < 1:
        raise InputContractError(f"workers must be >= 1, got {workers}")
    evaluator = _GridEvaluator(project, config)
    cells = [
        (acc_idx, rep)
        for acc_idx in range(len(config.accuracies))
        for rep in range(config.repetitions)
    ]
    if workers == 1:
        per_cell = [evaluator.cell_records(a, r) for a, r in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(lambda c: evaluator.cell_records(*c), cells))
    records = [record for cell in per_cell for record in cell]
    kind_order = {kind: i for i, kind in enumerate(ALL_KINDS)}
    records.sort(key=lambda r: (r.accuracy, r.repetition, r.p_qf, kind_order[r.kind]))
    return records
