"""Cost evaluation for defect prediction models.

The total cost of acting on a prediction is

    cost = c_init + c_exec
         + sum of qa(s) over artifacts predicted defective
         + sum of loss(d) over missed defects
         + sum of qf(d) * loss(d) over predicted defects

where qa(s) is the quality-assurance cost of artifact s, loss(d) the cost of
defect d escaping into production, and qf(d) the probability that quality
assurance fails to reveal d even though it was predicted.

``cost_general`` evaluates this with arbitrary per-artifact and per-defect
inputs.  ``cost_init`` evaluates the six standard initializations: quality
assurance costed per artifact (constant, one unit) or per line (size-aware),
crossed with the three incidence views (n-m, 1-m, 1-1).  All defect losses are
the single ratio ``c_ratio`` = mean defect cost per quality-assurance unit,
and quality-assurance failure is a per-artifact Bernoulli miss with
probability ``p_qf``, so qf(d) = 1 - (1 - p_qf)^|d|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np

from .errors import InputContractError
from .model import OutcomeSummary, Project, Relationship


class QAMode(Enum):
    """How quality-assurance cost scales: one unit per artifact, or per size unit."""

    CONSTANT = "const"
    SIZE_AWARE = "size"


@dataclass(frozen=True)
class ModelKind:
    """One of the six cost-model initializations: a QA mode plus an incidence view."""

    qa_mode: QAMode
    relationship: Relationship

    @property
    def code(self) -> str:
        return f"{self.qa_mode.value}-{self.relationship.value}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (list(QAMode).index(self.qa_mode), list(Relationship).index(self.relationship))


ALL_KINDS: tuple[ModelKind, ...] = tuple(
    ModelKind(qa_mode, relationship) for qa_mode in QAMode for relationship in Relationship
)

KIND_BY_CODE: dict[str, ModelKind] = {kind.code: kind for kind in ALL_KINDS}


@dataclass(frozen=True)
class CostParams:
    """Scalar parameters of the initialized cost models.

    ``c_ratio`` is the mean cost of one defect expressed in quality-assurance
    cost units (the QA unit is normalized to 1).  ``p_qf`` is the probability
    that quality assurance misses a defect in one artifact; it must stay below
    1 so that quality assurance always has a chance to reveal every defect.
    ``c_init`` and ``c_exec`` are the one-time and continuous overheads of
    running the prediction model; the standard initializations set them to 0
    but every operation honors them.
    """

    c_ratio: float = 1.0
    p_qf: float = 0.0
    c_init: float = 0.0
    c_exec: float = 0.0
    qa_mode: QAMode = QAMode.CONSTANT

    def __post_init__(self):
        if not self.c_ratio > 0:
            raise InputContractError(f"c_ratio must be positive, got {self.c_ratio}")
        if not 0.0 <= self.p_qf < 1.0:
            raise InputContractError(f"p_qf must be in [0, 1), got {self.p_qf}")
        if self.c_init < 0 or self.c_exec < 0:
            raise InputContractError("c_init and c_exec must be non-negative")


@dataclass(frozen=True)
class GeneralCostInputs:
    """Fully general per-artifact QA costs and per-defect losses and failure rates."""

    qa_costs: Mapping[str, float]
    losses: Mapping[str, float]
    qf_values: Mapping[str, float]
    c_init: float = 0.0
    c_exec: float = 0.0


def qa_failure(p_qf: float, cardinality: int) -> float:
    """Probability that QA misses a defect touching ``cardinality`` artifacts.

    Each artifact is an independent Bernoulli miss with probability ``p_qf``;
    the defect escapes when it is missed in at least one artifact, giving
    1 - (1 - p_qf)^cardinality.  Strictly increasing in both arguments.
    """
    if not 0.0 <= p_qf < 1.0:
        raise InputContractError(f"p_qf must be in [0, 1), got {p_qf}")
    if cardinality < 1:
        raise InputContractError(f"cardinality must be >= 1, got {cardinality}")
    return 1.0 - (1.0 - p_qf) ** cardinality


def qa_cost_vector(project: Project, qa_mode: QAMode) -> np.ndarray:
    """Per-artifact QA cost in stored order: all ones, or the artifact sizes."""
    if qa_mode is QAMode.SIZE_AWARE:
        return project.sizes.astype(np.float64)
    return np.ones(len(project.artifacts), dtype=np.float64)


def induced_inputs(project: Project, params: CostParams) -> GeneralCostInputs:
    """The general cost inputs that an initialized model implicitly uses.

    QA cost per artifact follows ``params.qa_mode``, every defect loses
    ``c_ratio``, and the failure rate of a defect is the Bernoulli escape
    probability for its member count.
    """
    qa = qa_cost_vector(project, params.qa_mode)
    return GeneralCostInputs(
        qa_costs={a.id: float(q) for a, q in zip(project.artifacts, qa)},
        losses={d.id: params.c_ratio for d in project.defects},
        qf_values={d.id: qa_failure(params.p_qf, len(d.members)) for d in project.defects},
        c_init=params.c_init,
        c_exec=params.c_exec,
    )


def cost_general(project: Project, outcome: OutcomeSummary, inputs: GeneralCostInputs) -> float:
    """Evaluate the general cost model with explicit qa/loss/qf mappings.

    The mappings must be total on the project's artifacts and defects.
    """
    for a in project.artifacts:
        if a.id not in inputs.qa_costs:
            raise InputContractError(f"missing qa cost for artifact {a.id!r}")
    for d in project.defects:
        if d.id not in inputs.losses:
            raise InputContractError(f"missing loss for defect {d.id!r}")
        if d.id not in inputs.qf_values:
            raise InputContractError(f"missing qf value for defect {d.id!r}")
    qa_spent = math.fsum(inputs.qa_costs[a] for a in outcome.predicted_artifacts)
    missed = math.fsum(inputs.losses[d] for d in outcome.missed_defects)
    escaped = math.fsum(inputs.qf_values[d] * inputs.losses[d] for d in outcome.predicted_defects)
    return inputs.c_init + inputs.c_exec + qa_spent + missed + escaped


def _check_kind(project: Project, params: CostParams, kind: ModelKind) -> None:
    if project.relationship is not kind.relationship:
        raise InputContractError(
            f"project view is {project.relationship.value} but the cost model "
            f"expects {kind.relationship.value}; derive the view first"
        )
    if params.qa_mode is not kind.qa_mode:
        raise InputContractError(
            f"params.qa_mode is {params.qa_mode.value} but the cost model is {kind.qa_mode.value}"
        )


def _qa_spent(project: Project, outcome: OutcomeSummary, qa_mode: QAMode) -> float:
    if qa_mode is QAMode.CONSTANT:
        return float(outcome.cm.tp + outcome.cm.fp)
    index = project.artifact_index
    sizes = project.sizes
    return float(sum(int(sizes[index[a]]) for a in outcome.predicted_artifacts))


def cost_init(project: Project, outcome: OutcomeSummary, params: CostParams, kind: ModelKind) -> float:
    """Cost under one of the six initialized models.

    The project must already be in the view that ``kind`` expects.  The QA
    term is tp+fp (constant mode) or the summed size of predicted artifacts
    (size-aware); the defect term scales ``c_ratio`` by the number of missed
    defects plus the expected escapes among predicted defects.
    """
    _check_kind(project, params, kind)
    qa_spent = _qa_spent(project, outcome, kind.qa_mode)
    c = params.c_ratio
    cm = outcome.cm
    if kind.relationship is Relationship.N_TO_M:
        cardinality = {d.id: len(d.members) for d in project.defects}
        escaped = math.fsum(
            qa_failure(params.p_qf, cardinality[d]) for d in outcome.predicted_defects
        )
        defect_term = len(outcome.missed_defects) * c + escaped * c
    elif kind.relationship is Relationship.ONE_TO_M:
        defect_term = len(outcome.missed_defects) * c + len(outcome.predicted_defects) * params.p_qf * c
    else:
        defect_term = cm.fn * c + cm.tp * params.p_qf * c
    return params.c_init + params.c_exec + qa_spent + defect_term


def cost_random(project: Project, p_qa: float, params: CostParams) -> float:
    """Expected cost when QA is applied to each artifact independently with probability ``p_qa``.

    A defect is prevented only when all of its artifacts receive QA (probability
    p_qa^|d|) and QA does not fail on it.  With p_qa = 0 this is the cost of no
    quality assurance at all (every defect escapes); with p_qa = 1 it is the
    cost of quality assurance on everything.  The prediction model's own
    overheads c_init/c_exec do not apply to this baseline.
    """
    if not 0.0 <= p_qa <= 1.0:
        raise InputContractError(f"p_qa must be in [0, 1], got {p_qa}")
    qa = qa_cost_vector(project, params.qa_mode)
    qa_expected = p_qa * float(np.sum(qa))
    defect_terms = []
    for d in project.defects:
        covered = p_qa ** len(d.members)
        qf = qa_failure(params.p_qf, len(d.members))
        defect_terms.append((1.0 - covered) * params.c_ratio + covered * qf * params.c_ratio)
    return qa_expected + math.fsum(defect_terms)
