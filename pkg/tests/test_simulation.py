import math

import numpy as np
import pytest

from defectcost import (
    ALL_KINDS,
    Artifact,
    CostParams,
    Defect,
    GridConfig,
    InputContractError,
    ModelKind,
    Project,
    QAMode,
    Relationship,
    boundary_interval,
    cell_seed,
    classify,
    emit_records,
    perfect_prediction,
    project_view,
    run_grid,
    simulate_prediction,
    splitmix64,
)


def small_project() -> Project:
    return Project(
        "g",
        tuple(Artifact(f"f{i}", 1 + i) for i in range(12)),
        (Defect("d0", frozenset({"f0", "f1"})), Defect("d1", frozenset({"f5"}))),
    )


class TestSeeding:
    def test_splitmix64_reference_vector(self):
        # first output of the reference SplitMix64 stream seeded with 0
        assert splitmix64(0) == 16294208416658607535
        assert splitmix64(1) == 10451216379200822465

    def test_cell_seed_golden_values(self):
        assert cell_seed(0, 0, 0) == 2558736989570252433
        assert cell_seed(42, 3, 17) == 11412059272541287833
        assert cell_seed(2**64 - 1, 18, 99) == 4592239064361437029

    def test_cell_seeds_distinct(self):
        seeds = {
            cell_seed(7, a, r) for a in range(19) for r in range(100)
        }
        assert len(seeds) == 19 * 100


class TestSimulatePrediction:
    def test_accuracy_one_is_truth(self, project_e):
        prediction = simulate_prediction(project_e, 1.0, cell_seed(1, 0, 0))
        assert prediction.labels == {"s1": 1, "s2": 1, "s3": 0}

    def test_accuracy_zero_flips_everything(self, project_e):
        prediction = simulate_prediction(project_e, 0.0, cell_seed(1, 0, 0))
        assert prediction.labels == {"s1": 0, "s2": 0, "s3": 1}

    def test_golden_labels(self):
        prediction = simulate_prediction(small_project(), 0.7, cell_seed(42, 3, 17))
        assert [prediction.labels[f"f{i}"] for i in range(12)] == [
            0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0,
        ]

    def test_same_seed_same_labels(self):
        project = small_project()
        seed = cell_seed(9, 4, 2)
        assert simulate_prediction(project, 0.3, seed) == simulate_prediction(project, 0.3, seed)

    def test_accuracy_out_of_range(self, project_e):
        with pytest.raises(InputContractError):
            simulate_prediction(project_e, 1.2, 1)

    def test_correctness_rate_within_binomial_bounds(self):
        # 99.9% two-sided normal interval around the configured accuracy
        n = 10_000
        accuracy = 0.7
        project = Project(
            "big",
            tuple(Artifact(f"f{i}", 1) for i in range(n)),
            tuple(Defect(f"d{i}", frozenset({f"f{i}"})) for i in range(0, n, 10)),
        )
        prediction = simulate_prediction(project, accuracy, cell_seed(123, 0, 0))
        truth = project.defective_mask
        labels = np.array([prediction.labels[f"f{i}"] for i in range(n)], dtype=bool)
        correct = float(np.mean(labels == truth))
        half_width = 3.2905 * math.sqrt(accuracy * (1 - accuracy) / n)
        assert abs(correct - accuracy) <= half_width


class TestGridConfig:
    def test_defaults(self):
        config = GridConfig()
        assert len(config.accuracies) == 19
        assert config.accuracies[0] == 0.05 and config.accuracies[-1] == 0.95
        assert config.repetitions == 100
        assert config.p_qf_values == (0.0, 0.5)
        assert len(config.model_kinds) == 6

    def test_validation(self):
        with pytest.raises(InputContractError):
            GridConfig(accuracies=())
        with pytest.raises(InputContractError):
            GridConfig(accuracies=(1.5,))
        with pytest.raises(InputContractError):
            GridConfig(repetitions=0)
        with pytest.raises(InputContractError):
            GridConfig(p_qf_values=(1.0,))
        with pytest.raises(InputContractError):
            GridConfig(seed=-1)
        with pytest.raises(InputContractError):
            GridConfig(model_kinds=())


class TestRunGrid:
    def test_perfect_predictor_records(self, project_e):
        config = GridConfig(accuracies=(1.0,), repetitions=1, p_qf_values=(0.0,), seed=5)
        records = run_grid(project_e, config)
        assert len(records) == 6
        for record in records:
            assert record.cm.fp == 0 and record.cm.fn == 0
            assert record.upper == math.inf

    def test_record_cardinality(self, project_e):
        config = GridConfig(
            accuracies=(0.2, 0.8), repetitions=3, p_qf_values=(0.0, 0.5), seed=1
        )
        records = run_grid(project_e, config)
        assert len(records) == 2 * 3 * 2 * 6

    def test_default_grid_cardinality(self, project_e):
        records = run_grid(project_e, GridConfig(seed=3))
        assert len(records) == 19 * 100 * 2 * 6

    def test_canonical_order(self, project_e):
        config = GridConfig(accuracies=(0.9, 0.1), repetitions=2, seed=8)
        records = run_grid(project_e, config)
        kind_order = {kind: i for i, kind in enumerate(ALL_KINDS)}
        keys = [(r.accuracy, r.repetition, r.p_qf, kind_order[r.kind]) for r in records]
        assert keys == sorted(keys)

    def test_prediction_shared_across_p_qf_and_kinds(self, project_e):
        config = GridConfig(accuracies=(0.4,), repetitions=2, seed=11)
        records = run_grid(project_e, config)
        by_cell = {}
        for record in records:
            by_cell.setdefault((record.accuracy, record.repetition), set()).add(record.cm)
        for cms in by_cell.values():
            assert len(cms) == 1

    def test_deterministic_across_runs_and_workers(self, project_e):
        config = GridConfig(accuracies=(0.3, 0.6), repetitions=4, seed=99)
        first = run_grid(project_e, config, workers=1)
        second = run_grid(project_e, config, workers=1)
        threaded = run_grid(project_e, config, workers=4)
        assert emit_records(first) == emit_records(second) == emit_records(threaded)

    def test_requires_n_to_m_project(self, project_e):
        view = project_view(project_e, Relationship.ONE_TO_ONE)
        with pytest.raises(InputContractError):
            run_grid(view, GridConfig())

    def test_records_match_public_route(self, rng):
        """Grid output must equal classify + boundary_interval on each view."""
        from defectcost import random_project

        project = random_project(rng, max_artifacts=25, max_defects=8)
        config = GridConfig(accuracies=(0.35, 0.75), repetitions=3, seed=1234)
        records = run_grid(project, config)
        views = {rel: project_view(project, rel) for rel in Relationship}
        for record in records:
            acc_idx = config.accuracies.index(record.accuracy)
            seed = cell_seed(config.seed, acc_idx, record.repetition)
            prediction = simulate_prediction(project, record.accuracy, seed)
            view = views[record.kind.relationship]
            outcome = classify(view, prediction)
            assert outcome.cm == record.cm
            params = CostParams(p_qf=record.p_qf, qa_mode=record.kind.qa_mode)
            interval = boundary_interval(view, outcome, params, record.kind)
            for mine, reference in ((record.lower, interval.lower), (record.upper, interval.upper)):
                if math.isfinite(reference):
                    assert mine == pytest.approx(reference, abs=1e-12 * max(1.0, reference))
                else:
                    assert mine == reference
            assert record.cost_saving == interval.cost_saving_possible

    def test_perfect_prediction_matches_simulated_at_accuracy_one(self, project_e):
        prediction = simulate_prediction(project_e, 1.0, cell_seed(0, 0, 0))
        assert prediction == perfect_prediction(project_e)
