"""Experiment driver: scoring, sweeps, repeat selection, and byte-stable
reports.

Small synthetic configs keep every test under a second or two; determinism
checks compare full serialized artifacts, not just headline numbers.
"""

import copy
import json

import numpy as np
import pytest

from hyperseed.harness.config import ConfigError, config_from_dict
from hyperseed.harness.corpus import generate_language_corpus, write_corpus
from hyperseed.harness.experiment import (DEFAULT_SWEEP_VALUES, SWEEP_AXES,
                                          _with_axis_value, report_to_json,
                                          run_experiment, run_single, score,
                                          sweep, write_report,
                                          write_sweep_csv)
from hyperseed.vsa import make_rng


def small_config():
    return config_from_dict({
        "data": {"kind": "fcps", "name": "twodiamonds", "n_points": 60,
                 "train_fraction": 0.5},
        "encoder": {"q": 4, "epsilon_d": 0.2},
        "map": {"n": 6, "m": 6, "epsilon_p": 0.5},
        "train": {"d": 128, "iterations": 2},
        "run": {"seed": 3, "repeats": 2, "select": "best"},
    })


class TestScore:
    def test_hand_built_case(self):
        truth = ["a", "b", "a", "c", "b", "a"]
        predicted = ["a", "b", "b", "c", "c", "a"]
        accuracy, per_class, confusion, order = score(truth, predicted)
        assert accuracy == pytest.approx(4 / 6)
        assert order == ["a", "b", "c"]
        assert per_class == {"a": pytest.approx(2 / 3),
                             "b": pytest.approx(1 / 2),
                             "c": pytest.approx(1.0)}
        assert confusion == {"a": {"a": 2, "b": 1},
                             "b": {"b": 1, "c": 1},
                             "c": {"c": 1}}

    def test_label_order_is_first_appearance(self):
        _, _, _, order = score([2, 0, 1, 0], [2, 0, 1, 0])
        assert order == [2, 0, 1]

    def test_perfect_and_zero(self):
        assert score(["x"], ["x"])[0] == 1.0
        assert score(["x"], ["y"])[0] == 0.0

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length mismatch"):
            score(["a"], ["a", "b"])

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            score([], [])

    def test_integer_labels_become_string_keys(self):
        _, per_class, confusion, _ = score([0, 1], [1, 1])
        assert set(per_class) == {"0", "1"}
        assert confusion["0"] == {"1": 1}


class TestAxisValues:
    def test_iterations(self):
        cfg = small_config()
        out = _with_axis_value(cfg, "iterations", "7")
        assert out.train.iterations == 7
        assert cfg.train.iterations == 2  # original untouched

    def test_dimensionality(self):
        out = _with_axis_value(small_config(), "dimensionality", "512")
        assert out.train.d == 512

    def test_num_seeds(self):
        out = _with_axis_value(small_config(), "num_seeds", "4")
        assert out.train.num_seeds == 4

    def test_epsilon_q_pair(self):
        out = _with_axis_value(small_config(), "epsilon_q", "20:0.05")
        assert out.encoder.q == 20
        assert out.encoder.epsilon_d == pytest.approx(0.05)

    def test_epsilon_q_bad_format(self):
        with pytest.raises(ConfigError, match="q:epsilon_d"):
            _with_axis_value(small_config(), "epsilon_q", "20")

    def test_unknown_axis(self):
        with pytest.raises(ConfigError, match="sweep axis"):
            _with_axis_value(small_config(), "bandwidth", "1")

    def test_default_values_cover_every_axis(self):
        assert set(DEFAULT_SWEEP_VALUES) == set(SWEEP_AXES)


class TestRunSingle:
    def test_deterministic_under_same_stream(self):
        cfg = small_config()
        a = run_single(cfg, np.random.SeedSequence(5))
        b = run_single(cfg, np.random.SeedSequence(5))
        assert a.accuracy == b.accuracy
        assert a.trace == b.trace
        assert a.label_order == b.label_order

    def test_different_streams_differ(self):
        cfg = small_config()
        a = run_single(cfg, np.random.SeedSequence(5))
        b = run_single(cfg, np.random.SeedSequence(6))
        # maps and splits are redrawn; traces should not coincide
        assert a.trace != b.trace or a.accuracy != b.accuracy

    def test_trace_has_one_entry_per_update(self):
        cfg = small_config()
        cfg.train.iterations = 5
        result = run_single(cfg, np.random.SeedSequence(1))
        assert [t["step"] for t in result.trace] == list(range(5))
        for entry in result.trace:
            i, j = entry["target"]
            assert 0 <= i < cfg.map.n and 0 <= j < cfg.map.m

    def test_learns_above_chance(self):
        result = run_single(small_config(), np.random.SeedSequence(3))
        assert result.accuracy > 0.6  # two balanced classes; chance is 0.5

    def test_corpus_kind_runs(self, tmp_path):
        corp = generate_language_corpus(2, train_chunks_per_language=6,
                                        test_sentences_per_language=5,
                                        rng=make_rng(0))
        write_corpus(corp, tmp_path / "train", tmp_path / "test")
        cfg = config_from_dict({
            "data": {"kind": "corpus", "train_dir": str(tmp_path / "train"),
                     "test_dir": str(tmp_path / "test")},
            "map": {"n": 5, "m": 5, "epsilon_p": 0.5},
            "train": {"d": 256, "iterations": 2},
        })
        a = run_single(cfg, np.random.SeedSequence(2))
        b = run_single(cfg, np.random.SeedSequence(2))
        assert a.accuracy == b.accuracy
        assert len(a.test_pairs) == 10


class TestRunExperiment:
    def test_best_selection(self):
        report, result = run_experiment(small_config())
        assert report.accuracy == max(report.repeat_accuracies)
        assert len(report.repeat_accuracies) == 2
        assert report.repeat_accuracies[report.selected_repeat] \
            == report.accuracy
        assert result is not None
        assert result.accuracy == report.accuracy

    def test_mean_selection(self):
        cfg = small_config()
        cfg.run.select = "mean"
        report, _ = run_experiment(cfg, keep_result=False)
        assert report.accuracy == pytest.approx(
            np.mean(report.repeat_accuracies))

    def test_selected_repeat_prefers_first_on_tie(self):
        cfg = small_config()
        cfg.run.repeats = 1
        report, _ = run_experiment(cfg, keep_result=False)
        assert report.selected_repeat == 0

    def test_report_echoes_config_and_seed(self):
        cfg = small_config()
        report, _ = run_experiment(cfg, keep_result=False)
        assert report.config == cfg.to_dict()
        assert report.master_seed == 3
        assert report.targets  # trace of the selected repeat

    def test_keep_result_false_drops_payload(self):
        _, result = run_experiment(small_config(), keep_result=False)
        assert result is None


class TestReportSerialization:
    def test_byte_identical_across_reruns(self):
        ra, _ = run_experiment(small_config(), keep_result=False)
        rb, _ = run_experiment(small_config(), keep_result=False)
        assert report_to_json(ra) == report_to_json(rb)

    def test_wall_clock_not_serialized(self):
        report, _ = run_experiment(small_config(), keep_result=False)
        assert report.wall_clock_seconds > 0.0
        doc = json.loads(report_to_json(report))
        assert "wall_clock_seconds" not in doc
        assert "wall_clock" not in report_to_json(report)

    def test_json_sorted_keys_and_trailing_newline(self):
        report, _ = run_experiment(small_config(), keep_result=False)
        text = report_to_json(report)
        assert text.endswith("\n")
        doc = json.loads(text)
        assert list(doc) == sorted(doc)

    def test_write_report_round_trips(self, tmp_path):
        report, _ = run_experiment(small_config(), keep_result=False)
        path = tmp_path / "report.json"
        write_report(report, path)
        assert path.read_text() == report_to_json(report)


class TestSweep:
    def test_one_row_per_value(self):
        rows = sweep(small_config(), "iterations", ["1", "2"])
        assert [v for v, _ in rows] == ["1", "2"]
        assert all(0.0 <= acc <= 1.0 for _, acc in rows)

    def test_sweep_does_not_mutate_base(self):
        cfg = small_config()
        frozen = copy.deepcopy(cfg)
        sweep(cfg, "iterations", ["1"])
        assert cfg == frozen

    def test_csv_format(self, tmp_path):
        path = tmp_path / "sweep.csv"
        write_sweep_csv([("1", 0.5), ("10:0.2", 0.925)], path)
        assert path.read_text() == "value,accuracy\n1,0.5\n10:0.2,0.925\n"

    def test_csv_survives_reload(self, tmp_path):
        rows = sweep(small_config(), "epsilon_q", ["4:0.1", "4:0.2"])
        path = tmp_path / "sweep.csv"
        write_sweep_csv(rows, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "value,accuracy"
        parsed = [line.split(",") for line in lines[1:]]
        assert [(v, float(a)) for v, a in parsed] == rows
