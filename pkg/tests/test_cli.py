import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from adjcomp.cli import RunConfig, main, parse_provider_spec, run_evaluation
from adjcomp.lexicon import save_lexicon
from adjcomp.providers import EmbeddingStore, RemoteProvider, ToyEmbedder, save_store


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def tiny_lexicon_file(tmp_path, tiny_lex):
    path = tmp_path / "lex.tsv"
    save_lexicon(tiny_lex, path)
    return path


class TestProviderSpec:
    def test_toy(self):
        provider = parse_provider_spec("toy:7:32")
        assert isinstance(provider, ToyEmbedder)
        assert provider.seed == 7 and provider.dim == 32

    def test_file(self, tmp_path):
        store = EmbeddingStore("m")
        store.add("a", [1.0, 0.0])
        path = tmp_path / "v.jsonl"
        save_store(store, path)
        loaded = parse_provider_spec(f"file:{path}")
        assert isinstance(loaded, EmbeddingStore)
        assert "a" in loaded

    def test_http_with_port(self):
        provider = parse_provider_spec("http:http://localhost:8099:sbert")
        assert isinstance(provider, RemoteProvider)
        assert provider.endpoint == "http://localhost:8099"
        assert provider.model_id == "sbert"

    def test_bad_specs(self):
        import click

        for spec in ("toy:1", "file:", "http:onlyurl", "carrier-pigeon:x"):
            with pytest.raises(click.BadParameter):
                parse_provider_spec(spec)


class TestGenerate:
    def test_default_counts_line(self, runner, tmp_path):
        result = runner.invoke(main, ["generate", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert "AN: 732, AAN: 43920, total: 44652" in result.output
        corpus = (tmp_path / "corpus.txt").read_text().splitlines()
        assert len(corpus) == 44652
        assert corpus[0] == "wild student"

    def test_max_one(self, runner, tmp_path):
        result = runner.invoke(
            main, ["generate", "--max-adjectives", "1", "--out", str(tmp_path)]
        )
        assert "AN: 732, total: 732" in result.output

    def test_custom_lexicon_total_eight(self, runner, tmp_path, tiny_lexicon_file):
        result = runner.invoke(
            main,
            ["generate", "--lexicon", str(tiny_lexicon_file), "--out", str(tmp_path)],
        )
        assert "AN: 4, AAN: 4, total: 8" in result.output


class TestEvaluate:
    def test_all_relations_write_tables(self, runner, tmp_path, tiny_lexicon_file):
        result = runner.invoke(
            main,
            [
                "evaluate",
                "--lexicon",
                str(tiny_lexicon_file),
                "--provider",
                "toy:5:16",
                "--out",
                str(tmp_path),
            ],
        )
        assert result.exit_code == 0, result.output
        for stem in (
            "an_intersectivity",
            "aan_intersectivity",
            "pair_intersectivity",
            "non_subsectivity",
        ):
            assert (tmp_path / f"table_{stem}.csv").exists()
            assert (tmp_path / f"table_{stem}.md").exists()
            assert (tmp_path / f"outcomes_{stem}.jsonl").exists()
        run = json.loads((tmp_path / "run.json").read_text())
        assert run["corpus"]["an_phrases"] == 4
        assert run["digest"]

    def test_outcome_records_carry_digest_and_fields(self, tmp_path, tiny_lexicon_file):
        config = RunConfig(
            lexicon_path=str(tiny_lexicon_file), provider="toy:5:16", relations=("an",)
        )
        summary = run_evaluation(config, tmp_path)
        lines = (
            (tmp_path / "outcomes_an_intersectivity.jsonl").read_text().splitlines()
        )
        header = json.loads(lines[0])
        assert header["config_digest"] == summary["digest"]
        record = json.loads(lines[1])
        assert set(record) == {"relation", "key", "types", "satisfied", "margin"}

    def test_missing_vector_is_operational_error(
        self, runner, tmp_path, tiny_lexicon_file
    ):
        store = EmbeddingStore("m")
        store.add("red", [1.0, 0.0])  # everything else missing
        vec_path = tmp_path / "v.jsonl"
        save_store(store, vec_path)
        result = runner.invoke(
            main,
            [
                "evaluate",
                "--lexicon",
                str(tiny_lexicon_file),
                "--provider",
                f"file:{vec_path}",
                "--relations",
                "an",
                "--out",
                str(tmp_path / "out"),
            ],
        )
        assert result.exit_code != 0
        assert "red dog" in result.output  # names the first missing text

    def test_warm_cache_rerun_identical(self, tmp_path, tiny_lexicon_file):
        config = RunConfig(
            lexicon_path=str(tiny_lexicon_file),
            provider="toy:5:16",
            relations=("an", "nonsub"),
            cache=True,
        )
        out1 = tmp_path / "run1"
        run_evaluation(config, out1)
        cache_file = out1 / "cache" / "toy-5-16.jsonl"
        assert cache_file.exists()
        size_after_cold = cache_file.stat().st_size

        before = (out1 / "table_an_intersectivity.csv").read_bytes()
        run_evaluation(config, out1)  # warm rerun, same out dir
        assert cache_file.stat().st_size == size_after_cold
        assert (out1 / "table_an_intersectivity.csv").read_bytes() == before

    def test_bad_relation_name(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["evaluate", "--provider", "toy:1:8", "--relations", "bogus", "--out", str(tmp_path)],
        )
        assert result.exit_code != 0

    def test_regression_mode(self, runner, tmp_path, tiny_lexicon_file):
        ref = tmp_path / "ref.csv"
        ref.write_text("model,S-I,NS-Pr\nm,1.0,1.0\n")
        result = runner.invoke(
            main,
            [
                "evaluate",
                "--lexicon",
                str(tiny_lexicon_file),
                "--provider",
                "toy:5:16",
                "--relations",
                "an",
                "--out",
                str(tmp_path / "out"),
                "--reference",
                str(ref),
                "--reference-kind",
                "an-intersectivity",
                "--reference-model",
                "m",
                "--tolerance",
                "0.05",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "deviation" in result.output
        assert (tmp_path / "out" / "deviations.jsonl").exists()


class TestOracleCommand:
    def test_oracle_writes_report(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["oracle", "--seed", "7", "--trials", "50", "--out", str(tmp_path)],
        )
        assert result.exit_code == 0, result.output
        assert "intersective" in result.output
        report = (tmp_path / "setworld_report.jsonl").read_text().splitlines()
        assert all(json.loads(line)["seed"] == 7 for line in report)

    def test_oracle_deterministic_files(self, runner, tmp_path):
        args = ["oracle", "--seed", "9", "--trials", "40"]
        runner.invoke(main, args + ["--out", str(tmp_path / "a")])
        runner.invoke(main, args + ["--out", str(tmp_path / "b")])
        a = (tmp_path / "a" / "setworld_report.jsonl").read_bytes()
        b = (tmp_path / "b" / "setworld_report.jsonl").read_bytes()
        assert a == b

    def test_unknown_category(self, runner, tmp_path):
        result = runner.invoke(
            main, ["oracle", "--categories", "nope", "--out", str(tmp_path)]
        )
        assert result.exit_code != 0


class TestDigest:
    def test_digest_ignores_out_dir_and_changes_with_config(self, tiny_lexicon_file):
        base = RunConfig(lexicon_path=str(tiny_lexicon_file), provider="toy:1:8")
        same = RunConfig(lexicon_path=str(tiny_lexicon_file), provider="toy:1:8")
        other = RunConfig(lexicon_path=str(tiny_lexicon_file), provider="toy:2:8")
        assert base.digest() == same.digest()
        assert base.digest() != other.digest()
