import json

import pytest

from csgk.cli import main
from csgk.config import RunConfig, load_config
from csgk.elements import Region
from csgk.errors import ConfigError, VectorIOError, VectorParseError
from csgk.suites import SUITES, build_document, run_suite, run_suites
from csgk.vectors import load_vectors, parse_vectors, replay_vectors, shipped_vectors

MUL_LINE = '{"op":"mul_c","args":{"x":"1,2,3","y":"2,1,1"},"expect":"1,2,2","provenance":{"tag":"paper","cite":"case m > n"}}'


class TestConfig:
    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.region is None and cfg.bcap == 4 and cfg.primes == (2, 3, 5)
        assert cfg.alpha_max == 3 and cfg.lambda_factor == 4 and cfg.maxlen == 6 and cfg.workers == 1

    def test_file_then_overrides(self, tmp_path):
        f = tmp_path / "cfg.json"
        f.write_text(json.dumps({"region": "2,2,2", "primes": [3], "maxlen": 4}))
        cfg = load_config(f, maxlen=5, bcap=None)
        assert cfg.region == Region(2, 2, 2) and cfg.primes == (3,) and cfg.maxlen == 5 and cfg.bcap == 4

    @pytest.mark.parametrize(
        "bad",
        [{"primes": [4]}, {"bcap": -1}, {"format": "xml"}, {"workers": 0}, {"colour": "red"}, {"region": "1,x,1"}],
    )
    def test_rejects(self, tmp_path, bad):
        f = tmp_path / "cfg.json"
        f.write_text(json.dumps(bad))
        with pytest.raises(ConfigError):
            load_config(f)

    def test_unreadable(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.json")


class TestVectors:
    def test_single_record(self, tmp_path):
        f = tmp_path / "v.jsonl"
        f.write_text(MUL_LINE + "\n")
        recs = load_vectors(f)
        assert len(recs) == 1 and recs[0].op == "mul_c"
        assert replay_vectors(recs).ok

    def test_empty_file(self, tmp_path):
        f = tmp_path / "v.jsonl"
        f.write_text("")
        recs = load_vectors(f)
        rep = replay_vectors(recs)
        assert recs == [] and rep.ok and rep.vacuous and "vacuous: empty corpus" in rep.warnings

    def test_unknown_op(self):
        with pytest.raises(VectorParseError) as info:
            parse_vectors(MUL_LINE + '\n{"op":"frobnicate","args":{},"expect":1}\n')
        assert info.value.code == "PARSE_ERROR" and info.value.line == 2

    def test_bad_json(self):
        with pytest.raises(VectorParseError) as info:
            parse_vectors("{nope")
        assert info.value.line == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(VectorIOError) as info:
            load_vectors(tmp_path / "none.jsonl")
        assert info.value.code == "IO_ERROR"

    def test_flipped_expectation(self):
        recs = parse_vectors(MUL_LINE.replace('"expect":"1,2,2"', '"expect":"1,2,3"'))
        rep = replay_vectors(recs)
        assert not rep.ok and rep.failure_count == 1
        assert rep.failures[0]["expected"] == "1,2,3" and rep.failures[0]["got"] == "1,2,2"

    def test_shipped_corpus(self):
        recs = shipped_vectors()
        assert len(recs) > 100
        assert {r.provenance["tag"] for r in recs} == {"paper", "trivial", "derived"}
        assert replay_vectors(recs).ok


class TestSuites:
    def test_every_suite_reports_params(self):
        small = RunConfig(region=Region(2, 1, 2), primes=(2,), alpha_max=1, random_words=50)
        for name in SUITES:
            rep = run_suite(name, small)
            assert rep.ok, name
            assert rep.params, name

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            run_suite("nope", RunConfig())

    def test_empty_region_is_vacuous(self):
        rep = run_suite("idempotent-free", RunConfig(region=Region(0, 0, 0)))
        assert rep.ok and rep.vacuous

    def test_deterministic_modulo_timestamp(self):
        cfg = RunConfig(region=Region(2, 2, 2))
        names = ["eq21-oracle", "solve-claims", "confluence"]
        docs = []
        for _ in range(2):
            doc = build_document(run_suites(names, cfg), cfg)
            doc.pop("generated_at")
            docs.append(json.dumps(doc, sort_keys=True))
        assert docs[0] == docs[1]

    def test_parallel_matches_serial(self):
        names = ["eq21-oracle", "hom", "telescope"]
        serial = build_document(run_suites(names, RunConfig(region=Region(2, 2, 2))), RunConfig())
        parallel = build_document(run_suites(names, RunConfig(region=Region(2, 2, 2), workers=2)), RunConfig())
        assert serial["suites"] == parallel["suites"]

    def test_discrepancies_surface_in_document(self):
        cfg = RunConfig()
        doc = build_document(run_suites(["solve-claims"], cfg), cfg)
        assert [d["id"] for d in doc["paper_discrepancies"]] == ["xb-ax-index-shift", "axb-diagonal-shift"]


class TestCli:
    def test_mul(self, capsys):
        assert main(["mul", "--x", "1,2,3", "--y", "2,1,1"]) == 0
        assert "1,2,2" in capsys.readouterr().out

    def test_mul_bicyclic_json(self, capsys):
        assert main(["mul", "--system", "bicyclic", "--x", "1,2", "--y", "3,1", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"product": "2,1"}

    def test_reduce(self, capsys):
        assert main(["reduce", "aabb", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["normal_form"] == "0,1,0"

    def test_star_and_hom(self, capsys):
        assert main(["star", "--x", "B:0,2", "--y", "C:3,1,1"]) == 0
        assert main(["star", "--zero", "--x", "0", "--y", "C:1,1,1"]) == 0
        assert main(["hom", "--x", "2,5,1"]) == 0
        out = capsys.readouterr().out
        assert "C:1,1,1" in out and "product: 0" in out and "2,1" in out

    def test_solve(self, capsys):
        assert main(["solve", "--shape", "axb", "--rhs", "0,2,0", "--region", "4,4,4", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["solutions"] == ["1,0,1"] and doc["stable_under_growth"]

    def test_green_nbhd_metric(self, capsys):
        assert main(["green", "--side", "R", "--x", "0,0,1", "--y", "0,0,2", "--maxlen", "2"]) == 0
        assert main(["nbhd", "--topology", "tau-p", "--x", "0,1,0", "--p", "3", "--lambda-max", "2"]) == 0
        assert main(["metric", "--x", "1,1,1", "--y", "1,9,1", "--p", "2", "--format", "json"]) == 0
        out = capsys.readouterr().out
        assert "C:0,7,0" in out and '"1/8"' in out

    def test_check_text(self, capsys):
        assert main(["check", "telescope", "--format", "text"]) == 0
        assert capsys.readouterr().out.startswith("PASS telescope")

    def test_check_tau_p_flags(self, capsys):
        assert main(["check", "tau-p", "--p", "2", "--alpha", "2", "--region", "2,2,2", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["ok"] and doc["config"]["primes"] == [2] and doc["suites"][0]["params"]["alpha"] == [2, 2]

    def test_replay_exit_codes(self, tmp_path, capsys):
        good = tmp_path / "good.jsonl"
        good.write_text(MUL_LINE + "\n")
        bad = tmp_path / "bad.jsonl"
        bad.write_text(MUL_LINE.replace('"1,2,2"', '"9,9,9"') + "\n")
        broken = tmp_path / "broken.jsonl"
        broken.write_text('{"op":"nope","expect":1}\n')
        assert main(["replay", str(good)]) == 0
        assert main(["replay", str(bad)]) == 1
        assert main(["replay", str(broken)]) == 2
        assert main(["replay", str(tmp_path / "missing.jsonl")]) == 2
        assert main(["replay", "shipped"]) == 0
        capsys.readouterr()

    def test_usage_errors(self, tmp_path, capsys):
        assert main(["mul", "--x", "0,0,0", "--y", "1,1,1"]) == 2
        cfg = tmp_path / "c.json"
        cfg.write_text('{"primes": [6]}')
        assert main(["check", "telescope", "--config", str(cfg)]) == 2
        with pytest.raises(SystemExit) as info:
            main(["check", "no-such-suite"])
        assert info.value.code == 2
        capsys.readouterr()

    def test_bad_word_is_usage_error(self, capsys):
        assert main(["reduce", "abx"]) == 2
        assert main(["reduce", ""]) == 2
        capsys.readouterr()
