import json

import pytest

from maxcurves.cache import ResultsCache, content_key
from maxcurves.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_command(capsys):
    code, out, _ = run_cli(["field", "--p", "5", "--k", "3", "--no-cache"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 125
    assert payload["modulus"] == [1, 1, 0, 1]
    assert payload["group_order"] == 124


def test_construct_command(capsys):
    code, out, _ = run_cli(
        ["construct", "--model", "quotient-rational", "--sqrt-q", "5", "--no-cache"],
        capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["tag"] == "quotient-rational-sq5"
    assert payload["poly"]["degree"] == 6
    assert payload["poly"]["field"] == {"p": 5, "k": 2, "modulus": [2, 0, 1]}
    assert payload["expected_genus"] == 3


def test_count_command_and_cache(tmp_path, capsys):
    args = ["count", "--model", "hermitian", "--sqrt-q", "5",
            "--cache-dir", str(tmp_path)]
    code1, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical reruns
    assert json.loads(out1)["total"] == 126
    assert list(tmp_path.glob("*.json")), "cache file written"


def test_census_rows(tmp_path, capsys):
    code, out, _ = run_cli(
        ["census", "--sqrt-q", "3", "--cache-dir", str(tmp_path)], capsys)
    assert code == 0
    rows = json.loads(out)
    assert [(r["d"], r["genus"], r["measured"]) for r in rows] == [
        (1, 3, 28), (7, 0, 10)]
    assert all(r["verdict"] == "pass" for r in rows)
    # warm-cache rerun is byte-identical
    code2, out2, _ = run_cli(
        ["census", "--sqrt-q", "3", "--cache-dir", str(tmp_path)], capsys)
    assert code2 == 0 and out2 == out
    # csv output carries the documented column order
    code, out, _ = run_cli(
        ["census", "--sqrt-q", "3", "--format", "csv", "--cache-dir", str(tmp_path)],
        capsys)
    header = out.splitlines()[0]
    assert header == "sqrt_q,d,genus,expected,measured,dim_d,method,verdict"


def test_quotient_command(tmp_path, capsys):
    code, out, _ = run_cli(
        ["quotient", "--sqrt-q", "5", "--d", "3", "--cache-dir", str(tmp_path)],
        capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["burnside"]["count"] == 56
    assert payload["burnside"]["n_js"] == [126, 21, 21]
    assert payload["hurwitz"]["identity_holds"]
    assert payload["divisor"]["admissible"]


def test_quotient_skip_on_cap(capsys):
    code, out, _ = run_cli(
        ["quotient", "--sqrt-q", "5", "--d", "21", "--lang-s-max", "1", "--no-cache"],
        capsys)
    assert code == 0  # skipped is not failed
    assert "skipped" in json.loads(out)["burnside"]


def test_semigroup_command(capsys):
    code, out, _ = run_cli(["semigroup", "--gens", "3,5,6", "--no-cache"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["gaps"] == [1, 2, 4, 7]
    assert payload["genus"] == 4


def test_dim_d_command(capsys):
    code, out, _ = run_cli(["dim-d", "--sqrt-q", "5", "--d", "7", "--no-cache"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 5
    assert payload["qualifying"] == [14, 21, 28, 35]


def test_sv_command(capsys):
    code, out, _ = run_cli(
        ["sv", "--g", "10", "--degd", "6", "--r", "2", "--eps", "0,1,5",
         "--nu", "0,5", "--q", "25", "--no-cache"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["deg_frobenius"] == 252
    assert payload["bound"] == [126, 1]


def test_verify_maximal_pass_and_fail(tmp_path, capsys):
    code, _, _ = run_cli(
        ["verify-maximal", "--model", "hermitian", "--sqrt-q", "5",
         "--cache-dir", str(tmp_path)], capsys)
    assert code == 0
    code, out, _ = run_cli(
        ["verify-maximal", "--model", "hermitian", "--sqrt-q", "5",
         "--genus", "3", "--cache-dir", str(tmp_path)], capsys)
    assert code == 1
    assert json.loads(out)["verdict"]["verdict"] == "inconsistent"


def test_verify_paper_single_criterion(capsys):
    code, out, err = run_cli(
        ["verify-paper", "--only", "5-riemann-hurwitz-ledger", "--no-cache"], capsys)
    assert code == 0
    assert "PASS" in err
    payload = json.loads(out)
    assert payload[0]["passed"]


def test_usage_errors(capsys):
    code, _, err = run_cli(["count", "--model", "geer-vlugt", "--no-cache"], capsys)
    assert code == 2 and "needs" in err
    code, _, _ = run_cli(["count", "--model", "hermitian", "--sqrt-q", "6",
                          "--no-cache"], capsys)
    assert code == 2  # 6 is not a prime power


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# knobs\nlang_s_max = 1\nformat = json\n")
    code, out, _ = run_cli(
        ["quotient", "--sqrt-q", "5", "--d", "21", "--config", str(cfg),
         "--no-cache"], capsys)
    assert code == 0
    assert "skipped" in json.loads(out)["burnside"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("unknown_knob = 1\n")
    code, _, err = run_cli(["field", "--p", "5", "--k", "1", "--config", str(bad)],
                           capsys)
    assert code == 2 and "unknown key" in err


def test_model_serialization_is_reproducible():
    # every deterministic choice (moduli, frame root, scaling constant)
    # feeds these hashes; a change here means construction drifted across
    # runs and cache keys went stale
    from maxcurves import quotient_model_rational

    assert content_key(quotient_model_rational(5).serialize()) == (
        "92486ffb320944bd16d755807df10a7072189a1c2098f587fb63d646a99175de")
    assert content_key(quotient_model_rational(8).serialize()) == (
        "11f66bfd9096c4ed7487c3921af166c085bb8b0422213467c182f52cf07a975a")


def test_cache_keys_distinguish_payloads():
    a = content_key({"kind": "count", "model": {"x": 1}, "k": 1})
    b = content_key({"kind": "count", "model": {"x": 2}, "k": 1})
    c = content_key({"kind": "count", "model": {"x": 1}, "k": 2})
    assert len({a, b, c}) == 3


def test_cache_roundtrip_and_corruption(tmp_path):
    cache = ResultsCache(tmp_path)
    payload = {"kind": "count", "model": {"m": 1}, "k": 1}
    cache.put(payload, {"total": 7})
    assert cache.get(payload) == {"total": 7}
    # corrupt the entry: the cache must treat it as a miss
    victim = next(tmp_path.glob("*.json"))
    victim.write_text("{not json")
    assert cache.get(payload) is None
    disabled = ResultsCache(None)
    disabled.put(payload, {"total": 7})
    assert disabled.get(payload) is None


@pytest.mark.parametrize("args", [
    ["--model", "hermitian", "--sqrt-q", "5"],
    ["--model", "hermitian-fermat", "--sqrt-q", "5"],
    ["--model", "envelope", "--sqrt-q", "5"],
    ["--model", "smooth-cyclic", "--sqrt-q", "5"],
    ["--model", "quotient-frame", "--sqrt-q", "5"],
    ["--model", "quotient-rational", "--sqrt-q", "5"],
    ["--model", "geer-vlugt", "--p", "3", "--m", "4", "--r", "1"],
    ["--model", "artin-schreier", "--sqrt-q", "5", "--t", "2"],
    ["--model", "fermat", "--sqrt-q", "5", "--t", "2"],
    ["--model", "char2-chain", "--sqrt-q", "4"],
])
def test_construct_all_tags(args, capsys):
    code, out, _ = run_cli(["construct", *args, "--no-cache"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["poly"]["terms"]


def test_table_format(capsys):
    code, out, _ = run_cli(
        ["census", "--sqrt-q", "3", "--format", "table", "--no-cache"], capsys)
    assert code == 0
    assert out.splitlines()[0].split() == list(
        ("sqrt_q", "d", "genus", "expected", "measured", "dim_d", "method", "verdict"))
