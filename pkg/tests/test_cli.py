"""Command-line interface: reports, caching, configuration validation."""

import json
import os

import pytest

from schurq.cli import REPORT_SCHEMA, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_root_data_report(capsys):
    code, out = run_cli(capsys, "root-data", "--type", "A2")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == REPORT_SCHEMA
    assert report["results"]["weyl_order"] == 6
    assert report["results"]["flag_betti"] == [1, 0, 2, 0, 2, 0, 1]
    assert report["config_hash"]


def test_reports_byte_identical(tmp_path, capsys):
    p = tmp_path / "report.json"
    blobs = []
    for _ in range(2):
        code, _ = run_cli(
            capsys, "hilbert", "--type", "A2", "--cap", "5", "--out", str(p)
        )
        assert code == 0
        blobs.append(p.read_bytes())
        p.unlink()
    assert blobs[0] == blobs[1]


def test_hilbert_pbw_confirmed(capsys):
    code, out = run_cli(capsys, "hilbert", "--type", "A2", "--cap", "6")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["pbw"] == "confirmed"
    assert all(row["equal"] for row in results["table"])


def test_cache_store_then_hit(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, out1 = run_cli(
        capsys, "hilbert", "--type", "A2", "--cap", "5", "--cache", str(cache)
    )
    assert code == 0
    r1 = json.loads(out1)
    assert [e["event"] for e in r1["cache_events"]] == ["stored"]
    code, out2 = run_cli(
        capsys, "hilbert", "--type", "A2", "--cap", "5", "--cache", str(cache)
    )
    assert code == 0
    r2 = json.loads(out2)
    assert [e["event"] for e in r2["cache_events"]] == ["hit"]
    assert r1["results"] == r2["results"]


def test_corrupted_cache_quarantined_and_recomputed(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, out1 = run_cli(
        capsys, "hilbert", "--type", "A2", "--cap", "5", "--cache", str(cache)
    )
    assert code == 0
    r1 = json.loads(out1)
    (entry,) = [p for p in os.listdir(cache) if p.endswith(".json")]
    path = cache / entry
    path.write_bytes(b'{"payload": {"tampered": true}, "sha256": "0", "key": "x"}')
    code, out2 = run_cli(
        capsys, "hilbert", "--type", "A2", "--cap", "5", "--cache", str(cache)
    )
    assert code == 0
    r2 = json.loads(out2)
    events = [e["event"] for e in r2["cache_events"]]
    assert "quarantined" in events and "stored" in events
    assert r2["results"] == r1["results"]
    assert any(p.endswith(".quarantine") for p in os.listdir(cache))


def test_check_module_simple(capsys):
    code, out = run_cli(
        capsys, "check-module", "--type", "A1", "--module", "simple:1"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["relations_pass"] is True
    assert results["simple"] is True


def test_schur_check_command(capsys):
    code, out = run_cli(
        capsys,
        "schur-check", "--type", "A1", "--window", "4", "--homcap", "2",
    )
    assert code == 0
    schur = json.loads(out)["results"]["schur"]
    assert schur["verdict"] == "match"
    assert schur["computed_betti"] == [1, 0, 1]


def test_koszul_check_command(capsys):
    code, out = run_cli(
        capsys,
        "koszul-check", "--type", "A1", "--window", "4", "--homcap", "2",
        "--modules", "trivial;verma:-1:floor",
    )
    assert code == 0
    rep = json.loads(out)["results"]["koszul"]
    assert rep["verdict"] == "generated"


def test_config_file_with_flag_override(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"series": "A", "rank": 2, "cap": 4}))
    code, out = run_cli(
        capsys, "hilbert", "--config", str(cfgfile), "--cap", "5"
    )
    assert code == 0
    report = json.loads(out)
    assert report["config"]["rank"] == 2
    assert report["config"]["cap"] == 5  # flag wins


@pytest.mark.parametrize(
    "argv",
    [
        ("root-data", "--type", "Z2"),
        ("root-data", "--type", "A"),
        ("schur-check", "--type", "A1", "--f", "qinteger", "--q", "1"),
        ("schur-check", "--type", "A1", "--f", "qinteger", "--q", "0"),
        ("schur-check", "--type", "A1", "--f", "qinteger", "--q", "-1"),
        ("schur-check", "--type", "A1", "--q", "2"),  # classical has no q
        ("ext", "--type", "A1", "--module", "nonsense:1"),
        ("schur-check", "--type", "A1", "--window", "2", "--homcap", "4"),
    ],
)
def test_config_errors_exit_two(capsys, argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    assert code == 2
    assert "error" in captured.err


def test_unknown_config_field_rejected(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"series": "A", "rank": 1, "vibes": True}))
    code = main(["root-data", "--config", str(cfgfile)])
    captured = capsys.readouterr()
    assert code == 2
    assert "vibes" in captured.err
