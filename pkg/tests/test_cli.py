"""Command-line entry points and file formats."""

import json

import pytest

from btprim import cli


def test_no_command_is_usage_error(capsys):
    assert cli.main([]) == 2
    capsys.readouterr()


def test_group_table(tmp_path):
    out = tmp_path / "table.csv"
    assert cli.main(["group", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "g,inverse,order,re_trace,class"
    assert len(lines) == 25
    assert lines[1] == "0,0,1,2,0"


def test_synth_emit_and_counts(tmp_path):
    circ = tmp_path / "trace.txt"
    counts = tmp_path / "counts.csv"
    assert cli.main(["synth", "trace", "--theta", "0.7",
                     "--emit", str(circ), "--counts", str(counts)]) == 0
    assert circ.read_text().startswith("# wires 5")
    assert counts.read_text().splitlines()[0] == "gate_kind,count"


def test_synth_roundtrips_through_verify(tmp_path):
    circ = tmp_path / "inv.txt"
    assert cli.main(["synth", "inversion", "--emit", str(circ),
                     "--counts", str(circ) + ".csv"]) == 0
    rc = cli.main(["verify", "--arch", "qubit", "--primitive", "inversion",
                   str(circ), "--against", "inversion"])
    assert rc == 0


def test_synth_lower_and_route(tmp_path):
    circ = tmp_path / "trace_routed.txt"
    assert cli.main(["synth", "trace", "--route",
                     "--emit", str(circ), "--counts", str(circ) + ".csv"]) == 0
    assert circ.read_text().startswith("# wires 7")


def test_verify_qubit_primitives(capsys):
    assert cli.main(["verify", "--arch", "qubit",
                     "--primitive", "trace"]) == 0
    assert "ok" in capsys.readouterr().out


def test_verify_qudit_inversion(capsys):
    assert cli.main(["verify", "--arch", "qudit",
                     "--primitive", "inversion"]) == 0
    capsys.readouterr()


def test_resources_json(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["resources", "--d", "2", "--L", "6", "--nt", "5",
                     "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["spec"]["d"] == 2
    assert data["totals"]["links"] == 2 * 6**2


def test_compile_snap_quick(tmp_path, capsys):
    # the trivial diagonal branch of the compiler through the CLI
    out = tmp_path / "params.txt"
    rc = cli.main(["compile-snap", "--target", "inversion", "--layers", "2",
                   "--restarts", "1", "--maxiter", "40", "--out", str(out)])
    assert rc == 0
    assert out.read_text().startswith("# target inversion")
    capsys.readouterr()


def test_fidelity_csv(tmp_path):
    out = tmp_path / "fid.csv"
    assert cli.main(["fidelity", "--primitive", "trace", "--p", "0.0",
                     "--shots", "4", "--twirls", "2",
                     "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "state,primitive,shots,twirls,fidelity,error"
    assert len(lines) == 25  # 24 basis states
    assert all(",1.000000," in ln for ln in lines[1:])


def test_mc_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    rc = cli.main(["mc", "--dim", "3", "--extent", "3",
                   "--beta-min", "0.5", "--beta-max", "4.0",
                   "--beta-steps", "2", "--therm", "20", "--sweeps", "40",
                   "--out", str(out)])
    assert rc == 0
    assert out.read_text().splitlines()[0] == "beta,E0,err,acceptance,start"
    assert "steepest drop" in capsys.readouterr().out
