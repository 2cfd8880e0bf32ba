import json

import pytest

import gbent
from gbent.cli import main

GBENT16_EXPR = "x1 + 2*(x1*x2 (+) x3*x4)"


@pytest.fixture()
def gbent16_path(tmp_path):
    path = tmp_path / "gbent16.gbf"
    gbent.write_gbf(gbent.parse_expression(GBENT16_EXPR, 4, 2), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_quartic_demo_text(capsys):
    code, out, err = run(capsys, "analyze", "-e", "x1*x2 + 2*x1", "-n", "2", "-k", "2")
    assert code == 0
    assert "table:    0 0 2 3" in out
    assert "complex=1-1i" in out
    assert "complex=-1+1i" in out
    assert "complex=3+1i" in out
    assert "gbent:    false" in out


def test_analyze_json_schema(capsys):
    code, out, _ = run(
        capsys, "analyze", "-e", "x1*x2 + 2*x1", "-n", "2", "-k", "2",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["table"] == [0, 0, 2, 3]
    assert doc["spectrum"]["norms"] == [2, 2, 10, 2]
    assert doc["gbent"]["ok"] is False
    assert doc["strength"] == 5


def test_analyze_zero(capsys):
    code, out, _ = run(
        capsys, "analyze", "-e", "0", "-n", "2", "-k", "2", "--format", "json"
    )
    doc = json.loads(out)
    assert doc["gbent"]["ok"] is False
    assert doc["spectrum"]["values"][0] == {"coeffs": [4, 0]}


def test_analyze_file_gbent16(capsys, gbent16_path):
    code, out, _ = run(capsys, "analyze", "-f", gbent16_path, "--format", "json")
    assert code == 0
    assert json.loads(out)["gbent"]["ok"] is True


def test_check_gb4_gbent16(capsys, gbent16_path):
    code, out, _ = run(capsys, "check", "gb4", "-f", gbent16_path)
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and doc["cond_i"]["ok"] and doc["cond_ii"]["ok"]


def test_check_srg(capsys, gbent16_path):
    code, out, _ = run(
        capsys, "check", "srg", "-f", gbent16_path, "--x", "0,1", "--y", "2,3"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] and doc["report"]["e"] == doc["report"]["d"] == 2


def test_check_butson_witness(capsys):
    code, out, _ = run(
        capsys, "check", "butson", "-e", "x1*x2 + 2*x1", "-n", "2", "-k", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is False and doc["witness_entry"] is not None


def test_check_gbent_and_bent(capsys, gbent16_path):
    code, out, _ = run(capsys, "check", "gbent", "-f", gbent16_path)
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(
        capsys, "check", "bent", "-t", "0,0,0,1", "-n", "2", "-k", "1"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and doc["wht"] == [2, 2, 2, -2]


def test_check_bent_needs_k1(capsys):
    code, _, err = run(capsys, "check", "bent", "-t", "0,0,2,3", "-n", "2", "-k", "2")
    assert code == 2 and "k = 1" in err


def test_check_necessary_and_local_srg(capsys, gbent16_path):
    code, out, _ = run(capsys, "check", "necessary", "-f", gbent16_path)
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "check", "local-srg", "-t", "0,0,2,3", "-n", "2", "-k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True and doc["weight_set"] == [2, 3]


def test_check_counting_identity(capsys):
    table = ",".join(
        str(v) for v in gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4).table
    )
    code, out, _ = run(
        capsys, "check", "counting-identity", "-t", table, "-n", "4", "-k", "1",
        "--x", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["certified"] and doc["ok"] is True


def test_check_srg_missing_sets(capsys, gbent16_path):
    code, _, err = run(capsys, "check", "srg", "-f", gbent16_path)
    assert code == 2 and "--x" in err


def test_check_gb4_odd_n(capsys):
    code, _, err = run(capsys, "check", "gb4", "-e", "x1", "-n", "3", "-k", "2")
    assert code == 2 and "odd" in err


def test_audit_exhaustive_exit_and_report(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "audit", "-n", "2", "-k", "2", "--exhaustive", "--out", str(out_path)
    )
    assert code == 0
    assert "total=256" in out
    doc = json.loads(out_path.read_text())
    assert doc["kind"] == "audit-report"
    assert doc["invariant_violations"] == 0
    assert doc["tallies"]["gbent"] == 64


def test_audit_budget_exceeded(capsys):
    code, _, err = run(capsys, "audit", "-n", "4", "-k", "2", "--exhaustive")
    assert code == 2 and "budget" in err


def test_audit_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("GBENT_AUDIT_BUDGET", "10")
    code, _, err = run(capsys, "audit", "-n", "2", "-k", "2", "--exhaustive")
    assert code == 2 and "budget" in err


def test_audit_exit_one_on_invariant_violation(capsys, monkeypatch):
    # the exit-code contract: a report carrying forbidden exceptions must
    # map to exit 1 (a violation cannot be produced by correct math, so
    # the report is stubbed)
    import gbent.cli as cli

    real = gbent.audit(2, 2, scope="exhaustive")
    real.invariant_violations = 3
    monkeypatch.setattr(cli, "audit", lambda *a, **kw: real)
    code, out, _ = run(capsys, "audit", "-n", "2", "-k", "2", "--exhaustive")
    assert code == 1


def test_audit_random_deterministic_bytes(capsys):
    argv = ["audit", "-n", "2", "-k", "2", "--random", "200", "--seed", "5",
            "--format", "json"]
    code_a, out_a, _ = run(capsys, *argv)
    code_b, out_b, _ = run(capsys, *argv)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_export_dot(capsys):
    code, out, _ = run(
        capsys, "export", "-t", "0,0,2,3", "-n", "2", "-k", "2",
        "--format", "dot", "--variant", "full",
    )
    assert code == 0
    assert out.count(" -- ") == 6
    code, out2, _ = run(
        capsys, "export", "-t", "0,0,2,3", "-n", "2", "-k", "2",
        "--format", "dot", "--variant", "modified",
    )
    assert out2.count(" -- ") == 4


def test_export_json_roundtrip(capsys):
    code, out, _ = run(
        capsys, "export", "-t", "0,0,2,3", "-n", "2", "-k", "2", "--format", "json"
    )
    assert code == 0
    assert gbent.graph_from_json(out).table.tolist() == [0, 0, 2, 3]


def test_export_deterministic(capsys, gbent16_path):
    code_a, out_a, _ = run(capsys, "export", "-f", gbent16_path, "--format", "graphml")
    code_b, out_b, _ = run(capsys, "export", "-f", gbent16_path, "--format", "graphml")
    assert out_a == out_b and code_a == 0


def test_search_exhaustive_count(capsys):
    code, out, _ = run(capsys, "search", "-n", "2", "-k", "2", "--exhaustive")
    assert code == 0
    assert "# found 64 gbent functions (scanned 256)" in out
    # every emitted block is really gbent
    blocks = [b for b in out.split("# gbent ")[1:]]
    body = blocks[0].splitlines()
    f = gbent.parse_gbf("\n".join(body[1:3]))
    assert gbent.is_gbent(f).ok


def test_search_construct(capsys):
    code, out, _ = run(capsys, "search", "-n", "4", "-k", "2", "--construct")
    assert code == 0 and "# found 8 gbent functions" in out


def test_search_odd_n_bent_is_empty(capsys):
    code, out, _ = run(capsys, "search", "-n", "3", "-k", "1", "--exhaustive")
    assert code == 0
    assert "# found 0 gbent functions (scanned 256)" in out


def test_input_source_validation(capsys, gbent16_path):
    code, _, err = run(capsys, "analyze", "-n", "2", "-k", "2")
    assert code == 2 and "exactly one input" in err
    code, _, err = run(
        capsys, "analyze", "-f", gbent16_path, "-e", "x1", "-n", "2", "-k", "2"
    )
    assert code == 2
    code, _, err = run(capsys, "analyze", "-e", "x1*", "-n", "2", "-k", "2")
    assert code == 2 and "position" in err


def test_bad_gbf_file(capsys, tmp_path):
    path = tmp_path / "bad.gbf"
    path.write_text("n=2 k=2\n0 0 2\n")
    code, _, err = run(capsys, "analyze", "-f", str(path))
    assert code == 2
