"""Command-line surface: output shapes, exit codes, determinism."""

from __future__ import annotations

import json

from klsumfree.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_lambda_all(capsys):
    code, doc, _ = run_json(capsys, "lambda", "--group", "10", "--k", "3", "--l", "1")
    assert code == 0
    assert doc["schema"] == "klsumfree/1"
    assert doc["formula"] == 2
    assert doc["bounds"]["lower"] == 2 and doc["bounds"]["upper"] == 5
    assert doc["exact"]["value"] == 2


def test_lambda_exact_non_cyclic(capsys):
    code, doc, _ = run_json(
        capsys, "lambda", "--group", "2x4", "--k", "2", "--l", "1", "--method", "exact"
    )
    assert code == 0 and doc["exact"]["value"] == 4


def test_lambda_degenerate_note(capsys):
    code, doc, _ = run_json(capsys, "lambda", "--group", "4", "--k", "5", "--l", "1")
    assert code == 0
    assert doc["bounds"]["lower"] == 0 and doc["bounds"]["upper"] == 0
    assert "note" in doc


def test_lambda_formula_unavailable_exits_2(capsys):
    code, out, err = run(
        capsys, "lambda", "--group", "12", "--k", "4", "--l", "2", "--method", "formula"
    )
    assert code == 2
    assert "bounds" in err


def test_lambda_bad_group_exits_2(capsys):
    code, _, err = run(capsys, "lambda", "--group", "2x3", "--k", "2", "--l", "1")
    assert code == 2 and "invariant-factor" in err


def test_lambda_limit_exits_3(capsys):
    code, _, err = run(
        capsys,
        "lambda", "--group", "30", "--k", "2", "--l", "1",
        "--method", "exact", "--limit", "10",
    )
    assert code == 3 and "limit" in err.lower()


def test_limit_env_var(capsys, monkeypatch):
    monkeypatch.setenv("KLSF_LIMIT_EXACT", "5")
    code, _, _ = run(
        capsys, "lambda", "--group", "30", "--k", "2", "--l", "1", "--method", "exact"
    )
    assert code == 3
    # explicit flag wins over the environment
    code, _, _ = run(
        capsys,
        "lambda", "--group", "30", "--k", "2", "--l", "1",
        "--method", "exact", "--limit", "30",
    )
    assert code == 0


def test_verify_positive(capsys):
    code, out, _ = run(
        capsys, "verify", "--group", "8", "--set", "1,3,5,7", "--k", "2", "--l", "1"
    )
    assert code == 0 and "is (2,1)-sum-free" in out


def test_verify_negative_prints_identity(capsys):
    code, doc, _ = run_json(
        capsys, "verify", "--group", "5", "--set", "1,2", "--k", "3", "--l", "1"
    )
    assert code == 1
    assert doc["sum_free"] is False
    ktuple, ltuple = doc["violation"]["k_tuple"], doc["violation"]["l_tuple"]
    assert len(ktuple) == 3 and len(ltuple) == 1
    ksum = sum(c[0] for c in ktuple) % 5
    assert ksum == ltuple[0][0] % 5


def test_verify_product_group_set_syntax(capsys):
    code, out, _ = run(
        capsys, "verify", "--group", "2x4", "--set", "0:1,1:1", "--k", "2", "--l", "1"
    )
    assert code == 0


def test_verify_bad_set_exits_2(capsys):
    code, _, err = run(
        capsys, "verify", "--group", "2x4", "--set", "1,2", "--k", "2", "--l", "1"
    )
    assert code == 2 and "coordinates" in err


def test_witness_json_schema(capsys):
    code, doc, _ = run_json(capsys, "witness", "--group", "10", "--k", "3", "--l", "1")
    assert code == 0
    assert doc["size"] == 2 and doc["k"] == 3 and doc["l"] == 1
    assert doc["construction"]["certificate"] is not None


def test_alpha_command(capsys):
    code, doc, _ = run_json(
        capsys, "alpha", "--n", "10", "--k", "3", "--l", "1", "--exact"
    )
    assert code == 0
    assert doc["case"] == "intermediate"
    assert doc["lower"] == 2 and doc["upper"] == 3
    assert doc["exact_search"] == 2


def test_count_command(capsys):
    code, doc, _ = run_json(capsys, "count", "--group", "7", "--k", "2", "--l", "1")
    assert code == 0
    assert doc["total"] == 16 and doc["by_size"]["0"] == 1
    assert doc["total"] >= 4


def test_enumerate_command(capsys):
    code, doc, _ = run_json(capsys, "enumerate", "--group", "3", "--k", "2", "--l", "1")
    assert code == 0
    assert doc["sets"] == [[1], [2]] and doc["max_size"] == 1


def test_scan_cyclic_formula_vs_exact(capsys):
    code, out, err = run(
        capsys,
        "scan", "--n", "2..36", "--k", "3", "--l", "1", "--check", "formula-vs-exact",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "group,k,l,formula,lower,upper,exact,witness_size,agree"
    assert len(lines) == 36  # header + 35 rows
    assert "0 disagreements" in err


def test_scan_family_green_ruzsa(capsys):
    code, doc, _ = run_json(
        capsys,
        "scan", "--family", "all-abelian", "--order", "2..16",
        "--k", "2", "--l", "1", "--check", "green-ruzsa",
    )
    assert code == 0
    assert doc["disagreements"] == 0
    assert doc["instances"] == 24


def test_scan_bounds_check(capsys):
    code, doc, _ = run_json(
        capsys, "scan", "--n", "2..24", "--k", "4", "--l", "2", "--check", "bounds"
    )
    assert code == 0 and doc["disagreements"] == 0


def test_scan_partial_rows_marked(capsys):
    code, doc, _ = run_json(
        capsys,
        "scan", "--n", "2..30", "--k", "2", "--l", "1",
        "--check", "bounds", "--limit", "20",
    )
    assert code == 0
    assert doc["skipped"] == 10
    skipped_rows = [r for r in doc["rows"] if r["agree"] is None]
    assert len(skipped_rows) == 10
    assert all(r["exact"] is None for r in skipped_rows)


def test_scan_unknown_check_exits_2(capsys):
    code, _, err = run(
        capsys, "scan", "--n", "2..6", "--k", "2", "--l", "1", "--check", "nope"
    )
    assert code == 2 and "unknown check" in err


def test_scan_json_deterministic(capsys):
    args = ("scan", "--n", "2..16", "--k", "2", "--l", "1", "--check", "bounds", "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_usage_error_exit_code(capsys):
    assert main(["lambda", "--group", "10"]) == 2  # missing --k/--l
    assert main(["nope"]) == 2


def test_scan_theorem16_and_lift_identity(capsys):
    code, doc, _ = run_json(
        capsys,
        "scan", "--family", "all-abelian", "--order", "2..12",
        "--k", "3", "--l", "1", "--check", "theorem16,lift-identity",
    )
    assert code == 0 and doc["disagreements"] == 0


def test_count_env_limit(capsys, monkeypatch):
    monkeypatch.setenv("KLSF_LIMIT_COUNT", "5")
    code, _, err = run(capsys, "count", "--group", "12", "--k", "2", "--l", "1")
    assert code == 3 and "limit" in err.lower()


def test_alpha_env_limit(capsys, monkeypatch):
    monkeypatch.setenv("KLSF_LIMIT_AP", "5")
    code, _, _ = run(capsys, "alpha", "--n", "10", "--k", "2", "--l", "1", "--exact")
    assert code == 3
