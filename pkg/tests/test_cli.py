"""End-to-end tests of the command line through ``main(argv)``.

Exit codes: 0 for a completed run (including negative verdicts), 2 for bad
input, 3 for tripped size guards, 4 when a margin is too thin to trust."""

import csv
import json

from quandlelab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# quandle commands
# ---------------------------------------------------------------------------

def test_validate_builtin(capsys):
    code, payload, _ = run_json(capsys, "quandle", "validate", "dihedral:3")
    assert code == 0
    assert payload["valid"] is True
    assert payload["n"] == 3


def test_validate_reports_failure_without_failing(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 2, "table": [[1, 1], [0, 0]]}))
    code, payload, _ = run_json(capsys, "quandle", "validate", str(p))
    assert code == 0
    assert payload["valid"] is False
    assert payload["axiom"] == "idempotency"
    assert payload["witness"] is not None


def test_validate_human_line(capsys):
    code, out, _ = run(capsys, "quandle", "validate", "dihedral:3")
    assert code == 0
    assert "valid" in out


def test_iso_finds_relabeling(capsys, tmp_path):
    from quandlelab.quandles import dihedral_quandle

    moved = dihedral_quandle(3).relabel((1, 2, 0))
    p = tmp_path / "relabeled.json"
    p.write_text(json.dumps({"n": 3, "table": [list(r) for r in moved.table]}))
    code, payload, _ = run_json(capsys, "quandle", "iso", "dihedral:3", str(p))
    assert code == 0
    assert payload["isomorphic"] is True
    assert sorted(payload["witness"]) == [0, 1, 2]


def test_iso_negative_still_exits_zero(capsys):
    code, payload, _ = run_json(capsys, "quandle", "iso",
                                "trivial:4", "dihedral:4")
    assert code == 0
    assert payload["isomorphic"] is False
    assert payload["witness"] is None


def test_enumerate_small(capsys):
    code, payload, _ = run_json(capsys, "quandle", "enumerate", "4")
    assert code == 0
    assert payload["count"] == 7
    assert len(payload["tables"]) == 7


def test_enumerate_guard_exit_code(capsys):
    code, out, err = run(capsys, "quandle", "enumerate", "9")
    assert code == 3
    assert "error" in err.lower() or err


def test_bad_builtin_exit_code(capsys):
    code, out, err = run(capsys, "quandle", "validate", "dihedral:0")
    assert code == 2


# ---------------------------------------------------------------------------
# topology commands
# ---------------------------------------------------------------------------

def test_topo_enumerate_chain(capsys):
    code, payload, _ = run_json(capsys, "topo", "enumerate",
                                "--topology", "chain:3")
    assert code == 0
    assert payload["count"] == 1
    assert payload["tables"] == [[[0, 0, 0], [1, 1, 1], [2, 2, 2]]]


def test_topo_check_positive(capsys):
    code, payload, _ = run_json(capsys, "topo", "check",
                                "--quandle", "dihedral:3",
                                "--topology", "discrete:3")
    assert code == 0
    assert payload["topological_quandle"] is True


def test_topo_check_negative_is_a_result(capsys):
    code, payload, _ = run_json(capsys, "topo", "check",
                                "--quandle", "dihedral:3",
                                "--topology", "chain:3")
    assert code == 0
    assert payload["topological_quandle"] is False
    assert payload["axiom"]


def test_topo_check_size_mismatch(capsys):
    code, _, err = run(capsys, "topo", "check",
                       "--quandle", "dihedral:3", "--topology", "chain:4")
    assert code == 2


# ---------------------------------------------------------------------------
# affine commands
# ---------------------------------------------------------------------------

def test_affine_decide_equal_parameters(capsys):
    code, payload, _ = run_json(capsys, "affine", "decide",
                                "--t1", "1/2", "--t2", "1/2")
    assert code == 0
    assert payload == {"verdict": "Iso", "certificate": None}


def test_affine_decide_distinct_parameters(capsys):
    code, payload, _ = run_json(capsys, "affine", "decide",
                                "--t1", "1/2", "--t2", "1/4")
    assert code == 0
    assert payload["verdict"] == "NonIso"
    cert = payload["certificate"]
    assert cert["case"] == "RationalBetween"
    assert (cert["m"], cert["n"]) == (1, 2)


def test_affine_decide_circle(capsys):
    code, payload, _ = run_json(capsys, "affine", "decide", "--circle",
                                "--t1", "1/2", "--t2", "1/3")
    assert code == 0
    assert payload["verdict"] == "NonIso"
    assert payload["certificate"]["surface"] == "circle"


def test_affine_circle_domain_error(capsys):
    code, _, err = run(capsys, "affine", "decide", "--circle",
                       "--t1", "3/2", "--t2", "1/3")
    assert code == 2


def test_affine_decide_diagonal(capsys):
    code, payload, _ = run_json(capsys, "affine", "decide",
                                "--diag", "2,3:3,2")
    assert code == 0
    assert payload["verdict"] == "Iso"
    assert payload["witness"] == [1, 0]


def test_affine_decide_requires_parameters(capsys):
    code, _, err = run(capsys, "affine", "decide")
    assert code == 2


def test_check_cert_round_trip(capsys, tmp_path):
    _, payload, _ = run_json(capsys, "affine", "decide",
                             "--t1", "7/2", "--t2", "9/2")
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(payload["certificate"]))
    code, checked, _ = run_json(capsys, "affine", "check-cert", str(p))
    assert code == 0
    assert checked["valid"] is True
    assert checked["margin"] > 0


def test_check_cert_rejects_tampering(capsys, tmp_path):
    _, payload, _ = run_json(capsys, "affine", "decide",
                             "--t1", "1/2", "--t2", "1/4")
    cert = payload["certificate"]
    cert["t2"] = cert["t1"]
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(cert))
    code, checked, _ = run_json(capsys, "affine", "check-cert", str(p))
    assert code == 0
    assert checked["valid"] is False


def test_check_cert_thin_margin_exit_code(capsys, tmp_path):
    cert = {"case": "RationalBetween", "t1": "1/2", "t2": "1/4",
            "m": 1, "n": 1, "surface": "line"}
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(cert))
    code, _, err = run(capsys, "affine", "check-cert", str(p))
    assert code == 4


# ---------------------------------------------------------------------------
# polynomial commands
# ---------------------------------------------------------------------------

def test_poly_classify_affine(capsys):
    code, payload, _ = run_json(capsys, "poly", "classify", "2*x - y")
    assert code == 0
    assert payload["kind"] == "affine"
    assert payload["parameter"] == "2"
    assert payload["interval_verdict"]["kind"] == "violates_boundary"
    assert payload["degree_stats"] == {"f_x": 1, "f_y": 1, "f_xy": 1}


def test_poly_classify_non_distributive(capsys):
    code, payload, _ = run_json(capsys, "poly", "classify", "x*y")
    assert code == 0
    assert payload["kind"] == "not_distributive"
    assert payload["witness"] is not None
    assert payload["interval_verdict"] is None


def test_poly_classify_bad_text(capsys):
    code, _, err = run(capsys, "poly", "classify", "x +")
    assert code == 2


def test_poly_classify_guard(capsys):
    code, _, err = run(capsys, "poly", "classify", "x^13")
    assert code == 3


# ---------------------------------------------------------------------------
# geometry commands
# ---------------------------------------------------------------------------

def test_geom_check_within_tolerance(capsys):
    code, payload, _ = run_json(capsys, "geom", "check", "--op", "sphere",
                                "--trials", "40", "--seed", "3")
    assert code == 0
    assert payload["within_tol"] is True
    assert payload["residuals"]["idempotency"] < 1e-9


def test_geom_check_seed_reproducible(capsys):
    _, a, _ = run_json(capsys, "geom", "check", "--op", "rotation",
                       "--trials", "30", "--seed", "5")
    _, b, _ = run_json(capsys, "geom", "check", "--op", "rotation",
                       "--trials", "30", "--seed", "5")
    _, c, _ = run_json(capsys, "geom", "check", "--op", "rotation",
                       "--trials", "30", "--seed", "6")
    assert a == b
    assert a["residuals"] != c["residuals"]


def test_geom_check_bad_angle(capsys):
    code, _, err = run(capsys, "geom", "check", "--op", "rotation",
                       "--psi", "0.0")
    assert code == 2


# ---------------------------------------------------------------------------
# coloring commands
# ---------------------------------------------------------------------------

def test_color_count_trefoil(capsys):
    code, payload, _ = run_json(capsys, "color", "count",
                                "--braid", "B2: s1 s1 s1",
                                "--quandle", "dihedral:3")
    assert code == 0
    assert payload["count"] == 9
    assert payload["components"] == 1


def test_color_count_linear_agrees(capsys):
    args = ("color", "count", "--braid", "B2: s1 s1 s1",
            "--quandle", "alexander:3:2")
    _, brute, _ = run_json(capsys, *args)
    _, linear, _ = run_json(capsys, *args, "--linear")
    assert brute["count"] == linear["count"] == 9
    assert linear["method"] == "linear"


def test_color_count_linear_needs_alexander(capsys):
    code, _, err = run(capsys, "color", "count",
                       "--braid", "B2: s1 s1 s1",
                       "--quandle", "dihedral:3", "--linear")
    assert code == 2


def test_color_count_bad_braid(capsys):
    code, _, err = run(capsys, "color", "count",
                       "--braid", "B2: s9", "--quandle", "dihedral:3")
    assert code == 2


def test_color_count_guard(capsys):
    code, _, err = run(capsys, "color", "count",
                       "--braid", "B8: s1 s2 s3 s4 s5 s6 s7",
                       "--quandle", "dihedral:10")
    assert code == 3


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def test_report_writes_tables_and_figures(capsys, tmp_path):
    code, payload, _ = run_json(capsys, "report", "--outdir", str(tmp_path),
                                "--max-n", "4", "--trials", "40")
    assert code == 0
    names = sorted(p.rsplit("/", 1)[-1] for p in payload["written"])
    assert names == [
        "affine_ratios.csv", "affine_ratios.png",
        "census.csv", "census.png",
        "geometry_residuals.csv", "geometry_residuals.png",
    ]
    for p in payload["written"]:
        with open(p, "rb") as fh:
            head = fh.read(8)
        assert head, p
        if p.endswith(".png"):
            assert head.startswith(b"\x89PNG"), p
    with open(tmp_path / "census.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["n"]) for r in rows] == [1, 2, 3, 4]
    assert [int(r["classes"]) for r in rows] == [1, 1, 3, 7]
