import json

import pytest

from hyperising.cli import main, parse_lambda

K2_DOC = {"n": 2, "edges": [{"v": [0, 1], "beta": 0.5}]}
PATH_DOC = {"n": 3, "edges": [{"v": [0, 1], "beta": 0.5},
                              {"v": [1, 2], "beta": 0.5}]}
EDGE3_DOC = {"n": 3, "edges": [{"v": [0, 1, 2], "beta": -1 / 3}]}


@pytest.fixture
def write_doc(tmp_path):
    def _write(doc, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return _write


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


def test_parse_lambda_formats():
    assert parse_lambda("0.5") == 0.5
    assert parse_lambda("0.25,-1.5") == complex(0.25, -1.5)
    assert parse_lambda("1e-3,2E2") == complex(0.001, 200.0)
    with pytest.raises(Exception):
        parse_lambda("a,b")


def test_approx_reports_value(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, rep, _ = run_cli(capsys, ["approx", path, "--lambda", "0.3",
                                    "--epsilon", "0.01"])
    assert code == 0
    z = complex(*rep["result"]["z_estimate"])
    assert abs(z - 1.39) <= 0.01 * 1.39
    assert rep["guarantee"] is True
    assert rep["input_digest"].startswith("sha256:")
    assert rep["result"]["m"] >= 1


def test_approx_unit_circle_exit_two(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, rep, err = run_cli(capsys, ["approx", path, "--lambda", "1,0",
                                      "--epsilon", "0.1"])
    assert code == 2
    assert rep is None  # no partial JSON
    assert "circle" in err.lower()


def test_missing_file_exit_one(capsys):
    code, rep, err = run_cli(capsys, ["approx", "/nonexistent.json",
                                      "--lambda", "0.3", "--epsilon", "0.1"])
    assert code == 1 and rep is None


def test_schema_error_exit_one(capsys, write_doc):
    path = write_doc({"n": 2, "edges": [{"v": [0, 0], "beta": 1.0}]})
    code, rep, err = run_cli(capsys, ["zeros", path])
    assert code == 1 and rep is None


def test_bad_lambda_exit_one(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, _, _ = run_cli(capsys, ["approx", path, "--lambda", "nope",
                                  "--epsilon", "0.1"])
    assert code == 1


def test_determinism_excluding_timings(capsys, write_doc):
    path = write_doc(PATH_DOC)
    argv = ["approx", path, "--lambda", "0.4,0.2", "--epsilon", "0.05"]
    _, rep1, _ = run_cli(capsys, argv)
    _, rep2, _ = run_cli(capsys, argv)
    rep1.pop("timings")
    rep2.pop("timings")
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_exact_command(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, rep, _ = run_cli(capsys, ["exact", path, "--lambda", "0.3",
                                    "--multivariate", "0.3;0.3"])
    assert code == 0
    assert complex(*rep["result"]["z"]) == pytest.approx(1.39)
    assert complex(*rep["result"]["z_multivariate"]) == pytest.approx(1.39)
    coeffs = [complex(*c) for c in rep["result"]["coefficients"]]
    assert coeffs == [1, 1, 1]


def test_zeros_command_three_edge(capsys, write_doc):
    path = write_doc(EDGE3_DOC)
    code, rep, _ = run_cli(capsys, ["zeros", path])
    assert code == 0
    assert rep["result"]["max_circle_deviation"] <= 1e-6
    assert rep["result"]["certified"] is True
    assert len(rep["result"]["roots"]) == 3


def test_check_range_command(capsys, write_doc):
    ok = write_doc({"n": 3, "edges": [{"v": [0, 1, 2], "beta": 0.4}]}, "a.json")
    code, rep, _ = run_cli(capsys, ["check-range", ok])
    assert code == 0 and rep["result"]["all_pass"] is True

    bad = write_doc({"n": 3, "edges": [{"v": [0, 1, 2], "beta": -0.4}]}, "b.json")
    code, rep, _ = run_cli(capsys, ["check-range", bad])
    assert code == 0 and rep["result"]["all_pass"] is False
    assert rep["result"]["edges"][0]["passes"] is False


def test_enumerate_command_counts(capsys, write_doc):
    path = write_doc(PATH_DOC)
    code, rep, _ = run_cli(capsys, ["enumerate", path, "--t", "2",
                                    "--emit-sets"])
    assert code == 0
    assert rep["result"]["counts"] == {"1": 3, "2": 2}
    assert rep["result"]["sets"]["2"] == [[0, 1], [1, 2]]
    assert rep["result"]["count_bounds"]["2"]["respected"] is True


def test_coeffs_command(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, rep, _ = run_cli(capsys, ["coeffs", path, "--m", "2"])
    assert code == 0
    e = [complex(*x) for x in rep["result"]["elementary"]]
    assert e[0] == pytest.approx(-1.0)
    assert e[1] == pytest.approx(1.0)
    p = [complex(*x) for x in rep["result"]["power_sums"]]
    assert p == [pytest.approx(-1.0), pytest.approx(-1.0)]
    c = [complex(*x) for x in rep["result"]["coefficients"]]
    assert c == [1, pytest.approx(1.0), pytest.approx(1.0)]


def test_coeffs_command_past_host_size(capsys, write_doc):
    path = write_doc(K2_DOC)
    code, rep, _ = run_cli(capsys, ["coeffs", path, "--m", "4"])
    assert code == 0
    e = [complex(*x) for x in rep["result"]["elementary"]]
    assert len(e) == 4
    assert abs(e[2]) < 1e-12 and abs(e[3]) < 1e-12  # vanish past n
    p = [complex(*x) for x in rep["result"]["power_sums"]]
    # K2 at beta = 0.5 has reciprocal roots e^{+-2 pi i/3}: p_t = 2cos(2 pi t/3)
    assert p[2] == pytest.approx(2.0) and p[3] == pytest.approx(-1.0)


def test_tight_example_command(capsys):
    code, rep, _ = run_cli(capsys, ["tight-example", "--k", "3",
                                    "--beta", "-0.4"])
    assert code == 0
    res = rep["result"]
    assert res["sign_change"][0] > 0 > res["sign_change"][1]
    assert 0 < res["bracket_root"] < 1
    assert res["circle_deviation"] > 1e-4

    code, rep, err = run_cli(capsys, ["tight-example", "--k", "3",
                                      "--beta", "0.5"])
    assert code == 1 and rep is None


def test_mcap_refusal_and_flag_override(capsys, write_doc, monkeypatch):
    doc = {"n": 8, "edges": [{"v": [i, i + 1], "beta": 0.5} for i in range(7)]}
    path = write_doc(doc)
    monkeypatch.setenv("HYPERISING_M_CAP", "1")
    code, rep, err = run_cli(capsys, ["approx", path, "--lambda", "0.5",
                                      "--epsilon", "0.1"])
    assert code == 2 and rep is None
    code, rep, _ = run_cli(capsys, ["approx", path, "--lambda", "0.5",
                                    "--epsilon", "0.1", "--m-cap", "24"])
    assert code == 0 and rep["result"]["m"] >= 1


def test_sweep_command_threads_deterministic(capsys, write_doc):
    path = write_doc(EDGE3_DOC)
    argv = ["sweep", path, "--beta-from", "-0.5", "--beta-to", "0.9",
            "--steps", "8"]
    code, rep1, _ = run_cli(capsys, argv)
    assert code == 0
    code, rep4, _ = run_cli(capsys, argv + ["--threads", "4"])
    assert code == 0
    rows1 = rep1["result"]["rows"]
    rows4 = rep4["result"]["rows"]
    assert [r["beta"] for r in rows1] == [r["beta"] for r in rows4]
    assert [r["max_circle_deviation"] for r in rows1] == \
        [r["max_circle_deviation"] for r in rows4]
    for row in rows1:
        if row["in_range"]:
            assert row["on_circle"]


def test_sweep_random_regular_with_seed(capsys):
    argv = ["sweep", "--random-regular", "8,3", "--beta-from", "0.1",
            "--beta-to", "0.9", "--steps", "3", "--seed", "5"]
    code, rep1, _ = run_cli(capsys, argv)
    code2, rep2, _ = run_cli(capsys, argv)
    assert code == code2 == 0
    assert rep1["result"] == rep2["result"]


def test_version_runs():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


def test_cross_process_determinism(write_doc):
    import subprocess
    import sys

    path = write_doc(PATH_DOC)
    argv = [sys.executable, "-m", "hyperising.cli", "approx", path,
            "--lambda", "0.7,0.1", "--epsilon", "0.02"]
    outs = []
    for _ in range(2):
        proc = subprocess.run(argv, capture_output=True, text=True)
        assert proc.returncode == 0
        rep = json.loads(proc.stdout)
        rep.pop("timings")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]
