import csv
import inspect
import io
import json
import math

import pytest

import tlft
from tlft import cli, coulomb, correlator, specfun, zeromode
from tlft.cli import Report, RunConfig, UsageError


def invoke(argv):
    buf = io.BytesIO()
    code = cli.run(argv, stdout=buf)
    return code, buf.getvalue()


def values(data):
    return {v["name"]: v for v in cli.read_report(data)["values"]}


# --- exit codes ---------------------------------------------------------------

def test_success_and_oracle_example():
    code, out = invoke(["coeff", "--case", "zero", "--n", "2", "--oracle", "mc", "--samples", "1e6",
                        "--seed", "42"])
    assert code == 0
    vals = values(out)
    assert vals["coeff"]["value"] == pytest.approx(8 * math.pi ** 2 * math.e, rel=1e-12)
    assert vals["coeff"]["provenance"] == "closed-form"
    assert vals["oracle_coeff"]["provenance"] == "oracle" and vals["oracle_coeff"]["error"] > 0


def test_zeromode_example():
    code, out = invoke(["zeromode", "--case", "zero", "--mu", "2.0", "--schedule", "default"])
    assert code == 0
    vals = values(out)
    assert vals["closed_form_limit"]["value"] == pytest.approx(math.e / (8 * math.pi * math.sqrt(2)))
    assert vals["renormalized_limit"]["provenance"] == "extrapolation"


def test_usage_errors():
    assert invoke([])[0] == 2
    assert invoke(["frobnicate"])[0] == 2
    assert invoke(["specfn", "--fn", "log_gamma", "--z", "abc"])[0] == 2
    assert invoke(["specfn", "--fn", "log_gamma", "--z", "-2.5"])[0] == 2  # DomainCut is bad input
    assert invoke(["coeff", "--n", "1", "--out", "/nonexistent/dir/report.json"])[0] == 2


def test_assertion_failure_exits_one():
    # an impossible tolerance turns the series/contour comparison into a failure
    code, out = invoke(["correlator", "--case", "zero", "--mu", "1", "--c", "0", "--rtol", "1e-30"])
    assert code == 1
    rep = cli.read_report(out)
    assert rep["passed"] is False and rep["assertions"]


def test_runtime_failure_exits_one():
    code, _ = invoke(["zeromode", "--op", "vertical_segment", "--case", "one", "--alpha", "-0.3",
                      "--mu", "0.5"])
    assert code == 1


def test_run_config():
    RunConfig("coeff", {"n": 2})
    with pytest.raises(UsageError):
        RunConfig("coeff", {"nn": 2})
    with pytest.raises(UsageError):
        RunConfig("plot")
    with pytest.raises(UsageError):
        RunConfig("coeff", output="xml")
    with pytest.raises(UsageError):
        RunConfig("coeff", seed=2 ** 64)
    assert RunConfig("verify").seed == cli.DEFAULT_SEED


# --- reports ------------------------------------------------------------------

def test_report_provenance():
    rep = Report(RunConfig("specfn"))
    with pytest.raises(ValueError):
        rep.add("x", 1.0, "guess")


def test_determinism():
    argv = ["coeff", "--case", "zero", "--n", "1", "--oracle", "mc", "--samples", "5000"]
    assert invoke(argv)[1] == invoke(argv)[1]
    assert invoke(argv + ["--format", "csv"])[1] == invoke(argv + ["--format", "csv"])[1]
    assert "wall_time_s" not in json.loads(invoke(argv)[1])
    assert "wall_time_s" in json.loads(invoke(argv + ["--timing"])[1])


def test_json_round_trip():
    code, out = invoke(["specfn", "--fn", "log_gamma", "--z", "3.7+2.1i"])
    rep = cli.read_report(out)
    assert rep["schema"] == 1 and rep["inputs"]["seed"] == cli.DEFAULT_SEED
    (row,) = rep["values"]
    assert row["value"] == specfun.log_gamma(3.7 + 2.1j)
    assert json.loads(out)["values"][0]["value"].keys() == {"re", "im"}


def test_csv():
    empty = cli.emit(Report(RunConfig("pair")), "csv").decode()
    assert empty == "name,value_re,value_im,provenance,error\n"
    _, out = invoke(["specfn", "--fn", "log_gamma", "--z", "3.7+2.1i", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out.decode())))
    assert len(rows) == 1
    assert complex(float(rows[0]["value_re"]), float(rows[0]["value_im"])) == specfun.log_gamma(3.7 + 2.1j)
    assert "z_re" in rows[0] and "z_im" in rows[0]


def test_out_file(tmp_path):
    path = tmp_path / "r.json"
    code, out = invoke(["specfn", "--fn", "barnes_g", "--z", "4", "--out", str(path)])
    assert code == 0 and out == b""
    assert values(path.read_bytes())["barnes_g"]["value"] == pytest.approx(2)


# --- coverage -------------------------------------------------------------------

PUBLIC = sorted(n for n in dir(tlft) if inspect.isfunction(getattr(tlft, n)))


def test_registry_covers_public_api():
    modules = {m.__name__.rsplit(".", 1)[1] for m in (specfun, coulomb, correlator, zeromode)}
    keys = {k.split(".")[1] for k in cli.REGISTRY}
    assert set(PUBLIC) <= keys
    assert {k.split(".")[0] for k in cli.REGISTRY} == modules


@pytest.mark.parametrize("key", sorted(cli.REGISTRY))
def test_registry_invocation_reaches_function(key, monkeypatch):
    modname, fname = key.split(".")
    module = {"specfun": specfun, "coulomb": coulomb, "correlator": correlator, "zeromode": zeromode}[modname]
    original = getattr(module, fname)
    calls = []

    def spy(*a, **k):
        calls.append(1)
        return original(*a, **k)

    monkeypatch.setattr(module, fname, spy)
    code, _ = invoke(cli.REGISTRY[key])
    assert code == 0
    assert calls, f"{key} not reached by {cli.REGISTRY[key]}"


def test_verify_theorems():
    code, out = invoke(["verify", "--suite", "theorems", "--mu", "1.0"])
    rep = cli.read_report(out)
    assert code == 0 and rep["passed"]
    names = [a["name"] for a in rep["assertions"]]
    assert len(names) == len(set(names)) >= 8
