import json
import os
import pathlib
import subprocess

import numpy as np
import pytest

import micsmp

GALANIS = np.array([[0, 0.25, 0.75], [0.25, 0, 0.75], [0.5, 0.5, 0]])
ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = pathlib.Path(os.environ.get("MICSMP_SCHEMAS", ROOT / "schemas"))
CLI = os.environ.get("MICSMP_CLI")


def test_model_and_stationary_distribution():
    model = micsmp.Model(GALANIS, r=2.0)
    assert model.n == 3
    assert model.r == 2.0
    np.testing.assert_allclose(model.mu, [2 / 7, 2 / 7, 3 / 7], atol=1e-12)
    assert model.has_stationary_selection()
    np.testing.assert_allclose(micsmp.stationary_distribution(GALANIS), [2 / 7, 2 / 7, 3 / 7], atol=1e-12)
    assert not micsmp.is_isothermal(GALANIS)
    assert micsmp.enumerate_level(3, 1) == [1, 2, 4]


def test_validation_errors_carry_their_code():
    with pytest.raises(micsmp.MicsmpError, match="NotStochastic"):
        micsmp.Model(np.array([[0.5, 0.6], [0.5, 0.5]]))
    with pytest.raises(micsmp.MicsmpError, match="NotStronglyConnected"):
        micsmp.Model(np.eye(2))


def test_transitions():
    model = micsmp.complete_graph_model(3, 1.0)
    assert micsmp.p_plus(model, 0b001) == pytest.approx(2 / 9, abs=1e-14)
    assert micsmp.p_minus(model, 0b001) == pytest.approx(2 / 9, abs=1e-14)
    p = micsmp.transition_matrix(model)
    assert p.shape == (8, 8)
    np.testing.assert_allclose(p.sum(axis=1), 1.0, atol=1e-12)


def test_fixation():
    model = micsmp.galanis_model(1.0)
    rho = micsmp.fixation_probabilities(model)
    np.testing.assert_allclose([rho[1], rho[2], rho[4]], 1 / 3, atol=1e-12)
    assert micsmp.fixation_for_initial(model, "level:2:uniform") == pytest.approx(2 / 3, abs=1e-12)
    assert micsmp.moran_rho(1, 3, 2.0) == pytest.approx(4 / 7)
    iterative = micsmp.fixation_probabilities(micsmp.galanis_model(2.0), solver="iterative")
    dense = micsmp.fixation_probabilities(micsmp.galanis_model(2.0), solver="dense")
    np.testing.assert_allclose(iterative, dense, atol=1e-9)


def test_simulation_is_reproducible():
    model = micsmp.galanis_model(1.0)
    a = micsmp.estimate_fixation(model, "mask:1", 20000, seed=9, workers=1)
    b = micsmp.estimate_fixation(model, "mask:1", 20000, seed=9, workers=4)
    assert a == b
    assert abs(a["frequency"] - 1 / 3) <= 3 * np.sqrt(2 / 9 / 20000)


def test_analysis():
    assert micsmp.martingale_report(micsmp.galanis_model(1.0))["max_abs_drift"] <= 1e-12
    assert micsmp.ratio_constancy(micsmp.galanis_model(2.0)) <= 1e-12
    lumpable, witness = micsmp.macro_markov_check(micsmp.galanis_model(1.0))
    assert not lumpable and witness[0] == 1
    assert micsmp.macro_markov_check(micsmp.complete_graph_model(5, 2.0))[0]
    assert micsmp.classic_moran_check(5, 2.0) <= 1e-12


def test_two_vertex_surface():
    c, r = 2.0, 3.0
    assert micsmp.n2_fixation_closed_form(0.3, 1 / (c + 1), c, r) == pytest.approx(r / (r + 1))
    m = micsmp.n2_moran_selection(0.6, c, r)
    assert micsmp.n2_F(0.6, m, c, r) == pytest.approx(1.0, abs=1e-12)
    grid = micsmp.sweep_n2(1.0, 4.0, 11)
    assert grid.shape == (11, 11)
    np.testing.assert_allclose(grid[:, 5], 1.0, atol=1e-12)


def test_galanis_cases():
    assert micsmp.galanis_neutral_fixation(1 / 3, 1 / 3, 0.9, 0.05) == pytest.approx(1 / 3, abs=1e-12)
    assert micsmp.galanis_moran_condition(1 / 9, 0, 2 / 7, 0.5)[0] == "Case2"


# --- command-line tool -------------------------------------------------------

cli = pytest.mark.skipif(CLI is None, reason="MICSMP_CLI not set")


def run(*args, env=None):
    full_env = dict(os.environ, SOURCE_DATE_EPOCH="1700000000", **(env or {}))
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


@pytest.fixture(scope="module")
def validator():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    schemas = {p.stem.removesuffix(".schema"): json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}
    registry = referencing.Registry().with_resources(
        (s["$id"], referencing.Resource.from_contents(s)) for s in schemas.values()
    )

    def validate(name, doc):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(doc)

    return validate


@cli
def test_cli_exact(validator):
    res = run("exact", "--model", "@galanis", "--r", "1", "--init", "level:1:uniform")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    validator("exact", doc)
    assert doc["rho_alpha"] == pytest.approx(1 / 3, abs=1e-12)


@cli
def test_cli_simulate_is_byte_stable(validator):
    args = ("simulate", "--model", "@galanis", "--r", "1", "--init", "mask:1", "--trials", "100000", "--seed", "5")
    first = run(*args, env={"MICSMP_THREADS": "1"})
    second = run(*args, env={"MICSMP_THREADS": "8"})
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    validator("simulate", doc)
    assert abs(doc["frequency"] - 1 / 3) <= 3 * np.sqrt(2 / 9 / 1e5)


@cli
def test_cli_verify(validator):
    res = run("verify", "--model", "@galanis", "--mu", "uniform")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    validator("verify", doc)
    assert doc["checks"]["macro_markov_check"]["pass"] is False


@cli
def test_cli_errors(validator, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "W": [[0.5, 0.6], [0.5, 0.5]]}))
    res = run("exact", "--model", str(bad))
    assert res.returncode == 2
    doc = json.loads(res.stdout)
    validator("error", doc)
    assert doc["error"]["code"] == "NotStochastic"
    assert run("simulate", "--model", "@galanis", "--init", "mask:1", "--trials", "0").returncode == 2
    assert run("sweep", "--c", "1", "--r", "1", "--grid", "1").returncode == 2


@cli
def test_cli_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run("sweep", "--c", "1", "--r", "4", "--grid", "201", "--out", str(out)).returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "a,m,F"
    assert len(lines) == 1 + 201 * 201
    centre = [float(l.split(",")[2]) for l in lines[1:] if float(l.split(",")[1]) == 0.5]
    assert len(centre) == 201 and max(abs(v - 1) for v in centre) <= 1e-12
