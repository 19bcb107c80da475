"""Command-line surface: specs, report formats, determinism, exit codes."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from qwl import cli, limits, walks
from qwl.errors import BadSpec, NotACycle


def run(args, out=None):
    argv = list(args)
    if out is not None:
        argv += ["--out", str(out)]
    return cli.main(argv)


def matrix_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def test_resolve_walk_specs():
    assert cli.resolve_walk("cycle:6").walker_dim == 6
    assert cli.resolve_walk("lattice:3,2").dim == 36
    assert cli.resolve_walk("example").coin_dim == 3
    for bad in ("cycle:x", "lattice:3", "ring:4", ""):
        with pytest.raises(BadSpec):
            cli.resolve_walk(bad)


def test_resolve_protocol_requires_cycle():
    with pytest.raises(NotACycle):
        cli.resolve_protocol("strauch", walks.example_walk())
    p = cli.resolve_protocol("evencyc", walks.cycle_walk(5))
    assert len(p.steps) == 5


def test_info_reports(tmp_path):
    out = tmp_path / "info.csv"
    assert run(["info", "--walk", "example"], out) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    data = {r[0]: r[1:] for r in rows[1:]}
    assert data["coin_dim"] == ["3"]
    assert data["shift_order"] == ["2"]
    assert data["regular_degree"] == ["3"]
    spectra = [(float(r[1]), int(r[2])) for r in rows if r[0] == "spectrum"]
    assert spectra == [(3.0, 1), (-1.0, 3)]

    out2 = tmp_path / "info.json"
    assert run(["info", "--walk", "cycle:8", "--format", "json"], out2) == 0
    rep = json.loads(out2.read_text())
    assert rep["coin_dim"] == 2 and rep["walker_dim"] == 8 and rep["shift_order"] == 8


def test_info_bad_walk_writes_nothing(tmp_path, capsys):
    out = tmp_path / "never.csv"
    assert run(["info", "--walk", "cycle:2"], out) == 2
    assert not out.exists()
    assert "n >= 3" in capsys.readouterr().err


def test_converge_report_roundtrip(tmp_path):
    out = tmp_path / "conv.csv"
    code = run(["converge", "--walk", "cycle:6", "--protocol", "strauch",
                "--m-list", "32,64,128,256"], out)
    assert code == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["m", "x", "single_step_error", "repeated_error"]
    data = rows[1:-1]
    assert [int(r[0]) for r in data] == [32, 64, 128, 256]
    p = limits.strauch_protocol(6)
    for r in data:
        m = int(r[0])
        assert float(r[1]) == 1.0 / m
        _, expected = limits.repeated_limit(p, 1.0, 1.0, m)
        assert float(r[3]) == expected  # 17 significant digits round-trip exactly
    assert rows[-1][0] == "fitted_exponent"
    assert 0.9 <= float(rows[-1][1]) <= 1.1


def test_converge_t_zero(tmp_path):
    out = tmp_path / "conv0.json"
    assert run(["converge", "--walk", "cycle:4", "--protocol", "strauch",
                "--t", "0", "--m-list", "2,4,8", "--format", "json"], out) == 0
    rep = json.loads(out.read_text())
    for sample in rep["samples"]:
        assert sample["single_step_error"] <= 1e-12
        assert sample["repeated_error"] <= 1e-12


def test_converge_same_target_for_both_protocols(tmp_path):
    reps = {}
    for proto in ("strauch", "evencyc"):
        out = tmp_path / f"{proto}.json"
        assert run(["converge", "--walk", "cycle:6", "--protocol", proto,
                    "--m-list", "256,512", "--format", "json"], out) == 0
        reps[proto] = json.loads(out.read_text())
    pairs = zip(reps["strauch"]["samples"], reps["evencyc"]["samples"])
    for s, e in pairs:
        # both converge to the same propagator, so the repeated errors
        # agree within twice the larger one
        assert abs(s["repeated_error"] - e["repeated_error"]) \
            <= 2 * max(s["repeated_error"], e["repeated_error"])


def test_converge_needs_m_list(tmp_path):
    assert run(["converge", "--walk", "cycle:4", "--protocol", "strauch"]) == 2
    assert run(["converge", "--walk", "cycle:4", "--protocol", "strauch",
                "--m-list", "64,32"]) == 2


def test_protocol_from_file(tmp_path):
    spec = {
        "walk": "cycle:4",
        "kind": "atom",
        "steps": [
            {"coin": matrix_json(limits.R_COIN),
             "generator": matrix_json(1j * limits.D_COIN), "slope": 1.0},
            {"coin": matrix_json(limits.R_COIN),
             "generator": matrix_json(1j * limits.D_COIN), "slope": 1.0},
        ],
    }
    path = tmp_path / "proto.json"
    path.write_text(json.dumps(spec))
    p = cli.resolve_protocol(f"file:{path}", walks.cycle_walk(4))
    assert limits.reference_phase(p) == pytest.approx(-1.0)
    comp = {"kind": "concat", "children": [spec, spec]}
    path2 = tmp_path / "comp.json"
    path2.write_text(json.dumps(comp))
    c = cli.resolve_protocol(f"file:{path2}", walks.cycle_walk(4))
    expected = 2 * limits.effective_hamiltonian(p)
    assert np.allclose(limits.effective_hamiltonian(c), expected)


def test_project_residuals(tmp_path):
    out = tmp_path / "proj.json"
    assert run(["project", "--walk", "cycle:8", "--t", "0.7", "--seed", "0",
                "--format", "json"], out) == 0
    rep = json.loads(out.read_text())
    assert rep["psi_adjacency_residual"] <= 1e-10
    assert rep["phi_laplacian_residual"] <= 1e-10
    assert rep["reconstruction_residual"] <= 1e-12
    assert rep["pass"] is True
    assert run(["project", "--walk", "example"]) == 2


def test_project_t_zero(tmp_path):
    out = tmp_path / "proj0.json"
    assert run(["project", "--walk", "cycle:4", "--t", "0", "--format", "json"], out) == 0
    rep = json.loads(out.read_text())
    assert rep["reconstruction_residual"] <= 1e-14


def test_closure_reports(tmp_path):
    out = tmp_path / "cl.json"
    assert run(["closure", "--walk", "example", "--format", "json"], out) == 0
    rep = json.loads(out.read_text())
    assert rep == {"ambient_dim": 12, "dimension": 33,
                   "tolerance": rep["tolerance"], "generator_count": 18,
                   "passes": rep["passes"]}
    # golden value for the 4-cycle walk, stable across the tolerance grid
    for tol in ("1e-10", "1e-9", "1e-8"):
        out2 = tmp_path / f"c4_{tol}.json"
        assert run(["closure", "--walk", "cycle:4", "--tol", tol,
                    "--format", "json"], out2) == 0
        assert json.loads(out2.read_text())["dimension"] == 7
    assert run(["closure", "--walk", "cycle:4", "--tol", "1e-3"]) == 2


def test_closure_basis_dump(tmp_path):
    out = tmp_path / "basis.json"
    assert run(["closure", "--walk", "example", "--format", "json",
                "--dump-basis"], out) == 0
    rep = json.loads(out.read_text())
    assert len(rep["basis"]) == 33
    first = np.array([[complex(re, im) for re, im in row] for row in rep["basis"][0]])
    assert first.shape == (12, 12)
    assert run(["closure", "--walk", "example", "--dump-basis"]) == 2


def test_simulable_command(tmp_path):
    h_path = tmp_path / "h.json"
    h_path.write_text(json.dumps(matrix_json(limits.limit_hamiltonian_cycle(4))))
    out = tmp_path / "sim.json"
    assert run(["simulable", "--walk", "cycle:4", "--hamiltonian", str(h_path),
                "--format", "json", "--tol", "1e-7"], out) == 0
    rep = json.loads(out.read_text())
    assert rep["simulable"] is True and rep["residual"] <= 1e-7

    diag_path = tmp_path / "diag.json"
    diag_path.write_text(json.dumps(matrix_json(
        np.kron(np.diag([-3.0, 1.0, 2.0]), np.eye(4)))))
    out2 = tmp_path / "sim2.json"
    assert run(["simulable", "--walk", "example", "--hamiltonian", str(diag_path),
                "--format", "json", "--tol", "1e-7"], out2) == 0
    assert json.loads(out2.read_text())["simulable"] is True

    loc = np.zeros((12, 12))
    loc[0, 0] = 1.0
    loc_path = tmp_path / "loc.json"
    loc_path.write_text(json.dumps(matrix_json(loc)))
    out3 = tmp_path / "sim3.json"
    assert run(["simulable", "--walk", "example", "--hamiltonian", str(loc_path),
                "--format", "json", "--tol", "1e-6"], out3) == 0
    assert json.loads(out3.read_text())["simulable"] is False

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(matrix_json(np.eye(3))))
    assert run(["simulable", "--walk", "example", "--hamiltonian", str(bad)]) == 2


def test_example_command(tmp_path):
    out = tmp_path / "ex.json"
    assert run(["example", "--format", "json"], out) == 0
    rep = json.loads(out.read_text())
    assert rep["all_pass"] is True
    names = [item["name"] for item in rep["items"]]
    assert names == ["shift_order", "adjacency_spectrum", "closure_dimension",
                     "diagonal_membership", "subspace_element"]
    sub = rep["items"][-1]
    assert sub["actual_spectrum"] == [[3.0, 1], [1.0, 3], [0.0, 4], [-1.0, 3], [-3.0, 1]]
    # identical dimension at a tighter tolerance
    out2 = tmp_path / "ex2.json"
    assert run(["example", "--format", "json", "--tol", "1e-10"], out2) == 0
    rep2 = json.loads(out2.read_text())
    assert rep2["items"][2]["actual"] == 33


def test_evolve_norm(tmp_path):
    out = tmp_path / "ev.csv"
    assert run(["evolve", "--walk", "cycle:6", "--t", "0.5", "--seed", "3"], out) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["vertex", "re", "im", "probability"]
    probs = [float(r[3]) for r in rows[1:-1]]
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)
    assert rows[-1][0] == "norm_residual" and float(rows[-1][1]) <= 1e-12


def test_determinism(tmp_path):
    cases = [
        ["info", "--walk", "lattice:3,2"],
        ["converge", "--walk", "cycle:6", "--protocol", "evencyc",
         "--m-list", "16,32,64", "--format", "json"],
        ["project", "--walk", "cycle:8", "--t", "0.7", "--seed", "5"],
        ["closure", "--walk", "example", "--format", "json"],
        ["example", "--format", "json"],
        ["evolve", "--walk", "cycle:5", "--seed", "9", "--format", "json"],
    ]
    for i, args in enumerate(cases):
        a, b = tmp_path / f"a{i}", tmp_path / f"b{i}"
        assert run(args, a) == run(args, b)
        assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "qwl", "info", "--walk", "cycle:5", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert out.read_text().startswith("key,value")
    proc2 = subprocess.run(
        [sys.executable, "-m", "qwl", "info", "--walk", "nope"],
        capture_output=True, text=True)
    assert proc2.returncode == 2


def test_gamma_validation():
    assert run(["info", "--walk", "cycle:4", "--gamma", "0"]) == 2
    assert run(["info", "--walk", "cycle:4", "--t", "-1"]) == 2


def test_numerical_failure_exit_code(tmp_path, monkeypatch):
    from qwl.errors import IterationCapExceeded

    def exploding_closure(gens, tol):
        raise IterationCapExceeded("closure did not stabilize")

    monkeypatch.setattr(cli.liealg, "lie_closure", exploding_closure)
    out = tmp_path / "never.json"
    assert run(["closure", "--walk", "cycle:4", "--format", "json"], out) == 3
    assert not out.exists()
