"""Command-line front end.

Builds walks and protocols from inline shorthand ("cycle:8", "strauch") or
JSON files, runs convergence studies, cycle projections, Lie closures and
the complete-graph example, and writes CSV or JSON reports.  All numeric
output uses scientific notation with 17 significant digits and seeded
states come from the fixed stream in ``qwl.rng``, so identical flags give
byte-identical files.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import graphs, liealg, limits, walks
from .errors import (
    BadSpec,
    DimMismatch,
    NonHermitian,
    NotACycle,
    NumericalError,
    QwlError,
)
from .linalg import is_hermitian
from .rng import seeded_state

__all__ = ["main", "RunConfig"]

COMMANDS = ("info", "converge", "evolve", "project", "closure", "simulable", "example")

PROJECT_TOL = 1e-10
EXAMPLE_CLOSURE_DIM = 33
EXAMPLE_MEMBER_TOL = 1e-8


@dataclass
class RunConfig:
    command: str
    walk_spec: str = ""
    protocol_spec: str = ""
    gamma: float = 1.0
    t: float = 1.0
    m_list: list = field(default_factory=list)
    tol: float = 1e-9
    seed: int = 0
    out: str = ""
    format: str = "csv"
    hamiltonian: str = ""
    dump_basis: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise BadSpec(f"unknown command {self.command!r}")
        if self.gamma <= 0:
            raise BadSpec(f"gamma must be positive, got {self.gamma}")
        if self.t < 0:
            raise BadSpec(f"t must be nonnegative, got {self.t}")
        if self.format not in ("csv", "json"):
            raise BadSpec(f"format must be csv or json, got {self.format!r}")
        if self.command == "converge":
            if not self.m_list:
                raise BadSpec("converge needs --m-list")
            if any(b <= a for a, b in zip(self.m_list, self.m_list[1:])):
                raise BadSpec("--m-list must be strictly ascending")


def _fmt(x: float) -> str:
    return f"{float(x):.16e}"


def _json_dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_json_dumps(v, indent + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_json_dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj) if np.isfinite(obj) else "null"
    if obj is None:
        return "null"
    return json.dumps(obj)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadSpec(f"{path}: invalid JSON: {exc}") from exc


def _matrix_to_json(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(obj) -> np.ndarray:
    try:
        rows = []
        for row in obj:
            rows.append([complex(float(z[0]), float(z[1])) for z in row])
        m = np.array(rows, dtype=complex)
    except (TypeError, ValueError, IndexError) as exc:
        raise BadSpec(f"matrix JSON must be rows of [re, im] pairs: {exc}") from exc
    if m.ndim != 2:
        raise BadSpec("matrix JSON must be two-dimensional")
    return m


def resolve_walk(spec: str) -> walks.CoinedWalk:
    """Build a walk from "cycle:N", "lattice:N,D", "example" or "file:PATH"."""
    if spec == "example":
        return walks.example_walk()
    if spec.startswith("cycle:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise BadSpec(f"bad cycle size in {spec!r}") from exc
        return walks.cycle_walk(n)
    if spec.startswith("lattice:"):
        try:
            n, d = (int(v) for v in spec.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise BadSpec(f"lattice spec must be lattice:N,D, got {spec!r}") from exc
        return walks.lattice_walk(n, d)
    if spec.startswith("file:"):
        return walks.walk_from_json(_load_json(spec[5:]))
    raise BadSpec(f"unrecognized walk spec {spec!r}")


def _cycle_size(w: walks.CoinedWalk) -> int:
    """The cycle length if w is structurally the two-coin cycle walk."""
    n = w.walker_dim
    if w.coin_dim == 2 and n >= 3:
        ref = walks.cycle_walk(n)
        if np.array_equal(w.moves, ref.moves):
            return n
    raise NotACycle("this operation is specific to the two-coin cycle walk")


def _protocol_steps_from_json(items):
    steps = []
    for item in items:
        coin = _matrix_from_json(item["coin"])
        gen = _matrix_from_json(item["generator"])
        steps.append(limits.ProtocolStep(coin=coin, generator=gen,
                                         slope=float(item.get("slope", 1.0))))
    return steps


def _protocol_from_json(obj, fallback_walk=None):
    kind = obj.get("kind")
    if kind == "atom":
        wspec = obj.get("walk")
        if isinstance(wspec, str):
            walk = resolve_walk(wspec)
        elif isinstance(wspec, dict):
            walk = walks.walk_from_json(wspec)
        elif wspec is None and fallback_walk is not None:
            walk = fallback_walk
        else:
            raise BadSpec("atom protocol needs a 'walk' entry")
        return limits.Atom(walk, _protocol_steps_from_json(obj.get("steps", [])))
    if kind in ("concat", "commutator"):
        children = obj.get("children", [])
        if len(children) != 2:
            raise BadSpec(f"{kind} protocol needs exactly two children")
        left = _protocol_from_json(children[0], fallback_walk)
        right = _protocol_from_json(children[1], fallback_walk)
        return limits.Concat(left, right) if kind == "concat" else limits.Commutator(left, right)
    raise BadSpec(f"protocol kind must be atom/concat/commutator, got {kind!r}")


def resolve_protocol(spec: str, walk: walks.CoinedWalk):
    """Build a protocol from "strauch", "evencyc" or "file:PATH"."""
    if spec == "strauch":
        return limits.strauch_protocol(_cycle_size(walk))
    if spec == "evencyc":
        return limits.evencyc_protocol(_cycle_size(walk))
    if spec.startswith("file:"):
        return _protocol_from_json(_load_json(spec[5:]), fallback_walk=walk)
    raise BadSpec(f"unrecognized protocol spec {spec!r}")


def cmd_info(cfg: RunConfig):
    w = resolve_walk(cfg.walk_spec)
    spectrum = liealg.spectrum_multiset(graphs.adjacency(w.graph), 8)
    degree = graphs.regular_degree(w.graph)
    if cfg.format == "json":
        text = _json_dumps({
            "walk": cfg.walk_spec,
            "coin_dim": w.coin_dim,
            "walker_dim": w.walker_dim,
            "shift_order": walks.shift_order(w),
            "regular_degree": degree,
            "graph_spectrum": [[val, mult] for val, mult in spectrum],
        }) + "\n"
    else:
        rows = [["key", "value"],
                ["walk", cfg.walk_spec],
                ["coin_dim", w.coin_dim],
                ["walker_dim", w.walker_dim],
                ["shift_order", walks.shift_order(w)],
                ["regular_degree", degree]]
        rows += [["spectrum", _fmt(val), mult] for val, mult in spectrum]
        text = _csv_text(rows)
    return text, 0


def cmd_converge(cfg: RunConfig):
    w = resolve_walk(cfg.walk_spec)
    p = resolve_protocol(cfg.protocol_spec, w)
    report = limits.convergence_study(p, cfg.gamma, cfg.t, cfg.m_list)
    samples = [(m, x, limits.single_step_error(p, x), rep_err)
               for m, (x, rep_err) in zip(cfg.m_list, report.samples)]
    fitted = report.fitted_exponent
    if cfg.format == "json":
        text = _json_dumps({
            "samples": [{"m": m, "x": x, "single_step_error": ss, "repeated_error": re}
                        for m, x, ss, re in samples],
            "fitted_exponent": fitted,
        }) + "\n"
    else:
        rows = [["m", "x", "single_step_error", "repeated_error"]]
        rows += [[m, _fmt(x), _fmt(ss), _fmt(re)] for m, x, ss, re in samples]
        rows.append(["fitted_exponent", _fmt(fitted)])
        text = _csv_text(rows)
    return text, 0


def cmd_evolve(cfg: RunConfig):
    w = resolve_walk(cfg.walk_spec)
    a = graphs.adjacency(w.graph)
    psi0 = seeded_state(w.graph.n, cfg.seed)
    psit = walks.ctqw_propagator(a, cfg.gamma, cfg.t) @ psi0
    norm_residual = abs(np.linalg.norm(psit) - 1.0)
    if cfg.format == "json":
        text = _json_dumps({
            "walk": cfg.walk_spec,
            "gamma": cfg.gamma,
            "t": cfg.t,
            "seed": cfg.seed,
            "state": [[float(z.real), float(z.imag)] for z in psit],
            "norm_residual": norm_residual,
        }) + "\n"
    else:
        rows = [["vertex", "re", "im", "probability"]]
        rows += [[j, _fmt(z.real), _fmt(z.imag), _fmt(abs(z) ** 2)]
                 for j, z in enumerate(psit)]
        rows.append(["norm_residual", _fmt(norm_residual)])
        text = _csv_text(rows)
    return text, 0


def cmd_project(cfg: RunConfig):
    w = resolve_walk(cfg.walk_spec)
    n = _cycle_size(w)
    gamma, t = cfg.gamma, cfg.t
    a = graphs.adjacency(w.graph)
    lap = graphs.laplacian(w.graph)
    h = limits.limit_hamiltonian_cycle(n)
    psi0 = seeded_state(2 * n, cfg.seed)
    psit = walks.ctqw_propagator(h, gamma, t) @ psi0
    combos0 = limits.chiral_combinations(*limits.chiral_split(psi0, n), n)
    combost = limits.chiral_combinations(*limits.chiral_split(psit, n), n)

    psi_res = 0.0
    phi_res = 0.0
    for i in range(4):
        sign = 1 if i < 2 else -1
        u_a = walks.ctqw_propagator(a, sign * gamma, t)
        psi_res = max(psi_res, float(np.linalg.norm(combost[i] - u_a @ combos0[i])))
        u_l = walks.ctqw_propagator(lap, sign * gamma, t)
        phi_t = limits.phi_transform(combost[i], gamma, t, sign)
        phi_0 = limits.phi_transform(combos0[i], gamma, 0.0, sign)
        phi_res = max(phi_res, float(np.linalg.norm(phi_t - u_l @ phi_0)))
    rec = 0.5 * (np.concatenate([combost[0], combost[1]])
                 + np.concatenate([combost[2], combost[3]]))
    rec_res = float(np.linalg.norm(rec - psit))

    ok = psi_res <= PROJECT_TOL and phi_res <= PROJECT_TOL and rec_res <= PROJECT_TOL
    if cfg.format == "json":
        text = _json_dumps({
            "psi_adjacency_residual": psi_res,
            "phi_laplacian_residual": phi_res,
            "reconstruction_residual": rec_res,
            "tolerance": PROJECT_TOL,
            "pass": ok,
        }) + "\n"
    else:
        text = _csv_text([
            ["key", "value"],
            ["psi_adjacency_residual", _fmt(psi_res)],
            ["phi_laplacian_residual", _fmt(phi_res)],
            ["reconstruction_residual", _fmt(rec_res)],
            ["tolerance", _fmt(PROJECT_TOL)],
            ["pass", str(ok).lower()],
        ])
    return text, 0 if ok else 3


def _closure_for(cfg: RunConfig, w: walks.CoinedWalk) -> liealg.LieBasis:
    return liealg.lie_closure(liealg.generators(w), cfg.tol)


def cmd_closure(cfg: RunConfig):
    w = resolve_walk(cfg.walk_spec)
    gens = liealg.generators(w)
    basis = liealg.lie_closure(gens, cfg.tol)
    report = {
        "ambient_dim": basis.dim_ambient,
        "dimension": basis.dimension,
        "tolerance": basis.tol,
        "generator_count": len(gens),
        "passes": basis.passes,
    }
    if cfg.format == "json":
        if cfg.dump_basis:
            report["basis"] = [_matrix_to_json(b) for b in basis.elements]
        text = _json_dumps(report) + "\n"
    else:
        if cfg.dump_basis:
            raise BadSpec("--dump-basis needs --format json")
        rows = [["key", "value"]] + [[k, _fmt(v) if isinstance(v, float) else v]
                                     for k, v in report.items()]
        text = _csv_text(rows)
    return text, 0


def cmd_simulable(cfg: RunConfig):
    if not cfg.hamiltonian:
        raise BadSpec("simulable needs --hamiltonian PATH")
    w = resolve_walk(cfg.walk_spec)
    h = _matrix_from_json(_load_json(cfg.hamiltonian))
    if h.shape != (w.dim, w.dim):
        raise DimMismatch(f"Hamiltonian is {h.shape}, walk space is {w.dim}x{w.dim}")
    if not is_hermitian(h):
        raise NonHermitian("Hamiltonian file is not Hermitian within 1e-10")
    basis = _closure_for(cfg, w)
    residual = liealg.member_residual(basis, -1j * h)
    verdict = residual <= cfg.tol
    if cfg.format == "json":
        text = _json_dumps({
            "residual": residual,
            "tolerance": cfg.tol,
            "simulable": verdict,
            "closure_dimension": basis.dimension,
        }) + "\n"
    else:
        text = _csv_text([
            ["key", "value"],
            ["residual", _fmt(residual)],
            ["tolerance", _fmt(cfg.tol)],
            ["simulable", str(verdict).lower()],
            ["closure_dimension", basis.dimension],
        ])
    return text, 0


def cmd_example(cfg: RunConfig):
    w = walks.example_walk()
    items = []

    order = walks.shift_order(w)
    items.append({"name": "shift_order", "expected": 2, "actual": order,
                  "pass": order == 2})

    spectrum = liealg.spectrum_multiset(graphs.adjacency(w.graph), 8)
    expected_spec = [(3.0, 1), (-1.0, 3)]
    items.append({"name": "adjacency_spectrum",
                  "expected": [[v, m] for v, m in expected_spec],
                  "actual": [[v, m] for v, m in spectrum],
                  "pass": spectrum == expected_spec})

    basis = _closure_for(cfg, w)
    items.append({"name": "closure_dimension", "expected": EXAMPLE_CLOSURE_DIM,
                  "actual": basis.dimension,
                  "pass": basis.dimension == EXAMPLE_CLOSURE_DIM})

    diag = np.kron(np.diag([-3j, 1j, 2j]), np.eye(4))
    res_diag = liealg.member_residual(basis, diag)
    items.append({"name": "diagonal_membership", "residual": res_diag,
                  "tolerance": EXAMPLE_MEMBER_TOL,
                  "pass": res_diag <= EXAMPLE_MEMBER_TOL})

    el = liealg.example_subspace_element()
    el_spec = liealg.spectrum_multiset(el, 8)
    expected_el = [(3.0, 1), (1.0, 3), (0.0, 4), (-1.0, 3), (-3.0, 1)]
    res_el = liealg.member_residual(basis, el)
    items.append({"name": "subspace_element",
                  "expected_spectrum": [[v, m] for v, m in expected_el],
                  "actual_spectrum": [[v, m] for v, m in el_spec],
                  "membership_residual": res_el,
                  "pass": el_spec == expected_el and res_el <= EXAMPLE_MEMBER_TOL})

    all_pass = all(item["pass"] for item in items)
    report = {"items": items, "all_pass": all_pass}
    if cfg.format == "json":
        text = _json_dumps(report) + "\n"
    else:
        rows = [["item", "pass"]] + [[item["name"], str(item["pass"]).lower()]
                                     for item in items]
        rows.append(["all_pass", str(all_pass).lower()])
        text = _csv_text(rows)
    return text, 0 if all_pass else 3


_DISPATCH = {
    "info": cmd_info,
    "converge": cmd_converge,
    "evolve": cmd_evolve,
    "project": cmd_project,
    "closure": cmd_closure,
    "simulable": cmd_simulable,
    "example": cmd_example,
}


def _parse_m_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise BadSpec(f"--m-list must be comma-separated integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwl",
        description="Quantum walk limits: walks, protocols, closures, reports.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--walk", default="", metavar="SPEC",
                        help="cycle:N | lattice:N,D | example | file:PATH")
    parser.add_argument("--protocol", default="", metavar="SPEC",
                        help="strauch | evencyc | file:PATH")
    parser.add_argument("--gamma", type=float, default=1.0)
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--m-list", default="", metavar="A,B,C")
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="", metavar="PATH")
    parser.add_argument("--format", default="csv", choices=("csv", "json"))
    parser.add_argument("--hamiltonian", default="", metavar="PATH")
    parser.add_argument("--dump-basis", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            walk_spec=args.walk,
            protocol_spec=args.protocol,
            gamma=args.gamma,
            t=args.t,
            m_list=_parse_m_list(args.m_list) if args.m_list else [],
            tol=args.tol,
            seed=args.seed,
            out=args.out,
            format=args.format,
            hamiltonian=args.hamiltonian,
            dump_basis=args.dump_basis,
        )
        cfg.validate()
        text, code = _DISPATCH[cfg.command](cfg)
    except NumericalError as exc:
        print(f"qwl: numerical failure: {exc}", file=sys.stderr)
        return 3
    except QwlError as exc:
        print(f"qwl: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qwl: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
