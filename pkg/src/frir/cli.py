"""Command-line front end.

Exit codes: 0 success, 2 input/parse error, 3 verification failure,
4 numeric or regime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .boundary import q0_lower, q0_upper
from .ensemble import Povm, TwoStateEnsemble, derive, worked_example
from .errors import FrirError, InputError, InvalidEnsemble
from .interior import branch_transition
from .linalg import HermitianOp, from_bloch
from .solver import FrirSolution, solve_frir, sweep

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_NUMERIC = 0, 2, 3, 4
SCHEMA_VERSION = 1

Q_SWEEP_COLUMNS = ["Q", "R_cor", "P_cor", "P_err", "q_used", "regime"]
q_SWEEP_COLUMNS = ["q", "P_I", "Pbar_cor", "lambda1", "lambda2", "eta0", "eta1", "eta2", "branch"]


class ParseError(InputError):
    pass


# ---------------------------------------------------------------- input


def _numbers(val: Any, shape: tuple[int, ...], where: str) -> np.ndarray:
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"field '{where}': expected numbers with shape {list(shape)}") from None
    if arr.shape != shape or not np.all(np.isfinite(arr)):
        raise ParseError(f"field '{where}': expected finite numbers with shape {list(shape)}, got {val!r}")
    return arr


def _parse_state(obj: Any, where: str) -> HermitianOp:
    if not isinstance(obj, dict):
        raise ParseError(f"field '{where}': expected an object with 'bloch' or 'matrix'")
    keys = {"bloch", "matrix"} & set(obj)
    if len(keys) != 1:
        raise ParseError(f"field '{where}': give exactly one of 'bloch' or 'matrix'")
    if "bloch" in obj:
        v = _numbers(obj["bloch"], (3,), f"{where}.bloch")
        if np.linalg.norm(v) > 1.0 + 1e-12:
            raise ParseError(f"field '{where}.bloch': norm {np.linalg.norm(v):.6g} exceeds 1")
        return from_bloch(v)
    m = obj["matrix"]
    if not isinstance(m, dict) or "re" not in m:
        raise ParseError(f"field '{where}.matrix': expected {{'re': [[..],[..]], 'im': [[..],[..]]}}")
    re = _numbers(m["re"], (2, 2), f"{where}.matrix.re")
    im = _numbers(m.get("im", [[0, 0], [0, 0]]), (2, 2), f"{where}.matrix.im")
    try:
        return HermitianOp.from_array(re + 1j * im)
    except ValueError as exc:
        raise ParseError(f"field '{where}.matrix': {exc}") from None


def parse_ensemble(text: str, source: str = "<input>") -> TwoStateEnsemble:
    """Build an ensemble from the JSON document format; errors name the line or field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("q1", "state1", "state2"):
        if key not in doc:
            raise ParseError(f"{source}: missing field '{key}'")
    q1 = float(_numbers(doc["q1"], (), "q1"))
    q2 = float(_numbers(doc["q2"], (), "q2")) if "q2" in doc else 1.0 - q1
    rho1 = _parse_state(doc["state1"], "state1")
    rho2 = _parse_state(doc["state2"], "state2")
    try:
        return TwoStateEnsemble(q1, q2, rho1, rho2)
    except InvalidEnsemble as exc:
        raise ParseError(f"{source}: {exc}") from None


def load_ensemble(path: str) -> TwoStateEnsemble:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ensemble(text, path)


def _op_json(h: HermitianOp) -> dict:
    a = h.to_array()
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def povm_json(p: Povm) -> dict:
    return {f"M{i}": _op_json(m) for i, m in enumerate(p.elements)}


def parse_povm(doc: Any, source: str) -> Povm:
    if isinstance(doc, dict) and "povm" in doc:
        doc = doc["povm"]
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: expected a POVM object with M0, M1, M2")
    ops = []
    for k in ("M0", "M1", "M2"):
        if k not in doc:
            raise ParseError(f"{source}: missing field '{k}'")
        m = doc[k]
        re = _numbers(m.get("re") if isinstance(m, dict) else None, (2, 2), f"{k}.re")
        im = _numbers(m.get("im", [[0, 0], [0, 0]]), (2, 2), f"{k}.im")
        try:
            ops.append(HermitianOp.from_array(re + 1j * im))
        except ValueError as exc:
            raise ParseError(f"field '{k}': {exc}") from None
    return Povm(*ops)


# ---------------------------------------------------------------- output


def _fmt(x: Any) -> str:
    if isinstance(x, (float, np.floating)):
        return "%.12g" % x
    if isinstance(x, (complex, np.complexfloating)):
        return "%.12g%+.12gj" % (x.real + 0.0, x.imag + 0.0)
    return str(x)


def _analysis(ens: TwoStateEnsemble) -> dict:
    d = derive(ens)
    up = q0_upper(d)
    out: dict[str, Any] = {
        "swapped": d.swapped,
        "C1": d.C1,
        "C2": d.C2,
        "abs_rho12": abs(d.rho12),
        "rho11": d.rho11,
        "rho22": d.rho22,
        "Q1": d.Q1,
        "Q2": d.Q2,
        "e": d.e,
        "l": d.l,
        "chi": d.chi if d.chi_applicable else None,
        "q0_upper": up.q0,
        "upper_regime": up.regime,
        "upper_interval": [up.interval.lo, up.interval.hi],
    }
    if d.rho12_zero:
        out.update(q0_lower=None, lower_regime="rho12_zero", lower_interval=None, transition=None)
        return out
    lo = q0_lower(d)
    out.update(q0_lower=lo.q0, lower_regime=lo.regime, lower_interval=[lo.interval.lo, lo.interval.hi])
    tr = branch_transition(d)
    out["transition"] = None if tr is None else {"q": tr[0], "P_I": tr[1], "vanishing_element": tr[2]}
    return out


def _print_kv(rows: dict, out) -> None:
    width = max(len(k) for k in rows)
    for k, v in rows.items():
        if isinstance(v, list):
            v = "[" + ", ".join(_fmt(x) for x in v) + "]"
        elif isinstance(v, dict):
            v = ", ".join(f"{a}={_fmt(b)}" for a, b in v.items())
        out.write(f"{k:<{width}}  {_fmt(v)}\n")


def solution_json(sol: FrirSolution) -> dict:
    return {
        "Q": sol.Q,
        "R_cor": sol.R_cor,
        "P_cor": sol.P_cor,
        "P_err": sol.P_err,
        "q_used": sol.q_used,
        "regime": sol.regime,
        "unique": sol.unique,
        "epsilon": sol.epsilon,
        "swapped": sol.swapped,
        "povm": povm_json(sol.povm),
    }


def write_csv(rows: list[dict], columns: list[str], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["schema_version", *columns])
    for r in rows:
        w.writerow([SCHEMA_VERSION, *(_fmt(r[c]) for c in columns)])


# ---------------------------------------------------------------- commands


def cmd_analyze(args, out) -> int:
    info = _analysis(load_ensemble(args.file))
    if args.json:
        json.dump(info, out, indent=2)
        out.write("\n")
    else:
        _print_kv(info, out)
    return EXIT_OK


def cmd_solve(args, out) -> int:
    from .verify import certify

    ens = load_ensemble(args.file)
    sol = solve_frir(ens, args.Q, args.epsilon)
    rep = certify(ens, sol)
    if args.json:
        doc = solution_json(sol)
        doc["kkt_passed"] = rep.passed
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        info = {k: v for k, v in solution_json(sol).items() if k != "povm"}
        info["kkt_passed"] = rep.passed
        _print_kv(info, out)
        for i, m in enumerate(sol.povm.elements):
            a = m.to_array()
            out.write(f"M{i} = [[{_fmt(a[0, 0].real)}, {_fmt(a[0, 1])}], [{_fmt(a[1, 0])}, {_fmt(a[1, 1].real)}]]\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    ens = load_ensemble(args.file)
    if args.q_grid is not None:
        rows, cols = sweep(ens, q_grid=args.q_grid), q_SWEEP_COLUMNS
    else:
        rows, cols = sweep(ens, Q_grid=args.Q_grid), Q_SWEEP_COLUMNS
    buf = io.StringIO()
    write_csv(rows, cols, buf)
    if args.out == "-":
        out.write(buf.getvalue())
    else:
        Path(args.out).write_text(buf.getvalue())
        out.write(f"wrote {len(rows)} rows to {args.out}\n")
    return EXIT_OK


def _verify_povm(ens: TwoStateEnsemble, args, out) -> int:
    from .verify import expected_rates, monte_carlo

    try:
        doc = json.loads(Path(args.povm).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {args.povm}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.povm}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    povm = parse_povm(doc, args.povm)
    Q, P, R = expected_rates(ens, povm)
    mc = monte_carlo(ens, povm, args.samples, args.seed)
    ok = abs(mc.empirical_Q - Q) <= 4 * mc.stderr_Q + 1e-12 and abs(mc.empirical_P_cor - P) <= 4 * mc.stderr_P_cor + 1e-12
    _print_kv({"Q": Q, "P_cor": P, "R_cor": R, "mc_Q": mc.empirical_Q, "mc_P_cor": mc.empirical_P_cor,
               "mc_consistent": ok}, out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args, out) -> int:
    from .verify import certify, compare_oracle, monte_carlo

    ens = load_ensemble(args.file)
    if args.povm:
        return _verify_povm(ens, args, out)
    grid = np.linspace(0.0, 1.0, args.Q_grid, endpoint=False)
    failures = 0
    out.write("Q            R_cor        kkt   kkt_worst  mc_R_dev(sigma)\n")
    for Q in grid:
        sol = solve_frir(ens, Q)
        rep = certify(ens, sol)
        mc = monte_carlo(ens, sol.povm, args.samples, args.seed)
        se = mc.stderr_R_cor
        dev = 0.0 if mc.empirical_R_cor == sol.R_cor else abs(mc.empirical_R_cor - sol.R_cor) / se if se > 0 else math.inf
        mc_ok = dev <= 4.0
        failures += (not rep.passed) + (not mc_ok)
        out.write(f"{Q:<12.6g} {sol.R_cor:<12.8f} {'ok' if rep.passed else 'FAIL':<5} {rep.worst():<10.2e} {dev:.2f}\n")
    orc = compare_oracle(ens, grid, args.directions)
    failures += not orc.passed
    out.write(f"LP oracle ({args.directions} directions): max gap {orc.max_gap:.3e}, min gap {orc.min_gap:.3e}, "
              f"{'ok' if orc.passed else 'FAIL'}\n")
    out.write("verification passed\n" if failures == 0 else f"verification FAILED ({failures} checks)\n")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


DEMO_EXPECTED = [
    ("abs_rho12", 0.3075),
    ("C1", 0.8361),
    ("C2", 0.9657),
    ("chi", 0.6940),
    ("Q1", 0.6635),
]


def cmd_demo(args, out) -> int:
    ens = worked_example()
    info = _analysis(ens)
    out.write("built-in mixed-state pair: q1 = 0.4, v1 = (-0.6, -0.2, -0.7), v2 = (-0.6, -0.1, 0.6)\n\n")
    out.write(f"{'quantity':<22}{'expected':>10}{'computed':>14}\n")
    for key, ref in DEMO_EXPECTED:
        out.write(f"{key:<22}{ref:>10.4f}{info[key]:>14.6f}\n")
    tr = info["transition"]
    out.write(f"{'eta1 sign change q':<22}{0.7902:>10.4f}{tr['q']:>14.6f}\n")
    out.write(f"{'P_I at sign change':<22}{0.5805:>10.4f}{tr['P_I']:>14.6f}\n")
    out.write(f"{'R_cor(0) = (1+l)/2':<22}{0.82573:>10.5f}{(1 + info['l']) / 2:>14.6f}\n\n")
    rows = sweep(ens, Q_grid=args.points)
    write_csv(rows, Q_SWEEP_COLUMNS, out)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        with open(d / "q_sweep.csv", "w") as f:
            write_csv(sweep(ens, q_grid=args.points), q_SWEEP_COLUMNS, f)
        with open(d / "Q_sweep.csv", "w") as f:
            write_csv(rows, Q_SWEEP_COLUMNS, f)
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frir", description="Optimal two-state qubit discrimination at a fixed inconclusive rate.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="derived scalars, special inconclusive degrees and regimes")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", help="optimal success rate and measurement at one failure rate")
    s.add_argument("file")
    s.add_argument("--Q", type=float, required=True)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="CSV table over an inconclusive-degree or failure-rate grid")
    w.add_argument("file")
    g = w.add_mutually_exclusive_group(required=True)
    g.add_argument("--q-grid", type=int, dest="q_grid")
    g.add_argument("--Q-grid", type=int, dest="Q_grid")
    w.add_argument("--out", required=True, help="CSV path, or - for stdout")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="KKT certificates, LP oracle and Monte-Carlo checks")
    v.add_argument("file")
    v.add_argument("--Q-grid", type=int, default=10, dest="Q_grid")
    v.add_argument("--directions", type=int, default=2000)
    v.add_argument("--samples", type=int, default=200_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--povm", default=None, help="check a measurement from 'solve --json' instead of the grid")
    v.set_defaults(func=cmd_verify)

    dm = sub.add_parser("demo", help="run the built-in example")
    dm.add_argument("--points", type=int, default=20)
    dm.add_argument("--out-dir", default=None)
    dm.set_defaults(func=cmd_demo)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except FrirError as exc:
        sys.stderr.write(f"numeric error ({type(exc).__name__}): {exc}\n")
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
