"""Command-line front end.

JSON goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 on invalid input and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import sys
from typing import Optional, Sequence

import numpy as np

from . import bell_rod, composite, hidden_measurement as hm, io
from .errors import EBlochError
from .observables import group_degenerate, measurement_simplex, spin_axis
from .state_space import to_bloch
from .su_basis import basis_from_name, basis_to_json, build_tensor_basis, verify_basis


def _emit(report: dict, out: Optional[str]) -> None:
    if out:
        io.save_report(report, out)
    else:
        sys.stdout.write(io.dumps(report))


def cmd_gen(args) -> None:
    basis = basis_from_name(args.basis, args.n)
    _emit(
        {"schema": io.SCHEMA, "n": basis.n, "determination": basis.determination, "matrices": basis_to_json(basis)},
        args.out,
    )


def cmd_verify(args) -> None:
    basis = basis_from_name(args.basis, args.n)
    report = {"schema": io.SCHEMA, "basis": args.basis, "n": basis.n}
    report.update(verify_basis(basis).to_dict())
    _emit(report, args.out)


def cmd_convert(args) -> None:
    state = io.load_state(args.state, args.basis)
    target = args.to or ("bloch" if state.source == "matrix" else "matrix")
    _emit(io.state_to_doc(state, target), args.out)


def cmd_measure(args) -> None:
    state = io.load_state(args.state, args.basis)
    O = io.load_observable(args.observable)
    sx = measurement_simplex(O, state.basis)
    grouping = group_degenerate(sx.decomposition, args.degenerate_tol)
    rep = hm.monte_carlo_report(state.bloch, sx, grouping, args.trials, args.seed, args.threads)
    _emit(rep.to_dict(), args.out)


def cmd_traject(args) -> None:
    state = io.load_state(args.state, args.basis)
    O = io.load_observable(args.observable)
    sx = measurement_simplex(O, state.basis)
    on = hm.project_onto_simplex(state.bloch, sx)
    target = int(np.argmax(on.barycentric)) if args.outcome is None else args.outcome - 1
    taus = np.linspace(0.0, 1.0, args.steps + 1)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["stage", "tau"] + [f"r_{i + 1}" for i in range(state.basis.size)])
        for t in taus:
            w.writerow([1, repr(float(t))] + [repr(float(x)) for x in hm.trajectory_stage1(state.bloch, sx, t)])
        for t in taus:
            w.writerow([2, repr(float(t))] + [repr(float(x)) for x in hm.trajectory_stage2(on, sx, target, t)])
    finally:
        if args.out:
            out.close()


def cmd_decompose(args) -> None:
    basis = build_tensor_basis(2, 2)
    state = io.load_state(args.state, "tensor")
    if state.n != 4:
        raise EBlochError("decompose needs a two-qubit (n = 4) state")
    d = composite.decompose_direct_sum(to_bloch(state.matrix, basis), basis)
    report = {"schema": io.SCHEMA, **d.to_dict(), "product": composite.is_product(d, args.tol)}
    _emit(report, args.out)


def cmd_bell(args) -> None:
    axes = [spin_axis(t) for t in (args.a, args.aprime, args.b, args.bprime)]
    report = bell_rod.chsh_report(*axes, trials=args.trials, seed=args.seed, threads=args.threads)
    report["angles_deg"] = {"a": args.a, "a'": args.aprime, "b": args.b, "b'": args.bprime}
    _emit(report, args.out)


def cmd_rod(args) -> None:
    cfg = bell_rod.RodConfig.from_angles(args.a, args.b, args.order)
    table = bell_rod.joint_distribution(cfg, args.trials, args.seed, args.threads)
    report = {"schema": io.SCHEMA, "seed": args.seed, "order": args.order, **table.to_dict()}
    _emit(report, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ebloch", description="Extended Bloch representation toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write output here instead of stdout")
        return sp

    def stochastic(sp):
        sp.add_argument("--trials", type=int, required=True)
        sp.add_argument("--seed", type=int, required=True)
        sp.add_argument("--threads", type=int, default=1)

    sp = common(sub.add_parser("gen", help="export a generator basis"))
    sp.add_argument("--basis", choices=["gellmann", "tensor"], default="gellmann")
    sp.add_argument("--n", type=int)
    sp.set_defaults(func=cmd_gen)

    sp = common(sub.add_parser("verify", help="check basis invariants"))
    sp.add_argument("--basis", choices=["gellmann", "tensor"], default="gellmann")
    sp.add_argument("--n", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("convert", help="density matrix <-> Bloch vector"))
    sp.add_argument("--state", required=True)
    sp.add_argument("--to", choices=["matrix", "bloch"])
    sp.add_argument("--basis", choices=["gellmann", "tensor"])
    sp.set_defaults(func=cmd_convert)

    sp = common(sub.add_parser("measure", help="Monte Carlo hidden-measurement run"))
    sp.add_argument("--state", required=True)
    sp.add_argument("--observable", required=True, help="JSON file or built-in name")
    sp.add_argument("--basis", choices=["gellmann", "tensor"])
    sp.add_argument("--degenerate-tol", type=float, default=1e-9)
    stochastic(sp)
    sp.set_defaults(func=cmd_measure)

    sp = common(sub.add_parser("traject", help="CSV of the two-stage trajectory"))
    sp.add_argument("--state", required=True)
    sp.add_argument("--observable", required=True)
    sp.add_argument("--basis", choices=["gellmann", "tensor"])
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--outcome", type=int, help="1-based target vertex for stage 2 (default: most probable)")
    sp.set_defaults(func=cmd_traject)

    sp = common(sub.add_parser("decompose", help="direct-sum split of a two-qubit state"))
    sp.add_argument("--state", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_decompose)

    sp = common(sub.add_parser("bell", help="CHSH estimate from the rigid-rod model"))
    for name in ("a", "aprime", "b", "bprime"):
        sp.add_argument(f"--{name}", type=float, required=True, help="angle in degrees (x-z plane)")
    stochastic(sp)
    sp.set_defaults(func=cmd_bell)

    sp = common(sub.add_parser("rod", help="joint outcome table of the rigid-rod model"))
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--order", choices=["A", "B"], default="A")
    stochastic(sp)
    sp.set_defaults(func=cmd_rod)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return 2
    if getattr(args, "steps", 1) < 1:
        print("error: --steps must be positive", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except (EBlochError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
