"""Command-line interface: synthesis, verification, SNAP compilation,
fidelity simulation, resource reports, and Monte Carlo scans.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np


def _write(path: str | None, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _counts_csv(counts: dict) -> str:
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["gate_kind", "count"])
    for kind in sorted(counts):
        w.writerow([kind, counts[kind]])
    return out.getvalue()


def _cmd_group(args) -> int:
    from . import group

    lines = ["g,inverse,order,re_trace,class"]
    for g in range(24):
        lines.append(
            f"{g},{int(group.INV_TABLE[g])},{group.element_order(g)},"
            f"{int(group.RE_TRACE[g])},{group.class_of(g)}"
        )
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _qubit_circuit(primitive: str, theta: float):
    from . import qubit_gates

    if primitive == "inversion":
        return qubit_gates.build_inversion()
    if primitive in ("mult", "multiplication"):
        return qubit_gates.build_multiplication()
    if primitive == "trace":
        return qubit_gates.build_trace(theta)
    if primitive == "fourier":
        return qubit_gates.build_fourier_circuit()[0]
    raise ValueError(f"unknown primitive {primitive!r}")


def _cmd_synth(args) -> int:
    from . import circuits, qudit_gates

    if args.arch == "qudit":
        if args.primitive == "inversion":
            circ = qudit_gates.build_inversion_qudit()
        elif args.primitive == "trace":
            circ = qudit_gates.build_trace_qudit(args.theta)[0]
        elif args.primitive in ("mult", "multiplication"):
            circ = qudit_gates.build_multiplication_qudit()
        else:
            print("qudit fourier has no circuit form; use compile-snap",
                  file=sys.stderr)
            return 2
    else:
        circ = _qubit_circuit(args.primitive, args.theta)
        if args.lower:
            circ, _ = circuits.lower_to_clifford_t(circ, args.eps)
        if args.route:
            from .noise import PLACEMENTS

            flat = circuits.expand_to_two_qubit(circ)
            placement = PLACEMENTS.get(
                args.primitive, {w: w for w in range(flat.num_wires)}
            )
            circ = circuits.route(flat, circuits.NAIROBI, placement).circuit
    _write(args.emit, circuits.circuit_to_text(circ))
    counts = circ.gate_counts()
    _write(args.counts, _counts_csv(counts))
    return 0


def _cmd_verify(args) -> int:
    from . import circuits, group, qubit_gates, qudit_gates

    failures = []

    def check(label, ok, detail=""):
        status = "ok" if ok else "FAIL"
        print(f"{label}: {status} {detail}".rstrip())
        if not ok:
            failures.append(label)

    prims = ([args.primitive] if args.primitive
             else ["inversion", "multiplication", "trace", "fourier"])
    archs = [args.arch] if args.arch else ["qubit", "qudit"]
    for arch in archs:
        for prim in prims:
            if arch == "qubit":
                if prim == "inversion":
                    check("qubit inversion", qubit_gates.verify_inversion(),
                          "24/24 states correct")
                elif prim == "multiplication":
                    check("qubit multiplication",
                          qubit_gates.verify_multiplication(),
                          "576/576 pairs correct")
                elif prim == "trace":
                    check("qubit trace",
                          all(qubit_gates.verify_trace(t)
                              for t in (0.3, 0.7, 1.1)))
                else:
                    u = qubit_gates.build_fourier_unitary()
                    dev = float(np.abs(u.conj().T @ u - np.eye(32)).max())
                    check("fourier unitarity", dev < 1e-12, f"dev {dev:.1e}")
            else:
                if prim == "inversion":
                    c = qudit_gates.build_inversion_qudit()
                    u = circuits.unitary_of(c, check=False)
                    ok = all(abs(u[int(group.INV_TABLE[g]), g] - 1) < 1e-10
                             for g in range(24))
                    check("qudit inversion", ok)
                elif prim == "trace":
                    c, fused = qudit_gates.build_trace_qudit(0.7)
                    diag = np.diag(circuits.unitary_of(c, check=False))
                    want = np.exp(1j * 0.7 * group.RE_TRACE)
                    check("qudit trace",
                          float(np.abs(diag - want).max()) < 1e-10)
                elif prim == "multiplication":
                    c = qudit_gates.build_multiplication_qudit()
                    u = circuits.unitary_of(c, check=False)
                    worst = max(
                        abs(u[g + 24 * int(group.MULT_TABLE[g, h]),
                              g + 24 * h] - 1)
                        for g in range(24) for h in range(24)
                    )
                    check("qudit multiplication", worst < 1e-8,
                          f"worst {worst:.1e}")
                else:
                    ok = True
                    for g in range(24):
                        try:
                            qudit_gates.vg_eigenphases(g)
                        except RuntimeError:
                            ok = False
                    check("qudit diagonalizers", ok, "24/24 V_g diagonal")
    if args.file:
        from . import circuits as cc

        circ = cc.circuit_from_text(open(args.file).read())
        ref = _qubit_circuit(args.against, 0.7)
        dev = cc.phase_distance(cc.unitary_of(circ, check=False),
                                cc.unitary_of(ref, check=False))
        check(f"file vs {args.against}", dev < 1e-8, f"dev {dev:.1e}")
    return 1 if failures else 0


def _cmd_compile_snap(args) -> int:
    from . import qubit_gates, qudit_gates, snapcompile
    from .circuits import unitary_of

    if args.target == "fourier":
        target = qubit_gates.build_fourier_unitary()[:24, :24]
    elif args.target == "inversion":
        target = unitary_of(qudit_gates.build_inversion_qudit(),
                            check=False).astype(complex)
    else:
        print(f"unknown target {args.target!r}", file=sys.stderr)
        return 2
    res = snapcompile.compile_snap_displacement(
        target, layers=args.layers, seed=args.seed,
        restarts=args.restarts, maxiter=args.maxiter)
    lines = [f"# target {args.target} layers {args.layers} seed {args.seed}",
             f"# infidelity {res.infidelity:.6e}"]
    a = res.ansatz
    for k in range(a.layers + 1):
        al = a.alphas[k]
        lines.append(f"D {k} {al.real:.12g} {al.imag:.12g}")
        if k < a.layers:
            phases = " ".join(f"{p:.12g}" for p in a.snap_phases[k])
            lines.append(f"S {k} {phases}")
    _write(args.out, "\n".join(lines) + "\n")
    print(f"infidelity {res.infidelity:.6e} after {res.iterations} iterations")
    return 0


def _cmd_fidelity(args) -> int:
    from . import noise

    model = noise.NoiseModel.depolarizing(args.p)
    if args.full_table:
        rows = noise.experiment_table(model, args.shots, args.twirls,
                                      args.seed, args.theta)
    else:
        rows = [noise.process_fidelity(args.primitive, st, model, args.shots,
                                       args.twirls, args.seed, args.theta)
                for st in ([f"g{g}" for g in range(24)]
                           + (["GI"] if args.primitive == "inversion" else []))]
    _write(args.out, noise.results_to_csv(rows))
    return 0


def _cmd_resources(args) -> int:
    from . import resources

    spec = resources.SimulationSpec(args.d, args.L, args.nt, args.eps)
    _write(args.out, resources.report_json(spec) + "\n")
    return 0


def _cmd_mc(args) -> int:
    from . import lattice

    dims = tuple([4] * args.dim) if args.extent == 4 else \
        tuple([args.extent] * args.dim)
    betas = tuple(np.linspace(args.beta_min, args.beta_max, args.beta_steps))
    cfg = lattice.ScanConfig(dims=dims, betas=betas,
                             therm_sweeps=args.therm, meas_sweeps=args.sweeps,
                             seed=args.seed, start=args.start)
    results = lattice.scan(cfg)
    _write(args.out, lattice.results_to_csv(results))
    est = lattice.freezeout_estimate(results)
    print(f"steepest drop at beta = {est['beta_f']:.3f} "
          f"+/- {est['grid_error']:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="btprim",
        description="binary-tetrahedral primitive gates: synthesis, "
                    "verification, and costing",
    )
    default_seed = int(os.environ.get("BTPRIM_SEED", "0"))
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="element table (inverse, order, trace)")
    g.add_argument("--out")
    g.set_defaults(func=_cmd_group)

    s = sub.add_parser("synth", help="emit a primitive circuit")
    s.add_argument("primitive",
                   choices=["inversion", "mult", "multiplication", "trace",
                            "fourier"])
    s.add_argument("--arch", choices=["qubit", "qudit"], default="qubit")
    s.add_argument("--theta", type=float, default=0.7)
    s.add_argument("--lower", action="store_true")
    s.add_argument("--route", action="store_true")
    s.add_argument("--eps", type=float, default=1e-8)
    s.add_argument("--emit")
    s.add_argument("--counts")
    s.set_defaults(func=_cmd_synth)

    v = sub.add_parser("verify", help="oracle checks for all primitives")
    v.add_argument("--primitive",
                   choices=["inversion", "multiplication", "trace", "fourier"])
    v.add_argument("--arch", choices=["qubit", "qudit"])
    v.add_argument("file", nargs="?")
    v.add_argument("--against", default="inversion")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("compile-snap",
                       help="fit SNAP/displacement layers to a target")
    c.add_argument("--target", default="fourier")
    c.add_argument("--layers", type=int, default=24)
    c.add_argument("--seed", type=int, default=default_seed)
    c.add_argument("--restarts", type=int, default=3)
    c.add_argument("--maxiter", type=int, default=400)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_compile_snap)

    f = sub.add_parser("fidelity", help="twirled-noise process fidelities")
    f.add_argument("--primitive", choices=["trace", "inversion"],
                   default="trace")
    f.add_argument("--theta", type=float, default=0.7)
    f.add_argument("--p", type=float, default=0.02)
    f.add_argument("--shots", type=int, default=500)
    f.add_argument("--twirls", type=int, default=20)
    f.add_argument("--seed", type=int, default=default_seed)
    f.add_argument("--full-table", action="store_true")
    f.add_argument("--out")
    f.set_defaults(func=_cmd_fidelity)

    r = sub.add_parser("resources", help="fault-tolerant cost report")
    r.add_argument("--d", type=int, default=3)
    r.add_argument("--L", type=int, default=10)
    r.add_argument("--nt", type=int, default=50)
    r.add_argument("--eps", type=float, default=1e-8)
    r.add_argument("--arch", choices=["qubit", "qudit"], default="qubit")
    r.add_argument("--out")
    r.set_defaults(func=_cmd_resources)

    m = sub.add_parser("mc", help="Metropolis energy-density scan")
    m.add_argument("--dim", type=int, choices=[3, 4], default=4)
    m.add_argument("--extent", type=int, default=4)
    m.add_argument("--beta-min", type=float, default=1.6)
    m.add_argument("--beta-max", type=float, default=3.0)
    m.add_argument("--beta-steps", type=int, default=15)
    m.add_argument("--therm", type=int, default=500)
    m.add_argument("--sweeps", type=int, default=2000)
    m.add_argument("--seed", type=int, default=default_seed)
    m.add_argument("--start", choices=["hot", "cold"], default="cold")
    m.add_argument("--out")
    m.set_defaults(func=_cmd_mc)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
