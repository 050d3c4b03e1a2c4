"""Command-line front end.

Subcommands::

    fdradius compute TUPLE.json [--f G] [--delta X ...]
    fdradius verify --kind K [--n N --dim D --count C --gamma G --alpha A] [--relations ids]
    fdradius reproduce
    fdradius range TUPLE.json [--samples N] [--with-witness]

Exit codes: 0 clean, 2 violation or mismatch, 1 operational error.
Every random choice derives from ``--seed``.
"""

import argparse
import csv
import io
import sys

import numpy as np

from .engine import Engine, EngineConfig, sphere_samples
from .errors import EmptyFeasibleSet, FdrError
from .gauge import identity, parse_gauge
from .generators import EnsembleSpec, SectorParams
from .suite import dumps, run_suite
from .tuples import joint_norm, load_tuple, r2_example_tuple
from .worked import reproduce_rows

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _gauge(text):
    try:
        return parse_gauge(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _grid(text):
    try:
        a, b, steps = text.split(":")
        steps = int(steps)
        if steps < 1:
            raise ValueError
        return [float(v) for v in np.linspace(float(a), float(b), steps)]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a:b:steps, got {text!r}") from exc


def _engine_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=EngineConfig.starts)
    p.add_argument("--samples", type=int, default=None,
                   help="oracle samples (compute, verify) or cloud size (range)")
    p.add_argument("--tol", type=float, default=EngineConfig.tol)
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser():
    p = _Parser(prog="fdradius", description="Joint (f, delta)-numerical radii of operator tuples.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="norms and radii of one tuple")
    c.add_argument("tuple_path")
    c.add_argument("--f", type=_gauge, default=identity())
    c.add_argument("--delta", type=float, action="append")
    c.add_argument("--delta-grid", type=_grid, help="absolute levels a:b:steps")
    _engine_flags(c)

    v = sub.add_parser("verify", help="run the relation suite on an ensemble")
    v.add_argument("--kind", default="ginibre")
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--dim", type=int, default=3)
    v.add_argument("--count", type=int, default=10)
    v.add_argument("--gamma", type=float, default=None)
    v.add_argument("--alpha", type=float, default=None)
    v.add_argument("--relations", default=None, help="comma-separated relation ids")
    v.add_argument("--f", type=_gauge, action="append", help="repeat for several gauges")
    v.add_argument("--delta", type=float, action="append", help="level fraction of ||A||_f")
    v.add_argument("--delta-grid", type=_grid, help="level fractions a:b:steps")
    _engine_flags(v)

    r = sub.add_parser("reproduce", help="rerun the worked examples")
    _engine_flags(r)

    g = sub.add_parser("range", help="sample the joint numerical range as CSV")
    g.add_argument("tuple_path")
    g.add_argument("--f", type=_gauge, default=identity())
    g.add_argument("--with-witness", action="store_true")
    _engine_flags(g)
    return p


def _cfg(args):
    kw = dict(starts=args.starts, tol=args.tol, rng_seed=args.seed)
    if args.samples is not None and args.command != "range":
        kw["oracle_samples"] = args.samples
    return EngineConfig(**kw)


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _levels(args, default):
    out = list(args.delta or [])
    if args.delta_grid:
        out += args.delta_grid
    return out or list(default)


def _vec(w):
    return [[float(z.real), float(z.imag)] for z in w]


def cmd_compute(args):
    A = load_tuple(args.tuple_path)
    f = args.f
    eng = Engine(_cfg(args))
    fn = eng.f_norm(A, f)
    out = {"gauge": str(f), "joint_norm": joint_norm(A), "f_norm": fn.value, "deltas": [],
           "f_delta_radius": [], "f_delta_norm": [], "witnesses": {"f_norm": _vec(fn.witness)}, "errors": [],
           "notes": []}
    wit = []
    for d in _levels(args, [0.0]):
        out["deltas"].append(d)
        try:
            r = eng.f_delta_radius(A, f, d)
            n = eng.f_delta_norm(A, f, d)
        except EmptyFeasibleSet as exc:
            out["f_delta_radius"].append(None)
            out["f_delta_norm"].append(None)
            out["errors"].append({"delta": d, "error": "EmptyFeasibleSet", "message": str(exc)})
            wit.append(None)
            continue
        out["f_delta_radius"].append(r.value)
        out["f_delta_norm"].append(n.value)
        wit.append({"radius": _vec(r.witness), "norm": _vec(n.witness)})
        if A == r2_example_tuple() and 1.0 < d < np.sqrt(2.0):
            out["notes"].append(f"delta={d:g}: the closed form delta^2-1 for this tuple is an erratum; "
                                f"the radius stays 1 up to delta=sqrt(2) (EXPECTED-DISCREPANCY)")
    out["witnesses"]["levels"] = wit
    _write(args, dumps(out) + "\n")
    return EXIT_OK


def cmd_verify(args):
    sector = None
    if args.gamma is not None or args.alpha is not None:
        sector = SectorParams(gamma=args.gamma if args.gamma is not None else 0.0,
                              alpha=args.alpha if args.alpha is not None else 1.0)
    spec = EnsembleSpec(args.kind, n=args.n, dim=args.dim, count=args.count, rng_seed=args.seed, sector=sector)
    rels = [r.strip() for r in args.relations.split(",") if r.strip()] if args.relations else None
    rep = run_suite(spec, relations=rels, gauges=args.f or [identity()],
                    delta_grid=_levels(args, (0.0, 0.25, 0.5)), cfg=_cfg(args))
    _write(args, rep.to_json() + "\n")
    s = rep.summary
    print(f"pass={s['pass']} flag={s['flag']} violation_candidate={s['violation_candidate']} "
          f"skipped={s['skipped']}", file=sys.stderr)
    return EXIT_OK if s["violation_candidate"] == 0 else EXIT_VIOLATION


def cmd_reproduce(args):
    rows = reproduce_rows(_cfg(args))
    _write(args, "".join(r.line() + "\n" for r in rows))
    return EXIT_VIOLATION if any(r.status == "MISMATCH" for r in rows) else EXIT_OK


def cmd_range(args):
    A = load_tuple(args.tuple_path)
    count = args.samples or 10_000
    X = sphere_samples(A.dim, count, args.seed)
    AX = np.einsum("mij,sj->smi", A.mats, X)
    forms = np.einsum("si,smi->sm", X.conj(), AX)
    vn = args.f.aggregate(np.linalg.norm(AX, axis=2), axis=1)
    header = [h for m in range(1, A.n + 1) for h in (f"re_{m}", f"im_{m}")] + ["vecnorm_f"]
    if args.with_witness:
        header += [h for j in range(1, A.dim + 1) for h in (f"x_re_{j}", f"x_im_{j}")]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for s in range(count):
        row = [v for z in forms[s] for v in (z.real, z.imag)] + [vn[s]]
        if args.with_witness:
            row += [v for z in X[s] for v in (z.real, z.imag)]
        w.writerow([format(float(v), ".17g") for v in row])
    _write(args, buf.getvalue())
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "reproduce": cmd_reproduce, "range": cmd_range}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FdrError, ValueError, OSError) as exc:
        print(f"fdradius: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
