"""Command-line front end: ``spinnet <subcommand> ...``."""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath

from .errors import ParseError, SpinNetError

FORMATS = ("csv", "json")


# ----------------------------------------------------------------------
# input helpers

def load_graph(arg):
    from .graph import parse_graph, standard_graph
    if os.path.exists(arg):
        with open(arg) as fh:
            return parse_graph(fh.read())
    return standard_graph(arg)


def load_coloring(arg, g):
    """'2,2,2' (edge order), 'a=2,b=4' or a coloring file."""
    from .graph import parse_coloring
    if os.path.exists(arg):
        with open(arg) as fh:
            return g.colors(parse_coloring(fh.read(), g))
    try:
        if "=" in arg:
            d = {}
            for item in arg.split(","):
                k, v = item.split("=")
                d[k.strip()] = int(v)
            return g.colors(d)
        return g.colors([int(x) for x in arg.split(",")])
    except ValueError as exc:
        raise ParseError(f"bad coloring {arg!r}: {exc}") from None


def parse_labels(values):
    if len(values) == 1 and "," in values[0]:
        values = values[0].split(",")
    try:
        labels = tuple(int(x) for x in values)
    except ValueError:
        raise ParseError(f"labels must be integers: {values}") from None
    if len(labels) != 6:
        raise ParseError("six tetrahedron labels (a b c d e f) are required")
    return labels


def load_sequence(arg, jobs=1):
    """A file with one rational per line, or 'tet:a,b,c,d,e,f:N' for the U-normalized 6j."""
    if arg.startswith("tet:"):
        from .asymptotics import u_sequence
        try:
            _, labs, n = arg.split(":")
            return [v.value for v in u_sequence(parse_labels([labs]), int(n) - 1, jobs)]
        except ValueError:
            raise ParseError("expected tet:a,b,c,d,e,f:N") from None
    try:
        with open(arg) as fh:
            return [Fraction(line.split("#")[0].strip()) for line in fh if line.split("#")[0].strip()]
    except OSError as exc:
        raise ParseError(f"cannot read {arg}: {exc}") from None
    except ValueError as exc:
        raise ParseError(f"bad sequence value in {arg}: {exc}") from None


# ----------------------------------------------------------------------
# output helpers

def _cell(x, digits):
    if isinstance(x, mpmath.mpc):
        if x.imag == 0:
            x = x.real
        else:
            return f"{mpmath.nstr(x.real, digits)}{'+' if x.imag >= 0 else '-'}{mpmath.nstr(abs(x.imag), digits)}j"
    if isinstance(x, mpmath.mpf):
        return "nan" if mpmath.isnan(x) else mpmath.nstr(x, digits)
    if x is None:
        return ""
    return str(x)


def emit_table(header, rows, fmt, digits, out):
    cells = [[_cell(x, digits) for x in r] for r in rows]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
    else:
        json.dump([dict(zip(header, r)) for r in cells], out, indent=1)
        out.write("\n")


def emit_report(report, fmt, out):
    if fmt == "json":
        json.dump(report, out, indent=1, sort_keys=True)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["key", "value"])
    for k in sorted(report):
        v = report[k]
        w.writerow([k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)])


# ----------------------------------------------------------------------
# subcommands

def cmd_eval(args, out):
    from .evaluation import all_normalizations, penrose_state_sum, standard_value
    g = load_graph(args.graph)
    col = load_coloring(args.coloring, g)
    v = penrose_state_sum(g, col) if args.method == "state" else standard_value(g, col, args.method)
    rows = [(tag, str(x) if x is not None else "undefined") for tag, x in all_normalizations(v, g, col).items()]
    emit_table(["normalization", "value"], rows, args.format, args.precision, out)


def cmd_sequence(args, out):
    from .evaluation import scaled_sequence
    g = load_graph(args.graph)
    col = load_coloring(args.coloring, g)
    n_max = args.nmax if args.nmax is not None else 20
    vals = scaled_sequence(g, col, n_max, args.norm, args.method, args.jobs)
    emit_table(["n", "value"], [(n, v) for n, v in enumerate(vals)], args.format, args.precision, out)
    if args.plot:
        from .plotting import plot_sequence
        plot_sequence(range(n_max + 1), [v.to_mp() for v in vals], args.plot, f"{args.graph} {args.norm}")


def cmd_genfun(args, out):
    from .genfun import diagonal_series, fourier_coefficients, spin_series_expand
    g = load_graph(args.graph)
    if args.fourier:
        ids = g.edge_ids
        rows = [(";".join("-".join(ids[e] for e in c) for c in X) or "{}", a)
                for X, a in sorted(fourier_coefficients(g).items())]
        emit_table(["X", "a_X"], rows, args.format, args.precision, out)
    elif args.diagonal:
        col = load_coloring(args.diagonal, g)
        n_max = args.nmax if args.nmax is not None else 5
        emit_table(["n", "coefficient"], list(enumerate(diagonal_series(g, col, n_max))),
                   args.format, args.precision, out)
    else:
        s = spin_series_expand(g, args.degree)
        rows = [list(k) + [v] for k, v in s.items()]
        emit_table(list(g.edge_ids) + ["coefficient"], rows, args.format, args.precision, out)


def cmd_classify(args, out):
    from .geometry import geometry_report
    emit_report(geometry_report(parse_labels(args.labels), args.precision), args.format, out)


def _expansion(labels, args):
    from .asymptotics import sixj_expansion
    from .recurrence import attach_series, sixj_series_data
    with mpmath.workdps(args.precision):
        exp = sixj_expansion(labels, args.precision)
    if args.depth > 0:
        data = sixj_series_data(labels, args.depth, jobs=args.jobs)
        if attach_series(exp, data["solutions"]) < len(exp.branches):
            exp.notes.append("some branches have no matching formal solution; their series stop at mu_0")
    return exp


def cmd_asympt(args, out):
    labels = parse_labels(args.labels)
    exp = _expansion(labels, args)
    rep = exp.to_json(args.precision)
    rep["labels"] = list(labels)
    emit_report(rep, args.format, out)


def cmd_predict(args, out):
    from .asymptotics import predict_and_compare, u_sequence
    labels = parse_labels(args.labels)
    n_max = args.nmax if args.nmax is not None else 60
    exp_mus = None
    if args.depth > 0:
        exp = _expansion(labels, args)
        exp_mus = {b.label: b.mu for b in exp.branches}
    vals = u_sequence(labels, n_max, args.jobs)
    rows = predict_and_compare(labels, range(n_max + 1), args.precision, exp_mus, vals)
    emit_table(["n", "value", "prediction", "abs_error", "rel_error"],
               [(n, v.to_mp(), p, e, r) for n, v, p, e, r in rows], args.format, args.precision, out)
    if args.plot:
        from .plotting import plot_prediction
        keep = [r for r in rows if not mpmath.isnan(mpmath.re(r[2]))]
        plot_prediction([r[0] for r in keep], [r[1].to_mp() for r in keep], [mpmath.re(r[2]) for r in keep],
                        [r[4] for r in keep], args.plot, f"U 6j {labels}")


def cmd_guess_rec(args, out):
    from .recurrence import guess_recurrence
    seq = load_sequence(args.input, args.jobs)
    rec = guess_recurrence(seq, args.rmax, args.dmax)
    if args.format == "json":
        json.dump({"order": rec.order, "degree": rec.degree, "coefficients": rec.to_strings()}, out, indent=1)
        out.write("\n")
    else:
        emit_table(["i", "coefficients"], list(enumerate(rec.to_strings())), "csv", args.precision, out)


def cmd_formal_series(args, out):
    from .recurrence import PolyRecurrence, formal_solutions, guess_recurrence
    if args.recurrence:
        with open(args.recurrence) as fh:
            text = fh.read()
        try:
            rows = json.loads(text)["coefficients"] if text.lstrip().startswith("{") else \
                [r.split(",", 1)[1] for r in text.splitlines()[1:] if r.strip()]
            rec = PolyRecurrence.from_strings(rows)
        except (ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"bad recurrence file: {exc}") from None
    else:
        rec = guess_recurrence(load_sequence(args.input, args.jobs), args.rmax, args.dmax)
    sols = formal_solutions(rec, args.depth)
    if args.format == "json":
        json.dump([s.to_json() for s in sols], out, indent=1, sort_keys=True)
        out.write("\n")
        return
    rows = []
    for k, s in enumerate(sols):
        for l, m in enumerate(s.mu):
            rows.append((k, str(s.Lambda), s.alpha, l, m))
    emit_table(["solution", "Lambda", "alpha", "l", "mu"], rows, "csv", args.precision, out)


def cmd_radius(args, out):
    from .asymptotics import spectral_radius_estimate
    from .evaluation import scaled_sequence
    g = load_graph(args.graph)
    n_max = args.nmax if args.nmax is not None else 100
    vals = scaled_sequence(g, (2,) * g.n_edges, n_max, args.norm, jobs=args.jobs)
    est, diag = spectral_radius_estimate(g, n_max, args.norm, vals)
    rep = {"graph": args.graph, "n_max": n_max, "estimate": round(est, 10),
           **{k: (round(v, 10) if isinstance(v, float) else v) for k, v in diag.items()}}
    rep["richardson_tail"] = [round(x, 10) for x in diag["richardson_tail"]]
    emit_report(rep, args.format, out)
    if args.plot:
        from .plotting import plot_radius
        plot_radius(range(n_max + 1), [v.to_mp() for v in vals], est, args.plot, f"{args.graph}")


def cmd_selftest(args, out):
    from .acceptance import run_all
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only, out)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed", file=out)
    return 0 if passed == len(results) else 1


# ----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=64, help="decimal digits (default 64)")
    common.add_argument("--depth", type=int, default=6, help="series depth (default 6)")
    common.add_argument("--nmax", type=int, default=None)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="spinnet", description="Exact spin network evaluations and asymptotics.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("eval", cmd_eval, "evaluate a colored graph in all normalizations")
    sp.add_argument("graph", help="standard name (theta, tetrahedron, k33, cube, circle, drumN) or graph file")
    sp.add_argument("coloring", help="'2,2,2', 'a=2,b=2' or coloring file")
    sp.add_argument("--method", choices=("auto", "chromatic", "state"), default="auto")

    sp = add("sequence", cmd_sequence, "scaled sequence <g, n gamma> for n <= nmax")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    sp.add_argument("--norm", choices=("P", "standard", "B", "U"), default="standard")
    sp.add_argument("--method", choices=("auto", "chromatic", "state"), default="auto")
    sp.add_argument("--plot", help="figure file (png, pdf, svg)")

    sp = add("genfun", cmd_genfun, "spin generating function series, diagonal or Fourier weights")
    sp.add_argument("graph")
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--diagonal", metavar="COLORING")
    sp.add_argument("--fourier", action="store_true")

    sp = add("classify", cmd_classify, "tetrahedron geometry report")
    sp.add_argument("labels", nargs="+")

    sp = add("asympt", cmd_asympt, "Nilsson expansion of the scaled 6j symbol")
    sp.add_argument("labels", nargs="+")

    sp = add("predict", cmd_predict, "exact values against the asymptotic expansion")
    sp.add_argument("labels", nargs="+")
    sp.add_argument("--plot", help="figure file")

    for name, fn, help_ in (("guess-rec", cmd_guess_rec, "guess a linear recurrence"),
                            ("formal-series", cmd_formal_series, "formal solutions of a recurrence")):
        sp = add(name, fn, help_)
        sp.add_argument("input", nargs="?", help="sequence file or tet:a,b,c,d,e,f:N")
        sp.add_argument("--rmax", type=int, default=4)
        sp.add_argument("--dmax", type=int, default=40)
        if name == "formal-series":
            sp.add_argument("--recurrence", help="recurrence file written by guess-rec")

    sp = add("radius", cmd_radius, "spectral radius estimate from the all-2 scaled sequence")
    sp.add_argument("graph")
    sp.add_argument("--norm", choices=("P", "standard", "B", "U"), default="standard")
    sp.add_argument("--plot", help="figure file")

    sp = add("selftest", cmd_selftest, "run the acceptance suite")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 5 or args.depth < 0 or (args.nmax is not None and args.nmax < 0) or args.jobs < 1:
        parser.error("invalid --precision, --depth, --nmax or --jobs")
    if args.command in ("guess-rec", "formal-series") and not args.input and not getattr(args, "recurrence", None):
        parser.error("an input sequence is required")
    mpmath.mp.dps = args.precision
    buf = io.StringIO()
    try:
        status = args.func(args, buf) or 0
    except SpinNetError as exc:
        json.dump({"error": exc.category, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return exc.exit_code
    text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
