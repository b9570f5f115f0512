"""``roabp-lab`` command line."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import experiments
from .field import FieldError, make_field
from .gadgets import Graph, p_g, q_g_factor, quadratic, read_graph
from .nisan import EXHAUSTIVE_CAP, OrderCapError, candidate_orders, profiles_over_orders
from .poly import ParseError, Polynomial, format_poly, parse_poly
from .roabp import ROABP, synthesize
from .symfun import NotSymmetricError, circulant_poly, decompose, dft_minor_check, esym, esym_roabp
from .sylvester import discriminant, resultant


def _read_poly(arg: str, field) -> Polynomial:
    """``arg`` names a file holding a polynomial, or is the polynomial itself."""
    path = Path(arg)
    text = path.read_text() if path.is_file() else arg
    return parse_poly(text.strip(), field)


def _parse_var(text: str) -> int:
    t = text.strip().lower().removeprefix("x")
    if not t.isdigit() or int(t) < 1:
        raise SystemExit(f"error: --y must name a variable such as x2, got {text!r}")
    return int(t) - 1


def _parse_perm(text: str, n: int) -> tuple:
    try:
        order = tuple(int(v) - 1 for v in text.replace(",", " ").split())
    except ValueError:
        raise SystemExit(f"error: bad order {text!r}")
    if sorted(order) != list(range(n)):
        raise SystemExit(f"error: order {text!r} is not a permutation of 1..{n}")
    return order


def _orders(args, n: int) -> list:
    spec = args.order
    if spec == "all" or spec.startswith("random:"):
        return candidate_orders(n, spec, seed=args.seed, cap=args.cap)
    return [_parse_perm(spec, n)]


def _graph(args) -> Graph:
    if args.graph:
        return read_graph(args.graph)
    if args.edges:
        pairs = []
        for item in args.edges.replace(";", ",").split(","):
            i, j = item.replace("-", " ").split()
            pairs.append((int(i) - 1, int(j) - 1))
        return Graph.from_edges(pairs)
    raise SystemExit("error: give --graph FILE or --edges 'i-j,...'")


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def cmd_width(args) -> int:
    F = make_field(args.field)
    f = _read_poly(args.poly, F)
    if args.nvars:
        f = f.extend(args.nvars)
    profiles = profiles_over_orders(f, _orders(args, f.nvars), method=args.method, jobs=args.jobs)
    records = [p.to_dict() for p in profiles]
    if args.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["order", "ranks", "width", "size"])
        for r in records:
            w.writerow([" ".join(map(str, r["order"])), " ".join(map(str, r["ranks"])), r["width"], r["size"]])
        sys.stdout.write(buf.getvalue())
    else:
        print(json.dumps(records, indent=1))
    if len(profiles) > 1:
        best = min(profiles, key=lambda p: p.width)
        label = "min width" if args.order == "all" else "min width over sampled orders (upper bound)"
        print(f"# {label}: {best.width} at order {[v + 1 for v in best.order]}", file=sys.stderr)
    return 0


def cmd_synth(args) -> int:
    F = make_field(args.field)
    f = _read_poly(args.poly, F)
    order = _parse_perm(args.order, f.nvars) if args.order else tuple(range(f.nvars))
    A = synthesize(f, order)
    _emit(A.to_json(), args.out)
    print(f"# widths {A.widths}", file=sys.stderr)
    return 0


def cmd_expand(args) -> int:
    A = ROABP.from_json(Path(args.roabp).read_text())
    if args.field and make_field(args.field) != A.field:
        raise SystemExit(f"error: roABP is over {A.field.spec}, not {args.field}")
    print(format_poly(A.expand()))
    return 0


def cmd_esym(args) -> int:
    F = make_field(args.field)
    order = _parse_perm(args.order, args.n) if args.order else None
    A = esym_roabp(args.n, args.d, order, F)
    print(json.dumps({"polynomial": format_poly(esym(args.n, args.d, F)), "widths": A.widths,
                      "width": A.width, "roabp": A.to_dict()}, indent=1))
    return 0


def cmd_decompose(args) -> int:
    F = make_field(args.field)
    g = _read_poly(args.poly, F)
    if args.nvars:
        g = g.extend(args.nvars)
    try:
        dec = decompose(g)
    except NotSymmetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(format_poly(dec.f))
    print("# x_d stands for ESym of degree d", file=sys.stderr)
    return 0


def cmd_circulant(args) -> int:
    F = make_field(args.field)
    print(format_poly(circulant_poly(args.n, args.k, F)))
    return 0


def cmd_chebotarev(args) -> int:
    report = dft_minor_check(args.k, make_field(args.field))
    print(json.dumps(report.to_dict(), indent=1))
    return 0 if report.all_nonsingular else 1


def cmd_gadget(args) -> int:
    F = make_field(args.field)
    G = _graph(args)
    build = {"pg": lambda: p_g(G, args.d, F), "qg": lambda: q_g_factor(G, args.d, F),
             "quad": lambda: quadratic(G, F) ** args.d}[args.family]
    print(format_poly(build()))
    return 0


def cmd_resultant(args) -> int:
    F = make_field(args.field)
    f, g = _read_poly(args.f, F), _read_poly(args.g, F)
    y = _parse_var(args.y)
    n = max(f.nvars, g.nvars, y + 1)
    print(format_poly(resultant(f.extend(n), g.extend(n), y)))
    return 0


def cmd_discriminant(args) -> int:
    F = make_field(args.field)
    f = _read_poly(args.f, F)
    y = _parse_var(args.y)
    print(format_poly(discriminant(f.extend(max(f.nvars, y + 1)), y)))
    return 0


def cmd_exp(args) -> int:
    common = {"seed": args.seed, "timing": args.timing, "force": args.force}
    name = args.name
    if name == "factor":
        report = experiments.exp_factor_nonclosure(_graph(args), args.d, args.field, jobs=args.jobs,
                                                    samples=args.samples, cap=args.cap, **common)
    elif name == "esym-power":
        report = experiments.exp_esym_power(args.n, args.k, args.d, args.field, jobs=args.jobs,
                                            samples=args.samples, cap=args.cap, **common)
    elif name == "circulant":
        F = make_field(args.field)
        if F.kind != "fp":
            raise SystemExit("error: the circulant experiment needs --field fp:<p>")
        report = experiments.exp_circulant(args.n, args.k, F.modulus, jobs=args.jobs, samples=args.samples,
                                           cap=min(args.cap, 7), **common)
    elif name == "quadratic":
        report = experiments.exp_quadratic_power(_graph(args), args.d, args.field, jobs=args.jobs,
                                                 samples=args.samples, cap=args.cap, **common)
    elif name == "discriminant":
        if not args.poly:
            raise SystemExit("error: the discriminant experiment needs --poly")
        report = experiments.exp_discriminant(_read_poly(args.poly, make_field(args.field)), args.d, **common)
    else:  # argparse restricts the choices
        raise AssertionError(name)
    to_file = args.out not in (None, "-")
    print(report.table(), file=sys.stdout if to_file else sys.stderr)
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roabp-lab", description="Exact roABP widths and constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--field", default="q", help="'q' or 'fp:<p>' (default q)")
        p.set_defaults(func=func)
        return p

    p = add("width", cmd_width, "Nisan rank profile per order")
    p.add_argument("--poly", required=True, help="polynomial file or literal")
    p.add_argument("--order", default="all", help="comma-separated permutation, 'all' or 'random:N'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.add_argument("--method", choices=["exact", "modular"], default="exact")
    p.add_argument("--nvars", type=int, help="ambient number of variables")
    p.add_argument("--cap", type=int, default=EXHAUSTIVE_CAP)
    p.add_argument("--jobs", type=int, default=1)

    p = add("synth", cmd_synth, "minimal roABP in a given order, as JSON")
    p.add_argument("--poly", required=True)
    p.add_argument("--order", help="comma-separated permutation (default identity)")
    p.add_argument("--out", help="output file (default stdout)")

    p = add("expand", cmd_expand, "expand a serialised roABP")
    p.set_defaults(field=None)
    p.add_argument("--roabp", required=True)

    p = add("esym", cmd_esym, "elementary symmetric polynomial and its roABP")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order")

    p = add("decompose", cmd_decompose, "write a symmetric polynomial in the ESyms")
    p.add_argument("--poly", required=True)
    p.add_argument("--nvars", type=int)

    p = add("circulant", cmd_circulant, "the circulant polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("chebotarev", cmd_chebotarev, "check all minors of the DFT matrix")
    p.add_argument("--k", type=int, required=True)

    p = add("gadget", cmd_gadget, "graph gadget polynomials")
    p.add_argument("--graph")
    p.add_argument("--edges", help="inline edge list such as '1-3,2-4'")
    p.add_argument("--family", choices=["pg", "qg", "quad"], required=True)
    p.add_argument("--d", type=int, default=2)

    p = add("resultant", cmd_resultant, "Sylvester resultant in one variable")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--y", required=True, help="variable such as x3 or 3")

    p = add("discriminant", cmd_discriminant, "Res_y(f, df/dy)")
    p.add_argument("--f", required=True)
    p.add_argument("--y", required=True)

    p = add("exp", cmd_exp, "run an experiment and report verdicts")
    p.add_argument("name", choices=sorted(experiments.EXPERIMENTS))
    p.add_argument("--graph")
    p.add_argument("--edges")
    p.add_argument("--poly")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--cap", type=int, default=EXHAUSTIVE_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--force", action="store_true", help="override the nonzero cap")
    p.add_argument("--timing", action="store_true", help="add wall time to the report")
    p.add_argument("--out", help="report file; '-' or absent prints JSON to stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "exp" and args.name in ("esym-power", "circulant") and (args.n is None or args.k is None):
        print(f"error: {args.name} needs --n and --k", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (FieldError, ParseError, OrderCapError, experiments.CapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
