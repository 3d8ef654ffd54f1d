"""Command-line front end.

Plain-text key=value blocks and CSV only; identical inputs produce
byte-identical output regardless of shard count.  Exit codes: 0 success,
2 hypothesis/input violation, 3 budget exceeded, 4 precision failure.
"""

import argparse
import sys

from . import census as census_mod
from . import pipeline
from .config import Config
from .errors import InputError, ThueLatError


def _fmt(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return "none"
    return str(value)


def _kv_lines(data, prefix=""):
    lines = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines += _kv_lines(value, prefix=f"{name}.")
        elif isinstance(value, (list, tuple)) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                lines += _kv_lines(item, prefix=f"{name}.{i}.")
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                lines.append(f"{name}.{i}={_fmt(item)}")
        else:
            lines.append(f"{name}={_fmt(value)}")
    return lines


def _print_kv(data, out):
    for line in _kv_lines(data):
        print(line, file=out)


def _config_from(args):
    return Config.from_env(
        precision_bits=getattr(args, "precision", None),
        shard_count=getattr(args, "shards", None),
        y_max_for_convergents=getattr(args, "y_max", None),
    )


def cmd_analyze(args, out):
    report = pipeline.analyze_report(args.form, args.m, _config_from(args))
    primes = report.pop("primes")
    _print_kv(report, out)
    for row in primes:
        p = row["p"]
        for key in ("v_p_m", "v_p_disc", "c_F_p"):
            print(f"prime.{p}.{key}={_fmt(row[key])}", file=out)
    if report["local_obstruction"]:
        print("notice=local obstruction: c_F(m(F)) = 0, equation has no solutions", file=out)
    return 0


def cmd_solve(args, out):
    result = pipeline.solve_pipeline(
        args.form,
        args.m,
        mode=args.mode,
        config=_config_from(args),
        radius=args.radius,
        use_convergents=args.convergents,
        y_max=args.y_max,
        shards=args.shards,
    )
    records = result.pop("records")
    for key, value in result.items():
        print(f"# {key}={_fmt(value)}", file=out)
    for line in pipeline.solution_csv_lines(records):
        print(line, file=out)
    return 0


def cmd_lattices(args, out):
    report = pipeline.lattices_report(args.form, args.m, _config_from(args))
    print(f"# form={report['form']}", file=out)
    print(f"# m={report['m']}", file=out)
    print(f"# count={report['count']}", file=out)
    print("lattice,lambda1_sq,lambda2_sq,minkowski_ok", file=out)
    for row in report["lattices"]:
        print(
            f"{row['lattice']},{row['lambda1_sq']},{row['lambda2_sq']},{_fmt(row['minkowski_ok'])}",
            file=out,
        )
    return 0


def cmd_verify(args, out):
    report = pipeline.verify_report(args.form, args.m, _config_from(args), radius=args.radius)
    solutions = report.pop("solutions")
    lattices = report.pop("lattices")
    _print_kv(report, out)
    for i, row in enumerate(lattices):
        print(f"lattice.{i}={row['lattice']}", file=out)
        print(f"lattice.{i}.solutions={row['solutions']}", file=out)
    for i, s in enumerate(solutions):
        print(f"solution.{i}={s.x},{s.y}", file=out)
    return 0


def cmd_bounds(args, out):
    params = {
        "d": args.d,
        "m": args.m,
        "A": args.A,
        "B": args.B,
        "c": args.c,
        "C1": args.C1,
        "C2": args.C2,
        "eps": args.eps,
        "omega_m_prime": args.omega,
        "c_F_m_prime": args.c_f_m_prime,
        "form": args.form,
        "m_prime": args.m_prime,
        "abs_disc": args.abs_disc,
    }
    params = {k: v for k, v in params.items() if v is not None}
    config = _config_from(args)
    reports = pipeline.bounds_dispatch(args.name, params, config)
    fmt = args.format or config.output_format
    if fmt == "csv":
        import csv

        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("key", "value"))
        for rep in reports:
            writer.writerows(rep.csv_rows())
        return 0
    first = True
    for rep in reports:
        if not first:
            print("", file=out)
        first = False
        for line in rep.kv_lines():
            print(line, file=out)
    return 0


def cmd_census(args, out):
    rows, summary = pipeline.census_pipeline(
        args.m_from,
        args.m_to,
        args.delta,
        method=args.method,
        cross_check=args.cross_check,
        config=_config_from(args),
        shards=args.shards,
    )
    print(census_mod.CSV_HEADER, file=out)
    for row in rows:
        print(census_mod.csv_line(row), file=out)
    print(f"# rows={summary.rows}", file=out)
    print(f"# max_scaled_proportion={summary.max_scaled_proportion:.12g}", file=out)
    print(f"# bound_violations={summary.bound_violations}", file=out)
    print(f"# minkowski_violations={summary.minkowski_violations}", file=out)
    return 0


def cmd_exceptional(args, out):
    config = _config_from(args)
    if args.classify:
        if args.m is None:
            raise InputError("--classify requires --m")
        report = pipeline.classify_report(
            args.form, args.m, args.eps, config, radius=args.radius
        )
        sides = report.pop("side_conditions")
        rows = report.pop("rows")
        _print_kv(report, out)
        for cond, holds in sides:
            print(f"side.{cond}={_fmt(holds)}", file=out)
        for i, row in enumerate(rows):
            for key, value in row.items():
                print(f"lattice.{i}.{key}={_fmt(value)}", file=out)
        return 0
    if args.point is None:
        raise InputError("need --point X Y (or --classify)")
    report = pipeline.exceptional_report(
        args.form, (args.point[0], args.point[1]), args.eps, config
    )
    _print_kv(report, out)
    return 0


def cmd_serve(args, out):
    import uvicorn

    uvicorn.run("thuelat.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thuelat",
        description="Thue equations and congruence lattices: solve, verify, bound, census.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--precision", type=int, default=None, help="working precision in bits")
        p.add_argument("--shards", type=int, default=None, help="deterministic shard count")

    p = sub.add_parser("analyze", help="discriminant, content, local factor counts")
    p.add_argument("form")
    p.add_argument("m", type=int)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("solve", help="primitive solutions of |F(x,y)| = m or <= m")
    p.add_argument("form")
    p.add_argument("m", type=int)
    p.add_argument("--mode", choices=("eq", "leq"), default="eq")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--convergents", action="store_true", help="extend by continued fractions")
    p.add_argument("--y-max", dest="y_max", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lattices", help="the c_F(m) congruence sublattices of determinant m")
    p.add_argument("form")
    p.add_argument("m", type=int)
    common(p)
    p.set_defaults(func=cmd_lattices)

    p = sub.add_parser("verify", help="check that the sublattices cover all solutions")
    p.add_argument("form")
    p.add_argument("m", type=int)
    p.add_argument("--radius", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate a named counting bound")
    p.add_argument("name", choices=pipeline.BOUND_NAMES)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--A", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--C1", type=float)
    p.add_argument("--C2", type=float)
    p.add_argument("--eps", type=str)
    p.add_argument("--omega", type=int)
    p.add_argument("--c-f-m-prime", dest="c_f_m_prime", type=int)
    p.add_argument("--form")
    p.add_argument("--m-prime", dest="m_prime", type=int)
    p.add_argument("--abs-disc", dest="abs_disc", type=int)
    p.add_argument("--format", choices=("kv-text", "csv"), default=None)
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("census", help="short-minimum census over sublattices")
    p.add_argument("--from", dest="m_from", type=int, required=True)
    p.add_argument("--to", dest="m_to", type=int, required=True)
    p.add_argument("--delta", type=str, required=True)
    p.add_argument("--method", choices=("lattice", "points"), default="lattice")
    p.add_argument("--cross-check", action="store_true")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("exceptional", help="epsilon-exceptionality of a point, or classify")
    p.add_argument("form")
    p.add_argument("--eps", type=str, required=True)
    p.add_argument("--point", type=int, nargs=2, default=None, metavar=("X", "Y"))
    p.add_argument("--classify", action="store_true")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ThueLatError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
