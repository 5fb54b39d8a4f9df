"""Command-line front end: ``replica-knots <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 cap exceeded, 3 no
numerical convergence, 4 a reproduction check disagreed. Errors are written
to stderr as a single JSON line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bands, catalogue, knotpoly, moments, reproduce, seifert, series, zeros
from .errors import CapExceeded, NoConvergence, ReplicaKnotsError

FORMATS = ("json", "csv", "text")
ENV_PREFIX = "REPLICA_KNOTS_"
EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_CONVERGENCE, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    pairing_budget: int = moments.DEFAULT_PAIRING_BUDGET
    crossing_cap: int = knotpoly.DEFAULT_CROSSING_CAP
    rung_cap: int = bands.DEFAULT_CENSUS_CAP
    digits: int = zeros.DEFAULT_DIGITS
    threads: int = 1
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        for name in ("pairing_budget", "crossing_cap", "rung_cap", "threads"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.digits < 15:
            raise UsageError("digits must be >= 15")
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")


@dataclass
class Output:
    data: object
    table: tuple[list[str], list[list]] | None = None
    text: str | None = None
    exit_code: int = EXIT_OK

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        if fmt == "csv":
            if self.table is None:
                raise UsageError("this command has no CSV form; use --json or --text")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.table[0])
            w.writerows(self.table[1])
            return buf.getvalue()
        if self.text is not None:
            return self.text.rstrip("\n") + "\n"
        if self.table is not None:
            header, rows = self.table
            return "\n".join(["  ".join(header)] + ["  ".join(str(x) for x in r) for r in rows]) + "\n"
        return json.dumps(self.data, indent=2) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _env_int(name: str) -> int | None:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from None


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_mutually_exclusive_group()
    for f in FORMATS:
        g.add_argument(f"--{f}", dest="fmt", action="store_const", const=f, help=f"{f} output")
    p.add_argument("--out", help="write results here instead of stdout")
    p.add_argument("--threads", type=int, help="worker threads (env REPLICA_KNOTS_THREADS)")
    p.add_argument("--digits", type=int, help="working precision for root finding (env REPLICA_KNOTS_DIGITS)")
    p.add_argument("--pairing-budget", type=int, help="max Wick pairings to enumerate (env REPLICA_KNOTS_PAIRING_BUDGET)")
    p.add_argument("--crossing-cap", type=int, help="max crossings for the state sum (env REPLICA_KNOTS_CROSSING_CAP)")
    p.add_argument("--rung-cap", type=int, help="max rungs for a sign census (env REPLICA_KNOTS_RUNG_CAP)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="replica-knots", description="Replica-limit matrix moments and knot invariants.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("moments", parents=[common], help="exact Gaussian moment of a trace monomial")
    p.add_argument("--traces", required=True, help="e.g. 3,3 or [AB],[AA]")
    p.add_argument("--method", choices=("recursive", "brute"), default="recursive")
    p.add_argument("--coupling", help="two-matrix coupling c as p/q")

    p = sub.add_parser("replica-series", parents=[common], help="coefficients of the replica generating series")
    p.add_argument("--k", type=int, default=3, help="number of traces")
    p.add_argument("--degree", type=int, default=series.DEFAULT_DEGREE)
    p.add_argument("--total", type=int, help="only this total degree")
    p.add_argument("--exponents", help="a single coefficient, e.g. 8,4,4")

    p = sub.add_parser("seifert", parents=[common], help="Seifert matrices and Alexander/Conway polynomials")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=("trivalent",))
    src.add_argument("--matrix", help="JSON file holding the matrix rows")
    src.add_argument("--torus", type=int, help="odd n for the (2, n) torus knot")
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--emit", choices=("alexander", "matrix", "conway", "determinant"), default="alexander")
    p.add_argument("--route", choices=("determinant", "recursion"), default="determinant")

    p = sub.add_parser("zeros", parents=[common], help="Alexander zeros and their angular density")
    p.add_argument("--family", choices=("trivalent", "torus"), default="trivalent")
    p.add_argument("--gmax", type=int, help="sweep g = 1..gmax (or odd n = 3..gmax for torus)")
    p.add_argument("--g", type=int, help="a single member")
    p.add_argument("--method", choices=("fast", "exact"), help="double-precision recursion or multiprecision")
    p.add_argument("--density", action="store_true", help="emit the angular histogram")
    p.add_argument("--bins", type=int, default=zeros.DEFAULT_BINS)
    p.add_argument("--fit", action="store_true", help="emit the edge-exponent fit")

    p = sub.add_parser("bands", parents=[common], help="floor numbering and crossing-matrix classification")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--census", help="skeleton JSON; every sign assignment is classified")
    src.add_argument("--ladder", help="ladder JSON with signs")
    src.add_argument("--braid", help="braid word such as 1,1,-1")
    p.add_argument("--strands", type=int)
    p.add_argument("--start-strand", type=int, default=1)

    for name, helptext in (("jones", "Jones polynomial of a PD code"), ("vassiliev", "Vassiliev coefficients")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--pd", help="PD JSON file")
        src.add_argument("--fixture", help=f"one of {knotpoly.fixture_names()}")
        src.add_argument("--braid", help="braid word such as 1,-2,1,-2")
        p.add_argument("--strands", type=int)
        p.add_argument("--chunks", type=int, default=1, help="partial state sums")
        if name == "vassiliev":
            p.add_argument("--jmax", type=int, default=4)

    p = sub.add_parser("catalogue", parents=[common], help="knot table lookups")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--knot")
    src.add_argument("--mean")
    src.add_argument("--list", action="store_true")
    src.add_argument("--validate", action="store_true")

    p = sub.add_parser("reproduce", parents=[common], help="compare published values with computed ones")
    p.add_argument("target", help=f"one of {sorted(reproduce.TARGETS) + sorted(reproduce.ALIASES) + ['all']}")
    p.add_argument("--gmax", type=int)
    p.add_argument("--data-dir", default=".", help="where the zero-locus target writes its CSV files")
    p.add_argument("--no-brute", action="store_true", help="skip the 18-leg pairing enumeration")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    def pick(flag, env, default):
        if flag is not None:
            return flag
        v = _env_int(env)
        return default if v is None else v

    return RunConfig(
        subcommand=args.command,
        pairing_budget=pick(args.pairing_budget, "PAIRING_BUDGET", moments.DEFAULT_PAIRING_BUDGET),
        crossing_cap=pick(args.crossing_cap, "CROSSING_CAP", knotpoly.DEFAULT_CROSSING_CAP),
        rung_cap=pick(args.rung_cap, "RUNG_CAP", bands.DEFAULT_CENSUS_CAP),
        digits=pick(args.digits, "DIGITS", zeros.DEFAULT_DIGITS),
        threads=pick(args.threads, "THREADS", 1),
        fmt=args.fmt or os.environ.get(ENV_PREFIX + "FORMAT") or "text",
        out=args.out,
    )


def _set_threads(n: int) -> None:
    import numba

    numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


# --- subcommands ---


def cmd_moments(args, cfg: RunConfig) -> Output:
    try:
        mono = moments.TraceMonomial.parse(args.traces)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.coupling is not None:
        try:
            c = Fraction(args.coupling)
        except ValueError:
            raise UsageError(f"bad coupling {args.coupling!r}") from None
        poly = moments.coupled_moment(mono, c, budget=cfg.pairing_budget)
    elif not mono.is_single_matrix:
        raise UsageError("two-matrix words need --coupling p/q")
    elif args.method == "brute":
        poly = moments.moment(mono, "brute", budget=cfg.pairing_budget)
    else:
        poly = moments.moment(mono)
    data = {"monomial": str(mono), "polynomial": poly.to_json(), "replica": str(poly.coefficient(1))}
    if args.coupling is not None:
        data["coupling"] = str(Fraction(args.coupling))
    rows = [[e, str(c)] for e, c in sorted(poly.coeffs.items(), reverse=True)]
    text = f"<{mono}> = {poly}\nreplica limit: {poly.coefficient(1)}"
    return Output(data, (["exponent", "coefficient"], rows), text)


def cmd_replica_series(args, cfg: RunConfig) -> Output:
    if args.k < 1 or args.degree < 0:
        raise UsageError("--k must be >= 1 and --degree >= 0")
    s = series.replica_generating_series(args.k, args.degree)
    if args.exponents:
        exps = tuple(_int_list(args.exponents))
        if len(exps) != args.k:
            raise UsageError(f"need {args.k} exponents")
        items = [(exps, s[exps])]
    else:
        items = [(e, c) for e, c in s.items() if c and (args.total is None or sum(e) == args.total)]
        items.sort(key=lambda ec: (sum(ec[0]), tuple(-x for x in ec[0])))
    records = [{"exponents": list(e), "coefficient": str(c)} for e, c in items]
    header = [f"e{i + 1}" for i in range(args.k)] + ["coefficient"]
    rows = [list(e) + [str(c)] for e, c in items]
    text = "\n".join(f"{list(e)}  {c}" for e, c in items)
    return Output(records, (header, rows), text)


def _seifert_source(args) -> tuple[str, seifert.SeifertMatrix | None, object]:
    if args.family:
        if args.g < 1:
            raise UsageError("--g must be >= 1")
        return f"trivalent g={args.g}", seifert.trivalent_family(args.g), None
    if args.torus is not None:
        return f"torus (2,{args.torus})", None, seifert.torus_2n_alexander(args.torus)
    try:
        rows = json.loads(Path(args.matrix).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix: {exc}") from None
    if isinstance(rows, dict):
        rows = rows.get("rows", rows.get("matrix"))
    return Path(args.matrix).stem, seifert.SeifertMatrix.of(rows), None


def cmd_seifert(args, cfg: RunConfig) -> Output:
    label, V, delta = _seifert_source(args)
    if args.emit == "matrix":
        if V is None:
            raise UsageError("no Seifert matrix is built for --torus")
        rows = V.to_json()
        return Output({"source": label, "matrix": rows}, ([f"c{j}" for j in range(V.size)], rows), json.dumps(rows))
    if delta is None:
        if args.family and args.route == "recursion":
            delta = seifert.alexander_trivalent_recursive(args.g)
        else:
            delta = seifert.alexander_polynomial(V)
    if args.emit == "determinant":
        det = seifert.knot_determinant(delta)
        return Output({"source": label, "determinant": det}, (["determinant"], [[det]]), str(det))
    poly = delta if args.emit == "alexander" else knotpoly.conway_from_alexander(delta)
    coeffs = [int(c) for c in poly.coeffs]
    data = {"source": label, args.emit: coeffs, "polynomial": str(poly)}
    return Output(data, (["power", "coefficient"], [[i, c] for i, c in enumerate(coeffs)]), json.dumps(coeffs))


def _zero_sets(args, cfg: RunConfig) -> dict[int, zeros.RootSet]:
    if args.g is not None:
        members = [args.g]
    elif args.gmax is not None:
        members = list(range(1, args.gmax + 1))
        if args.family == "torus":
            members = [n for n in range(3, args.gmax + 1, 2)]
    else:
        raise UsageError("give --g or --gmax")
    if not members or min(members) < 1:
        raise UsageError("nothing to compute")
    method = args.method or ("fast" if args.family == "trivalent" else "exact")
    out = {}
    for m in members:
        if args.family == "torus":
            out[m] = zeros.find_roots(seifert.torus_2n_alexander(m), cfg.digits)
        elif method == "fast":
            out[m] = zeros.trivalent_roots(m)
        else:
            out[m] = zeros.find_roots(seifert.alexander_trivalent_recursive(m), cfg.digits)
    return out


def cmd_zeros(args, cfg: RunConfig) -> Output:
    sets = _zero_sets(args, cfg)
    if args.fit:
        fit = zeros.edge_exponent(list(sets.values()), bins=args.bins)
        data = {
            "exponent": fit.exponent,
            "intercept": fit.intercept,
            "residual": fit.residual,
            "roots": fit.n_roots,
            "points": fit.n_points,
        }
        return Output(data, (list(data), [list(data.values())]), f"edge exponent {fit.exponent:.4f} from {fit.n_roots} roots")
    if args.density:
        hist = zeros.angular_density(list(sets.values()), args.bins)
        rows = [[f"{lo:.12g}", f"{hi:.12g}", int(c)] for lo, hi, c in zip(hist.edges[:-1], hist.edges[1:], hist.counts)]
        data = {"edges": [float(x) for x in hist.edges], "counts": [int(c) for c in hist.counts]}
        return Output(data, (["lo", "hi", "count"], rows))
    header = ["g", "re", "im", "modulus", "arg_degrees", "residual"]
    rows = [reproduce.locus_row(g, z, r) for g, rs in sets.items() for z, r in zip(rs.roots, rs.residuals)]
    data = [dict(zip(header, row)) for row in rows]
    return Output(data, (header, rows))


def _ladder_from_args(args) -> bands.LadderDiagram:
    if args.ladder:
        return bands.load_ladder(args.ladder)
    word = _int_list(args.braid)
    return bands.LadderDiagram.from_braid(word, args.strands)


def cmd_bands(args, cfg: RunConfig) -> Output:
    if args.census:
        census = bands.enumerate_assignments(bands.load_skeleton(args.census), cfg.rung_cap)
        header = ["signs", "verdict", "components", "sequence", "linked"]
        rows = [
            [
                "".join("o" if s == bands.OVER else "u" for s in r.signs),
                r.verdict,
                r.components,
                r.sequence or "",
                "" if r.linked is None else str(r.linked).lower(),
            ]
            for r in census.records
        ]
        counts = "  ".join(f"{k}={v}" for k, v in census.counts.items())
        text = "\n".join([counts] + ["  ".join(str(x) for x in r) for r in rows])
        return Output(census.to_json(), (header, rows), text)
    d = _ladder_from_args(args)
    cls = bands.classify(d, args.start_strand)
    data = {"diagram": d.to_json(), **cls.to_json()}
    lines = [f"verdict: {cls.verdict}", f"components: {cls.components}"]
    if cls.components == 1:
        seq = bands.floor_numbering(d, args.start_strand)
        cm = bands.crossing_matrix(seq)
        data["matrix"] = [list(r) for r in cm.rows]
        data["row_sums"] = list(cm.row_sums)
        lines[1:1] = [f"sequence: {seq}", f"matrix: {data['matrix']}", f"row sums: {data['row_sums']}"]
    return Output(data, None, "\n".join(lines))


def _pd_from_args(args) -> tuple[str, knotpoly.PlanarDiagram]:
    if args.pd:
        try:
            return Path(args.pd).stem, knotpoly.load_pd(args.pd)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read PD file: {exc}") from None
    if args.fixture:
        return args.fixture, knotpoly.fixture(args.fixture)
    return f"braid {args.braid}", knotpoly.pd_from_braid(_int_list(args.braid), args.strands)


def _t_exponent(e: int) -> str:
    return str(Fraction(e, 2))


def cmd_jones(args, cfg: RunConfig) -> Output:
    name, d = _pd_from_args(args)
    v = knotpoly.jones_polynomial(d, cfg.crossing_cap, chunks=args.chunks, workers=cfg.threads)
    terms = sorted(v.terms.items(), reverse=True)
    data = {
        "name": name,
        "crossings": d.n_crossings,
        "writhe": knotpoly.writhe(d),
        "jones": knotpoly.format_jones(v),
        "terms": [[_t_exponent(e), c] for e, c in terms],
    }
    rows = [[_t_exponent(e), c] for e, c in terms]
    return Output(data, (["t_exponent", "coefficient"], rows), f"V({name}) = {data['jones']}")


def cmd_vassiliev(args, cfg: RunConfig) -> Output:
    if args.jmax < 0:
        raise UsageError("--jmax must be >= 0")
    name, d = _pd_from_args(args)
    v = knotpoly.jones_polynomial(d, cfg.crossing_cap, chunks=args.chunks, workers=cfg.threads)
    coeffs = knotpoly.vassiliev_coefficients(v, args.jmax)
    data = {"name": name, "jones": knotpoly.format_jones(v), "v": [str(c) for c in coeffs]}
    rows = [[j, str(c)] for j, c in enumerate(coeffs)]
    text = "\n".join([f"V({name}) = {data['jones']}"] + [f"v_{j} = {c}" for j, c in enumerate(coeffs)])
    return Output(data, (["j", "v"], rows), text)


def cmd_catalogue(args, cfg: RunConfig) -> Output:
    if args.validate:
        report = catalogue.validate_catalogue()
        rows = [[r.name, " ".join(map(str, r.monomial)), str(r.replica), r.route, r.ok] for r in report.rows]
        out = Output(report.to_json(), (["name", "monomial", "replica", "route", "ok"], rows))
        out.exit_code = EXIT_OK if report.ok else EXIT_MISMATCH
        return out
    if args.list:
        entries = catalogue.load_catalogue()
    elif args.knot:
        entries = (catalogue.entry(args.knot),)
    else:
        key = catalogue._key(_int_list(args.mean))
        entries = tuple(e for e in catalogue.load_catalogue() if catalogue._key(e.monomial) == key)
    data = [e.to_json() for e in entries]
    rows = [[e.name, " ".join(map(str, e.monomial)), e.alternating, " ".join(e.flags)] for e in entries]
    text = "\n".join(f"{e.name}  <{e.trace_monomial}>" + (f"  [{', '.join(e.flags)}]" if e.flags else "") for e in entries)
    return Output(data, (["name", "monomial", "alternating", "flags"], rows), text or "no knots")


def cmd_reproduce(args, cfg: RunConfig) -> Output:
    name = reproduce.resolve(args.target)
    opts: dict = {"brute": not args.no_brute, "data_dir": args.data_dir}
    if args.gmax is not None:
        if args.gmax < 1:
            raise UsageError("--gmax must be >= 1")
        opts["gmax"] = args.gmax
        opts["exact"] = args.gmax <= 30
    checks = reproduce.run_target(name, **opts)
    ok = all(c.ok for c in checks)
    data = {"target": name, "ok": ok, "checks": [c.to_json() for c in checks]}
    rows = [[c.name, c.expected, c.computed, "ok" if c.ok else "MISMATCH"] for c in checks]
    width = max(len(c.name) for c in checks)
    text = "\n".join(
        f"{'ok ' if c.ok else 'BAD'} {c.name:<{width}}  expected {c.expected}  computed {c.computed}" for c in checks
    )
    return Output(data, (["check", "expected", "computed", "status"], rows), text, EXIT_OK if ok else EXIT_MISMATCH)


COMMANDS = {
    "moments": cmd_moments,
    "replica-series": cmd_replica_series,
    "seifert": cmd_seifert,
    "zeros": cmd_zeros,
    "bands": cmd_bands,
    "jones": cmd_jones,
    "vassiliev": cmd_vassiliev,
    "catalogue": cmd_catalogue,
    "reproduce": cmd_reproduce,
}


def _fail(exc: BaseException, code: int) -> int:
    # KeyError quotes its message, so take the argument itself
    msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
    record = {"error": type(exc).__name__, "message": msg.replace("\n", " "), "exit_code": code}
    sys.stderr.write(json.dumps(record) + "\n")
    return code


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand; try --help")
        cfg = make_config(args)
        _set_threads(cfg.threads)
        result = COMMANDS[args.command](args, cfg)
        rendered = result.render(cfg.fmt)
        if cfg.out:
            Path(cfg.out).write_text(rendered)
        else:
            sys.stdout.write(rendered)
        return result.exit_code
    except UsageError as exc:
        return _fail(exc, EXIT_USAGE)
    except CapExceeded as exc:
        return _fail(exc, EXIT_CAP)
    except NoConvergence as exc:
        return _fail(exc, EXIT_CONVERGENCE)
    except (ReplicaKnotsError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _fail(exc, EXIT_USAGE)


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:
        # --help exits through argparse with code 0
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
