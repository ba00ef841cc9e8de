"""Command-line front end.

    sparseroots cover   --input poly.json --L 30
    sparseroots isolate --input poly.json [--L 2] [--L-max 65536]
    sparseroots verify  --input poly.json [--covering report.json | --L 30]

Input is ``{"terms": [{"e": 0, "c": "-1"}, {"e": 2, "c": "1"}]}`` with
coefficients given as integers, ``"p/q"`` or finite decimals.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 diagnostic.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, stats
from .cover import DEFAULT_L_MAX, isolate, l_covering
from .dyadic import Dyadic
from .errors import Diagnostic, SparseRootsError
from .numeric import SparsePoly

__all__ = ["main", "run", "parse_input", "Report", "DiskRecord", "report_from_covering"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_DIAGNOSTIC = 3


class InputError(ValueError):
    pass


def _parse_coefficient(c):
    if isinstance(c, bool):
        raise InputError(f"bad coefficient {c!r}")
    if isinstance(c, int):
        q = Fraction(c)
    elif isinstance(c, str):
        try:
            q = Fraction(c.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad coefficient {c!r}: {exc}") from None
    else:
        raise InputError(f"coefficients must be strings or integers, got {c!r}")
    if q == 0:
        raise InputError("coefficients must be non-zero")
    return q


def parse_input(data):
    """Build a :class:`SparsePoly` from the decoded input JSON."""
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list) or not data["terms"]:
        raise InputError('input must be an object with a non-empty "terms" list')
    terms = []
    seen = set()
    for t in data["terms"]:
        if not isinstance(t, dict) or "e" not in t or "c" not in t:
            raise InputError(f'each term needs "e" and "c": {t!r}')
        e = t["e"]
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise InputError(f"exponent must be a non-negative integer: {e!r}")
        if e in seen:
            raise InputError(f"duplicate exponent {e}")
        seen.add(e)
        terms.append((e, _parse_coefficient(t["c"])))
    return SparsePoly(terms)


def load_input(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_input(data)


# -- reports ------------------------------------------------------------


def _num(d):
    return {"dyadic": str(d), "decimal": d.decimal()}


@dataclass
class DiskRecord:
    center: Dyadic
    radius: Dyadic
    mu: int

    def to_json(self):
        return {"center": _num(self.center), "radius": _num(self.radius), "mu": self.mu}

    @classmethod
    def from_json(cls, obj):
        return cls(Dyadic.parse(obj["center"]["dyadic"]), Dyadic.parse(obj["radius"]["dyadic"]), int(obj["mu"]))


@dataclass
class Report:
    command: str
    L: int = None
    zero_root_multiplicity: int = 0
    disks: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    diagnostic: dict = None

    def to_json(self):
        return {
            "command": self.command,
            "L": self.L,
            "zero_root_multiplicity": self.zero_root_multiplicity,
            "disks": [d.to_json() for d in self.disks],
            "stats": self.stats,
            "diagnostic": self.diagnostic,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            obj["command"],
            obj.get("L"),
            int(obj.get("zero_root_multiplicity", 0)),
            [DiskRecord.from_json(d) for d in obj.get("disks", [])],
            dict(obj.get("stats", {})),
            obj.get("diagnostic"),
        )

    def to_text(self):
        lines = []
        if self.diagnostic:
            lines.append(f"diagnostic: {self.diagnostic['kind']}: {self.diagnostic['message']}")
        lines.append(f"# zero_root_multiplicity {self.zero_root_multiplicity}")
        for d in self.disks:
            lines.append(f"{d.center.decimal()} {d.radius.decimal()} {d.mu}")
        return "\n".join(lines)


def report_from_covering(command, C, st, wall):
    disks = [DiskRecord(e.disk.center, e.disk.radius, e.mu) for e in C.entries]
    return Report(command, C.L, C.zero_root_multiplicity, disks, _stats(st, wall))


def _stats(st, wall):
    return {
        "iterations": st.iterations,
        "max_precision_bits": st.max_precision_bits,
        "wall_time": round(wall, 6),
    }


def _gnuplot(report):
    """``lo hi mu`` per disk: the real traces as plain columns."""
    rows = ["# lo hi mu"]
    for d in report.disks:
        rows.append(f"{float(d.center - d.radius)!r} {float(d.center + d.radius)!r} {d.mu}")
    return "\n".join(rows) + "\n"


# -- verification -------------------------------------------------------


def verify_report(f, report):
    """Check a report against the dense oracle; returns ``[(name, ok, detail)]``."""
    from .oracle import DensePoly, dense_count_in_disk, dense_isolate, COUNT_MAX_DEGREE

    p = DensePoly.from_terms(zip(f.exponents, f.exact_coefficients()))
    disks = report.disks
    L = report.L
    checks = []
    centers = [d.center for d in disks]
    checks.append(("sorted", centers == sorted(centers), ""))
    overlaps = [
        (a.center.decimal(8), b.center.decimal(8))
        for a, b in zip(disks, disks[1:])
        if abs(a.center - b.center) < a.radius + b.radius
    ]
    checks.append(("disjoint", not overlaps, f"overlapping pairs {overlaps}" if overlaps else ""))
    if L is not None:
        wide = [d.center.decimal(8) for d in disks if d.radius > Dyadic(1, -L)]
        checks.append(("radius", not wide, f"too wide: {wide}" if wide else ""))
    roots = dense_isolate(p)
    lost = []
    for r in roots:
        if r.exact:
            x = r.lo
            ok = any(_in_disk(x, d) for d in disks)
        else:
            ok = any(_interval_in_disk(r, d, p) for d in disks)
        if not ok:
            lost.append(float(r.midpoint))
    checks.append(("coverage", not lost, f"uncovered roots near {lost}" if lost else ""))
    if p.degree <= COUNT_MAX_DEGREE:
        bad = []
        for d in disks:
            if d.radius.is_zero():
                got = report.zero_root_multiplicity
            else:
                got = dense_count_in_disk(p, d.center.to_fraction(), d.radius.to_fraction())
            if got != d.mu:
                bad.append((d.center.decimal(8), d.mu, got))
        checks.append(("mu", not bad, f"(center, reported, exact) {bad}" if bad else ""))
    return checks


def _in_disk(x, d):
    if d.radius.is_zero():
        return x == d.center.to_fraction()
    return abs(x - d.center.to_fraction()) < d.radius.to_fraction()


def _interval_in_disk(r, d, p):
    from .oracle import root_in_interval

    c, rad = d.center.to_fraction(), d.radius.to_fraction()
    return root_in_interval(p, r, c - rad, c + rad)


# -- entry point --------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(prog="sparseroots", description="Certified real-root coverings for sparse polynomials.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("cover", "isolate", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="polynomial JSON file")
        p.add_argument("--L", type=int, default=None, help="radius exponent (disks have radius <= 2^-L)")
        p.add_argument("--L-max", type=int, default=DEFAULT_L_MAX, dest="L_max")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--emit-gnuplot", metavar="FILE", default=None)
        if name == "verify":
            p.add_argument("--covering", metavar="FILE", default=None, help="report produced by cover/isolate")
    return parser


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report.to_json(), indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")


def run(argv=None, out=None, err=None):
    """Run the CLI and return the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        f = load_input(args.input)
    except (InputError, SparseRootsError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    if args.L is not None and args.L < 1:
        err.write("error: --L must be positive\n")
        return EXIT_PARSE

    if args.command == "verify":
        return _run_verify(args, f, out, err)

    t0 = time.perf_counter()
    with stats.collect() as st:
        try:
            if args.command == "cover":
                C = l_covering(f, args.L if args.L is not None else 30, args.threads)
            else:
                C = isolate(f, args.L if args.L is not None else 2, args.L_max, args.threads)
        except Diagnostic as exc:
            report = Report(args.command, args.L, stats=_stats(st, time.perf_counter() - t0),
                            diagnostic={"kind": exc.kind, "message": str(exc)})
            _emit(report, args.format, out)
            return EXIT_DIAGNOSTIC
        except SparseRootsError as exc:
            report = Report(args.command, args.L, stats=_stats(st, time.perf_counter() - t0),
                            diagnostic={"kind": "contract violation", "message": str(exc)})
            _emit(report, args.format, out)
            return EXIT_DIAGNOSTIC
    report = report_from_covering(args.command, C, st, time.perf_counter() - t0)
    _emit(report, args.format, out)
    if args.emit_gnuplot:
        with open(args.emit_gnuplot, "w") as fh:
            fh.write(_gnuplot(report))
    return EXIT_OK


def _run_verify(args, f, out, err):
    if f.exact_coefficients() is None:
        err.write("error: verification needs rational coefficients\n")
        return EXIT_PARSE
    if args.covering:
        try:
            with open(args.covering) as fh:
                report = Report.from_json(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            err.write(f"error: cannot read covering {args.covering}: {exc}\n")
            return EXIT_PARSE
    else:
        t0 = time.perf_counter()
        with stats.collect() as st:
            try:
                C = l_covering(f, args.L if args.L is not None else 30, args.threads)
            except SparseRootsError as exc:
                err.write(f"diagnostic: {getattr(exc, 'kind', 'contract violation')}: {exc}\n")
                return EXIT_DIAGNOSTIC
        report = report_from_covering("cover", C, st, time.perf_counter() - t0)
    from .oracle import OracleCeilingError

    try:
        checks = verify_report(f, report)
    except OracleCeilingError as exc:
        err.write(f"diagnostic: oracle ceiling: {exc}\n")
        return EXIT_DIAGNOSTIC
    ok = all(c[1] for c in checks)
    if args.format == "json":
        out.write(json.dumps({"checks": [{"name": n, "pass": p, "detail": d} for n, p, d in checks],
                              "pass": ok}, indent=2) + "\n")
    else:
        for n, p, d in checks:
            out.write(f"{'PASS' if p else 'FAIL'} {n}{': ' + d if d else ''}\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
