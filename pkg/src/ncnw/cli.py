"""Command-line front end for the ncnw library.

Inputs are JSON documents read from ``--input PATH``, from ``--json TEXT`` or
from standard input.  Exit status is 0 on success, 1 when an identity fails
or an input lies outside the domain of a bijection, and 2 on usage or
validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from . import bijections as bij
from . import fillings as fl
from .enumeration import (
    IdentityReport,
    MotzkinError,
    PartitionClass,
    class_poly,
    default_jobs,
    iter_class,
    matching_to_motzkin,
    motzkin_to_matching,
    search_nesting_counterexample,
    verify_donaghey,
    verify_euler,
    verify_gamma,
    verify_stirling,
)
from .numbers import KINDS, number
from .partitions import Convention, PartitionError, SetPartition
from .render import render_arcs, render_filling
from .selftest import report_text, run_selftest

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_input(args: argparse.Namespace):
    if getattr(args, "json", None) is not None:
        text = args.json
    elif getattr(args, "input", None):
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON input: {exc}") from None


def _object(data, what: str) -> dict:
    if not isinstance(data, dict):
        raise UsageError(f"expected a JSON object describing {what}")
    return data


def _partition(data, default: Convention = Convention.ONE) -> SetPartition:
    data = dict(_object(data, "a partition"))
    data.setdefault("convention", default.value)
    return SetPartition.from_json(data)


def _filling(data) -> fl.TriangularFilling:
    return fl.TriangularFilling.from_json(_object(data, "a filling"))


def _partition_out(p: SetPartition) -> dict:
    return {"partition": p.to_json(), "text": str(p)}


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _grid(args: argparse.Namespace, identity: str) -> list[tuple[int, ...]]:
    if args.n is not None:
        if identity == "euler":
            if args.k is None:
                raise UsageError("verify euler needs --k together with --n")
            return [(args.n, args.k)]
        return [(args.n,)]
    if args.nmax is None:
        raise UsageError("give either --n or --nmax")
    lo = 0 if identity in ("gamma", "donaghey") else 1
    if identity == "euler":
        kmax = args.kmax if args.kmax is not None else 6
        return [(n, k) for n in range(1, args.nmax + 1) for k in range(2, kmax + 1)]
    return [(n,) for n in range(lo, args.nmax + 1)]


VERIFIERS: dict[str, Callable[..., IdentityReport]] = {
    "euler": verify_euler,
    "gamma": verify_gamma,
    "stirling": verify_stirling,
    "donaghey": verify_donaghey,
}


def _report_rows(report: IdentityReport, prefix: str = ""):
    name = prefix + report.name
    yield name, report
    for part in report.parts:
        yield from _report_rows(part, name + "/")


def _format_reports(reports: list[IdentityReport], fmt: str) -> str:
    if fmt == "json":
        return "".join(_dump(r.to_json()) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "params", "equal", "mismatch", "lhs", "rhs"])
        for r in reports:
            for name, sub in _report_rows(r):
                params = ";".join(f"{k}={v}" for k, v in sorted(sub.params.items()))
                writer.writerow([
                    name,
                    params,
                    str(sub.equal).lower(),
                    "" if sub.mismatch is None else sub.mismatch,
                    " ".join(map(str, sub.lhs.coeffs)),
                    " ".join(map(str, sub.rhs.coeffs)),
                ])
        return buf.getvalue()
    lines = []
    for r in reports:
        for name, sub in _report_rows(r):
            params = " ".join(f"{k}={v}" for k, v in sorted(sub.params.items()))
            verdict = "ok" if sub.equal else f"MISMATCH at t^{sub.mismatch}"
            lines.append(f"{name} {params}: {verdict}")
            lines.append(f"  lhs = {sub.lhs}")
            lines.append(f"  rhs = {sub.rhs}")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    if args.identity == "nesting-gap":
        n_max = args.nmax if args.nmax is not None else (args.n if args.n is not None else 4)
        gap = search_nesting_counterexample(n_max, args.jobs)
        if args.format == "json":
            sys.stdout.write(_dump(gap.to_json()) + "\n")
        else:
            found = [] if gap.witness is None else [gap.witness]
            sys.stdout.write(_format_reports(found, args.format))
            if args.format == "ascii":
                sys.stdout.write(f"scanned {len(gap.scanned)} pairs; agree at t=1: {gap.agree_at_one}\n")
        # the search is a negative control: finding a gap is the expected outcome
        return EXIT_OK if gap.agree_at_one else EXIT_MISMATCH
    fn = VERIFIERS[args.identity]
    reports = [fn(*params, jobs=args.jobs) for params in _grid(args, args.identity)]
    sys.stdout.write(_format_reports(reports, args.format))
    return EXIT_OK if all(r.equal for r in reports) else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# bijections
# ---------------------------------------------------------------------------


def _run_phi(args: argparse.Namespace, fn) -> int:
    p = _partition(_read_input(args), Convention.ZERO).to_convention(Convention.ZERO)
    q, trace = fn(p, args.k)
    if args.trace:
        sys.stdout.write(trace.to_jsonl())
    out = _partition_out(q)
    out["k"] = args.k
    out["steps"] = len(trace)
    sys.stdout.write(_dump(out) + "\n")
    return EXIT_OK


def cmd_phi(args: argparse.Namespace) -> int:
    return _run_phi(args, bij.phi)


def cmd_phi_inv(args: argparse.Namespace) -> int:
    return _run_phi(args, bij.phi_inv)


def cmd_psi(args: argparse.Namespace) -> int:
    p = _partition(_read_input(args), Convention.ZERO).to_convention(Convention.ZERO)
    sys.stdout.write(_dump(bij.psi(p).to_json()) + "\n")
    return EXIT_OK


def cmd_psi_inv(args: argparse.Namespace) -> int:
    pair = bij.MatchingPair.from_json(_object(_read_input(args), "a matching pair"))
    sys.stdout.write(_dump(_partition_out(bij.psi_inv(pair))) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fillings
# ---------------------------------------------------------------------------


def cmd_fill(args: argparse.Namespace) -> int:
    data = _read_input(args)
    op = args.op
    if op in ("map-c", "map-e"):
        f = (fl.map_C if op == "map-c" else fl.map_E)(_partition(data))
        out = {"filling": f.to_json()}
    elif op in ("inv-c", "inv-e"):
        p = (fl.inv_C if op == "inv-c" else fl.inv_E)(_filling(data))
        out = _partition_out(p)
    elif op == "map-f":
        comp, e = fl.map_f(_filling(data))
        out = {"composition": list(comp.parts), "word": str(comp), "filling": e.to_json()}
    else:
        data = _object(data, "a composition and a filling")
        try:
            comp = fl.Composition(tuple(data["composition"]))
            e = fl.TriangularFilling.from_json(_object(data["filling"], "a filling"))
        except KeyError as exc:
            raise UsageError(f"inv-f input needs key {exc}") from None
        out = {"filling": fl.inv_f(comp, e).to_json()}
    sys.stdout.write(_dump(out) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate, motzkin, render, numbers, selftest
# ---------------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> int:
    cls = PartitionClass(args.cls)
    if args.list:
        convention = Convention(args.convention)
        for p in iter_class(args.n, args.k, cls, convention):
            sys.stdout.write(_dump(p.to_json()) + "\n")
        return EXIT_OK
    poly = class_poly(args.n, args.k, cls, args.jobs)
    out = {"class": cls.value, "n": args.n, "k": args.k, "count": poly(1), "poly": poly.to_json()}
    if args.format == "json":
        sys.stdout.write(_dump(out) + "\n")
    elif args.format == "csv":
        sys.stdout.write("class,n,k,count,coeffs\n")
        sys.stdout.write(f"{cls.value},{args.n},{args.k},{poly(1)},{' '.join(map(str, poly.coeffs))}\n")
    else:
        sys.stdout.write(f"{cls.value}_{args.n}^({args.k}) = {poly}  (count {poly(1)})\n")
    return EXIT_OK


def cmd_motzkin(args: argparse.Namespace) -> int:
    if args.op == "to-path":
        word = matching_to_motzkin(_partition(_read_input(args)))
        sys.stdout.write(_dump({"path": word}) + "\n")
        return EXIT_OK
    if args.word is not None:
        word = args.word
    else:
        data = _read_input(args)
        word = data.get("path") if isinstance(data, dict) else data
        if not isinstance(word, str):
            raise UsageError('to-matching expects {"path": "UHD..."} or --word')
    p = motzkin_to_matching(word, Convention(args.convention))
    sys.stdout.write(_dump(_partition_out(p)) + "\n")
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    data = _read_input(args)
    if args.what == "arcs":
        sys.stdout.write(render_arcs(_partition(data, Convention.ZERO)))
    else:
        sys.stdout.write(render_filling(_filling(data)))
    return EXIT_OK


def cmd_numbers(args: argparse.Namespace) -> int:
    sys.stdout.write(f"{number(args.kind, *args.args)}\n")
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    report = run_selftest(args.nmax, args.kmax)
    sys.stdout.write(report_text(report))
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _k(text: str) -> int:
    value = _nonneg(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"k must be at least 2, got {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", "-i", metavar="PATH", help="read JSON from a file (default: stdin)")
    src.add_argument("--json", metavar="TEXT", help="inline JSON input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncnw",
        description="Exact k-noncrossing / enhanced k-noncrossing partition toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("verify", help="check an enumerative identity")
    p.add_argument("identity", choices=["euler", "gamma", "stirling", "donaghey", "nesting-gap"])
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--k", type=_k)
    p.add_argument("--nmax", type=_nonneg)
    p.add_argument("--kmax", type=_k)
    p.add_argument("--format", choices=["json", "csv", "ascii"], default="json")
    p.add_argument("--jobs", type=_positive, default=None)
    p.set_defaults(func=cmd_verify)

    for name, func, text in (
        ("phi", cmd_phi, "map BNW^(k) onto NC^(k)"),
        ("phi-inv", cmd_phi_inv, "map NC^(k) back onto BNW^(k)"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--k", type=_k, required=True)
        p.add_argument("--trace", action="store_true", help="emit one JSON line per step first")
        _add_input(p)
        p.set_defaults(func=func)

    p = sub.add_parser("psi", help="noncrossing partition -> (A, matching)")
    _add_input(p)
    p.set_defaults(func=cmd_psi)
    p = sub.add_parser("psi-inv", help="(A, matching) -> noncrossing partition")
    _add_input(p)
    p.set_defaults(func=cmd_psi_inv)

    p = sub.add_parser("fill", help="partition <-> staircase filling maps")
    p.add_argument("op", choices=["map-c", "inv-c", "map-e", "inv-e", "map-f", "inv-f"])
    _add_input(p)
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("enumerate", help="class polynomial by number of blocks")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_k, required=True)
    p.add_argument("--class", dest="cls", choices=[c.value for c in PartitionClass], default="NC")
    p.add_argument("--list", action="store_true", help="print each member as a JSON line")
    p.add_argument("--convention", choices=["zero", "one"], default="zero")
    p.add_argument("--format", choices=["json", "csv", "ascii"], default="json")
    p.add_argument("--jobs", type=_positive, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("motzkin", help="noncrossing matchings <-> Motzkin paths")
    p.add_argument("op", choices=["to-path", "to-matching"])
    p.add_argument("--word", help="path word for to-matching")
    p.add_argument("--convention", choices=["zero", "one"], default="one")
    _add_input(p)
    p.set_defaults(func=cmd_motzkin)

    p = sub.add_parser("render", help="draw an arc diagram or a filling as text")
    p.add_argument("--what", choices=["arcs", "filling"], default="arcs")
    p.add_argument("--format", choices=["ascii"], default="ascii")
    _add_input(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("numbers", help="closed-form numbers")
    p.add_argument("kind", choices=sorted(KINDS))
    p.add_argument("args", type=_nonneg, nargs="*")
    p.set_defaults(func=cmd_numbers)

    p = sub.add_parser("selftest", help="run the exhaustive property suite")
    p.add_argument("--nmax", type=_nonneg, default=8)
    p.add_argument("--kmax", type=_k, default=4)
    p.set_defaults(func=cmd_selftest)
    return parser


def _qualified(exc: Exception) -> str:
    module = type(exc).__module__
    if module == __name__:
        module = "ncnw.cli"
    return f"{module}: {exc}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 0) is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except bij.ImageError as exc:
        print(_qualified(exc), file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, PartitionError, fl.FillingError, bij.BijectionError, MotzkinError, ValueError) as exc:
        print(_qualified(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
