"""Command line front end: ``ortho-l1 {moment,examples,zeros,sweep}``.

Exit codes: 0 ok, 2 bad parameters, 3 verification discrepancy above
``--tol``, 64 bad command line, 70 a numerical method failed, 74 output
file not writable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import families as fam
from . import golden, rules
from .errors import CapabilityError, DomainError, NumericalError, UsageError
from .families import FamilySpec
from .oracle import oracle_moment
from .report import Report, fmt, relative_discrepancy, render, to_json_line
from .zeros import compute_zeros

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_DISCREPANCY = 3
EXIT_USAGE = 64
EXIT_NUMERICAL = 70
EXIT_IO = 74

DEFAULT_TOL = 1e-9
EXAMPLE_TOL = 1e-12


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# request evaluation


def make_spec(family, alpha=None, beta=None) -> FamilySpec:
    if family == fam.HERMITE:
        if alpha is not None or beta is not None:
            raise DomainError("the Hermite family takes no --alpha/--beta")
        return FamilySpec.hermite()
    if family == fam.LAGUERRE:
        if beta is not None:
            raise DomainError("the Laguerre family takes no --beta")
        return FamilySpec.laguerre(0.0 if alpha is None else alpha)
    return FamilySpec.jacobi(0.0 if alpha is None else alpha, 0.0 if beta is None else beta)


def check_request(spec: FamilySpec, n: int, i: int, oracle_only=False):
    fam.check_degree(n)
    if i < 0:
        raise DomainError(f"i must be non-negative, got {i}")
    if i > rules.I_MAX:
        raise CapabilityError(f"moment order {i} exceeds the cap {rules.I_MAX}")
    if not oracle_only and i >= n:
        raise UsageError(f"no closed-form rule for i >= n (n={n}, i={i}); rerun with --oracle-only")


def _bound_on_moment(spec, n, i):
    """Bound on the moment itself, or None where no bound applies."""
    try:
        b = rules.bound(spec, n, i)
    except DomainError:
        return None
    if spec.kind == fam.JACOBI:
        # the Jacobi bound controls i! times the moment
        b /= math.factorial(i)
    return b


def evaluate(spec: FamilySpec, n: int, i: int, verify=False, oracle_only=False, with_ledger=False) -> Report:
    rep = Report(spec.kind, n, i, alpha=spec.alpha, beta=spec.beta)
    if oracle_only:
        start = time.perf_counter_ns()
        rep.oracle = oracle_moment(spec, n, i).value
        rep.ns = time.perf_counter_ns() - start
        return rep
    start = time.perf_counter_ns()
    ledger = rules.moment(spec, n, i)
    rep.ns = time.perf_counter_ns() - start
    rep.formula = ledger.total
    rep.bound = _bound_on_moment(spec, n, i)
    if with_ledger:
        rep.ledger = [v for _, v in ledger.terms]
        rep.ledger_middle = ledger.middle_term
    if verify:
        rep.oracle = oracle_moment(spec, n, i).value
        rep.rel_disc = relative_discrepancy(rep.formula, rep.oracle)
    return rep


def _discrepant(reports, tol):
    return [r for r in reports if r.rel_disc is not None and not r.rel_disc <= tol]


# --------------------------------------------------------------------------
# subcommands


def cmd_moment(args, out) -> int:
    spec = make_spec(args.family, args.alpha, args.beta)
    requests = [(n, i) for n in args.n for i in args.i]
    for n, i in requests:
        check_request(spec, n, i, args.oracle_only)
    reports = [evaluate(spec, n, i, args.verify, args.oracle_only, args.ledger) for n, i in requests]
    out.write(render(reports, args.format, with_ledger=args.ledger))
    bad = _discrepant(reports, args.tol)
    if bad:
        worst = max(r.rel_disc for r in bad)
        print(f"verification failed: {len(bad)} request(s) above tol {args.tol:g} (worst {worst:.3g})", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def example_rows():
    rows = []
    for g in golden.ROWS:
        value = g.scale * rules.moment(g.spec, g.n, g.i).total
        exact = g.exact()
        rows.append(
            {
                "example": g.key,
                "integral": g.integral,
                "formula": value,
                "exact": exact,
                "rel_diff": relative_discrepancy(value, exact),
            }
        )
    return rows


def cmd_examples(args, out) -> int:
    rows = example_rows()
    out.write(render(rows, args.format, columns=["example", "integral", "formula", "exact", "rel_diff"]))
    bad = [r for r in rows if not r["rel_diff"] <= EXAMPLE_TOL]
    if bad:
        print(f"{len(bad)} example(s) differ by more than {EXAMPLE_TOL:g}", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def gauss_self_check(spec: FamilySpec, n: int) -> float:
    """Largest deviation of the rule's Gram matrix of ``Q_0..Q_{n-1}`` from the identity."""
    zs = compute_zeros(spec, n)
    cols = []
    for m in range(n):
        scale = math.exp(-0.5 * fam.log_norm_constant(spec, m))
        cols.append(fam.eval_polynomial(spec, m, zs.zeros) * scale)
    v = np.array(cols)
    gram = (v * zs.christoffel) @ v.T
    return float(np.max(np.abs(gram - np.eye(n))))


def cmd_zeros(args, out) -> int:
    spec = make_spec(args.family, args.alpha, args.beta)
    zs = compute_zeros(spec, args.n)
    check = gauss_self_check(spec, args.n) if args.christoffel else None
    if args.format == "json":
        rec = dict(spec.params())
        rec["n"] = args.n
        rec["n0"] = zs.n0
        rec["zeros"] = [float(t) for t in zs.zeros]
        if args.christoffel:
            rec["christoffel"] = [float(w) for w in zs.christoffel]
            rec["gauss_check"] = check
        out.write(to_json_line(rec) + "\n")
        return EXIT_OK
    for k, t in enumerate(zs.zeros):
        line = fmt(t)
        if args.christoffel:
            line += " " + fmt(zs.christoffel[k])
        out.write(line + "\n")
    if args.christoffel:
        out.write(f"# gauss self-check: max |G - I| = {check:.3g}\n")
    return EXIT_OK


def _grid(text, name):
    if text is None:
        return [None]
    try:
        vals = sorted({float(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise _UsageExit(f"--{name} expects a comma-separated list of numbers, got {text!r}")
    if not vals:
        raise _UsageExit(f"--{name} is empty")
    return vals


def _thread_count():
    raw = os.environ.get("ORTHO_L1_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k < 1:
        raise _UsageExit(f"ORTHO_L1_THREADS must be a positive integer, got {raw!r}")
    return k


def sweep_requests(family, alphas, betas, n_min, n_max, i_mode):
    """Rows in output order: parameters, then n, then i."""
    out = []
    for a in alphas:
        for b in betas:
            spec = make_spec(family, a, b)
            for n in range(n_min, n_max + 1):
                if i_mode == "all":
                    orders = range(min(n, rules.I_MAX + 1))
                elif i_mode == "zero":
                    orders = [0]
                else:
                    orders = [n - 1] if n - 1 <= rules.I_MAX else []
                for i in orders:
                    out.append((spec, n, i))
    return out


def _writable(path):
    if os.path.isdir(path):
        return False
    if os.path.exists(path):
        return os.access(path, os.W_OK)
    parent = os.path.dirname(os.path.abspath(path))
    return os.path.isdir(parent) and os.access(parent, os.W_OK)


def cmd_sweep(args, out) -> int:
    alphas = _grid(args.alpha, "alpha")
    betas = _grid(args.beta, "beta")
    if args.n_min < 1 or args.n_max < args.n_min:
        raise DomainError(f"need 1 <= --n-min <= --n-max, got {args.n_min}..{args.n_max}")
    threads = _thread_count()
    requests = sweep_requests(args.family, alphas, betas, args.n_min, args.n_max, args.i_mode)
    for spec, n, i in requests:
        check_request(spec, n, i)
    to_file = args.out not in (None, "-")
    if to_file and not _writable(args.out):
        print(f"cannot write to {args.out}", file=sys.stderr)
        return EXIT_IO

    def run(req):
        spec, n, i = req
        return evaluate(spec, n, i, verify=args.verify)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        reports = list(pool.map(run, requests))
    text = render(reports, args.format)
    if to_file:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write to {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        out.write(text)
    bad = _discrepant(reports, args.tol)
    if bad:
        print(f"verification failed for {len(bad)} row(s)", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def _family_args(p):
    p.add_argument("--family", required=True, choices=fam.KINDS)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ortho-l1", description="L1 norms and moments of classical orthogonal functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("moment", help="moment(s) of one family from the zero-sum rules")
    _family_args(p)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--i", type=int, nargs="+", default=[0])
    p.add_argument("--verify", action="store_true", help="also run the quadrature oracle")
    p.add_argument("--oracle-only", action="store_true", help="skip the rules (allows i >= n)")
    p.add_argument("--ledger", action="store_true", help="include the per-zero terms")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("examples", help="reproduce the worked closed-form integrals")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("zeros", help="zeros (and Christoffel numbers) of Q_n")
    _family_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--christoffel", action="store_true")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("sweep", help="evaluate a parameter grid and write a report file")
    p.add_argument("--family", required=True, choices=fam.KINDS)
    p.add_argument("--alpha", help="comma-separated alpha values")
    p.add_argument("--beta", help="comma-separated beta values")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--i-mode", choices=("all", "zero", "top"), default="zero")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _UsageExit as exc:
        print(f"ortho-l1: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, UsageError, CapabilityError) as exc:
        print(f"ortho-l1: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"ortho-l1: numerical failure: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
