"""Command-line front end for the reproduction tables.

Every subcommand prints a '#'-prefixed header echoing its parameters,
followed by CSV or plain text, so a table can be regenerated from its
own header.  Output goes to stdout or to --out.

Exit codes: 0 success (a certified divergence verdict counts as
success), 1 a checked inequality or selftest criterion failed, 2 bad
input, 3 an iterative routine stopped before convergence or the
scheduler gave up.
"""

import argparse
import math
import sys
import time

from .certify import obstruction_certificate
from .errors import ConsistencyError, InputError, SchedulerError
from .gamma2 import factorization_norm
from .io import fmt, read_class_function, read_matrix, read_pair_list, read_qmatrix
from .legendre import real_decay_certificate, scaling_fit, tdelta_diff_norm
from .multiplier import multiplier_norm_bounds
from .padic import cartan_invariants
from .polygons import lambda_m_path
from .residue import verify_tk_diff
from .selftest import run_all

DEFAULT_SCALING_DELTAS = tuple(2.0**-k for k in range(6, 15))


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise InputError(f"expected a comma list of integers, got {text!r}") from exc


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise InputError(f"expected a comma list of numbers, got {text!r}") from exc


def _complex_arg(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InputError(f"cannot parse {text!r} as a complex number") from exc


def _exponent_arg(text):
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(text)
    except ValueError as exc:
        raise InputError(f"cannot parse exponent {text!r}") from exc


def _header(command, pairs):
    lines = [f"# schurbound {command}"]
    for key, value in pairs:
        lines.append(f"# {key} {value}")
    return lines


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_tkdiff(args):
    qs, ms, ns = _int_list(args.q), _int_list(args.m), _int_list(args.n)
    ps = [_exponent_arg(x) for x in args.p.split(",") if x != ""]
    u = _complex_arg(args.u) if args.u is not None else None
    v = _complex_arg(args.v) if args.v is not None else None
    lines = _header(
        "tkdiff",
        [
            ("q", args.q),
            ("m", args.m),
            ("n", args.n),
            ("p", args.p),
            ("oracle", fmt(bool(args.oracle))),
            ("u", args.u if args.u is not None else "none"),
            ("v", args.v if args.v is not None else "none"),
            ("cap", args.cap),
        ],
    )
    lines.append("q,m,n,p,eps,closed_form,oracle,bound,pass18,lower,pass19")
    failed = False
    for q in qs:
        for m in ms:
            for n in ns:
                for p in ps:
                    rep = verify_tk_diff(
                        q, m, n, p, u=u, v=v, with_oracle=args.oracle, cap=args.cap
                    )
                    oracle_cell = fmt(rep.oracle) if args.oracle else ""
                    if rep.shifted_norm is None:
                        lower_cell = pass19_cell = ""
                    else:
                        lower_cell = fmt(rep.shifted_norm)
                        pass19_cell = fmt(rep.shift_lower_ok)
                        failed = failed or not rep.shift_lower_ok
                    failed = failed or not rep.upper_ok
                    if args.oracle and rep.rel_gap > 1e-8:
                        failed = True
                    lines.append(
                        ",".join(
                            [
                                str(q),
                                str(m),
                                str(n),
                                fmt(p),
                                fmt(rep.eps),
                                fmt(rep.closed_form),
                                oracle_cell,
                                fmt(rep.upper_bound),
                                fmt(rep.upper_ok),
                                lower_cell,
                                pass19_cell,
                            ]
                        )
                    )
    _emit(lines, args.out)
    return 1 if failed else 0


def _cmd_cartan(args):
    A = read_qmatrix(args.matrix, args.q)
    poly = cartan_invariants(A)
    lines = _header("cartan", [("q", args.q), ("matrix", args.matrix)])
    lines.append(str(poly))
    _emit(lines, args.out)
    return 0


def _cmd_path(args):
    steps = lambda_m_path(args.r, args.m)
    lines = _header("path", [("r", args.r), ("m", args.m), ("floor", 2 * args.m - 2)])
    lines.append("step,index,polygon,governing_break,rule")
    for k, s in enumerate(steps, 1):
        lines.append(f"{k},{s.index},{s.polygon},{s.governing_break},{s.rule}")
    _emit(lines, args.out)
    return 0


def _cmd_certify(args):
    f = read_class_function(args.f)
    pairs = read_pair_list(args.pairs)
    p = _exponent_arg(args.p)
    cert = obstruction_certificate(f, pairs, args.q, args.n, p)
    lines = _header(
        "certify",
        [("q", args.q), ("n", args.n), ("p", args.p), ("f", args.f), ("pairs", args.pairs)],
    )
    lines.append(f"eps {fmt(cert.eps)}")
    lines.append(f"value {fmt(cert.value)}")
    for e in cert.entries:
        lines.append(
            f"entry {e.polygon} index {e.index} rule {e.rule} "
            f"break {e.governing_break} u {fmt(e.u)} v {fmt(e.v)} "
            f"contribution {fmt(e.contribution)}"
        )
    for poly, i, msg in cert.warnings:
        lines.append(f"warning {poly} index {i}: {msg}")
    _emit(lines, args.out)
    return 0


def _cmd_legendre_norm(args):
    a = _complex_arg(args.a)
    b = _complex_arg(args.b)
    p = _exponent_arg(args.p)
    res = tdelta_diff_norm(a, b, args.delta, p, tol=args.tol, max_terms=args.max_terms)
    lines = _header(
        "legendre-norm",
        [
            ("a", args.a),
            ("b", args.b),
            ("delta", fmt(args.delta)),
            ("p", args.p),
            ("tol", fmt(args.tol)),
            ("max_terms", args.max_terms),
        ],
    )
    lines.append(f"method {res.method}")
    lines.append(f"value {fmt(res.value) if res.value is not None else 'divergent'}")
    lines.append(f"truncation {res.truncation}")
    lines.append(f"tail {fmt(res.tail) if res.tail is not None else 'none'}")
    lines.append(f"converged {fmt(res.converged)}")
    if res.raw_value is not None:
        lines.append(f"raw_value {fmt(res.raw_value)}")
    if res.diagnostics:
        for start, stop, total in res.diagnostics:
            lines.append(f"octave {start} {stop} {fmt(total)}")
    _emit(lines, args.out)
    if res.method != "divergent" and not res.converged:
        return 3
    return 0


def _cmd_scaling(args):
    p = _exponent_arg(args.p)
    deltas = _float_list(args.deltas) if args.deltas else list(DEFAULT_SCALING_DELTAS)
    fit = scaling_fit(p, deltas, rtol=args.rtol, max_terms=args.max_terms)
    lines = _header(
        "scaling",
        [
            ("p", args.p),
            ("deltas", ",".join(fmt(d) for d in deltas)),
            ("rtol", fmt(args.rtol)),
            ("max_terms", args.max_terms),
        ],
    )
    lines.append("delta,value,truncation,tail,converged")
    for d, point in zip(fit.deltas, fit.points):
        lines.append(
            ",".join(
                [fmt(d), fmt(point.value), str(point.truncation), fmt(point.tail), fmt(point.converged)]
            )
        )
    lines.append(f"# fitted_exponent {fmt(fit.exponent)}")
    lines.append(f"# target_exponent {fmt(fit.target)}")
    lines.append(f"# prefactor {fmt(fit.prefactor)}")
    _emit(lines, args.out)
    return 0 if fit.converged else 3


def _cmd_real_decay(args):
    p = _exponent_arg(args.p)
    cert = real_decay_certificate(args.u, args.v, p, C1=args.c1)
    lines = _header(
        "real-decay",
        [
            ("u", fmt(args.u)),
            ("v", fmt(args.v)),
            ("p", args.p),
            ("C1", fmt(args.c1) if args.c1 is not None else "fitted"),
        ],
    )
    lines.append(f"rate {fmt(cert.a)}")
    lines.append(f"C1 {fmt(cert.C1)}")
    lines.append(f"pivot {cert.pivot}")
    for s in cert.steps:
        lines.append(
            f"step {s.route} {s.lhs} vs {s.rhs} conserving {s.conserved} "
            f"decay_arg {fmt(s.decay_arg)} factor {fmt(s.factor)}"
        )
    lines.append(f"bound {fmt(cert.bound)}")
    _emit(lines, args.out)
    return 0


def _cmd_multnorm(args):
    phi = read_matrix(args.symbol)
    p = _exponent_arg(args.p)
    res = multiplier_norm_bounds(phi, p, restarts=args.restarts, iters=args.iters, seed=args.seed)
    lines = _header(
        "multnorm",
        [
            ("symbol", args.symbol),
            ("p", args.p),
            ("restarts", args.restarts),
            ("iters", args.iters),
            ("seed", args.seed),
        ],
    )
    lines.append(f"lower {fmt(res.lower)}")
    lines.append(f"upper {fmt(res.upper) if res.upper is not None else 'none'}")
    lines.append(f"witness_rows {res.witness.A.shape[0]}")
    _emit(lines, args.out)
    return 0


def _cmd_gamma2(args):
    phi = read_matrix(args.symbol)
    res = factorization_norm(phi)
    lines = _header("gamma2", [("symbol", args.symbol)])
    lines.append(f"value {fmt(res.value)}")
    lines.append(f"solver_objective {fmt(res.lower)}")
    lines.append(f"width {fmt(res.width)}")
    lines.append(f"converged {fmt(res.converged)}")
    _emit(lines, args.out)
    return 0 if res.converged else 3


def _cmd_selftest(args):
    numbers = _int_list(args.only) if args.only else None
    results = run_all(numbers)
    lines = _header("selftest", [("only", args.only if args.only else "all")])
    for r in results:
        word = "PASS" if r.passed else "FAIL"
        lines.append(f"criterion {r.number:2d} {word} {r.name}: {r.detail}")
        print(f"# criterion {r.number} {r.elapsed:.2f}s", file=sys.stderr)
    npass = sum(1 for r in results if r.passed)
    lines.append(f"{len(results)} checks: {npass} passed, {len(results) - npass} failed")
    _emit(lines, args.out)
    return 0 if npass == len(results) else 1


def _add_common(sub):
    sub.add_argument("--out", default=None, help="write the table to a file instead of stdout")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized starts")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="schurbound",
        description="Certified Schur-multiplier bounds and reproduction tables.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("tkdiff", help="difference-norm table over a (q, m, n, p) grid")
    s.add_argument("--q", required=True, help="comma list of primes")
    s.add_argument("--m", required=True, help="comma list of levels")
    s.add_argument("--n", required=True, help="comma list of coordinate counts")
    s.add_argument("--p", required=True, help="comma list of exponents (inf allowed)")
    s.add_argument("--oracle", action="store_true", help="cross-check against a dense SVD")
    s.add_argument("--u", default=None, help="shift coefficient u (complex, e.g. 1+2j)")
    s.add_argument("--v", default=None, help="shift coefficient v")
    s.add_argument("--cap", type=int, default=4096, help="dense dimension cap")
    _add_common(s)
    s.set_defaults(func=_cmd_tkdiff)

    s = subs.add_parser("cartan", help="invariant vector of an exact rational matrix")
    s.add_argument("--q", type=int, required=True, help="prime")
    s.add_argument("--matrix", required=True, help="JSON matrix file (exact entries)")
    _add_common(s)
    s.set_defaults(func=_cmd_cartan)

    s = subs.add_parser("path", help="unit-increment schedule between scaled polygons")
    s.add_argument("--r", type=int, required=True, help="polygon length")
    s.add_argument("--m", type=int, required=True, help="starting scale")
    _add_common(s)
    s.set_defaults(func=_cmd_path)

    s = subs.add_parser("certify", help="class-function obstruction certificate")
    s.add_argument("--q", type=int, required=True, help="prime")
    s.add_argument("--n", type=int, required=True, help="bilinear coordinate count")
    s.add_argument("--p", required=True, help="exponent with p > 2 + 2/n")
    s.add_argument("--f", required=True, help="class-function file (coords : value)")
    s.add_argument("--pairs", required=True, help="pair file (coords : index)")
    _add_common(s)
    s.set_defaults(func=_cmd_certify)

    s = subs.add_parser("legendre-norm", help="series norm of a weighted point-pair difference")
    s.add_argument("--a", required=True, help="coefficient at the fixed point")
    s.add_argument("--b", required=True, help="coefficient at the offset point")
    s.add_argument("--delta", type=float, required=True, help="offset in [-1, 1]")
    s.add_argument("--p", required=True, help="exponent (inf allowed)")
    s.add_argument("--tol", type=float, default=1e-6, help="tail tolerance")
    s.add_argument("--max-terms", type=int, default=2**24, help="series length cap")
    _add_common(s)
    s.set_defaults(func=_cmd_legendre_norm)

    s = subs.add_parser("scaling", help="log-log decay fit of the series norm in delta")
    s.add_argument("--p", required=True, help="finite exponent with p > 4")
    s.add_argument("--deltas", default=None, help="comma list of offsets (default 2^-6..2^-14)")
    s.add_argument("--rtol", type=float, default=1e-2, help="relative tolerance per point")
    s.add_argument("--max-terms", type=int, default=2**24, help="series length cap")
    _add_common(s)
    s.set_defaults(func=_cmd_scaling)

    s = subs.add_parser("real-decay", help="two-step decay certificate for a label pair")
    s.add_argument("--u", type=float, required=True, help="first decay argument, u > 0")
    s.add_argument("--v", type=float, required=True, help="second decay argument, v > 0")
    s.add_argument("--p", required=True, help="exponent with p > 4 (inf allowed with --c1)")
    s.add_argument("--c1", type=float, default=None, help="comparison constant (default fitted)")
    _add_common(s)
    s.set_defaults(func=_cmd_real_decay)

    s = subs.add_parser("multnorm", help="two-sided multiplier-norm estimate for a symbol")
    s.add_argument("--symbol", required=True, help="JSON matrix file")
    s.add_argument("--p", required=True, help="exponent in [1, inf]")
    s.add_argument("--restarts", type=int, default=8, help="random restarts")
    s.add_argument("--iters", type=int, default=60, help="alternation iterations")
    _add_common(s)
    s.set_defaults(func=_cmd_multnorm)

    s = subs.add_parser("gamma2", help="certified factorization norm of a symbol")
    s.add_argument("--symbol", required=True, help="JSON matrix file")
    _add_common(s)
    s.set_defaults(func=_cmd_gamma2)

    s = subs.add_parser("selftest", help="run the numbered verification checks")
    s.add_argument("--only", default=None, help="comma list of check numbers")
    _add_common(s)
    s.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 1
    except SchedulerError as exc:
        print(f"scheduler gave up: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"# {args.command} finished in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
