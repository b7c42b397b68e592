"""Command-line interface: ``marcumq <command> [options]``.

Every command prints one JSON object (or ``key: value`` lines with
``--format plain``).  Floats are written with 17 significant digits so that
the output round-trips exactly and is byte-identical between runs.

Exit status is 0 on success, 2 for domain or infeasibility errors and 3
when an iteration or quadrature does not converge; in the last case the best
iterate is included in the output.
"""

import argparse
import json
import math
import sys

from .errors import ConvergenceError, DomainError, QuadratureError
from .inversion import (
    TailSpec,
    invert_hybrid,
    invert_x_asymptotic,
    invert_x_iterative,
    invert_y_asymptotic,
    invert_y_iterative,
    two_step,
)
from .marcum_eval import marcum, marcum_asymptotic, transition_y
from .oracle import quad_p, quad_q, run_table1, run_table2, write_table_csv
from .scalar_kernels import gamma_ratios, invert_gamma_q

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

EVAL_METHODS = ("auto", "series", "asymptotic", "quadrature")
INVERT_METHODS = ("auto", "asymptotic", "iterative", "hybrid")


# ---------------------------------------------------------------------------
# output


def _encode(obj):
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _plain(obj):
    lines = []
    for k, v in obj.items():
        if isinstance(v, float):
            v = format(v, ".17g")
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _emit(result, fmt, stream):
    text = _encode(result) if fmt == "json" else _plain(result)
    stream.write(text + "\n")


# ---------------------------------------------------------------------------
# commands


def _finite(name, value):
    if not math.isfinite(value):
        raise DomainError(f"--{name} must be finite, got {value!r}")
    return value


def _tail(args):
    if args.q is not None:
        return TailSpec("Q", _finite("q", args.q))
    return TailSpec("P", _finite("p", args.p))


def _report_dict(command, rep):
    return {
        "command": command,
        "axis": rep.axis,
        "value": rep.value,
        "method": rep.method,
        "iterations": rep.iterations,
        "residual": rep.residual,
        "zeta0": rep.zeta0,
        "zeta1": rep.zeta1,
        "seed": rep.seed,
        "seed_residual": rep.seed_residual,
    }


def _verify(mu, x, y, tail):
    r = marcum(mu, x, y)
    got = r.q if tail.kind == "Q" else r.p
    return math.inf if got == 0.0 else abs(tail.value / got - 1.0)


def cmd_eval(args):
    mu, x, y = _finite("mu", args.mu), _finite("x", args.x), _finite("y", args.y)
    method = args.method
    if method in ("auto", "series"):
        r = marcum(mu, x, y)
        q, p, used = r.q, r.p, r.method
    elif method == "asymptotic":
        r = marcum_asymptotic(mu, x, y)
        q, p, used = r.q, r.p, r.method
    else:
        marcum(mu, x, y)  # domain checks shared with the other methods
        q, p, used = quad_q(mu, x, y), quad_p(mu, x, y), "quadrature"
    return {"command": "eval", "mu": mu, "x": x, "y": y, "q": q, "p": p, "method": used}


def _invert(args, axis):
    mu = _finite("mu", args.mu)
    fixed = _finite("y" if axis == "x" else "x", args.y if axis == "x" else args.x)
    tail = _tail(args)
    method = args.method
    if method in ("auto", "hybrid"):
        rep = invert_hybrid(mu, fixed, tail, axis)
    elif method == "asymptotic":
        f = invert_x_asymptotic if axis == "x" else invert_y_asymptotic
        rep = f(mu, fixed, tail)
    else:
        f = invert_x_iterative if axis == "x" else invert_y_iterative
        rep = f(mu, fixed, tail, method=args.solver)
    out = _report_dict(f"invert-{axis}", rep)
    out["target"] = {"kind": tail.kind, "value": tail.value}
    if args.verify:
        x, y = (rep.value, fixed) if axis == "x" else (fixed, rep.value)
        out["verify_residual"] = _verify(mu, x, y, tail)
    return out


def cmd_invert_x(args):
    return _invert(args, "x")


def cmd_invert_y(args):
    return _invert(args, "y")


def cmd_two_step(args):
    step2 = "asymptotic" if args.method == "asymptotic" else "hybrid"
    mu = _finite("mu", args.mu)
    r = two_step(mu, _finite("q0", args.q0), _finite("q1", args.q1), step2=step2)
    return {
        "command": "two-step",
        "mu": mu,
        "y0": r.y0,
        "x1": r.x1,
        "delta0": r.delta0,
        "delta1": r.delta1,
        "method": r.report.method,
        "iterations": r.report.iterations,
    }


def cmd_gamma_invert(args):
    mu, q0 = _finite("mu", args.mu), _finite("q0", args.q0)
    y0 = invert_gamma_q(mu, q0)
    g = gamma_ratios(mu, y0)
    return {"command": "gamma-invert", "mu": mu, "q0": q0, "y0": y0, "delta0": abs(q0 / g.q - 1.0)}


def cmd_transition(args):
    mu, x = _finite("mu", args.mu), _finite("x", args.x)
    y = transition_y(mu, x)
    r = marcum(mu, x, y)
    return {"command": "transition", "mu": mu, "x": x, "y": y, "q": r.q, "q_minus_half": r.q - 0.5}


def cmd_table(args):
    rows = run_table1() if args.which == 1 else run_table2()
    if args.out == "-":
        write_table_csv(rows, sys.stdout, args.full_precision)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_table_csv(rows, fh, args.full_precision)
    return None


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="marcumq",
        description="Evaluate and invert the generalized Marcum Q and P functions.",
    )
    parser.add_argument("--format", choices=("json", "plain"), default="json",
                        help="output format for single results (default: json)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="Q_mu(x, y) and P_mu(x, y)")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--method", choices=EVAL_METHODS, default="auto")
    p.set_defaults(func=cmd_eval)

    for name, fixed, func in (("invert-x", "y", cmd_invert_x), ("invert-y", "x", cmd_invert_y)):
        p = sub.add_parser(name, help=f"solve for {name[-1]} at fixed mu and {fixed}")
        p.add_argument("--mu", type=float, required=True)
        p.add_argument(f"--{fixed}", type=float, required=True)
        tail = p.add_mutually_exclusive_group(required=True)
        tail.add_argument("--q", type=float, help="target upper tail")
        tail.add_argument("--p", type=float, help="target lower tail")
        p.add_argument("--method", choices=INVERT_METHODS, default="auto")
        p.add_argument("--solver", choices=("newton", "secant"), default="secant",
                       help="iteration used by --method iterative")
        p.add_argument("--verify", action="store_true",
                       help="re-evaluate the function at the solution and report the residual")
        p.set_defaults(func=func)

    p = sub.add_parser("two-step", help="Q_mu(0, y0) = q0, then Q_mu(x1, y0) = q1")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--q0", type=float, required=True)
    p.add_argument("--q1", type=float, required=True)
    p.add_argument("--method", choices=("auto", "asymptotic", "hybrid"), default="auto")
    p.set_defaults(func=cmd_two_step)

    p = sub.add_parser("gamma-invert", help="solve Q_mu(y0) = q0 for the gamma ratio")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--q0", type=float, required=True)
    p.set_defaults(func=cmd_gamma_invert)

    p = sub.add_parser("transition", help="approximate y with Q_mu(x, y) = 1/2")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("table", help="regenerate an error table as CSV")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--out", required=True, help="output path, or - for stdout")
    p.add_argument("--full-precision", action="store_true", help="17 significant digits")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None, stdout=None, stderr=None):
    """Entry point; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except DomainError as exc:
        stderr.write(f"marcumq: error: {exc}\n")
        _emit({"command": args.command, "error": str(exc), "kind": type(exc).__name__},
              args.format, stdout)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        stderr.write(f"marcumq: no convergence: {exc}\n")
        best = exc.estimate if isinstance(exc, QuadratureError) else exc.best
        _emit({"command": args.command, "error": str(exc), "kind": type(exc).__name__,
               "best": best, "iterations": exc.iterations}, args.format, stdout)
        return EXIT_CONVERGENCE
    if result is not None:
        _emit(result, args.format, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
