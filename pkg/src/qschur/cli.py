"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for input or resource errors.  Results go to stdout (or ``-o``); progress
goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .cartan import format_matrix_text, parse_matrix_text, parse_type
from .errors import InputError, MembershipFailure, QSchurError, RankMismatch, ResourceBudgetExceeded, Unstabilized
from .hwmodule import build_module, freudenthal, module_dump, tensor_power_support
from .present import (
    complete,
    instantiate_presentation,
    predicted_dimension,
    presentation_dump,
)
from .schur import (
    COPRODUCT,
    algebra_dimension,
    assemble,
    cell_basis,
    enveloping_image_dim,
    k_elements,
    rep_dump,
    specialize,
    tamper_k,
    verify_divided,
    verify_presentation,
)
from .weyl import (
    format_weight,
    format_weight_set,
    is_dominant,
    is_saturated,
    largest_saturated_subset,
    orbit,
    parse_weight,
    parse_weight_set,
    saturate,
)

BUDGET_ENV = "QSCHUR_BUDGET"

ORIENTATION_NOTE = (
    "Catalog types use Bourbaki numbering: B2 = [[2,-1],[-2,2]] (alpha_2 short), "
    "C2 = [[2,-2],[-1,2]] (alpha_2 long), G2 = [[2,-3],[-1,2]] (alpha_1 short)."
)


class Output:
    """Collects (key, value) results and renders them as text or key=value lines."""

    def __init__(self, fmt):
        self.fmt = fmt
        self.pairs = []
        self.lines = []

    def put(self, key, value, label=None):
        self.pairs.append((key, value))
        if self.fmt == "text":
            self.lines.append(f"{label or key}: {value}")

    def text(self, line):
        if self.fmt == "text":
            self.lines.append(line)

    def render(self):
        if self.fmt == "structured":
            return "\n".join(f"{k}={v}" for k, v in self.pairs) + "\n"
        return "\n".join(self.lines) + "\n"


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def _cartan(args):
    if args.matrix:
        try:
            with open(args.matrix) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read matrix file: {exc}") from None
        return parse_matrix_text(text, label=os.path.basename(args.matrix))
    if args.type:
        return parse_type(args.type)
    raise InputError("one of --type or --matrix is required")


def _pi(args, c):
    if args.pi is None:
        raise InputError("--pi is required")
    pi = parse_weight_set(args.pi, c.n)
    for w in pi:
        if not is_dominant(w):
            from .errors import NotDominant

            raise NotDominant(f"({format_weight(w)}) is not dominant")
    return pi


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer") from None
    return None


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse rational {text!r}") from None


def _ws(ws):
    return "{" + format_weight_set(ws) + "}"


def _emit(args, body):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------------------
# commands


def cmd_describe(args):
    c = _cartan(args)
    pi = _pi(args, c)
    out = Output(args.format)
    out.put("cartan", c.label or "matrix")
    out.put("matrix", format_matrix_text(c).strip().replace("\n", " | "))
    out.put("symmetrizer", ",".join(str(x) for x in c.d))
    out.put("pi", _ws(pi))
    out.put("Wpi", _ws(orbit(c, pi)))
    out.put("Wpi_size", len(orbit(c, pi)))
    sat = is_saturated(c, pi)
    out.put("saturated", "yes" if sat else "no")
    closure = saturate(c, pi)
    if not sat:
        out.put("closure", _ws(closure))
        out.put("largest_saturated_subset", _ws(largest_saturated_subset(c, pi)))
    dims = [freudenthal(c, lam).total for lam in closure]
    out.put("weights", ";".join(format_weight(lam) for lam in closure))
    out.put("dims", ",".join(str(x) for x in dims))
    out.put("predicted", sum(x * x for x in dims))
    if not sat:
        out.put("collapsed_predicted", predicted_dimension(c, pi))
    _emit(args, out.render())
    return 0


def cmd_build(args):
    c = _cartan(args)
    pi = _pi(args, c)
    rep = assemble(c, pi, budget=_budget(args))
    body = json.dumps(rep_dump(rep), sort_keys=True, indent=1) + "\n"
    _emit(args, body)
    return 0


def cmd_module(args):
    c = _cartan(args)
    if args.hw is None:
        raise InputError("--hw is required")
    lam = parse_weight(args.hw, c.n)
    m = build_module(c, lam, budget=_budget(args))
    _emit(args, json.dumps(module_dump(m), sort_keys=True, indent=1) + "\n")
    return 0


def cmd_verify(args):
    c = _cartan(args)
    pi = _pi(args, c)
    budget = _budget(args)
    t0 = time.time()
    rep = assemble(c, pi, budget=budget)
    _progress(f"assembled dimension {rep.dim} in {time.time() - t0:.2f}s")
    K = Kinv = None
    if args.fault == "k-tamper":
        K, Kinv = k_elements(rep)
        K = tamper_k(K, 0, 0)
    reports = [verify_presentation(rep, K=K, Kinv=Kinv)]
    _progress("presentation checked")
    reports.append(verify_divided(rep, args.abound))
    _progress("divided powers checked")
    reports.append(cell_basis(rep, budget=budget).report)
    _progress("cell datum checked")
    reports.append(specialize(rep, 1, budget=budget)[1])
    _progress("classical specialization checked")
    ok = all(r.passed for r in reports)
    out = Output(args.format)
    for r in reports:
        s = r.summary()
        if args.format == "structured":
            out.put(f"{s['suite']}.checks", s["checks"])
            out.put(f"{s['suite']}.failed", s["failed"])
            for it in r.failures():
                (row, col), _, _ = it.defect
                out.put(f"{s['suite']}.defect", f"{it.relation}@({row},{col})")
        else:
            out.lines.extend(r.lines(verbose=args.verbose))
    if args.fault:
        out.put("fault", args.fault)
    out.put("result", "PASS" if ok else "FAIL")
    _emit(args, out.render())
    return 0 if ok else 1


def cmd_dim(args):
    c = _cartan(args)
    pi = _pi(args, c)
    budget = _budget(args)
    v_eval = _fraction(args.v_eval) if args.v_eval else None
    out = Output(args.format)
    sat = is_saturated(c, pi)
    prediction = predicted_dimension(c, pi)
    numbers = []
    if sat:
        rep = assemble(c, pi, budget=budget)
        assembled = algebra_dimension(rep, budget=budget)
        numbers.append(assembled)
        out.put("assembled", assembled)
    else:
        out.put("assembled", "n/a (not saturated)")
        out.put("collapse_to", _ws(largest_saturated_subset(c, pi)))
        closure = saturate(c, pi)
        out.put("closure_prediction", sum(freudenthal(c, lam).total ** 2 for lam in closure),
                label=f"prediction for the closure {_ws(closure)} (not the presented algebra)")
    pres = instantiate_presentation(c, pi, classical=args.classical, v_eval=v_eval)
    if v_eval is not None:
        out.put("coefficients", f"heuristic specialization v={v_eval}")
    elif args.classical:
        out.put("coefficients", "classical v=1")
    try:
        rs = complete(pres, args.degree_bound, budget=budget, log=_progress)
        presented = rs.dimension
        out.put("presented", presented)
    except Unstabilized as exc:
        out.put("presented", f"unstabilized ({exc})")
        out.put("prediction", prediction)
        out.put("verdict", "UNSTABILIZED")
        _emit(args, out.render())
        return 1
    numbers.append(presented)
    out.put("prediction", prediction)
    agree = all(x == prediction for x in numbers)
    out.put("verdict", "AGREE" if agree else "DISAGREE")
    _emit(args, out.render())
    return 0 if agree else 1


def cmd_envdim(args):
    c = _cartan(args)
    if args.hw is None:
        raise InputError("--hw is required")
    lam = parse_weight(args.hw, c.n)
    if args.d < 1:
        raise InputError("--d must be positive")
    budget = _budget(args)
    image = enveloping_image_dim(c, lam, args.d, budget=budget)
    support = tensor_power_support(c, lam, args.d)
    prediction = sum(freudenthal(c, mu).total ** 2 for mu in saturate(c, support))
    out = Output(args.format)
    out.put("image", image)
    out.put("support", _ws(support))
    out.put("schur_prediction", prediction)
    out.put("coproduct", COPRODUCT)
    _emit(args, out.render())
    return 0


def cmd_present(args):
    c = _cartan(args)
    pi = _pi(args, c)
    v_eval = _fraction(args.v_eval) if args.v_eval else None
    pres = instantiate_presentation(c, pi, classical=args.classical, v_eval=v_eval)
    rs = None
    code = 0
    if args.complete:
        try:
            rs = complete(pres, args.degree_bound, budget=_budget(args), log=_progress)
        except Unstabilized as exc:
            rs = exc.system
            code = 1
    _emit(args, "\n".join(presentation_dump(pres, rs)) + "\n")
    return code


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qschur",
        description="Generalized q-Schur algebras: construction, verification and dimension checks.",
        epilog=ORIENTATION_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--type", help="Cartan type such as A2, C2, G2")
    src.add_argument("--matrix", help="file with n followed by n rows of n integers")
    common.add_argument("--budget", type=int, default=None,
                        help=f"dimension budget (default from ${BUDGET_ENV})")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, epilog=ORIENTATION_NOTE)
        p.set_defaults(func=func)
        return p

    pi_help = "dominant weights separated by ';', coordinates by ',' (e.g. '0;2' or '1,0;0,1')"
    p = add("describe", cmd_describe, "Cartan data, W pi, saturation and predicted dimension")
    p.add_argument("--pi", required=True, help=pi_help)
    p = add("build", cmd_build, "dump the assembled representation")
    p.add_argument("--pi", required=True, help=pi_help)
    p = add("module", cmd_module, "dump one simple module")
    p.add_argument("--hw", required=True, help="highest weight, e.g. '1,0'")
    p = add("verify", cmd_verify, "run every relation suite")
    p.add_argument("--pi", required=True, help=pi_help)
    p.add_argument("--abound", type=int, default=2, help="divided powers up to this exponent")
    p.add_argument("--fault", choices=("k-tamper",), help="inject a fault (negative control)")
    p.add_argument("--verbose", action="store_true", help="list every check")
    for name, func, help_ in (("dim", cmd_dim, "compare assembled, presented and predicted dimensions"),
                              ("present", cmd_present, "dump the presentation (and completion)")):
        p = add(name, func, help_)
        p.add_argument("--pi", required=True, help=pi_help)
        p.add_argument("--degree-bound", type=int, default=12)
        p.add_argument("--classical", action="store_true", help="v = 1 presentation")
        p.add_argument("--v-eval", help="specialize v to this rational (heuristic)")
        if name == "present":
            p.add_argument("--complete", action="store_true", help="also run the completion")
    p = add("envdim", cmd_envdim, "dimension of the image of U on a tensor power")
    p.add_argument("--hw", required=True, help="highest weight of the tensor factor")
    p.add_argument("--d", type=int, required=True, help="tensor power")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "type", None) is None and getattr(args, "matrix", None) is None:
        parser.error("one of --type or --matrix is required")
    try:
        return args.func(args)
    except (InputError, ResourceBudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (RankMismatch, MembershipFailure, QSchurError) as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
