"""Command line front end.

Exit codes: 0 when every check passes (or a computation succeeds), 1 when
a mathematical check fails, 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import descent, documents
from .involutive import (
    InvolutiveModel,
    LinearVariety,
    is_involutive,
    left_action,
    module_unit,
    monomial_samples,
    normal_form,
    simplicity_failures,
    wv_member_fast,
)
from .parse import ParseError, format_poly, format_symbol, parse_poly, parse_symbol, symbol_to_json, tokenize
from .symbol import (
    BELOW_WINDOW,
    EXACT,
    NO_NEGATIVE_ORDERS,
    adjoint_star,
    commutator,
    estimate_fit,
    order_of,
    principal_symbol,
    star_compose,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Detail:
    check: str
    location: str = ""
    expected: str = ""
    actual: str = ""
    passed: bool = True

    def as_dict(self):
        return {"actual": self.actual, "check": self.check, "expected": self.expected, "location": self.location, "passed": self.passed}


@dataclass
class Report:
    command: str
    status: str = "pass"
    details: List[Detail] = field(default_factory=list)
    result: object = None
    lines: List[str] = field(default_factory=list)
    timing: Optional[float] = None

    def add(self, detail: Detail):
        self.details.append(detail)
        if not detail.passed and self.status == "pass":
            self.status = "fail"

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "details": [d.as_dict() for d in sorted(self.details, key=lambda d: (d.check, d.location, d.expected, d.actual))],
            "result": self.result,
            "status": self.status,
        }
        if self.timing is not None:
            obj["timing"] = round(self.timing, 6)
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.status, EXIT_ERROR)


# argument helpers


def _floor(text: str):
    if text == "exact":
        return EXACT
    if text == "infer":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("floor must be an integer, 'exact' or 'infer'") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _symbols(args, texts):
    """Parse symbol arguments in a common dimension."""
    n = args.dim
    if n is None:
        idx = [int(t.text[1:]) for text in texts for t in tokenize(text) if t.kind in ("x", "u")]
        n = max(idx, default=1)
    return [parse_symbol(text, n, args.floor) for text in texts]


def _model(args, n):
    try:
        return InvolutiveModel(n, args.codim)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# commands


def cmd_compose(args, rep: Report):
    P, Q = _symbols(args, [args.P, args.Q])
    R = star_compose(P, Q) if args.command == "compose" else commutator(P, Q)
    rep.result = symbol_to_json(R)
    rep.lines.append(format_symbol(R, window=False))


def cmd_adjoint(args, rep):
    (P,) = _symbols(args, [args.P])
    R = adjoint_star(P)
    rep.result = symbol_to_json(R)
    rep.lines.append(format_symbol(R, window=False))


def cmd_order(args, rep):
    (P,) = _symbols(args, [args.P])
    o = order_of(P)
    rep.result = str(o) if o is BELOW_WINDOW else o
    rep.lines.append(str(o))


def cmd_normal_form(args, rep):
    (P,) = _symbols(args, [args.P])
    m = normal_form(P, _model(args, P.n))
    rep.result = symbol_to_json(m.rep)
    rep.lines.append(format_symbol(m.rep, window=False))


def cmd_check_involutive(args, rep):
    n = args.dim
    if n is None:
        n = max((int(t.text[1:]) for f in args.forms for t in tokenize(f) if t.kind in ("x", "u")), default=1)
    forms = [parse_poly(f, n) for f in args.forms]
    try:
        V = LinearVariety(n, tuple(forms))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ok = is_involutive(V)
    rep.add(Detail("involutive", "{" + ", ".join(format_poly(f) for f in forms) + "}", "true", str(ok).lower(), ok))
    rep.result = ok
    rep.lines.append("involutive" if ok else "not involutive")


def cmd_check_wv(args, rep):
    (P,) = _symbols(args, [args.P])
    model = _model(args, P.n)
    ok = wv_member_fast(P, model)
    for j, p in sorted(P.coeffs.items()):
        if j > 0:
            deg = p.u_degree_min(range(1, model.d + 1))
            rep.add(Detail("wv-degree", f"tau^{j}", f">= {j}", str(deg), deg >= j))
    rep.result = ok
    rep.lines.append("in W_V" if ok else "not in W_V")


def cmd_check_simple(args, rep):
    if args.samples:
        samples = _symbols(args, args.samples)
        n = samples[0].n
    else:
        if args.dim is None:
            raise InputError("check-simple without samples needs --dim")
        n = args.dim
        samples = None
    model = _model(args, n)
    if samples is None:
        samples = monomial_samples(model, args.max_degree)
    bad = set(map(id, simplicity_failures(model, samples)))
    unit = module_unit(model)
    for P in samples:
        want = format_poly(principal_symbol(P, 0).substitute_zero(model.u_positions))
        got = format_poly(left_action(P, unit).rep.coeff(0))
        rep.add(Detail("simple-action", format_symbol(P, window=False), want, got, id(P) not in bad))
    rep.result = {"samples": len(samples), "failures": len(bad)}
    rep.lines.append(f"{len(samples) - len(bad)}/{len(samples)} samples act through sigma_0 on V")


def cmd_check_gluing(args, rep):
    doc = documents.load_document(args.file)
    if doc.gluing is None:
        raise InputError("document has no gluing data (f, a)")
    report = descent.verify_gluing(doc.gluing)
    failed = {(f.condition, f.simplex): f for f in report.failures}
    for cond, simplices in ((1, doc.nerve.triangles), (2, doc.nerve.tetrahedra)):
        for s in simplices:
            f = failed.get((cond, s))
            if f is None:
                rep.add(Detail(f"condition-{cond}", _loc(s), "equal" if cond == 2 else "proportional", "ok", True))
            else:
                rep.add(Detail(f"condition-{cond}", _loc(s), _mat(f.rhs), _mat(f.lhs), False))
    rep.result = {"failures": [[f.condition, list(f.simplex)] for f in report.failures]}
    if report.ok:
        rep.lines.append(f"gluing data pass (triangles checked: {report.triangles_checked}, tetrahedra checked: {report.tetrahedra_checked})")
    for f in report.failures:
        rep.lines.append(f"FAIL condition {f.condition} on {_loc(f.simplex)}")


def cmd_cohomology(args, rep):
    doc = documents.load_document(args.file)
    H = descent.cohomology(doc.nerve, args.degree, args.mod)
    rep.result = {"degree": args.degree, "modulus": args.mod, "invariant_factors": H.invariant_factors, "group": H.describe()}
    rep.lines.append(json.dumps(H.invariant_factors))
    rep.lines.append(f"H^{args.degree} = {H.describe()}")
    if doc.cochain is not None:
        _classify(H, doc.cochain, rep)


def _classify(H, z, rep):
    try:
        cls = H.classify(z)
    except descent.NotACocycle:
        rep.add(Detail("cocycle", f"degree {z.degree}", "0", "nonzero coboundary", False))
        rep.lines.append("cochain is not a cocycle")
        return
    rep.add(Detail("cocycle", f"degree {z.degree}", "0", "0", True))
    rep.result["class"] = list(cls)
    rep.lines.append(f"class: {list(cls)}" + (" (trivial)" if not any(cls) else ""))
    if not any(cls) and H.degree > 0:
        b = H.witness(z)
        rep.result["witness"] = {",".join(map(str, s)): v for s, v in b.values.items()}


def cmd_frac_class(args, rep):
    doc = documents.load_document(args.file)
    if doc.cochain is None:
        raise InputError("document has no branch-mismatch cochain")
    lam = args.lam
    try:
        H, cls = descent.fractional_power_class(doc.nerve, doc.cochain, lam)
    except descent.NotACocycle:
        rep.add(Detail("cocycle", "branch mismatch", "0", "nonzero coboundary", False))
        rep.lines.append("branch mismatch data is not a cocycle")
        return
    trivial = not any(cls)
    rep.result = {
        "lambda": f"{lam.numerator}/{lam.denominator}",
        "modulus": lam.denominator,
        "group": H.describe() if H is not None else "0",
        "class": list(cls),
        "trivial": trivial,
    }
    if H is None:
        rep.lines.append("lambda is an integer: f^lambda is single-valued")
    else:
        rep.lines.append(f"class: {list(cls)} in H^2(nerve; Z/{lam.denominator})")
    rep.lines.append("trivial" if trivial else "nontrivial")


def cmd_estimate_fit(args, rep):
    (P,) = _symbols(args, [args.P])
    try:
        C = estimate_fit(P, args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if C is NO_NEGATIVE_ORDERS:
        rep.result = str(C)
    else:
        rep.result = f"{C.numerator}/{C.denominator}"
    rep.lines.append(str(C))


def _loc(s) -> str:
    return "(" + ", ".join(map(str, s)) + ")"


def _mat(m) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m) + "]"


COMMANDS = {
    "compose": cmd_compose,
    "commutator": cmd_compose,
    "adjoint": cmd_adjoint,
    "order": cmd_order,
    "normal-form": cmd_normal_form,
    "check-involutive": cmd_check_involutive,
    "check-wv": cmd_check_wv,
    "check-simple": cmd_check_simple,
    "check-gluing": cmd_check_gluing,
    "cohomology": cmd_cohomology,
    "frac-class": cmd_frac_class,
    "estimate-fit": cmd_estimate_fit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the canonical JSON report")
    common.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    sym = argparse.ArgumentParser(add_help=False)
    sym.add_argument("--dim", type=int, help="ambient dimension (default: highest variable index)")
    sym.add_argument(
        "--floor",
        type=_floor,
        default=EXACT,
        help="window floor of the input symbols: an integer, 'exact' (default) or 'infer'",
    )
    codim = argparse.ArgumentParser(add_help=False)
    codim.add_argument("--codim", type=int, required=True, help="codimension d of V = {u1 = ... = ud = 0}")

    parser = argparse.ArgumentParser(prog="wkbcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("compose", "commutator"):
        p = sub.add_parser(name, parents=[common, sym], help=f"{name} of two symbols")
        p.add_argument("P")
        p.add_argument("Q")
    for name, helptext in (("adjoint", "formal adjoint"), ("order", "order of a symbol")):
        p = sub.add_parser(name, parents=[common, sym], help=helptext)
        p.add_argument("P")
    p = sub.add_parser("normal-form", parents=[common, sym, codim], help="class in the simple module")
    p.add_argument("P")
    p = sub.add_parser("check-involutive", parents=[common, sym], help="involutivity of affine-linear forms")
    p.add_argument("forms", nargs="+")
    p = sub.add_parser("check-wv", parents=[common, sym, codim], help="membership in W_V")
    p.add_argument("P")
    p = sub.add_parser("check-simple", parents=[common, sym, codim], help="order-0 action on [1]")
    p.add_argument("samples", nargs="*")
    p.add_argument("--max-degree", type=int, default=3)
    p = sub.add_parser("check-gluing", parents=[common], help="verify matrix gluing data")
    p.add_argument("file")
    p = sub.add_parser("cohomology", parents=[common], help="cohomology of a nerve")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True, choices=[0, 1, 2])
    p.add_argument("--mod", type=int, default=0, help="coefficients Z/N (0 = integers)")
    p = sub.add_parser("frac-class", parents=[common], help="class of the gerbe of f^lambda")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", type=_fraction, required=True)
    p = sub.add_parser("estimate-fit", parents=[common, sym], help="growth constant of the negative orders")
    p.add_argument("P")
    p.add_argument("--radius", type=_fraction, required=True)
    return parser


def run(argv=None):
    """Run one command; returns ``(exit_code, report, args)``.

    Argument errors exit through argparse with status 2.
    """
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except (ParseError, descent.DescentError, InputError, ValueError) as exc:
        rep.status = "error"
        rep.result = None
        rep.details = [Detail("input", "", "", str(exc), False)]
        rep.lines = [f"error: {exc}"]
    if args.timing:
        rep.timing = time.perf_counter() - start
    return rep.exit_code, rep, args


def main(argv=None):
    code, rep, args = run(argv)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(rep.to_json())
    if args.json:
        sys.stdout.write(rep.to_json())
    else:
        out = sys.stderr if rep.status == "error" else sys.stdout
        for line in rep.lines:
            print(line, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
