"""``motfilt`` command-line front end.

Every subcommand prints a Report ``{"command", "inputs", "results"[, "pass"]}``
as sorted-key JSON (or a flat TSV view).  Exit codes: 0 success, 1 verifier
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Any, Callable, TextIO

from . import acceptance
from .derham import fp_lomega_euler, lambda_power, lomega_summary
from .filtration import (
    THEORIES,
    c_infinity,
    graded_piece,
    milne_exponent,
    thh_of_homotopy,
    thh_z_homotopy,
    verify_cinf_fiber_seq,
)
from .hodge import HodgeDiamond, load_diamond
from .homalg import FinAbGroup
from .numring import load_ring, ring_from_json
from .zeta import (
    bloch_conductor_fq,
    curve_from_json,
    load_curve,
    special_value,
    verify_thm_fe,
)

VERIFIERS = frozenset({"verify-cinf", "verify-fe", "selftest"})
U64_MAX = 2**64 - 1


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.format_usage()}{self.prog}: error: {message}")


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


# --- subcommand bodies: (args) -> (inputs, results, passed | None) ---

def _ring(args):
    if args.ring is None:
        raise InputError("--ring is required")
    return load_ring(args.ring)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"missing required option(s): {', '.join(missing)}")


def _diamond_input(args):
    """Diamond from --diamond, else derived from --ring (Spec O_F) or --curve."""
    if args.diamond is not None:
        h = load_diamond(args.diamond)
        return h, {"diamond": h.to_json()}
    if getattr(args, "ring", None) is not None:
        r = load_ring(args.ring)
        return HodgeDiamond.number_ring(r.degree), {"ring": r.to_json()}
    if getattr(args, "curve", None) is not None:
        z = load_curve(args.curve)
        return z.diamond(), {"curve": z.to_json()}
    raise InputError("one of --diamond, --ring or --curve is required")


def cmd_thh_z(args):
    _need(args, "degree")
    return {"degree": args.degree}, {"group": str(thh_z_homotopy(args.degree))}, None


def cmd_thh_of(args):
    _need(args, "degree")
    r = _ring(args)
    g = thh_of_homotopy(r, args.degree)
    return (
        {"ring": r.to_json(), "degree": args.degree},
        {"group": str(g.structure), "order": g.order, "invariant_factors": list(g.structure.invariant_factors),
         "free_rank": g.structure.free_rank},
        None,
    )


def cmd_lambda(args):
    _need(args, "n")
    r = _ring(args)
    lp = lambda_power(r, args.n)
    return (
        {"ring": r.to_json(), "n": args.n},
        {"group": str(lp.group), "homological_degree": lp.homological_degree,
         "order": lp.group.order() if lp.group.is_finite() else None},
        None,
    )


def cmd_lomega2(args):
    r = _ring(args)
    n = 2 if args.n is None else args.n
    s = lomega_summary(r, n)
    res = s.to_json()
    res["h0"] = str(s.h0_torsion.direct_sum(FinAbGroup.free(s.h0_free_rank)))
    return {"ring": r.to_json(), "n": n}, res, None


def cmd_fp_euler(args):
    _need(args, "p", "n")
    return {"p": args.p, "n": args.n}, {"euler": fp_lomega_euler(args.p, args.n)}, None


def cmd_cinf(args):
    _need(args, "n")
    h, inputs = _diamond_input(args)
    inputs["n"] = args.n
    v = c_infinity(h, args.n)
    res = {"c_infinity": str(v)}
    if "ring" in inputs:
        # for Spec O_F the two normalizations are displayed side by side
        res["c_inverse"] = str(1 / v)
    return inputs, res, None


def cmd_milne(args):
    _need(args, "n")
    h, inputs = _diamond_input(args)
    inputs["n"] = args.n
    e = milne_exponent(h, args.n)
    res = {"exponent": e}
    if h.q is not None:
        res["q"] = h.q
        res["factor"] = f"{h.q}^{e}"
    return inputs, res, None


def cmd_graded(args):
    _need(args, "theory", "n", "j")
    piece = graded_piece(args.theory, args.n, args.j)
    inputs = {"theory": args.theory, "n": args.n, "j": args.j}
    res = piece.to_json()
    if args.ring is not None:
        r = load_ring(args.ring)
        inputs["ring"] = r.to_json()
        res["homotopy"] = {str(m): str(g) for m, g in piece.homotopy(r).items()}
    return inputs, res, None


def cmd_verify_cinf(args):
    _need(args, "n")
    h, inputs = _diamond_input(args)
    inputs.update(n=args.n, seed=args.seed)
    rep = verify_cinf_fiber_seq(h, args.n, random.Random(args.seed))
    return inputs, rep.to_json(), rep.equal


def _curve(args):
    if args.curve is None:
        raise InputError("--curve is required")
    return load_curve(args.curve)


def cmd_zeta(args):
    z = _curve(args)
    return {"curve": z.to_json()}, {
        "P": list(z.P), "genus": z.g, "q": z.q,
        "point_counts": z.point_counts(max(z.g, 1) + 2),
        "euler_characteristic": z.euler_characteristic(),
    }, None


def cmd_special(args):
    _need(args, "n")
    z = _curve(args)
    return {"curve": z.to_json(), "n": args.n}, special_value(z, args.n).to_json(), None


def cmd_conductor(args):
    z = _curve(args)
    base, exp = bloch_conductor_fq(z)
    return {"curve": z.to_json()}, {"base": base, "exponent": exp, "conductor": f"{base}^{exp}"}, None


def cmd_verify_fe(args):
    _need(args, "n")
    z = _curve(args)
    inputs = {"curve": z.to_json(), "n": args.n}
    h = None
    if args.diamond is not None:
        h = load_diamond(args.diamond)
        inputs["diamond"] = h.to_json()
    rep = verify_thm_fe(z, h, args.n)
    return inputs, rep.to_json(), rep.passed


def _color(ok: bool) -> tuple[str, str]:
    if os.environ.get("MOTFILT_NO_COLOR") is not None:
        return "", ""
    return ("\x1b[32m" if ok else "\x1b[31m"), "\x1b[0m"


def cmd_selftest(args, stderr: TextIO):
    try:
        results = acceptance.run_suite(args.seed, args.only)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {}
    for r in results:
        on, off = _color(r.passed)
        status = "PASS" if r.passed else "FAIL"
        budget = "" if r.elapsed_s <= r.budget_s else " OVER BUDGET"
        print(f"{on}{status}{off} {r.key:<9} {r.elapsed_s:7.3f}s / {r.budget_s:g}s{budget}  {r.title}", file=stderr)
        out[r.key] = {"title": r.title, "pass": r.passed, "budget_s": r.budget_s, "details": r.details}
    inputs = {"seed": args.seed, "only": args.only}
    return inputs, out, all(r.passed for r in results)


COMMANDS: dict[str, tuple[Callable, str, tuple[str, ...]]] = {
    "thh-z": (cmd_thh_z, "pi_i THH(Z)", ("degree",)),
    "thh-of": (cmd_thh_of, "pi_i THH(O_F) for a monogenic ring", ("ring", "degree")),
    "lambda": (cmd_lambda, "derived exterior power of the cotangent complex", ("ring", "n")),
    "lomega2": (cmd_lomega2, "Hodge-truncated derived de Rham cohomology", ("ring", "n")),
    "fp-euler": (cmd_fp_euler, "multiplicative Euler characteristic of L Omega^{<n} of F_p", ("p", "n")),
    "cinf": (cmd_cinf, "archimedean correcting factor", ("ring", "diamond", "n")),
    "milne": (cmd_milne, "finite-field correcting factor exponent", ("diamond", "curve", "n")),
    "graded": (cmd_graded, "graded piece of the motivic bifiltration", ("theory", "n", "j", "ring")),
    "verify-cinf": (cmd_verify_cinf, "fiber-sequence check of the correcting factor", ("ring", "diamond", "n", "seed")),
    "zeta": (cmd_zeta, "zeta function of a curve over F_q", ("curve",)),
    "special": (cmd_special, "leading Taylor coefficient of zeta at s = n", ("curve", "n")),
    "conductor": (cmd_conductor, "Bloch conductor over F_q", ("curve",)),
    "verify-fe": (cmd_verify_fe, "functional-equation identity of the special values", ("curve", "diamond", "n")),
    "selftest": (cmd_selftest, "run the acceptance suite", ("seed", "only")),
}

_OPTIONS: dict[str, tuple[tuple, dict]] = {
    "ring": (("--ring",), {"metavar": "FILE"}),
    "curve": (("--curve",), {"metavar": "FILE"}),
    "diamond": (("--diamond",), {"metavar": "FILE"}),
    "n": (("--n",), {"type": int}),
    "degree": (("--degree",), {"type": int}),
    "j": (("--j",), {"type": int}),
    "p": (("--p",), {"type": int}),
    "theory": (("--theory",), {"choices": THEORIES}),
    "seed": (("--seed",), {"type": _seed, "default": acceptance.DEFAULT_SEED}),
    "only": (("--only",), {"choices": [c.key for c in acceptance.CRITERIA]}),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motfilt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text, opts) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(_usage=p.format_usage)
        for o in opts:
            flags, kw = _OPTIONS[o]
            p.add_argument(*flags, **kw)
        p.add_argument("--format", choices=("json", "tsv"), default="json")
    return parser


def render(report: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    lines = []

    def walk(prefix: str, v: Any):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else str(k), v[k])
        else:
            lines.append(f"{prefix}\t{json.dumps(v, sort_keys=True, ensure_ascii=False)}")

    walk("", report)
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = None
    try:
        args = build_parser().parse_args(argv)
        fn = COMMANDS[args.command][0]
        if args.command == "selftest":
            inputs, results, passed = fn(args, stderr)
        else:
            inputs, results, passed = fn(args)
    except InputError as exc:
        msg = str(exc)
        if args is not None:
            msg = f"{args._usage()}motfilt {args.command}: error: {msg}"
        print(msg, file=stderr)
        return 2
    except (ValueError, OSError, KeyError, TypeError, json.JSONDecodeError, ArithmeticError) as exc:
        print(f"motfilt: error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    report = {"command": args.command, "inputs": inputs, "results": results}
    if args.command in VERIFIERS:
        report["pass"] = bool(passed)
    print(render(report, args.format), file=stdout)
    if args.command in VERIFIERS and not passed:
        return 1
    return 0


def parse_inputs(command: str, inputs: dict) -> dict:
    """Re-parse a Report's input echo into library objects (the echo round-trip)."""
    out = dict(inputs)
    if "ring" in inputs:
        out["ring"] = ring_from_json(inputs["ring"])
    if "curve" in inputs:
        out["curve"] = curve_from_json(inputs["curve"])
    if "diamond" in inputs:
        out["diamond"] = HodgeDiamond.from_json(inputs["diamond"])
    return out


def main() -> None:
    sys.exit(run())
