"""Command-line front end.

    padic-tate transform FILE [--inverse | --roundtrip]
    padic-tate zeta (FILE | --family NAME) --conductor n [--char-index k] [--lambda L]
    padic-tate rho --conductor n [--char-index k]
    padic-tate verify SUITE [--cases k] [--seed s]
    padic-tate info

Exit codes: 0 success, 1 verification failure, 2 input error.  Errors are
reported as {"error": code, "message": text}.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .characters import characters_of_level
from .config import REFERENCE_CONFIGS, SessionConfig
from .errors import BadParameter, ParseError, TateError
from .fourier import fourier, fourier_shell, inverse_fourier
from .jsonio import (character_to_json, function_from_json, function_to_json, rat_from_json,
                     zeta_to_json)
from .stepfun import ShellFunction
from .suites import SUITES, run_suite
from .zeta import named_family, rho_closed, rho_from_h, zeta_integral, zeta_shell


_OPTIONS = [
    ("--ell", dict(type=int, default=3, help="residue characteristic l")),
    ("--ram-e", dict(type=int, default=1, help="ramification index e (pi^e = l)")),
    ("--p", dict(type=int, default=5, help="coefficient prime p")),
    ("--nroot", dict(type=int, default=4, help="roots of unity of order l^nroot are available")),
    ("--conductor", dict(type=int, default=None, help="character level")),
    ("--char-index", dict(type=int, default=0, help="which character of the given level")),
    ("--lambda", dict(dest="lam", default="FORMAL", help="FORMAL or a rational value of chi(pi)")),
    ("--precision", dict(type=int, default=40, help="p-adic working precision")),
    ("--seed", dict(type=int, default=0)),
    ("--cases", dict(type=int, default=None)),
    ("--out", dict(default=None, help="write output to FILE instead of stdout")),
]


def _common(suppress: bool = False) -> argparse.ArgumentParser:
    """Shared options.  The copy attached to subcommands suppresses its defaults
    so options given before the subcommand are kept."""
    c = argparse.ArgumentParser(add_help=False)
    for flag, kw in _OPTIONS:
        if suppress:
            kw = {**kw, "default": argparse.SUPPRESS}
        c.add_argument(flag, **kw)
    fmt = c.add_mutually_exclusive_group()
    extra = {"default": argparse.SUPPRESS} if suppress else {}
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", **extra)
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", **extra)
    return c


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-tate", parents=[_common()],
                                     description="Exact p-adic Tate-thesis computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(suppress=True)

    t = sub.add_parser("transform", parents=[common], help="Fourier transform of a function file")
    t.add_argument("input", help="function JSON file, or - for stdin")
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--inverse", action="store_true", help="use zeta^{-1}")
    mode.add_argument("--roundtrip", action="store_true", help="check that inversion recovers the input")

    z = sub.add_parser("zeta", parents=[common], help="zeta integral against a character")
    z.add_argument("input", nargs="?", help="function JSON file, or - for stdin")
    z.add_argument("--family", choices=["g_alpha", "g_beta_up", "G_alpha_beta", "G_bracket",
                                         "h_n", "h_n_hat"])
    z.add_argument("--n", type=int, default=None)
    z.add_argument("--alpha", default=None)
    z.add_argument("--beta", default=None)

    sub.add_parser("rho", parents=[common], help="rho-factor, closed form and via h_n")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])

    sub.add_parser("info", parents=[common], help="session configuration and p-adic context")
    return parser


def _config(args) -> SessionConfig:
    return SessionConfig(ell=args.ell, e=args.ram_e, p=args.p, n_root=args.nroot,
                         precision=args.precision, seed=args.seed)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}") from exc


def _character(args, params):
    level = args.conductor if args.conductor is not None else 0
    chars = characters_of_level(params, level)
    if not chars:
        raise BadParameter(f"no characters of level {level}")
    if not 0 <= args.char_index < len(chars):
        raise BadParameter(f"--char-index must be below {len(chars)}")
    chi = chars[args.char_index]
    if args.lam != "FORMAL":
        chi = chi.with_lambda(rat_from_json(args.lam))
    return chi


def cmd_transform(args) -> tuple[dict, str, int]:
    params = _config(args).params()
    f = function_from_json(params, _read_json(args.input))
    shell = isinstance(f, ShellFunction)
    if args.roundtrip:
        if shell:
            raise BadParameter("--roundtrip needs a step function")
        ok = inverse_fourier(fourier(f)) == f
        return {"roundtrip": ok}, f"roundtrip: {'pass' if ok else 'FAIL'}", 0 if ok else 1
    sign = -1 if args.inverse else 1
    out = fourier_shell(f, sign) if shell else fourier(f, sign)
    return function_to_json(out), str(out), 0


def _annulus_text(z) -> str:
    def bound(t):
        return str(Fraction(t)) if abs(t) != float("inf") else None
    lo, hi = bound(z.lo), bound(z.hi)
    left = f"p^{lo} < " if lo is not None else ""
    right = f" < p^{hi}" if hi is not None else ""
    return f"{left}|λ|_p{right}" if left or right else "all λ"


def cmd_zeta(args) -> tuple[dict, str, int]:
    params = _config(args).params()
    if args.family:
        kw = {}
        if args.n is not None:
            kw["n"] = args.n
        for name in ("alpha", "beta"):
            val = getattr(args, name)
            if val is not None:
                kw[name] = rat_from_json(val)
        try:
            f = named_family(params, args.family, **kw)
        except KeyError as exc:
            raise BadParameter(f"family {args.family} needs --{exc.args[0]}") from exc
    elif args.input:
        f = function_from_json(params, _read_json(args.input))
    else:
        raise BadParameter("give a function file or --family")
    chi = _character(args, params)
    z = zeta_shell(f, chi) if isinstance(f, ShellFunction) else zeta_integral(f, chi)
    out = zeta_to_json(z)
    out["character"] = character_to_json(chi)
    return out, f"Z = {out['text']}    on {_annulus_text(z)}", 0


def cmd_rho(args) -> tuple[dict, str, int]:
    params = _config(args).params()
    chi = _character(args, params)
    closed, via_h = rho_closed(chi), rho_from_h(chi)
    equal = closed == via_h
    out = {"closed": zeta_to_json(closed), "from_h": zeta_to_json(via_h), "equal": equal,
           "level": chi.level}
    text = (f"rho (closed) = {out['closed']['text']}\n"
            f"rho (from h) = {out['from_h']['text']}\n"
            f"equal        = {'true' if equal else 'false'}")
    return out, text, 0 if equal else 1


def cmd_verify(args) -> tuple[dict, str, int]:
    rows = run_suite(args.suite, REFERENCE_CONFIGS, args.cases, args.seed)
    ok = all(r["passed"] == r["total"] for r in rows)
    out = {"suite": args.suite, "seed": args.seed, "cases": args.cases, "results": rows, "ok": ok}
    lines = [f"{'suite':<13} {'config':<9} {'passed':>9}  status"]
    for r in rows:
        status = "pass" if r["passed"] == r["total"] else f"FAIL: {r['counterexample']}"
        lines.append(f"{r['suite']:<13} {r['config']:<9} {r['passed']:>4}/{r['total']:<4}  {status}")
    lines.append("all passed" if ok else "FAILURES")
    return out, "\n".join(lines), 0 if ok else 1


def cmd_info(args) -> tuple[dict, str, int]:
    cfg = _config(args)
    out = {"session": cfg.to_json(), "padic": cfg.padic().to_json()}
    return out, json.dumps(out, indent=2), 0


COMMANDS = {"transform": cmd_transform, "zeta": cmd_zeta, "rho": cmd_rho,
            "verify": cmd_verify, "info": cmd_info}


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.fmt or ("text" if args.command == "verify" else "json")
    try:
        out, text, code = COMMANDS[args.command](args)
    except TateError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}))
        return 2
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(json.dumps({"error": "bad_input", "message": str(exc)}))
        return 2
    _emit(json.dumps(out, indent=2, sort_keys=True) if fmt == "json" else text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
