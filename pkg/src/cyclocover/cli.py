"""Command-line front end: ``cyclocover <subcommand> [options]``.

Exit codes: 0 success, 2 the method says nothing (NOT_COVERED), 1 internal
error, 64 invalid parameters.  JSON output always carries
``"schema": "cyclocover/1"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import acceptance
from .arith import (
    DEFAULT_ENUMERATION_CAP,
    check_v2_lemma,
    corollary_enumerate,
    realization_verdict,
    theorem_main_verdict,
)
from .covering import CoverSpec, genus, validate_cover
from .ffield import is_prime, ord_mod
from .formsolve import FormDimensionError, invariant_form, is_unitary_case
from .matgroup import default_bfs_cap, monodromy_rep, verify_image

SCHEMA = "cyclocover/1"
EXIT_OK, EXIT_ERROR, EXIT_NOT_COVERED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _odd_prime(text):
    value = int(text)
    if not is_prime(value) or value == 2:
        raise argparse.ArgumentTypeError(f"{text} is not an odd prime")
    return value


def _prime(text):
    value = int(text)
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"{text} is not prime")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _exponents(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclocover", description="Realization verdicts and monodromy checks for cyclic covers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "csv", "md"), default="json")
        return p

    p = add("realize", "PSL/PSU verdict for degree (l-1)n-2")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = add("main-verdict", "group bracket over the subfield of index mu")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--mu", type=_positive, required=True)
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = add("enumerate", "all covered groups in a parameter box")
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--l-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--cap", type=_positive, default=DEFAULT_ENUMERATION_CAP)

    p = add("genus", "genus of a cyclic l-cover with R branch points")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--R", type=int, required=True)

    p = add("cover", "validate branch data of a cyclic cover")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--exponents", type=_exponents, required=True, help="comma-separated finite exponents")
    p.add_argument("--p", type=_prime)

    p = add("monodromy", "Burau images at a primitive l-th root over F_{p^e}")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--r", type=int, required=True)

    p = add("verify-image", "order of the pure-braid monodromy group")
    p.add_argument("--l", type=_odd_prime, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--bfs-cap", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = add("v2-lemma", "compare v2(p^(e/2)+1) with v2(p+1)")
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--e", type=_positive, required=True)

    p = add("selftest", "run the acceptance criteria at small scale")
    p.add_argument("--full", action="store_true", help="full-size sweeps")
    return parser


# ---------------------------------------------------------------------------
# rendering


def _flatten(obj, prefix=""):
    out = {}
    for key, value in obj.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(value, ensure_ascii=False, separators=(",", ":"))
        else:
            out[name] = value
    return out


def _csv(rows):
    flat = [_flatten(r) for r in rows]
    header = []
    for r in flat:
        header += [k for k in r if k not in header]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def _md_kv(title, obj):
    lines = [f"## {title}", "", "| field | value |", "|---|---|"]
    for k, v in _flatten(obj).items():
        lines.append(f"| {k} | {v} |")
    return "\n".join(lines) + "\n"


def _md_verdict_bullet(v):
    l, p, n = v.params["l"], v.params["p"], v.params["n"]
    e = ord_mod(p, l)
    note = " (p = 2: outside the odd-p hypothesis)" if p == 2 else ""
    return (
        f"- For l = {l}, p = {p} (p ≡ {p % l} mod {l}, ord = {e}) and n = {n} "
        f"(n ≢ -2 mod {l}): {v.label()} is a Galois group over Q; "
        f"degree ({l}-1)·{n}-2 = {v.degree}.{note}"
    )


def render(command, payload, fmt, rows=None, md=None) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "command": command, **payload}, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        return _csv(rows if rows is not None else [payload])
    return md if md is not None else _md_kv(command, payload)


# ---------------------------------------------------------------------------
# commands


def _cmd_realize(args):
    v = realization_verdict(args.l, args.p, args.n)
    code = EXIT_OK if v.covered else EXIT_NOT_COVERED
    md = f"## realize\n\n{_md_verdict_bullet(v) if v.covered else f'- {v.label()}: NOT_COVERED'}\n"
    return render("realize", v.to_json(), args.format, md=md), code


def _cmd_main_verdict(args):
    v = theorem_main_verdict(args.l, args.mu, args.p, args.n)
    code = EXIT_OK if v.covered else EXIT_NOT_COVERED
    return render("main-verdict", v.to_json(), args.format), code


def _cmd_enumerate(args):
    verdicts = corollary_enumerate(args.p_max, args.l_max, args.n_max, args.cap)
    rows = [{"label": v.label(), **v.to_json()} for v in verdicts]
    for r in rows:
        r.pop("trace")
    md = "## Covered groups\n\n" + "".join(_md_verdict_bullet(v) + "\n" for v in verdicts)
    csv_rows = [
        {"l": v.params["l"], "p": v.params["p"], "n": v.params["n"], "family": v.family.value,
         "degree": v.degree, "q_p": v.field_size[0], "q_exp": v.field_size[1], "label": v.label()}
        for v in verdicts
    ]
    payload = {"box": {"p_max": args.p_max, "l_max": args.l_max, "n_max": args.n_max}, "count": len(rows), "rows": rows}
    return render("enumerate", payload, args.format, rows=csv_rows, md=md), EXIT_OK


def _cmd_genus(args):
    payload = {"l": args.l, "R": args.R, "genus": genus(args.l, args.R)}
    return render("genus", payload, args.format), EXIT_OK


def _cmd_cover(args):
    report = validate_cover(CoverSpec(args.l, args.exponents, args.p))
    return render("cover", report, args.format), EXIT_OK


def _cmd_monodromy(args):
    rep = monodromy_rep(args.l, args.p, args.r)
    payload = rep.to_json()
    payload["pure_dets"] = {f"A{i}{j}": list(A.det().coeffs) for (i, j), A in rep.pure_gen_images.items()}
    payload["case"] = "unitary" if is_unitary_case(args.l, args.p) else "linear"
    if rep.dim >= 2:
        try:
            form = invariant_form(rep)
            payload["form"] = None if form is None else form.to_json()
        except FormDimensionError as exc:
            payload["form"] = {"error": str(exc), "dimension": exc.dimension, "involution": exc.involution}
    return render("monodromy", payload, args.format), EXIT_OK


def _cmd_verify_image(args):
    cap = args.bfs_cap if args.bfs_cap is not None else default_bfs_cap()
    report = verify_image(args.l, args.p, args.r, bfs_cap=cap, seed=args.seed)
    return render("verify-image", report.to_json(), args.format), EXIT_OK


def _cmd_v2_lemma(args):
    return render("v2-lemma", check_v2_lemma(args.p, args.e), args.format), EXIT_OK


def _cmd_selftest(args):
    results = acceptance.run_all(quick=not args.full)
    ok = all(r.passed for r in results)
    code = EXIT_OK if ok else EXIT_ERROR
    if args.format == "json":
        return render("selftest", {"passed": ok, "criteria": [r.to_json() for r in results]}, "json"), code
    if args.format == "csv":
        return _csv([{"number": r.number, "name": r.name, "passed": r.passed} for r in results]), code
    return "".join(r.line(timing=False) + "\n" for r in results), code


COMMANDS = {
    "realize": _cmd_realize,
    "main-verdict": _cmd_main_verdict,
    "enumerate": _cmd_enumerate,
    "genus": _cmd_genus,
    "cover": _cmd_cover,
    "monodromy": _cmd_monodromy,
    "verify-image": _cmd_verify_image,
    "v2-lemma": _cmd_v2_lemma,
    "selftest": _cmd_selftest,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=stderr)
        print(exc, file=stderr)
        return EXIT_USAGE
    try:
        text, code = COMMANDS[args.command](args)
    except ValueError as exc:  # parameters rejected by the library
        print(parser.format_usage().rstrip(), file=stderr)
        print(f"cyclocover {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"cyclocover {args.command}: error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_ERROR
    stdout.write(text)
    return code


def main():
    sys.exit(run())
