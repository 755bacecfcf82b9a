"""Command-line front end.

Every subcommand prints text by default and JSON with ``--json``.  Exit
codes: 0 on success, 1 when cross-checked methods disagree, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .exactpoly import InvariantViolation, Poly, to_json
from .permgroup import Permutation, avoids, format_perm

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Disagreement(Exception):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


# ---------------------------------------------------------------------------
# argument parsing helpers


def _perm(text: str) -> Permutation:
    try:
        w = Permutation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return w


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _matrix(text: str) -> list[list[Fraction]]:
    try:
        return [[Fraction(t) for t in row.split(",")] for row in text.split(";") if row.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse matrix {text!r}")


def _frac(v) -> str:
    return str(Fraction(v))


def _emit(args, payload, text: str):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _diff_payload(polys: dict[str, Poly], reference: str) -> dict:
    ref = polys[reference]
    return {
        "error": "disagreement",
        "reference": reference,
        "polynomials": {k: to_json(p) for k, p in polys.items()},
        "differences": {k: to_json(p - ref) for k, p in polys.items() if p != ref},
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_dpoly(args) -> int:
    from .degrees import degree_polynomial

    n = max(args.w.n, args.u.n if args.u else 1, args.n or 1)
    method = args.method
    if method == "det":
        if args.form is None:
            raise UsageError("--method det needs an explicit --form 312|231|3412")
        method = "det" + args.form
    elif args.form is not None:
        raise UsageError("--form only applies to --method det")
    if args.u is not None and method not in ("chains", "diff"):
        raise UsageError(f"--u is only supported by chains and diff, not {args.method}")
    d = degree_polynomial(args.w, method, u=args.u, n=n)
    poly = d.form(args.coords)
    if args.check:
        candidates = ["chains", "diff"] if args.u is not None else ["chains", "integrate", "diff", "duan"]
        if args.u is None:
            w = args.w.extend(n)
            for pat in ("312", "231"):
                if avoids(w, pat):
                    candidates.append("det" + pat)
            if avoids(w, "3412"):
                candidates.append("det3412")
        forms = {m: degree_polynomial(args.w, m, u=args.u, n=n).Y_form for m in candidates}
        if len(set(forms.values())) != 1:
            raise Disagreement(f"methods disagree on D_({args.u},{args.w})", _diff_payload(forms, "chains"))
    u = args.u.extend(n) if args.u else Permutation.identity(n)
    payload = {
        "u": format_perm(u),
        "w": format_perm(args.w.extend(n)),
        "method": method,
        "coords": args.coords,
        "comparable": d.comparable,
        "polynomial": to_json(poly),
    }
    _emit(args, payload, str(poly))
    return EXIT_OK


def cmd_schubert(args) -> int:
    from .schubert import kostka_row, schubert_in_e_basis, schubert_poly

    n = max(args.w.n, args.n or 1)
    w = args.w.extend(n)
    if args.what == "poly":
        p = schubert_poly(w, n)
        _emit(args, {"w": format_perm(w), "polynomial": to_json(p)}, str(p))
    elif args.what == "kostka":
        row = kostka_row(w, n)
        rows = [{"w": format_perm(w), "a": list(a), "value": str(v)} for a, v in sorted(row.items(), reverse=True)]
        _emit(args, rows, "\n".join(f"{r['a']} {r['value']}" for r in rows))
    else:
        coeffs = schubert_in_e_basis(w, n)
        rows = [{"w": format_perm(w), "a": list(a), "value": str(v)} for a, v in coeffs.items()]
        _emit(args, rows, "\n".join(f"e{r['a']} {r['value']}" for r in rows))
    return EXIT_OK


def cmd_kostka(args) -> int:
    from .schubert import kostka_row

    n = max(args.w.n, args.n or 1)
    w = args.w.extend(n)
    row = kostka_row(w, n)
    rows = [{"w": format_perm(w), "a": list(a), "value": str(v)} for a, v in sorted(row.items(), reverse=True)]
    _emit(args, rows, "\n".join(f"{r['a']} {r['value']}" for r in rows))
    return EXIT_OK


def cmd_kostka_inverse(args) -> int:
    from .schubert import NotApplicable, applicable_inverse_methods, inverse_kostka, inverse_kostka_sector

    if args.w is not None:
        if args.a is None:
            raise UsageError("--w needs --a")
        n = max(args.w.n, len(args.a), args.n or 1)
        w = args.w.extend(n)
        try:
            value = inverse_kostka(args.a, w, args.method, n)
        except NotApplicable as exc:
            raise UsageError(str(exc))
        if args.check:
            vals = {m: inverse_kostka(args.a, w, m, n) for m in applicable_inverse_methods(w, args.a)}
            if len(set(vals.values())) != 1:
                raise Disagreement("inverse Kostka routes disagree",
                                   {"error": "disagreement", "values": {k: str(v) for k, v in vals.items()}})
        rows = [{"w": format_perm(w), "a": list(args.a), "value": str(value)}]
    else:
        if args.n is None or args.degree is None:
            raise UsageError("give either --w/--a or --n/--degree")
        sector = inverse_kostka_sector(args.n, args.degree, args.method)
        rows = [{"w": format_perm(w), "a": list(a), "value": str(v)} for (a, w), v in sector.items()]
    _emit(args, rows, "\n".join(f"{r['w']} {r['a']} {r['value']}" for r in rows))
    return EXIT_OK


def cmd_lr(args) -> int:
    from .degrees import lr_via_degrees
    from .permgroup import all_perms
    from .schubert import lr_coefficients

    n = max(args.u.n, args.v.n, args.n or 1)
    u, v = args.u.extend(n), args.v.extend(n)
    if args.route == "degrees":
        out = {}
        for w in all_perms(n):
            if w.length == u.length + v.length:
                c = lr_via_degrees(u, w, n).get(v, 0)
                if c:
                    out[w] = c
    else:
        out = lr_coefficients(u, v, n, args.route)
    rows = [{"w": format_perm(w.extend(max(n, len(w.trimmed)))), "value": _frac(c)}
            for w, c in sorted(out.items())]
    _emit(args, {"u": format_perm(u), "v": format_perm(v), "route": args.route, "coefficients": rows},
          "\n".join(f"{r['w']} {r['value']}" for r in rows))
    return EXIT_OK


def _lambda(args):
    lam = args.lam
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise UsageError("--lambda must be weakly decreasing")
    return lam


def cmd_demazure(args) -> int:
    from .demazure import (
        alternating_character_check,
        demazure_character,
        demazure_dimension,
        gt_count,
        gt_volume,
    )

    lam = _lambda(args)
    w = args.w.extend(len(lam))
    if w.n > len(lam):
        raise UsageError("--lambda has fewer parts than the permutation")
    needs_312 = args.what in ("gtcount", "volume", "alternating") or (args.what == "dim" and args.method in ("det", "gt"))
    if needs_312 and not avoids(w, "312"):
        raise UsageError(f"{format_perm(w)} is not 312-avoiding")
    payload = {"lambda": list(lam), "w": format_perm(w), "what": args.what}
    if args.what == "char":
        p = demazure_character(lam, w)
        payload["polynomial"] = to_json(p)
        text = str(p)
    elif args.what == "dim":
        v = demazure_dimension(lam, w, args.method, args.backend)
        payload["value"] = str(v)
        text = str(v)
    elif args.what == "gtcount":
        v = gt_count(lam, w, args.backend)
        payload["value"] = str(v)
        text = str(v)
    elif args.what == "volume":
        v = gt_volume(lam, w, args.backend)
        payload["value"] = str(v)
        text = str(v)
    else:
        rep = alternating_character_check(lam, w, seed=args.seed)
        payload.update({"seed": args.seed, "point": rep["point"], "alternating": str(rep["alternating"]),
                        "character": str(rep["character"]), "ok": rep["ok"]})
        text = f"at z={tuple(rep['point'])}: alternating {rep['alternating']}, character {rep['character']}"
        if not rep["ok"]:
            raise Disagreement("alternating formula disagrees with the character", payload)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_gt(args) -> int:
    from .demazure import GTPolytopeSpec, ehrhart_polynomial, gt_count, gt_lattice_points

    lam = _lambda(args)
    w = args.w.extend(len(lam))
    if not avoids(w, "312"):
        raise UsageError(f"{format_perm(w)} is not 312-avoiding")
    spec = GTPolytopeSpec(lam, w)
    payload = {"lambda": list(lam), "w": format_perm(w), "flag": list(spec.b), "what": args.what}
    if args.what == "count":
        v = gt_count(lam, w, args.backend)
        payload["value"] = str(v)
        text = str(v)
    elif args.what == "points":
        pts = [[[P[(i, j)] for j in range(1, i + 1)] for i in range(spec.n, 0, -1)]
               for P in gt_lattice_points(spec)]
        payload["points"] = pts
        text = "\n".join(json.dumps(p) for p in pts)
    else:
        coeffs = ehrhart_polynomial(lam, w, args.backend)
        payload["coefficients"] = [str(c) for c in coeffs]
        text = " ".join(str(c) for c in coeffs)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_parking(args) -> int:
    from .parking import ROUTES, d_long_cycle, parking_polynomial

    if args.r < 0:
        raise UsageError("--r must be non-negative")
    if args.what == "poly":
        p = parking_polynomial(args.r)
        _emit(args, {"r": args.r, "polynomial": to_json(p)}, str(p))
        return EXIT_OK
    d = d_long_cycle(args.r, args.route)
    if args.check:
        forms = {route: d_long_cycle(args.r, route).Y_form for route in ROUTES}
        if len(set(forms.values())) != 1:
            raise Disagreement("long-cycle routes disagree", _diff_payload(forms, "chains"))
    poly = d.form(args.coords)
    payload = {"r": args.r, "route": args.route, "w": format_perm(d.w), "coords": args.coords,
               "polynomial": to_json(poly)}
    _emit(args, payload, str(poly))
    return EXIT_OK


def cmd_permanent(args) -> int:
    from .identities import cartan_gram_check, permanent

    if args.matrix is not None:
        M = args.matrix
        if any(len(row) != len(M) for row in M):
            raise UsageError("--matrix must be square")
        v = permanent(M, backend=args.backend)
        _emit(args, {"permanent": str(v)}, str(v))
        return EXIT_OK
    if args.n is None:
        raise UsageError("give --n or --matrix")
    rep = cartan_gram_check(args.n, args.backend)
    _emit(args, rep, f"per(B B^T) for n={rep['n']}: {rep['permanent']} "
                     f"(1!...n! = {rep['factorial_product']}, ok={rep['ok']})")
    return EXIT_OK if rep["ok"] else EXIT_DISAGREE


def cmd_conjecture(args) -> int:
    from .identities import conjecture_report

    if not 1 <= args.nmax <= 5:
        raise UsageError("--nmax must be between 1 and 5")
    rep = conjecture_report(args.nmax)
    lines = [f"{e['w']:>24}  n={e['n']} k={e['k']}  deg {e['lhs_degree']} vs {'zero' if e['rhs_is_zero'] else e['rhs_degree']}  {e['status']}"
             for e in rep["entries"]]
    lines.append(f"summary: {rep['summary']}")
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run

    results = run(args.tier)
    payload = [{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail,
                "failures": r.failures} for r in results]
    _emit(args, payload, "\n".join(r.line() for r in results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    from .degrees import METHODS
    from .parking import ROUTES
    from .schubert import INVERSE_METHODS

    p = _Parser(prog="schubdeg", description="Exact degree polynomials of Schubert varieties.")
    p.add_argument("--version", action="version", version=f"schubdeg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=fn)
        return sp

    backends = ("auto", "numba", "numpy")

    sp = add("dpoly", cmd_dpoly, "degree polynomial D_{u,w}")
    sp.add_argument("--w", type=_perm, required=True)
    sp.add_argument("--u", type=_perm)
    sp.add_argument("--n", type=int)
    sp.add_argument("--method", default="chains",
                    choices=["chains", "integrate", "diff", "det", "duan"] + [m for m in METHODS if m.startswith("det")])
    sp.add_argument("--form", choices=["312", "231", "3412"])
    sp.add_argument("--coords", choices=["Y", "y"], default="Y")
    sp.add_argument("--check", action="store_true", help="cross-check every applicable method")

    sp = add("schubert", cmd_schubert, "Schubert polynomial and its expansions")
    sp.add_argument("--w", type=_perm, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--what", choices=["poly", "kostka", "e-basis"], default="poly")

    sp = add("kostka", cmd_kostka, "monomial coefficients K[w, a]")
    sp.add_argument("--w", type=_perm, required=True)
    sp.add_argument("--n", type=int)

    sp = add("kostka-inverse", cmd_kostka_inverse, "entries of the inverse Schubert-Kostka matrix")
    sp.add_argument("--w", type=_perm)
    sp.add_argument("--a", type=_int_list)
    sp.add_argument("--n", type=int)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--method", choices=INVERSE_METHODS, default="alternating")
    sp.add_argument("--check", action="store_true")

    sp = add("lr", cmd_lr, "Littlewood-Richardson coefficients c^w_{u,v}")
    sp.add_argument("--u", type=_perm, required=True)
    sp.add_argument("--v", type=_perm, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--route", choices=["expand", "alternating", "degrees"], default="expand")

    sp = add("demazure", cmd_demazure, "Demazure characters and dimensions")
    sp.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    sp.add_argument("--w", type=_perm, required=True)
    sp.add_argument("--what", choices=["char", "dim", "gtcount", "volume", "alternating"], default="char")
    sp.add_argument("--method", choices=["det", "char", "gt"], default="det", help="dimension route")
    sp.add_argument("--backend", choices=backends, default="auto")
    sp.add_argument("--seed", type=int, default=0,
                    help="offset into the prime sequence used as evaluation points")

    sp = add("gt", cmd_gt, "generalized Gelfand-Tsetlin polytopes")
    sp.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    sp.add_argument("--w", type=_perm, required=True)
    sp.add_argument("--what", choices=["count", "points", "ehrhart"], default="count")
    sp.add_argument("--backend", choices=backends, default="auto")

    sp = add("parking", cmd_parking, "parking polynomials and the long cycle")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--route", choices=ROUTES, default="parking")
    sp.add_argument("--what", choices=["dpoly", "poly"], default="dpoly")
    sp.add_argument("--coords", choices=["Y", "y"], default="Y")
    sp.add_argument("--check", action="store_true")

    sp = add("permanent", cmd_permanent, "permanents of root Gram matrices")
    sp.add_argument("--n", type=int)
    sp.add_argument("--matrix", type=_matrix, help='rows separated by ";", e.g. "1,2;3,4"')
    sp.add_argument("--backend", choices=backends, default="auto")

    sp = add("conjecture", cmd_conjecture, "special-permutation comparator report")
    sp.add_argument("--nmax", type=int, default=4)

    sp = add("selftest", cmd_selftest, "run the acceptance suite")
    sp.add_argument("--tier", choices=["default", "extended"], default="default")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"schubdeg {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except Disagreement as exc:
        sys.stderr.write(f"schubdeg {args.command}: {exc}\n")
        sys.stderr.write(json.dumps(exc.payload, indent=2) + "\n")
        return EXIT_DISAGREE
    except InvariantViolation as exc:
        sys.stderr.write(f"schubdeg {args.command}: invariant violated: {exc}\n")
        return EXIT_DISAGREE
    except ValueError as exc:
        sys.stderr.write(f"schubdeg {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
