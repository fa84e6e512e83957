"""Command-line front end.

Subcommands: expand (series tables), verify (golden self-checks),
lattice (pairings, signatures, vector counts, exceptional classes),
sw (Seiberg-Witten values and wall-crossing sums), fit (exact linear
fitting of quasi-modular polynomials).

Exit codes: 0 success, 1 failed verification, 2 malformed input.
The environment variable ENUMGEO_ORDER overrides the default order 20.
Output is deterministic: fixed orderings, sorted JSON keys, no timestamps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from fractions import Fraction

from . import invariants as inv
from . import lattice as lat
from . import modforms as mf
from . import verify as ver
from .series import QSeries, SeriesError, product_family

_SURFACES = {
    "p2": inv.SurfaceData.projective_plane,
    "k3": inv.SurfaceData.k3,
    "b9": inv.SurfaceData.half_k3,
}


def _fmt_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else str(c)


def _coeff_line(series: QSeries) -> str:
    return ", ".join(_fmt_rational(c) for c in series.coefficients())


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: {exc}") from None


def _parse_vector(text: str) -> tuple:
    named = lat.gamma19_named_vectors()
    if text in named:
        return named[text]
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(
            f"vector must be a name ({', '.join(sorted(named))}) "
            f"or comma-separated integers, got {text!r}") from None


def _resolve_order(args) -> int:
    order = args.order
    if order is None:
        env = os.environ.get("ENUMGEO_ORDER")
        try:
            order = int(env) if env is not None else 20
        except ValueError:
            raise ValueError(f"ENUMGEO_ORDER={env!r} is not an integer") from None
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return order


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


# -- expand ----------------------------------------------------------------

def _cmd_expand(args) -> int:
    order = _resolve_order(args)
    target = args.target
    if target == "eta-quotient":
        series = mf.eta_quotient(args.exponent, order)
        header = f"eta-quotient exponent={args.exponent}"
    elif target == "eisenstein":
        series = mf.eisenstein(args.weight, order)
        header = f"eisenstein weight={args.weight}"
    elif target == "theta-e8":
        series = mf.theta_e8(order, method=args.method)
        header = f"theta-e8 method={args.method}"
    elif target == "hilb-euler":
        surface = _SURFACES[args.surface]()
        series = inv.hilb_euler_series(surface, order)
        header = f"hilb-euler surface={args.surface} chi={surface.chi_top}"
    elif target == "bryan-leung":
        series = inv.bryan_leung_series(args.genus, order)
        header = f"bryan-leung genus={args.genus}"
    elif target == "half-k3-z1":
        series = inv.half_k3_z1(order)
        header = "half-k3-z1"
    elif target == "goettsche":
        surface = _SURFACES[args.surface]()
        bi = inv.goettsche_series(surface, order)
        if args.format == "json":
            _emit_json(bi.to_json_dict())
        else:
            print(f"# goettsche surface={args.surface} order={order}")
            print(bi)
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown target {target!r}")
    if args.format == "json":
        _emit_json(series.to_json_dict())
    else:
        print(f"# {header} order={order} shift={series.shift}")
        print(_coeff_line(series))
    return 0


# -- verify ----------------------------------------------------------------

def _cmd_verify(args) -> int:
    order = _resolve_order(args)
    reports = ver.run_suite(args.suite, order)
    failed = sum(r.status == "fail" for r in reports)
    if args.format == "json":
        _emit_json({
            "suite": args.suite,
            "order": order,
            "reports": [r.to_json_dict() for r in reports],
            "failed": failed,
        })
    else:
        for r in reports:
            line = f"{r.status.upper():7s} {r.check_name}"
            if r.status != "pass":
                line += f"  expected={r.expected}  actual={r.actual}"
            line += f"  [{r.citation}]"
            print(line)
        passed = sum(r.status == "pass" for r in reports)
        flagged = sum(r.status == "flagged" for r in reports)
        print(f"# {passed} passed, {failed} failed, {flagged} flagged")
    return 1 if failed else 0


# -- lattice ---------------------------------------------------------------

def _cmd_lattice_pair(args) -> int:
    g = lat.make_gamma19()
    print(g.pair(_parse_vector(args.u), _parse_vector(args.v)))
    return 0


def _cmd_lattice_genus(args) -> int:
    g = lat.make_gamma19()
    print(g.adjunction_genus(_parse_vector(args.beta)))
    return 0


def _cmd_lattice_signature(args) -> int:
    g = lat.make_gamma19()
    if args.sublattice == "full":
        sig = g.signature()
    elif args.sublattice == "fiber-section":
        names = lat.gamma19_named_vectors()
        sig = g.sublattice([names["F"], names["B"]], ["F", "B"]).signature()
    else:  # e8
        sig = g.sublattice(lat.e8_minus_basis()).signature()
    print(f"({sig[0]}, {sig[1]})")
    return 0


def _cmd_lattice_enumerate(args) -> int:
    counts = lat.enumerate_vectors(lat.e8_lattice(), args.norm_max)
    if args.format == "json":
        _emit_json({"norm_max": args.norm_max,
                    "counts": {str(n): counts[n] for n in counts},
                    "backend": lat.enumeration_backend()})
    else:
        print(f"# E8 vector counts up to norm {args.norm_max} "
              f"({lat.enumeration_backend()} backend)")
        for n in sorted(counts):
            print(f"{n} {counts[n]}")
    return 0


def _cmd_lattice_exceptional(args) -> int:
    classes = lat.exceptional_classes(args.k, args.bound)
    if args.format == "json":
        _emit_json({"k": args.k, "bound": args.bound,
                    "count": len(classes),
                    "classes": [list(c) for c in classes]})
    else:
        dp = lat.make_del_pezzo(args.k)
        print(f"# {len(classes)} exceptional classes on the "
              f"{args.k}-point blowup (degree bound {args.bound})")
        for c in classes:
            print(dp.format_vector(c))
    return 0


# -- sw ----------------------------------------------------------------------

def _cmd_sw_p2(args) -> int:
    chamber = {"plus": "+", "minus": "-"}.get(args.chamber, args.chamber)
    print(inv.sw_p2(args.c, chamber))
    return 0


def _cmd_sw_closed_form(args) -> int:
    print(inv.sw_closed_form(args.d, args.pg))
    return 0


def _cmd_sw_dimension(args) -> int:
    print(_fmt_rational(inv.sw_dimension(args.c_sq, args.chi_top, args.sigma)))
    return 0


def _pair_to_fraction(pair) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def _cmd_sw_mochizuki(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    vdata = data["v"]
    v = inv.ChernVector(r=int(vdata["r"]), a_h=int(vdata["a_h"]),
                        a_K=int(vdata["a_K"]), a_sq=int(vdata["a_sq"]),
                        n=_pair_to_fraction(vdata["n"]))
    chi = _pair_to_fraction(data["chi_v"])
    decomps = [inv.SWDecomposition(a1_h=int(d["a1_h"]), a2_h=int(d["a2_h"]),
                                   sw_a1=int(d["sw"]),
                                   a_value=_pair_to_fraction(d["A"]))
               for d in data["decomps"]]
    k_dot_h = data.get("k_dot_h")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = inv.mochizuki_sum(v, chi, decomps,
                                   k_dot_h=int(k_dot_h)
                                   if k_dot_h is not None else None)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "json":
        _emit_json({"result": [str(result.numerator), str(result.denominator)],
                    "hypothesis_warnings": [str(w.message) for w in caught]})
    else:
        print(_fmt_rational(result))
    return 0


# -- fit ---------------------------------------------------------------------

def _parse_target(text: str) -> tuple:
    if "=" not in text:
        raise ValueError(f"target must look like EXPONENT=VALUE, got {text!r}")
    e, v = text.split("=", 1)
    return int(e), _parse_rational(v)


def _cmd_fit(args) -> int:
    targets = [_parse_target(t) for t in args.target]
    fit = mf.fit_quasi_homogeneous(args.weight, args.eta_exponent, targets)
    if args.format == "json":
        _emit_json(fit.to_json_dict())
        return 0
    print(f"# weight={args.weight} eta-exponent={args.eta_exponent} "
          f"consistent={fit.consistent} nullspace-dimension={fit.nullity}")
    labels = fit.basis.labels()
    if fit.particular is not None:
        for label, c in zip(labels, fit.particular):
            print(f"{label}: {_fmt_rational(c)}")
    else:
        print("inconsistent system; no particular solution")
    for i, vec in enumerate(fit.nullspace):
        body = ", ".join(f"{label}: {_fmt_rational(c)}"
                         for label, c in zip(labels, vec))
        print(f"nullspace[{i}]: {body}")
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enumgeo",
        description="Exact q-series, modular forms and surface-lattice "
                    "arithmetic for enumerative invariants.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--order", type=int, default=None,
                       help="truncation order (default 20, or ENUMGEO_ORDER)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_expand = sub.add_parser("expand", help="print a series expansion")
    p_expand.add_argument("target", choices=(
        "eta-quotient", "eisenstein", "theta-e8", "hilb-euler",
        "goettsche", "bryan-leung", "half-k3-z1"))
    p_expand.add_argument("--exponent", type=int, default=-12,
                          help="eta-quotient exponent")
    p_expand.add_argument("--weight", type=int, choices=(2, 4, 6), default=4,
                          help="Eisenstein weight")
    p_expand.add_argument("--method", choices=("eisenstein", "lattice"),
                          default="eisenstein", help="theta-e8 method")
    p_expand.add_argument("--surface", choices=tuple(_SURFACES), default="b9",
                          help="surface for hilb-euler / goettsche")
    p_expand.add_argument("--genus", type=int, default=0,
                          help="bryan-leung genus")
    add_common(p_expand)
    p_expand.set_defaults(func=_cmd_expand)

    p_verify = sub.add_parser("verify", help="run golden self-checks")
    p_verify.add_argument("suite", nargs="?", default="all",
                          choices=tuple(sorted(ver.SUITES)))
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_lat = sub.add_parser("lattice", help="surface-lattice queries")
    lat_sub = p_lat.add_subparsers(dest="query", required=True)

    p_pair = lat_sub.add_parser("pair", help="pairing of two classes")
    p_pair.add_argument("--u", required=True)
    p_pair.add_argument("--v", required=True)
    add_common(p_pair)
    p_pair.set_defaults(func=_cmd_lattice_pair)

    p_genus = lat_sub.add_parser("genus", help="adjunction genus of a class")
    p_genus.add_argument("--beta", required=True)
    add_common(p_genus)
    p_genus.set_defaults(func=_cmd_lattice_genus)

    p_sig = lat_sub.add_parser("signature", help="signature of a sublattice")
    p_sig.add_argument("--sublattice",
                       choices=("full", "fiber-section", "e8"),
                       default="full")
    add_common(p_sig)
    p_sig.set_defaults(func=_cmd_lattice_signature)

    p_enum = lat_sub.add_parser("enumerate", help="E8 vector counts by norm")
    p_enum.add_argument("--norm-max", type=int, required=True)
    add_common(p_enum)
    p_enum.set_defaults(func=_cmd_lattice_enumerate)

    p_exc = lat_sub.add_parser("exceptional",
                               help="classes with K.b = b.b = -1")
    p_exc.add_argument("--k", type=int, required=True,
                       help="number of blown-up points (1..8)")
    p_exc.add_argument("--bound", type=int, default=6,
                       help="search bound on |b . e0|")
    add_common(p_exc)
    p_exc.set_defaults(func=_cmd_lattice_exceptional)

    p_sw = sub.add_parser("sw", help="Seiberg-Witten values")
    sw_sub = p_sw.add_subparsers(dest="query", required=True)

    p_p2 = sw_sub.add_parser("p2", help="plane invariant by chamber")
    p_p2.add_argument("--c", type=int, required=True,
                      help="coefficient of the line class (odd)")
    p_p2.add_argument("--chamber", required=True,
                      choices=("+", "-", "plus", "minus"))
    add_common(p_p2)
    p_p2.set_defaults(func=_cmd_sw_p2)

    p_cf = sw_sub.add_parser("closed-form",
                             help="binomial closed form for p_g > 0")
    p_cf.add_argument("--d", type=int, required=True)
    p_cf.add_argument("--pg", type=int, required=True)
    add_common(p_cf)
    p_cf.set_defaults(func=_cmd_sw_closed_form)

    p_dim = sw_sub.add_parser("dimension", help="moduli dimension")
    p_dim.add_argument("--c-sq", type=int, required=True)
    p_dim.add_argument("--chi-top", type=int, required=True)
    p_dim.add_argument("--sigma", type=int, required=True)
    add_common(p_dim)
    p_dim.set_defaults(func=_cmd_sw_dimension)

    p_moc = sw_sub.add_parser("mochizuki", help="wall-crossing sum from JSON")
    p_moc.add_argument("--file", required=True,
                       help="JSON with v, chi_v and the decompositions")
    add_common(p_moc)
    p_moc.set_defaults(func=_cmd_sw_mochizuki)

    p_fit = sub.add_parser("fit", help="fit quasi-modular monomials")
    p_fit.add_argument("--weight", type=int, required=True)
    p_fit.add_argument("--eta-exponent", type=int, required=True)
    p_fit.add_argument("--target", action="append", required=True,
                       metavar="EXP=VALUE",
                       help="coefficient constraint, repeatable")
    add_common(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SeriesError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
