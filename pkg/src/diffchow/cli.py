"""Command-line interface. Every command prints one JSON object on stdout.

Exit status: 0 on success, 1 on a domain error (JSON ``{"error", "detail"}``),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bridge, chowform, dimension, homogeneity
from .errors import DiffAlgebraError
from .parser import parse
from .ranking import Ranking
from .reduction import CharSet, charset, is_autoreduced, pseudo_remainder
from .ring import Family, Ring, parse_ring
from .series import DiffPoint, Series


class UsageError(Exception):
    pass


class InputFileError(DiffAlgebraError):
    code = "file_not_found"


def _read_items(values) -> list:
    """Expand ``@file`` references and ``;``-separated lists into polynomial texts."""
    out = []
    for val in values or []:
        if val.startswith("@"):
            path = val[1:]
            try:
                with open(path, encoding="utf-8") as fh:
                    lines = fh.read().splitlines()
            except OSError as exc:
                raise InputFileError(f"cannot read {path}: {exc.strerror}", path=path)
            for line in lines:
                line = line.split("#", 1)[0].strip()
                if line:
                    out.append(line)
        else:
            out.extend(part.strip() for part in val.split(";") if part.strip())
    return out


def _ring(args) -> Ring:
    if not args.ring:
        raise UsageError("this command needs --ring")
    text = args.ring
    if args.field:
        text = f"{text} field={args.field}"
    return parse_ring(text)


def _polys(args, values):
    ring = _ring(args)
    return ring, [parse(t, ring) for t in _read_items(values)]


def _ranking(ring, kind):
    return Ranking.standard(ring, kind)


def _charset_arg(args, values):
    ring, polys = _polys(args, values)
    r = _ranking(ring, args.ranking)
    polys = [p for p in polys if not p.is_zero()]
    if is_autoreduced(polys, r):
        return ring, CharSet.asserted(polys, r)
    return ring, charset(polys, r)


def _variety(args):
    if not args.variety:
        raise UsageError("this command needs --variety")
    text = _read_items([args.variety])[0] if args.variety.startswith("@") else args.variety
    v = chowform.parse_variety(text)
    if args.n is not None and args.n != v.n:
        raise UsageError(f"--n {args.n} does not match the variety arity {v.n}")
    return v


def _point(args, text):
    ring = Ring(field="Qx")
    coords = []
    for piece in text.split(","):
        p = parse(piece, ring)
        if not p.is_ground():
            raise UsageError("point coordinates must be ground elements in x")
        coords.append(Series.from_ground(p.ground_value(), args.precision))
    return DiffPoint(tuple(coords), args.precision)


# -- commands -----------------------------------------------------------------


def cmd_reduce(args):
    ring, fs = _polys(args, [args.poly])
    _, by = _polys(args, args.by)
    r = _ranking(ring, args.ranking)
    red = pseudo_remainder(fs[0], by, r)
    exps = {f"{tag}{k}": e for (tag, k), e in sorted(red.exponents.items())}
    return {"remainder": red.remainder.render(), "multiplier": red.multiplier.render(),
            "exponents": exps}


def cmd_charset(args):
    ring, gens = _polys(args, args.polys)
    cs = charset(gens, _ranking(ring, args.ranking))
    return {"charset": cs.rendered(), "splitting_log": [p.render() for p in cs.splitting_log],
            "rounds": len(cs.rank_log)}


def _block(text):
    if text in ("Y", "y"):
        return Family.Y
    if text.startswith("u") and text[1:].isdigit():
        return (Family.U, int(text[1:]))
    raise UsageError(f"unknown block {text!r}; use Y or u<i>")


def cmd_homog_check(args):
    _, fs = _polys(args, [args.poly])
    return homogeneity.is_diff_homogeneous(fs[0], _block(args.block)).to_json()


def cmd_homogenize(args):
    _, fs = _polys(args, [args.poly])
    res = bridge.homogenize(fs[0])
    return {"polynomial": res.polynomial.render(), "denomination": res.denomination}


def cmd_dehomogenize(args):
    _, cs = _charset_arg(args, args.charset)
    return {"charset": bridge.dehomogenize_charset(cs).rendered()}


def cmd_vdelta(args):
    ring, gens = _polys(args, args.polys)
    n = args.n if args.n is not None else ring.n_y - 1
    return {"generators": [g.render() for g in bridge.vdelta_generators(gens, n, ring)]}


def cmd_dimpoly(args):
    ring, cs = _charset_arg(args, args.charset)
    return dimension.dimension_polynomial(cs, args.form, ring).to_json()


def cmd_intersect(args):
    ring, cs = _charset_arg(args, args.charset)
    return dimension.intersect_generic_hyperplane(cs, ring).to_json()


def cmd_chow(args):
    v = _variety(args)
    if args.delta:
        cf = chowform.vdelta_chow(v, args.max_order, args.max_degree)
    else:
        cf = chowform.algebraic_chow(v, seed=args.seed)
    return cf.to_json()


def cmd_rv(args):
    return {"rv": chowform.kolchin_rv(_variety(args)).render()}


def cmd_lindep(args):
    v = _variety(args)
    return chowform.lindep_test(v, _point(args, args.point)).to_json()


def cmd_witness(args):
    v = _variety(args)
    cf = chowform.vdelta_chow(v, args.max_order, args.max_degree)
    ring = Ring(n_y=v.n + 1)
    gens = bridge.vdelta_generators(chowform.variety_generators(v, ring), v.n, ring)
    w = chowform.sf_witness(cf, [_point(args, args.point)], gens)
    return {"witness": w.render()}


def cmd_verify54(args):
    return {"equal": chowform.verify_thm_5_4(_variety(args))}


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help='ring declaration, e.g. "Y=3 U=2x3 field=Qx"')
    common.add_argument("--field", choices=["Q", "Qx"])
    common.add_argument("--precision", type=int, default=16)
    common.add_argument("--max-order", type=int, default=2)
    common.add_argument("--max-degree", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true")
    common.add_argument("--ranking", choices=["orderly", "elimination"], default="orderly")

    parser = argparse.ArgumentParser(prog="diffchow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("reduce", cmd_reduce, "pseudo-remainder of a polynomial")
    p.add_argument("poly")
    p.add_argument("--by", action="append", required=True)
    p = add("charset", cmd_charset, "Wu-Ritt characteristic set")
    p.add_argument("polys", nargs="+")
    p = add("homog-check", cmd_homog_check, "differential homogeneity test")
    p.add_argument("poly")
    p.add_argument("--block", default="Y")
    p = add("homogenize", cmd_homogenize, "homogenize an affine polynomial in y1..yn")
    p.add_argument("poly")
    p = add("dehomogenize", cmd_dehomogenize, "set y0 = 1 in a homogeneous charset")
    p.add_argument("--charset", action="append", required=True)
    p = add("vdelta", cmd_vdelta, "algebraic generators plus Wronskian minors")
    p.add_argument("polys", nargs="*")
    p.add_argument("--n", type=int)
    p = add("dimpoly", cmd_dimpoly, "differential dimension polynomial")
    p.add_argument("--charset", action="append", required=True)
    p.add_argument("--form", choices=["projective", "affine"], default="projective")
    p = add("intersect", cmd_intersect, "intersect with a generic hyperplane")
    p.add_argument("--charset", action="append", required=True)
    for name, func, help_ in [
        ("chow", cmd_chow, "Chow form of a variety"),
        ("rv", cmd_rv, "linear-dependence polynomial R_V"),
        ("lindep", cmd_lindep, "linear dependence over V at a point"),
        ("witness", cmd_witness, "incidence witness from the separant"),
        ("verify54", cmd_verify54, "R_V against the differential Chow form of V"),
    ]:
        p = add(name, func, help_)
        p.add_argument("--variety", required=True)
        p.add_argument("--n", type=int)
        if name == "chow":
            p.add_argument("--delta", action="store_true",
                           help="differential Chow form of V with the Wronskian equations")
        if name in ("lindep", "witness"):
            p.add_argument("--point", required=True, help='comma separated, e.g. "x, x^2"')
    return parser


def _emit(payload, pretty, stream):
    if pretty:
        for key, val in payload.items():
            if isinstance(val, list):
                stream.write(f"{key}:\n")
                for item in val:
                    stream.write(f"  {item}\n")
            else:
                stream.write(f"{key}: {val}\n")
    else:
        stream.write(json.dumps(payload, separators=(",", ":")) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"diffchow: error: {exc}\n")
        return 2
    except DiffAlgebraError as exc:
        detail = {"message": str(exc)}
        detail.update({k: v for k, v in exc.detail.items() if v is not None})
        _emit({"error": exc.code, "detail": detail}, False, sys.stdout)
        return 1
    _emit(payload, args.pretty, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
