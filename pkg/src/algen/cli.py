"""Command-line entry point with JSON input and output.

Every run embeds its full configuration in the output, big integers are
serialized as decimal strings, and floats carry 15 significant digits
next to explicit error bounds, so outputs are byte-reproducible and
machine-checkable.

Exit codes: 0 success, 2 validation error, 3 enumeration cap or
factorization failure, 1 internal mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from . import density, ffalg, genff, genz, polys, sampler
from .errors import (
    AlgenError,
    InvalidJSON,
    ResourceError,
    ValidationError,
)

_BIG = 2 ** 53


def _enc_int(v: int):
    return v if -_BIG < v < _BIG else str(v)


def _dec_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InvalidJSON(f"expected an integer, got {v!r}")
    return int(v)


def _enc_float(v: float) -> float:
    return float(format(float(v), ".15g"))


def encode_matrix(n: int, entries, ctx: ffalg.FieldCtx | None = None) -> dict:
    """Shared matrix encoding; extension-field entries become coefficient
    vectors, everything else flattens to plain integers."""
    if ctx is not None and ctx.s > 1:
        ser = [list(ctx.coeffs(e)) for e in entries]
    else:
        ser = [_enc_int(int(e)) for e in entries]
    return {"n": n, "entries": ser}


def decode_matrix(obj) -> tuple[int, tuple[int, ...]]:
    try:
        n = int(obj["n"])
        entries = tuple(_dec_int(e) for e in obj["entries"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidJSON(f"bad matrix object: {exc}") from exc
    if len(entries) != n * n:
        raise InvalidJSON(f"matrix claims n={n} but has {len(entries)} entries")
    return n, entries


def encode_tuple_Z(shape: genff.AlgebraShape, t) -> dict:
    sizes = shape.slot_sizes()
    return {
        "k": len(t),
        "elements": [[encode_matrix(n, mat) for mat, n in zip(elem, sizes)]
                     for elem in t],
    }


def decode_tuple_Z(obj):
    """Parse a tuple JSON object; returns (shape, tuple).

    The shape is inferred from the slot sizes of the first element; slots
    are sorted by matrix size (a factor permutation, which does not change
    generation) and equal sizes merged into one block multiplicity.
    """
    try:
        k = int(obj["k"])
        elements = obj["elements"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidJSON(f"bad tuple object: {exc}") from exc
    if not isinstance(elements, list) or len(elements) != k:
        raise InvalidJSON("elements must be a list of length k")
    if k == 0:
        raise InvalidJSON("checkgen needs the shape; supply at least one element")
    decoded = [[decode_matrix(m) for m in elem] for elem in elements]
    sizes = [n for n, _e in decoded[0]]
    for elem in decoded:
        if [n for n, _e in elem] != sizes:
            raise InvalidJSON("elements disagree on slot sizes")
    order = sorted(range(len(sizes)), key=lambda i: sizes[i])
    blocks = []
    for i in order:
        if blocks and blocks[-1][0] == sizes[i]:
            blocks[-1][1] += 1
        else:
            blocks.append([sizes[i], 1])
    shape = genff.shape_over_Z([(n, m) for n, m in blocks])
    t = tuple(tuple(elem[i][1] for i in order) for elem in decoded)
    return shape, t


def _emit(config: dict, payload: dict) -> None:
    doc = {"config": config}
    doc.update(payload)
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def _density_payload(dv: density.DensityValue) -> dict:
    return {
        "value": _enc_float(dv.value),
        "error_bound": _enc_float(dv.abs_error_bound),
        "P": dv.P,
        "method": dv.method,
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_count(args) -> int:
    config = {"subcommand": "count", "k": args.k, "n": args.n, "q": args.q,
              "s": args.s, "m": args.m, "mode": args.mode,
              "threads": args.threads}
    if args.mode in ("brute", "verify"):
        rep = genff.brute_count(args.k, args.n, args.q, s=args.s, m=args.m,
                                threads=args.threads)
        brute = rep.value
    if args.mode in ("formula", "verify"):
        if args.m == 1 and args.s == 1:
            formula = genff.g_closed_form(args.k, args.n, args.q)
        else:
            formula = genff.count_gen_power_formula(
                args.k, args.n, args.q, args.s, args.m)
    # tuple counts are big-integer quantities: always decimal strings
    if args.mode == "brute":
        _emit(config, {"method": "brute", "value": str(brute)})
    elif args.mode == "formula":
        _emit(config, {"method": "formula", "value": str(formula)})
    else:
        if brute != formula:
            _emit(config, {"error": "oracle mismatch",
                           "brute": str(brute), "formula": str(formula)})
            return 1
        _emit(config, {"method": "verify", "value": str(brute),
                       "brute": str(brute), "formula": str(formula)})
    return 0


def _cmd_density(args) -> int:
    config = {"subcommand": "density", "kind": args.kind, "s": args.s,
              "k": args.k, "n": args.n, "P": args.P, "eps": args.eps}
    if args.kind == "zeta":
        dv = density.zeta_value(args.s, args.eps)
    elif args.kind == "zn":
        dv = density.den_Zn(args.k, args.n)
    elif args.kind == "matrix":
        dv = density.den_matrix(args.n, args.k, args.P)
    else:
        raise ValidationError(f"unknown density kind {args.kind}")
    _emit(config, _density_payload(dv))
    return 0


def _cmd_mc(args) -> int:
    config = {"subcommand": "mc", "n": args.n, "m": args.m, "k": args.k,
              "N": args.N, "samples": args.samples, "seed": args.seed,
              "threads": args.threads}
    shape = genff.shape_over_Z([(args.n, args.m)])
    box = sampler.BoxModel(args.N, args.seed, args.samples)
    est = sampler.mc_density(shape, args.k, box, threads=args.threads)
    _emit(config, {
        "hits": est.hits,
        "trials": est.trials,
        "estimate": _enc_float(est.estimate),
        "estimate_exact": f"{est.estimate.numerator}/{est.estimate.denominator}",
        "ci95_halfwidth": _enc_float(est.ci95_halfwidth),
    })
    return 0


def _load_polys(args):
    if args.polys_file:
        with open(args.polys_file) as fh:
            raw = fh.read()
    else:
        raw = args.polys
    if raw is None:
        raise ValidationError("need --polys or --polys-file")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidJSON(f"bad polynomial JSON: {exc}") from exc
    if not isinstance(data, list):
        raise InvalidJSON("polynomial input must be a list of term maps")
    out = []
    for poly in data:
        if not isinstance(poly, dict):
            raise InvalidJSON("each polynomial is a map of exponent "
                              "vectors (comma-separated) to coefficients")
        terms = {}
        for key, coeff in poly.items():
            try:
                exps = tuple(int(x) for x in key.split(","))
            except ValueError as exc:
                raise InvalidJSON(f"bad exponent vector {key!r}") from exc
            terms[exps] = _dec_int(coeff)
        out.append(terms)
    return out


def _cmd_exhaustive(args) -> int:
    config = {"subcommand": "exhaustive", "N": args.N,
              "polys": args.polys, "polys_file": args.polys_file}
    frac = sampler.exhaustive_poly_density(_load_polys(args), args.N)
    _emit(config, {
        "density": _enc_float(frac),
        "density_exact": f"{frac.numerator}/{frac.denominator}",
    })
    return 0


def _cmd_checkgen(args) -> int:
    if args.input:
        with open(args.input) as fh:
            raw = fh.read()
    else:
        raw = sys.stdin.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidJSON(f"bad tuple JSON: {exc}") from exc
    if "tuple" in obj:
        obj = obj["tuple"]
    shape, t = decode_tuple_Z(obj)
    config = {"subcommand": "checkgen", "input": args.input,
              "blocks": [[n, m] for n, _s, m in shape.blocks]}
    rep = genz.generates_Z(shape, t)
    _emit(config, {
        "generates": rep.generates,
        "index": str(rep.index),
        "bad_primes": list(rep.bad_primes),
    })
    return 0


def _cmd_construct(args) -> int:
    config = {"subcommand": "construct", "what": args.what,
              "n": args.n, "q": args.q, "s": args.s}
    if args.what == "m2z16":
        x, y = genz.construct_M2Z16()
        shape = genff.shape_over_Z([(2, 16)])
        _emit(config, {"tuple": encode_tuple_Z(shape, (x, y)),
                       "certified_index": "1"})
        return 0
    if args.what == "twogen":
        ext, A, B = genff.two_generators_ext(args.n, args.q, args.s)
        _emit(config, {
            "field": {"p": ext.p, "s": ext.s, "q": _enc_int(ext.q),
                      "modulus": list(ext.modulus) if ext.modulus else None},
            "generators": [encode_matrix(args.n, A, ext),
                           encode_matrix(args.n, B, ext)],
        })
        return 0
    raise ValidationError(f"unknown construction {args.what}")


def _cmd_census(args) -> int:
    config = {"subcommand": "census", "n": args.n, "threads": args.threads}
    gen, fail = genz.zero_one_census(args.n, threads=args.threads)
    _emit(config, {"gen_mod2": _enc_int(gen), "fail_over_Z": _enc_int(fail)})
    return 0


def _cmd_thresholds(args) -> int:
    config = {"subcommand": "thresholds", "n": args.n, "m": args.m}
    rep = polys.min_generators(args.n, args.m)
    _emit(config, {"r": rep.r, "lower": _enc_int(rep.lower),
                   "upper": _enc_int(rep.upper)})
    return 0


def _cmd_poly(args) -> int:
    config = {"subcommand": "poly", "family": args.family, "k": args.k,
              "eval": args.eval, "mod_p": args.mod_p}
    fam = {"f": polys.f_poly, "h": polys.h_poly,
           "phi": polys.phi_poly, "psi": polys.psi_poly}[args.family]
    poly = fam(args.k)
    payload = {"coeffs": [_enc_int(c) for c in poly],
               "degree": polys.poly_degree(poly)}
    if args.eval is not None:
        payload["value"] = _enc_int(polys.poly_eval(poly, args.eval))
    if args.mod_p is not None:
        payload["verdict_mod_p"] = polys.is_irreducible_mod_p(poly, args.mod_p)
    _emit(config, payload)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="algen",
        description="Exact counting, certification, and densities for "
                    "generating tuples of matrix algebras.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("count", help="count generating tuples over F_q")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--m", type=int, default=1)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--brute", dest="mode", action="store_const",
                      const="brute", default="formula")
    mode.add_argument("--formula", dest="mode", action="store_const",
                      const="formula")
    mode.add_argument("--verify", dest="mode", action="store_const",
                      const="verify")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(fn=_cmd_count)

    d = sub.add_parser("density", help="density formulas with error bounds")
    d.add_argument("--kind", choices=["zeta", "zn", "matrix"], required=True)
    d.add_argument("--s", type=int, default=2, help="zeta argument")
    d.add_argument("--k", type=int, default=3)
    d.add_argument("--n", type=int, default=2)
    d.add_argument("--P", type=int, default=10 ** 5)
    d.add_argument("--eps", type=float, default=1e-9)
    d.set_defaults(fn=_cmd_density)

    m = sub.add_parser("mc", help="Monte-Carlo density of generating tuples")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--m", type=int, default=1)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--N", type=int, required=True)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, default=42)
    m.add_argument("--threads", type=int, default=1)
    m.set_defaults(fn=_cmd_mc)

    e = sub.add_parser("exhaustive", help="exact box density of a polynomial system")
    e.add_argument("--polys", help="JSON list of {\"e1,e2,...\": coeff} maps")
    e.add_argument("--polys-file")
    e.add_argument("--N", type=int, required=True)
    e.set_defaults(fn=_cmd_exhaustive)

    g = sub.add_parser("checkgen", help="certify a tuple generates over Z")
    g.add_argument("--input", help="tuple JSON file (default: stdin)")
    g.set_defaults(fn=_cmd_checkgen)

    w = sub.add_parser("construct", help="explicit generator constructions")
    w.add_argument("--what", choices=["m2z16", "twogen"], required=True)
    w.add_argument("--n", type=int, default=2)
    w.add_argument("--q", type=int, default=2)
    w.add_argument("--s", type=int, default=1)
    w.set_defaults(fn=_cmd_construct)

    z = sub.add_parser("census", help="{0,1} pair census for M_n")
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--threads", type=int, default=1)
    z.set_defaults(fn=_cmd_census)

    t = sub.add_parser("thresholds", help="minimal generators of M_n(Z)^m")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.set_defaults(fn=_cmd_thresholds)

    p = sub.add_parser("poly", help="the f/h/phi/psi polynomial families")
    p.add_argument("--family", choices=["f", "h", "phi", "psi"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eval", type=int)
    p.add_argument("--mod-p", dest="mod_p", type=int)
    p.set_defaults(fn=_cmd_poly)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ResourceError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return 3
    except AlgenError as exc:
        sys.stderr.write(f"failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
