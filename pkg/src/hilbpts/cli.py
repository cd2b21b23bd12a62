"""Command-line frontend.

Every command reads ideal files (``-`` for stdin), calls one library
operation and prints either plain text or a single JSON document.
Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unsupported input.
"""
import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import HilbptsError, InvalidArgument, ParseError, UsageError
from .families import (CertificateVerdict, ParametricIdeal, certify_reduced,
                       default_samples, embed_ideal, example1_catalog, family_germ, flat_limit,
                       flatness_report, integrality_criterion, smoothing_chain,
                       specialize, split_off_family, square_ideal_families)
from .grammar import format_ideal_file, format_poly, parse_ideal_file, parse_poly
from .groebner import Ideal, eliminate, ideal_equal, intersect, saturate, syzygy_basis
from .hilbtangent import (is_singular_point, square_of_maximal, tangent_dim_oracle,
                          tangent_dimension, tangent_space)
from .poly import RingContext
from .quotient import (colength, is_primary, monomial_primary_decomposition,
                       radical, standard_monomials, support_points)
from .suite import worked_examples_suite

OK, VERIFY_FAILED = 0, 1


class Outcome:
    """What a command produced: JSON payload, human text, exit code."""

    def __init__(self, payload, text, code=OK):
        self.payload = payload
        self.text = text
        self.code = code


# -- input helpers ------------------------------------------------------------------

def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_file(path):
    return parse_ideal_file(_read(path))


def _load_ideal(path):
    f = _load_file(path)
    if f.ctx.parameters:
        raise UsageError(f"{path}: a plain ideal may not declare parameters")
    return Ideal(f.single(), f.ctx)


def _load_families(path):
    f = _load_file(path)
    if not f.ideals:
        raise ParseError(f"{path}: no ideal statements")
    return [ParametricIdeal.from_generators(gens, f"{path}#{k}", f.ctx)
            for k, gens in enumerate(f.ideals, start=1)]


def _load_family(path):
    fams = _load_families(path)
    if len(fams) != 1:
        raise ParseError(f"{path}: expected exactly one family, found {len(fams)}")
    return fams[0]


def _rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument(f"not a rational number: {text!r}") from None


def _point(text):
    return tuple(_rational(t) for t in text.split(","))


# -- output helpers -----------------------------------------------------------------

def _q(c):
    return str(Fraction(c))


def _polys(gens):
    return [format_poly(g) for g in gens]


def _gb_list(I):
    return _polys(I.groebner())


def _paren(items):
    return "(" + ", ".join(items) + ")"


def _mono(ctx, e):
    return ctx.format_monomial(e)


def _point_json(p):
    return [_q(c) for c in p]


def _point_text(p):
    return _paren([_q(c) for c in p])


def _values_json(values):
    return {k: _q(v) for k, v in values.items()}


def _lines(items):
    return "\n".join(items)


def _report_json(rep):
    return {
        "family": _polys(rep.family.generators),
        "parameters": list(rep.family.parameters),
        "verdict": rep.verdict.value,
        "generic_colength": rep.generic_colength,
        "fibers": [{"values": _values_json(f.values), "zero_dimensional": f.zero_dimensional,
                    "colength": f.colength} for f in rep.fibers],
    }


def _report_text(rep):
    out = [f"family {rep.family}", f"verdict = {rep.verdict.value}",
           f"generic colength = {rep.generic_colength}"]
    for f in rep.fibers:
        vals = ", ".join(f"{k}={_q(v)}" for k, v in f.values.items()) or "-"
        out.append(f"  {vals}: " + (str(f.colength) if f.zero_dimensional else "not zero-dimensional"))
    return _lines(out)


def _vector_json(v):
    return [{"generator": format_poly(g), "image": format_poly(h)}
            for g, h in zip(v.generators(), v.image_polynomials())]


# -- commands -------------------------------------------------------------------------

def cmd_gb(a):
    I = _load_ideal(a.file)
    gb = _gb_list(I)
    payload = {"groebner_basis": gb}
    text = _lines(gb)
    if a.syzygies:
        syz = [[format_poly(c) for c in s] for s in syzygy_basis(I.groebner())]
        payload["syzygies"] = syz
        text += "\nsyzygies:\n" + _lines(_paren(s) for s in syz)
    return Outcome(payload, text)


def cmd_nf(a):
    I = _load_ideal(a.file)
    r = format_poly(I.reduce(parse_poly(a.poly, I.ctx)))
    return Outcome({"normal_form": r}, r)


def cmd_colength(a):
    n = colength(_load_ideal(a.file))
    return Outcome({"colength": n}, str(n))


def cmd_stdmon(a):
    I = _load_ideal(a.file)
    mons = [_mono(I.ctx, e) for e in standard_monomials(I).monomials]
    return Outcome({"standard_monomials": mons}, _lines(mons))


def cmd_eliminate(a):
    I = _load_ideal(a.file)
    keep = [k.strip() for k in a.keep.split(",") if k.strip()]
    out = _polys(eliminate(I, keep))
    return Outcome({"keep": keep, "generators": out}, _lines(out))


def _same_ring(ideals):
    ctx = ideals[0].ctx
    for J in ideals[1:]:
        if J.ctx != ctx:
            raise UsageError("all ideals must be declared over the same ring")
    return ctx


def cmd_intersect(a):
    ideals = []
    for path in a.files:
        f = _load_file(path)
        if f.ctx.parameters:
            raise UsageError(f"{path}: a plain ideal may not declare parameters")
        ideals.extend(Ideal(g, f.ctx) for g in f.ideals)
    if len(ideals) < 2:
        raise UsageError("intersect needs at least two ideals")
    _same_ring(ideals)
    J = ideals[0]
    for K in ideals[1:]:
        J = intersect(J, K)
    out = _gb_list(J)
    return Outcome({"generators": out}, _lines(out))


def cmd_saturate(a):
    I = _load_ideal(a.file)
    J = saturate(I, parse_poly(a.by, I.ctx))
    out = _gb_list(J)
    return Outcome({"generators": out}, _lines(out))


def cmd_radical(a):
    out = _gb_list(radical(_load_ideal(a.file)))
    return Outcome({"generators": out}, _lines(out))


def cmd_decompose(a):
    comps = monomial_primary_decomposition(_load_ideal(a.file))
    payload = {"components": [{"primary": _gb_list(c.ideal), "radical": _gb_list(c.radical)}
                              for c in comps]}
    text = _lines(f"{_paren(_gb_list(c.ideal))}  radical {_paren(_gb_list(c.radical))}" for c in comps)
    return Outcome(payload, text)


def cmd_primary_test(a):
    p = is_primary(_load_ideal(a.file))
    return Outcome({"primary": p}, "primary" if p else "not primary")


def cmd_support(a):
    pts = support_points(_load_ideal(a.file))
    payload = {"points": [{"point": _point_json(p), "multiplicity": m} for p, m in pts]}
    return Outcome(payload, _lines(f"{_point_text(p)}  multiplicity {m}" for p, m in pts))


def cmd_tangent(a):
    I = _load_ideal(a.file)
    payload, code = {}, OK
    if a.basis:
        T = tangent_space(I)
        dim = T.dim
        payload["dim"] = dim
        payload["basis"] = [_vector_json(v) for v in T.basis]
        text = [f"dim = {dim}"] + [str(v) for v in T.basis]
    else:
        dim = tangent_dimension(I)
        payload["dim"] = dim
        text = [f"dim = {dim}"]
    if a.oracle:
        o = tangent_dim_oracle(I)
        payload["oracle_dim"] = o
        payload["agree"] = o == dim
        text.append(f"oracle = {o}" + ("" if o == dim else "  MISMATCH"))
        if o != dim:
            code = VERIFY_FAILED
    return Outcome(payload, _lines(text), code)


def cmd_singular(a):
    I = _load_ideal(a.file)
    s = is_singular_point(I)
    tdim, l, d = tangent_dimension(I), colength(I), I.ctx.nvars
    payload = {"singular": s, "tangent_dim": tdim, "colength": l, "nvars": d}
    word = "singular" if s else "smooth"
    return Outcome(payload, f"{word} (dim = {tdim}, l*d = {l * d})")


def cmd_germ(a):
    fams = _load_families(a.file)
    entries, text = [], []
    for F in fams:
        v = family_germ(F)
        entries.append({"family": _polys(F.generators), "base": _gb_list(F.base), "germ": _vector_json(v)})
        text.append(f"{F}: {v}")
    return Outcome({"germs": entries}, _lines(text))


def cmd_flat(a):
    F = _load_family(a.file)
    samples = None
    if a.samples is not None:
        if a.samples < 1:
            raise InvalidArgument("--samples must be positive")
        samples = default_samples(F.parameters, a.samples)
    if a.with_zero and F.parameters:
        samples = (samples or default_samples(F.parameters)) + [{p: 0 for p in F.parameters}]
    rep = flatness_report(F, samples)
    return Outcome(_report_json(rep), _report_text(rep))


def cmd_flat_limit(a):
    F = _load_family(a.file)
    J = flat_limit(F, _rational(a.at))
    out = _gb_list(J)
    return Outcome({"at": _q(_rational(a.at)), "generators": out, "colength": _safe_colength(J)},
                   _lines(out))


def _safe_colength(J):
    try:
        return colength(J)
    except HilbptsError:
        return None


def cmd_smooth(a):
    I = _load_ideal(a.file)
    chain = smoothing_chain(I)
    steps, text = [], [f"colength = {chain.length}"]
    for k, s in enumerate(chain.steps, start=1):
        steps.append({"ideal": _gb_list(s.ideal), "family": _polys(s.family.generators),
                      "parameter": s.family.parameters[0], "exponent": s.exponent,
                      "verdict": s.report.verdict.value,
                      "generic_colength": s.report.generic_colength,
                      "next": _gb_list(s.next), "next_colength": s.next_colength})
        text.append(f"step {k}: family {s.family}  {s.report.verdict.value} colength {s.report.generic_colength}")
        text.append(f"        next {_paren(_gb_list(s.next))} colength {s.next_colength}")
    t = chain.terminal
    rep = chain.terminal_report
    one = specialize(t, {p: 1 for p in t.parameters})
    pts = support_points(one)
    payload = {"colength": chain.length, "steps": steps,
               "terminal": {"family": _polys(t.generators), "verdict": rep.verdict.value,
                            "generic_colength": rep.generic_colength,
                            "points_at_1": [{"point": _point_json(p), "multiplicity": m} for p, m in pts]}}
    text.append(f"terminal: family {t}  {rep.verdict.value} colength {rep.generic_colength}")
    text.append("  points at 1: " + ", ".join(f"{_point_text(p)}x{m}" for p, m in pts))
    return Outcome(payload, _lines(text))


def cmd_embed(a):
    I = _load_ideal(a.file)
    J = embed_ideal(I, a.l)
    gens = _polys(J.gens)
    return Outcome({"variables": list(J.ctx.variables), "generators": gens},
                   format_ideal_file(J.ctx, [J.gens]).rstrip("\n"))


def cmd_split_off(a):
    F = split_off_family(a.l, a.d)
    at = _rational(a.at)
    I = specialize(F, {p: at for p in F.parameters})
    pts = support_points(I)
    payload = {"parameters": list(F.parameters), "family": _polys(F.generators),
               "at": _q(at), "points": [{"point": _point_json(p), "multiplicity": m} for p, m in pts]}
    text = [format_ideal_file(F.ctx, [F.generators]).rstrip("\n"), f"# fiber at {_q(at)}:"]
    text += [f"# {_point_text(p)}  multiplicity {m}" for p, m in pts]
    return Outcome(payload, _lines(text))


def _catalog(name, d):
    if name == "example1":
        return example1_catalog()
    if name == "square":
        return square_ideal_families(d)
    raise InvalidArgument(f"unknown catalog {name!r}")


def cmd_certify(a):
    I = _load_ideal(a.file)
    if a.families:
        fams = _load_families(a.families)
    elif a.catalog:
        fams = _catalog(a.catalog, I.ctx.nvars)
    elif ideal_equal(I, square_of_maximal(I.ctx.nvars, I.ctx)):
        fams = square_ideal_families(I.ctx.nvars)
    else:
        raise UsageError("give --families FILE or --catalog NAME")
    cert = certify_reduced(I, fams)
    payload = {"verdict": cert.verdict.value, "germ_rank": cert.germ_rank,
               "tangent_dim": cert.tangent_dim, "families": len(cert.families)}
    text = f"{cert.verdict.value} (germ rank {cert.germ_rank}, tangent dim {cert.tangent_dim})"
    code = OK
    if a.require_certified and cert.verdict != CertificateVerdict.CERTIFIED:
        code = VERIFY_FAILED
    return Outcome(payload, text, code)


def cmd_criterion(a):
    q = _load_ideal(a.file)
    rep = integrality_criterion(q, _point(a.point))
    payload = {"verdict": rep.verdict.value, "point": _point_json(rep.point),
               "cotangent_dim": rep.cotangent_dim, "reduced_cotangent_dim": rep.reduced_cotangent_dim,
               "radical": _gb_list(rep.radical)}
    sign = "=" if rep.cotangent_dim == rep.reduced_cotangent_dim else "!="
    return Outcome(payload, f"{rep.verdict.value} ({rep.cotangent_dim} {sign} {rep.reduced_cotangent_dim})")


def cmd_catalog(a):
    fams = _catalog(a.name, a.d)
    ctx_params = []
    for F in fams:
        ctx_params += [p for p in F.parameters if p not in ctx_params]
    ctx = RingContext(fams[0].ctx.variables, ctx_params)
    payload = {"families": [{"parameters": list(F.parameters), "generators": _polys(F.generators)}
                            for F in fams]}
    return Outcome(payload, format_ideal_file(ctx, [F.generators for F in fams]).rstrip("\n"))


def _override(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise InvalidArgument(f"--expect wants NAME=VALUE, got {text!r}")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    return name, parsed


def cmd_worked_examples(a):
    overrides = dict(_override(t) for t in a.expect or [])
    try:
        res = worked_examples_suite(overrides)
    except KeyError as exc:
        raise InvalidArgument(exc.args[0]) from None
    text = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: expected {c.expected!r}, got {c.actual!r}"
            for c in res.checks]
    n_ok = sum(c.passed for c in res.checks)
    text.append(f"{n_ok}/{len(res.checks)} checks passed")
    return Outcome(res.to_dict(), _lines(text), OK if res.passed else VERIFY_FAILED)


# -- parser ---------------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="print a single JSON document")
    p.add_argument("--order", default=argparse.SUPPRESS,
                   help="monomial order (only 'lex' is supported)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="hilbpts", parents=[common],
                                     description="Exact computations on Hilbert schemes of points.")
    parser.add_argument("--version", action="version", version=f"hilbpts {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text, file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file", help="ideal file, or - for stdin")
        p.set_defaults(func=func)
        return p

    p = add("gb", cmd_gb, "reduced Groebner basis")
    p.add_argument("--syzygies", action="store_true", help="also print the syzygy basis")
    p = add("nf", cmd_nf, "normal form of a polynomial")
    p.add_argument("poly")
    add("colength", cmd_colength, "dimension of S/I")
    add("stdmon", cmd_stdmon, "standard monomials")
    p = add("eliminate", cmd_eliminate, "eliminate the top variables")
    p.add_argument("--keep", required=True, help="comma-separated lowest variables to keep")
    p = sub.add_parser("intersect", parents=[common], help="intersection of ideals")
    p.add_argument("files", nargs="+", help="ideal files; every ideal statement is used")
    p.set_defaults(func=cmd_intersect)
    p = add("saturate", cmd_saturate, "saturation I : f^infinity")
    p.add_argument("--by", required=True, help="polynomial f")
    add("radical", cmd_radical, "radical (monomial or zero-dimensional ideals)")
    add("decompose", cmd_decompose, "primary decomposition of a monomial ideal")
    add("primary-test", cmd_primary_test, "decide whether the ideal is primary")
    add("support", cmd_support, "rational support points with multiplicities")
    p = add("tangent", cmd_tangent, "tangent space Hom(I, S/I)")
    p.add_argument("--basis", action="store_true", help="print a basis")
    p.add_argument("--oracle", action="store_true", help="cross-check with the independent oracle")
    add("singular", cmd_singular, "compare the tangent dimension with l*d")
    add("germ", cmd_germ, "first-order germ of each family in the file")
    p = add("flat", cmd_flat, "fiber colengths of a family at sample values")
    p.add_argument("--samples", type=int, help="number of default samples to use")
    p.add_argument("--with-zero", action="store_true", help="also measure the fiber at 0")
    p = add("flat-limit", cmd_flat_limit, "flat limit of a one-parameter family")
    p.add_argument("--at", default="0", help="parameter value (default 0)")
    add("smooth", cmd_smooth, "smoothing chain of an ideal supported at the origin")
    p = add("embed", cmd_embed, "embed an ideal of colength l into l-1 variables")
    p.add_argument("--l", type=int, required=True)
    p = add("split-off", cmd_split_off, "family splitting points off (x_1..x_d)^2", file=False)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--at", default="1", help="value for every parameter in the printed fiber")
    p = add("certify", cmd_certify, "reducedness certificate from families through the ideal")
    p.add_argument("--families", help="family file; every ideal statement is one family")
    p.add_argument("--catalog", choices=["example1", "square"], help="built-in family catalog")
    p.add_argument("--require-certified", action="store_true", help="exit 1 unless CERTIFIED")
    p = add("criterion", cmd_criterion, "integrality test for a primary ideal at a point")
    p.add_argument("--point", required=True, help='coordinates, e.g. "0,0"')
    p = add("catalog", cmd_catalog, "print a built-in family catalog", file=False)
    p.add_argument("name", choices=["example1", "square"])
    p.add_argument("--d", type=int, default=3, help="number of variables for the square catalog")
    p = add("worked-examples", cmd_worked_examples, "run the built-in verification suite", file=False)
    p.add_argument("--expect", action="append", metavar="NAME=VALUE",
                   help="replace the expected value of one check (JSON or plain text)")
    return parser


def _emit(args, outcome):
    if getattr(args, "json", False):
        print(json.dumps(outcome.payload, indent=2, ensure_ascii=False))
    elif outcome.text:
        print(outcome.text)


def _emit_error(as_json, exc, code):
    if as_json:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)},
                          "exit_code": code}, indent=2))
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    as_json = getattr(args, "json", False)
    order = getattr(args, "order", "lex")
    if order != "lex":
        _emit_error(as_json, UsageError(f"unsupported monomial order {order!r}; only lex"), 2)
        return 2
    try:
        outcome = args.func(args)
    except HilbptsError as exc:
        _emit_error(as_json, exc, exc.exit_code)
        return exc.exit_code
    _emit(args, outcome)
    return outcome.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
