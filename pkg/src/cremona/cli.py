"""Command-line front end.  Every command prints one canonical JSON document.

Exit codes: 0 on success, 1 for computational or input errors (with an
``{"error": ...}`` document), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cremaps, dyngrowth, foliate, grouptools
from .bsurface import (
    bk_char_poly,
    bk_matrix,
    bk_pic_matrix,
    char_poly,
    dominant_root,
    orbit_hits_m,
    periodic_count,
    salem_pisot_classify,
    tau_pic_example,
    to_total_basis,
)
from .bsurface.roots import Enclosure
from .errors import CremonaError, InconclusiveHorizon, ParseError
from .exactpoly.parse import parse_components, parse_poly
from .exactpoly.poly import HomogPoly, Poly


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Enclosure):
        return obj.to_json()
    if isinstance(obj, Poly):
        return obj.to_str()
    if isinstance(obj, cremaps.RationalMapP2):
        return obj.to_str()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def _text(args, attr: str = "map") -> str:
    path = getattr(args, "file", None)
    if path:
        return Path(path).read_text().strip()
    value = getattr(args, attr, None)
    if value is None:
        raise ParseError("no input: pass -m TEXT or -f PATH", 0)
    return value


# report builders --------------------------------------------------------------


def indeterminacy_report(f: cremaps.RationalMapP2) -> dict:
    ind = cremaps.indeterminacy(f)
    return {"points": [list(p) for p in ind.rational_points], "algebraic_count": ind.algebraic_count,
            "count": ind.total_distinct}


def exceptional_report(f: cremaps.RationalMapP2) -> dict:
    ex = cremaps.exceptional(f)
    return {
        "jacobian": ex.jacobian,
        "factors": [{"curve": e.curve, "multiplicity": e.multiplicity,
                     "image": list(e.image) if e.image is not None else None} for e in ex.entries],
    }


def degseq_report(f: cremaps.RationalMapP2, n: int) -> dict:
    seq = dyngrowth.degree_sequence(f, n)
    cert = dyngrowth.is_algebraically_stable(seq, n)
    out = {"degrees": list(seq.degrees), "algebraically_stable": cert.stable,
           "first_failure": cert.first_failure}
    try:
        g = dyngrowth.growth_classify(seq)
        out["growth_class"] = {"tag": g.tag, "evidence": g.evidence}
    except InconclusiveHorizon as exc:
        out["growth_class"] = {"tag": "INCONCLUSIVE", "reason": str(exc)}
    if n >= 4:
        est = dyngrowth.dyn_degree_estimate(seq)
        out["dyn_degree_estimate"] = {"value": round(est.value, 12), "exact": est.exact,
                                      "tends_to_one": est.tends_to_one, "method": est.method}
    return out


def cmd_analyze(args) -> dict:
    text = _text(args)
    f = cremaps.parse_map(text)
    out = {"input_echo": text, "map": f, "degree": f.degree,
           "indeterminacy": indeterminacy_report(f), "exceptional": exceptional_report(f)}
    if args.classify:
        out["quadratic_class"] = cremaps.classify_quadratic(f)
    if args.degseq:
        out.update(degseq_report(f, args.degseq))
    return out


def cmd_compose(args) -> dict:
    if len(args.map) != 2:
        raise ParseError("compose needs exactly two -m maps (outer first)", 0)
    f, g = (cremaps.parse_map(t) for t in args.map)
    h = cremaps.compose(f, g)
    return {"input_echo": args.map, "composite": h, "degree": h.degree}


def cmd_degseq(args) -> dict:
    text = _text(args)
    f = cremaps.parse_map(text)
    return {"input_echo": text, "degree": f.degree, **degseq_report(f, args.n)}


def cmd_classify(args) -> dict:
    text = _text(args)
    f = cremaps.parse_map(text)
    return {"input_echo": text, "degree": f.degree, "quadratic_class": cremaps.classify_quadratic(f),
            "indeterminacy": indeterminacy_report(f)}


_NAMED_WORDS = {"rho": (cremaps.RHO_WORD, cremaps.rho), "tau": (cremaps.TAU_WORD, cremaps.tau),
                "cubic": (cremaps.CUBIC_WORD, cremaps.cubic_target)}


def cmd_word_expand(args) -> dict:
    if args.named:
        word, target = _NAMED_WORDS[args.named]
        target = target()
    else:
        word, target = cremaps.parse_word(_text(args, "word")), None
    f = cremaps.expand_word(word)
    out = {"word": word.to_str(), "expanded": f, "degree": f.degree,
           "sigma_count": sum(1 for l in word.letters if l == cremaps.SIGMA)}
    if target is not None:
        out["target"] = target
        out["matches_target"] = cremaps.projectively_equal(f, target)
    return out


def cmd_foliation(args) -> dict:
    text = _text(args)
    f = cremaps.parse_map(text)
    form = foliate.foliation_of_map(f)
    sing = foliate.singular_points(form)
    out = {"input_echo": text, "coefficients": list(form.coefficients), "degree": form.degree,
           "euler_identity": form.euler_holds(),
           "singular_points": {"rational": [list(p) for p in sing.rational_points],
                               "algebraic_count": sing.algebraic_count, "distinct": sing.distinct,
                               "expected_weighted": sing.expected, "status": sing.status}}
    split = foliate.split_singular_points(f, sing)
    out["fixed"] = {"rational": [list(p) for p in split.fixed_rational], "count": split.fixed_count}
    out["indeterminate"] = {"rational": [list(p) for p in split.indeterminate_rational],
                            "count": split.indeterminate_count}
    return out


def cmd_pic_tau(args) -> dict:
    ex = tau_pic_example()
    m, lat, tower = ex["matrix"], ex["lattice"], ex["tower"]
    total = to_total_basis(m, tower)
    return {
        "tower": tower.to_dict(),
        "vanishing_orders": list(ex["orders"]),
        "theta": str(ex["theta"]),
        "matrix": m.as_lists(),
        "strict_gram": [list(r) for r in lat.gram],
        "squares_to_identity": m.power(2).rows == tuple(tuple(int(i == j) for j in range(4)) for i in range(4)),
        "preserves_strict_form": m.preserves_form(),
        "total_basis_matrix": total.as_lists(),
        "total_basis_preserves_form": total.preserves_form(),
        "char_poly": list(char_poly(m)),
        "periodic_counts": {str(n): periodic_count(m, n) for n in range(1, args.periods + 1)},
    }


def cmd_bk(args) -> dict:
    n = args.n
    m = bk_pic_matrix(n)
    cp = bk_char_poly(n)
    cls = salem_pisot_classify(cp)
    out = {
        "n": n,
        "char_poly": list(cp),
        "pic_matrix": m.as_lists(),
        "pic_matrix_char_poly_matches": char_poly(m) == cp,
        "preserves_form": m.preserves_form(),
        "dominant_root": cls.dominant_root,
        "classification": cls.tag,
        "reciprocal": cls.reciprocal,
        "base_matrix": bk_matrix().as_lists(),
        "base_char_poly": list(char_poly(bk_matrix())),
    }
    if args.a is not None and args.b is not None:
        out["orbit_test"] = {"a": Fraction(args.a), "b": Fraction(args.b),
                             "orbit_reaches_m": orbit_hits_m(args.a, args.b, n)}
    return out


def _parse_coeffs(text: str) -> list[int]:
    s = text.strip()
    if any(ch.isalpha() for ch in s):
        p = parse_poly(s, ("t",))
        d = p.total_degree()
        coeffs = [p.terms.get((k,), 0) for k in range(d, -1, -1)]
    else:
        coeffs = [Fraction(c.strip()) for c in s.strip("[]").split(",") if c.strip()]
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            raise ParseError(f"coefficient {c} is not an integer", 0)
        out.append(int(c))
    return out


def cmd_salem(args) -> dict:
    coeffs = _parse_coeffs(args.poly)
    cls = salem_pisot_classify(coeffs, strict=args.strict)
    return {"poly": list(coeffs), "classification": cls.tag, "dominant_root": cls.dominant_root,
            "reciprocal": cls.reciprocal, "strict": args.strict,
            "root_moduli": [round(v, 12) for v in cls.moduli]}


def cmd_pingpong(args) -> dict:
    inst = grouptools.PingPongInstance.parabolic(args.k)
    cert = grouptools.pingpong_certify(inst)
    out = {"k": args.k, "verdict": cert.verdict, "reason": cert.reason, "witness": cert.witness}
    if cert:
        out["word_sanity"] = grouptools.random_word_sanity(inst, args.max_len, args.trials)
    elif cert.witness:
        out["witness_evaluates_to_identity"] = inst.evaluate(cert.witness) == ((1, 0), (0, 1))
    return out


def cmd_jung(args) -> dict:
    text = _text(args)
    p, q = parse_components(text, 2, ("x", "y"))
    f = grouptools.PolyAut(Poly(p.terms, 2), Poly(q.terms, 2))
    word = grouptools.jung_decompose(f)
    return {"input_echo": text, "degree": f.degree, "jacobian": f.jacobian_det,
            "letters": [{"kind": k, "map": l.to_str()} for k, l in zip(word.kinds, word.letters)],
            "length": word.length, "henon_type": grouptools.is_henon_type(f),
            "cyclic_length": grouptools.cyclic_reduce(word).length}


def cmd_homaloidal(args) -> dict:
    mults = [int(m) for m in args.mults.replace(" ", "").split(",") if m]
    return {"n": args.n, "mults": mults, "sum": sum(mults), "sum_squares": sum(m * m for m in mults),
            "homaloidal": cremaps.homaloidal_check(args.n, mults)}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cremona", description="Exact computations with plane birational maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_map(p, repeat=False):
        if repeat:
            p.add_argument("-m", "--map", action="append", required=True, help="map text, e.g. '(y*z:x*z:x*y)'")
        else:
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("-m", "--map", help="map text, e.g. '(y*z:x*z:x*y)'")
            g.add_argument("-f", "--file", help="read the map text from a file")
        return p

    p = with_map(sub.add_parser("analyze", help="degree, indeterminacy and exceptional locus"))
    p.add_argument("--classify", action="store_true", help="add the quadratic class")
    p.add_argument("--degseq", type=int, metavar="N", help="add degrees of the first N iterates")
    p.set_defaults(run=cmd_analyze)

    p = with_map(sub.add_parser("compose", help="f o g for two maps"), repeat=True)
    p.set_defaults(run=cmd_compose)

    p = with_map(sub.add_parser("degseq", help="degrees of iterates"))
    p.add_argument("-n", type=int, default=dyngrowth.DEFAULT_HORIZON)
    p.set_defaults(run=cmd_degseq)

    p = with_map(sub.add_parser("classify-quadratic", help="shape of a quadratic map"))
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("word-expand", help="expand a word in sigma and linear letters")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-w", "--word", help="letters separated by ';', e.g. 'sigma; [[0,1,0],[1,0,0],[0,0,1]]'")
    g.add_argument("-f", "--file")
    g.add_argument("--named", choices=sorted(_NAMED_WORDS))
    p.set_defaults(run=cmd_word_expand)

    p = with_map(sub.add_parser("foliation", help="the foliation attached to a map"))
    p.set_defaults(run=cmd_foliation)

    p = sub.add_parser("pic-tau-example", help="lattice action of tau on its resolution")
    p.add_argument("--periods", type=int, default=4)
    p.set_defaults(run=cmd_pic_tau)

    p = sub.add_parser("bk", help="quadratic family with an orbit of length n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.set_defaults(run=cmd_bk)

    p = sub.add_parser("salem", help="Salem/Pisot test for a monic integer polynomial")
    p.add_argument("--poly", required=True, help="'t^3 - t - 1' or descending coefficients '1,0,-1,-1'")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(run=cmd_salem)

    p = sub.add_parser("pingpong", help="freeness of <[[1,k],[0,1]], [[1,0],[k,1]]>")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(run=cmd_pingpong)

    p = sub.add_parser("jung", help="Jung decomposition of a plane polynomial automorphism")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", "-m", help="'(p : q)' in x and y")
    g.add_argument("-f", "--file")
    p.set_defaults(run=cmd_jung)

    p = sub.add_parser("homaloidal", help="check the homaloidal identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mults", required=True, help="comma-separated multiplicities")
    p.set_defaults(run=cmd_homaloidal)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.run(args)
    except CremonaError as exc:
        print(dumps({"error": {"code": exc.code, "type": type(exc).__name__, "message": str(exc)}}))
        return 1
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(dumps({"error": {"code": "invalid_input", "type": type(exc).__name__, "message": str(exc)}}))
        return 1
    print(dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
