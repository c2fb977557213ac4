"""Command-line front end.

Results are written to stdout as JSON with sorted keys.  Exit status is 0 on
success, 1 on a domain error and 2 on a parse error.  Tuples that start with a
negative number go after a literal ``--``, e.g. ``qplink rational lens -- -2,-2``.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path
from typing import Callable

from . import braid_core as bc
from . import catalog, covers, diagram, garside, pretzel, rational, tree
from .errors import DomainError, ParseError, QplinkError


def _ints(parts: list[str] | str) -> tuple[int, ...]:
    if isinstance(parts, str):
        parts = [parts]
    text = ",".join(parts).replace("−", "-")
    try:
        return tuple(int(tok) for tok in text.replace(" ", ",").split(",") if tok.strip())
    except ValueError as exc:
        raise ParseError(f"expected a comma-separated integer tuple, got {text!r}") from exc


def _json_payload(source: str):
    """Inline JSON, or a path to a JSON file."""
    text = source.strip()
    if not text.startswith(("[", "{")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {source!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {source!r}: {exc.msg}") from exc


def _brep(source: str) -> bc.BandRepresentation:
    return bc.BandRepresentation.from_json(_json_payload(source))


def _braid(text: str, strands: int | None) -> bc.BraidWord:
    return bc.parse_braid(text, strands)


# -------------------------------------------------------------- subcommands

def _braid_cmd(a) -> tuple[dict, str]:
    if a.op == "equal":
        x, y = _braid(a.words[0], a.strands), _braid(a.words[1], a.strands)
        n = max(x.strands, y.strands)
        x, y = bc.BraidWord(n, x.letters), bc.BraidWord(n, y.letters)
        eq = garside.braids_equal(x, y)
        return {"equal": eq}, f"braids are {'equal' if eq else 'different'} in B_{n}"
    if len(a.words) != 1:
        raise ParseError(f"braid {a.op} takes exactly one word")
    w = _braid(a.words[0], a.strands)
    if a.op == "normal-form":
        nf = garside.normal_form(w)
        return {"strands": w.strands, **nf.to_json()}, f"inf={nf.inf}, {len(nf.factors)} simple factors"
    if a.op == "perm":
        p = bc.permutation(w)
        return {"image": list(p.image), "cycles": [list(c) for c in p.cycles()]}, f"{len(p.cycles())} closure components"
    e = bc.exponent_sum(w)
    return {"exponent_sum": e}, f"exponent sum {e}"


def _brep_cmd(a) -> tuple[dict, str]:
    b = _brep(a.brep)
    if a.op == "product":
        w = bc.brep_product(b)
        return {"strands": w.strands, "word": w.to_ints(), "text": str(w)}, f"product has {len(w)} letters"
    if a.op == "chi":
        s = bc.braided_surface(b)
        return s.to_json(), f"chi={s.total_euler}, {len(s.components)} component(s)"
    if a.op == "cable":
        c = bc.cable_band_rep(b, a.n)
        return {"strands": c.strands, "bands": c.to_json()}, f"{len(c)} bands on {c.strands} strands"
    if a.band is None:
        raise ParseError("brep append needs --band")
    raw = _json_payload(a.band)
    try:
        extra = bc.band(b.strands, raw["conjugator"], int(raw["index"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed band: {exc}") from exc
    c = bc.append_band(b, extra)
    return {"strands": c.strands, "bands": c.to_json()}, f"{len(c)} bands"


def _diagram_input(a) -> diagram.PDDiagram:
    given = [x for x in (a.pd, a.pretzel, a.rational) if x is not None]
    if len(given) != 1:
        raise ParseError("give exactly one of --pd, --pretzel, --rational")
    if a.pd is not None:
        return diagram.PDDiagram.from_json(_json_payload(a.pd))
    if a.pretzel is not None:
        return diagram.pretzel_diagram(_ints(a.pretzel))
    return diagram.four_plat_diagram(_ints(a.rational))


def _diagram_cmd(a) -> tuple[dict, str]:
    d = _diagram_input(a)
    if a.op == "determinant":
        det = diagram.link_determinant(d)
        return {"determinant": det}, f"determinant {det}"
    if a.op == "positive-orientation":
        o = diagram.find_positive_orientation(d)
        out = {"orientation": None if o is None else list(o.bits), "components": d.component_count}
        return out, "no positive orientation" if o is None else "positive orientation found"
    bits = _ints(a.orientation) if a.orientation else (0,) * len(d.components())
    s = diagram.seifert_algorithm(d, diagram.OrientationAssignment(bits))
    return s.to_json(), f"{s.seifert_circles} Seifert circles, chi={s.euler}"


def _rational_cmd(a) -> tuple[dict, str]:
    r = rational.RationalTuple(_ints(a.tuple))
    if a.op == "lens":
        ls = rational.lens_space(r)
        return {"P": ls.P, "Q": ls.Q}, f"L({ls.P},{ls.Q})"
    if a.op == "machine":
        acc, sub = rational.machine_accepts(r), rational.submachine_accepts(r)
        return {"accepts": acc, "submachine_accepts": sub}, f"machine {'accepts' if acc else 'rejects'}"
    cls = rational.stick_classify(r)
    return {"class": cls.value}, cls.value


def _pretzel_cmd(a) -> tuple[dict, str]:
    t = _ints(a.tuple)
    if a.op == "brieskorn":
        if len(t) != 3:
            raise ParseError("brieskorn takes three exponents l,m,n")
        eps = pretzel.brieskorn_check(*t)
        return {"eps": eps}, "no match" if eps is None else f"eps={eps}"
    if a.op == "seifert":
        sd = pretzel.seifert_data(t)
        return sd.to_json(), sd.notation
    c = pretzel.classify(t)
    out = c.to_json()
    out["seifert"] = pretzel.seifert_data(t).to_json() if 0 not in t else None
    return out, "unknown" if c.unknown else "classified"


def _tree_cmd(a) -> tuple[dict, str]:
    t = tree.parse_tree(a.expr)
    if a.op == "classify":
        c = tree.classify(t)
        return c.to_json(), "unknown" if c.unknown else "strongly quasipositive"
    cert = tree.sqp_by_transplant(t)
    return {"certificate": None if cert is None else cert.to_json()}, \
        "no transplant certificate" if cert is None else "transplant certificate found"


def _hopf_cmd(a) -> tuple[dict, str]:
    h = catalog.parse_hopf(",".join(a.spec))
    if a.op == "canonical":
        c = catalog.hopf_canonical(h)
        return c.to_json(), str(c)
    c = catalog.hopf_classify(h)
    return c.to_json(), str(c.canonical)


def _lambda_cmd(a) -> tuple[dict, str]:
    v = catalog.lambda_hminus(a.p, a.q)
    return {"lambda": v}, f"lambda(H-({a.p},{a.q})) = {v}"


def _enhance_cmd(a) -> tuple[dict, str]:
    values = _ints(a.value)
    if len(values) != 1:
        raise ParseError("enhance realize takes one integer")
    r = catalog.realize_enhancement(values[0])
    return r.to_json(), f"H-({r.q + 1},{r.q}) # {r.m} x H-(2,1)"


def _cover_cmd(a) -> tuple[dict, str]:
    tags = tuple(a.tag or ())
    if a.op == "double":
        given = [(k, v) for k, v in (("pretzel", a.pretzel), ("rational", a.rational), ("tree", a.tree)) if v]
        if len(given) != 1:
            raise ParseError("give exactly one of --pretzel, --rational, --tree")
        kind, v = given[0]
        fd = {"pretzel": lambda: covers.Pretzel(_ints(v)), "rational": lambda: covers.Rational(_ints(v)),
              "tree": lambda: covers.Tree(v)}[kind]()
        out = covers.double_branched_cover_report(fd)
        return out, out["manifold"]["kind"]
    if a.op == "infinity":
        m = covers.link_at_infinity_product(a.g)
        return {"manifold": m.to_json(), "singularity_excluded": covers.singularity_excluded(m)}, m.KIND
    if a.op == "exterior-double":
        rep = _brep(a.brep) if a.brep else None
        d = covers.double_of_exterior(a.route, tb=a.tb, rep=rep, label=a.label, provenance=tags)
        return d.to_json(), f"C-span chi={d.cspan_euler}"
    if not a.brep:
        raise ParseError(f"cover {a.op} needs --brep")
    b = _brep(a.brep)
    d = covers.cyclic_suspension(b, a.q, tags) if a.op == "suspend" else covers.dummy_suspension(b, tags)
    return d.to_json(), f"C-span chi={d.cspan_euler}"


# ---------------------------------------------------------------- parser

def _tuple_arg(p: argparse.ArgumentParser, help: str = "comma-separated integers; put '--' before a negative tuple") -> None:
    p.add_argument("tuple", nargs="+", help=help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qplink", description="Quasipositivity toolkit for braids, links and 3-manifolds.")
    parser.add_argument("--quiet", action="store_true", help="suppress the human-readable line on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("braid", help="braid words")
    p.add_argument("op", choices=["normal-form", "equal", "perm", "esum"])
    p.add_argument("words", nargs="+", help="'s1 s2^-1' or '1,-2'")
    p.add_argument("--strands", type=int)
    p.set_defaults(func=_braid_cmd)

    p = sub.add_parser("brep", help="band representations")
    p.add_argument("op", choices=["product", "chi", "cable", "append"])
    p.add_argument("brep", help="JSON file or inline JSON")
    p.add_argument("-n", type=int, default=2, help="cable multiplicity")
    p.add_argument("--band", help="band to append as JSON {conjugator, index}")
    p.set_defaults(func=_brep_cmd)

    p = sub.add_parser("diagram", help="planar diagrams")
    p.add_argument("op", choices=["seifert", "positive-orientation", "determinant"])
    p.add_argument("--pd", help="PD JSON file or inline JSON")
    p.add_argument("--pretzel", help="pretzel tuple, e.g. --pretzel=-1,-1,-1")
    p.add_argument("--rational", help="4-plat tuple, e.g. --rational=-2,-2")
    p.add_argument("--orientation", help="0/1 bit per component for seifert")
    p.set_defaults(func=_diagram_cmd)

    p = sub.add_parser("rational", help="rational links")
    p.add_argument("op", choices=["lens", "machine", "classify"])
    _tuple_arg(p)
    p.set_defaults(func=_rational_cmd)

    p = sub.add_parser("pretzel", help="pretzel links")
    p.add_argument("op", choices=["classify", "seifert", "brieskorn"])
    _tuple_arg(p)
    p.set_defaults(func=_pretzel_cmd)

    p = sub.add_parser("tree", help="weighted planar trees")
    p.add_argument("op", choices=["classify", "transplant"])
    p.add_argument("--expr", required=True, help="s-expression such as '(-2 (-2) (-2 (-2)))'")
    p.set_defaults(func=_tree_cmd)

    p = sub.add_parser("hopf", help="reoriented Hopf links H+-(p,q)")
    p.add_argument("op", choices=["classify", "canonical"])
    p.add_argument("spec", nargs="+", help="sign,p,q such as -,3,2")
    p.set_defaults(func=_hopf_cmd)

    p = sub.add_parser("lambda", help="enhancement of H-(p,q)")
    p.add_argument("op", choices=["hminus"])
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_lambda_cmd)

    p = sub.add_parser("enhance", help="realize an enhancement value")
    p.add_argument("op", choices=["realize"])
    p.add_argument("value", nargs="+")
    p.set_defaults(func=_enhance_cmd)

    p = sub.add_parser("cover", help="3-dimensional transverse C-links")
    p.add_argument("op", choices=["double", "suspend", "dummy", "exterior-double", "infinity"])
    p.add_argument("g", nargs="?", type=int, default=1, help="genus for 'infinity'")
    p.add_argument("--pretzel")
    p.add_argument("--rational")
    p.add_argument("--tree")
    p.add_argument("--brep", help="band representation JSON file or inline JSON")
    p.add_argument("-q", type=int, default=2, help="suspension degree")
    p.add_argument("--route", choices=["cable", "annulus"], default="annulus")
    p.add_argument("--tb", type=int, help="maximal Thurston-Bennequin number of the knot")
    p.add_argument("--label", default="K")
    p.add_argument("--tag", action="append", choices=list(covers.PROVENANCE_TAGS))
    p.set_defaults(func=_cover_cmd)

    p = sub.add_parser("batch", help="run one invocation per line, NDJSON out")
    p.add_argument("file")
    p.set_defaults(func=None)
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _execute(argv: list[str]) -> tuple[int, dict, str]:
    """Run one non-batch invocation; never raises on user errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return code, {"error": "invalid command line", "type": "parse"}, ""
    if args.func is None:
        return 2, {"error": "batch cannot be nested", "type": "parse"}, ""
    handler: Callable = args.func
    try:
        result, echo = handler(args)
    except ParseError as exc:
        return 2, {"error": str(exc), "type": "parse"}, ""
    except (DomainError, QplinkError) as exc:
        return 1, {"error": str(exc), "type": "domain"}, ""
    return 0, result, echo


def _batch(path: str, quiet: bool) -> int:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        print(f"qplink: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return 2
    for line in lines:
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            argv = shlex.split(line)
        except ValueError as exc:
            print(_dump({"error": f"cannot split line: {exc}", "type": "parse", "exit": 2}))
            continue
        code, result, _ = _execute(["--quiet", *argv])
        if code:
            result = {**result, "exit": code}
        print(_dump(result))
    if not quiet:
        print(f"qplink: processed {path}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "batch":
        return _batch(args.file, args.quiet)
    code, result, echo = _execute(argv)
    print(_dump(result))
    if code:
        print(f"qplink: {result['error']}", file=sys.stderr)
    elif not args.quiet and echo:
        print(f"qplink: {echo}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
