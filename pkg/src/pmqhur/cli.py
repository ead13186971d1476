"""
Command line front end ``pmqhur``.

Exit codes: 0 on success or a passing verdict, 1 on a failing verdict (invalid
table, Poincare property fails, point outside a neighbourhood), 2 on bad input
or a domain error.  ``--json`` switches every subcommand to machine-readable
output with sorted keys.

PMQ, pair and group arguments accept a JSON path or the name of a bundled
fixture (``free1``, ``trans3``, ``pair_trans3_s3``, ...).  Elements of the
completion are written as words with letters joined by ``.``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures
from .arrays import (
    array_from_dict,
    degeneracy_h,
    degeneracy_v,
    enumerate_cells,
    face_h,
    face_v,
    is_admissible,
    is_nondegenerate,
    total_product,
)
from .completion import complete, decompositions, hq_conj, hq_product
from .config import (
    act_left,
    act_right,
    cell_of,
    collide,
    config_from_dict,
    conj_global,
    covering_from_list,
    is_reduced,
    location_from_dict,
    neighborhood_contains,
    omega,
    omega_hat,
    reduce,
    upsilon,
)
from .errors import MalformedSpec, PmqhurError
from .homology import (
    build_total_complex,
    diagonal_oracle,
    homology,
    parse_ring,
    smith_normal_form,
)
from .pmq import (
    GroupSpec,
    PairSpec,
    PmqSpec,
    classify,
    norms_of,
    pmq_conj,
    pmq_product,
    sub_pmq_norm_le,
    validate_group,
    validate_pair,
    validate_pmq,
)
from .poincare import coconnectivity_probe, intrinsic_norm_check, poincare_report


class UsageError(Exception):
    pass


def _resolve(ref: str) -> Path:
    p = Path(ref)
    if p.exists():
        return p
    if ref in fixtures.PMQS or ref in fixtures.PAIRS:
        return fixtures.path(ref)
    raise UsageError(f"no such file or bundled fixture: {ref}")


def _read(ref: str) -> dict:
    path = _resolve(ref)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_pmq(args) -> PmqSpec:
    if getattr(args, "pmq", None):
        return PmqSpec.from_dict(_read(args.pmq))
    if getattr(args, "pair", None):
        return _load_pair(args).pmq
    raise UsageError("a --pmq (or --pair) argument is required")


def _load_pair(args) -> PairSpec:
    if not getattr(args, "pair", None):
        raise UsageError("a --pair argument is required")
    path = _resolve(args.pair)
    return PairSpec.from_dict(_read(args.pair), path.parent)


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _word_weight(spec: PmqSpec, h: dict, text: str) -> int:
    text = text.strip()
    if text in ("", "1", spec.unit):
        return 0
    total = 0
    for x in text.split("."):
        if x not in h:
            raise UsageError(f"unknown element {x!r}")
        total += h[x]
    return total


def _completion_for(spec: PmqSpec, words, explicit=None):
    if explicit is not None:
        return complete(spec, explicit)
    h = norms_of(spec)
    return complete(spec, sum(_word_weight(spec, h, w) for w in words))


# pmq-core --------------------------------------------------------------------


def cmd_validate(args) -> int:
    if args.pair:
        pair = _load_pair(args)
        violations = validate_pair(pair)
    elif args.group:
        violations = validate_group(GroupSpec.from_dict(_read(args.group)))
    else:
        violations = validate_pmq(_load_pmq(args))
    data = {"valid": not violations, "violations": [{"axiom": v.axiom, "witness": list(v.witness)}
                                                    for v in violations]}
    text = "valid" if not violations else "\n".join(f"violation: {v}" for v in violations)
    _emit(args, data, text)
    return 0 if not violations else 1


def cmd_classify(args) -> int:
    rep = classify(_load_pmq(args))
    lines = [f"augmented: {rep.augmented}", f"complete: {rep.complete}",
             f"locally_finite: {rep.locally_finite}"]
    if rep.norms is not None:
        lines += [f"h({a}) = {n}" for a, n in rep.norms.items()]
    if rep.cycle:
        lines.append("cycle: " + " -> ".join(rep.cycle))
    _emit(args, rep.to_dict(), "\n".join(lines))
    return 0


def cmd_subpmq(args) -> int:
    sub = sub_pmq_norm_le(_load_pmq(args), args.k)
    d = sub.to_dict()
    print(json.dumps(d, indent=2, sort_keys=True))
    return 0


def cmd_norm_check(args) -> int:
    ok, witness = intrinsic_norm_check(_load_pmq(args))
    text = "intrinsic norm: yes" if ok else f"intrinsic norm: no (witness {witness[0]}*{witness[1]} = {witness[2]})"
    _emit(args, {"intrinsic": ok, "witness": list(witness) if witness else None}, text)
    return 0 if ok else 1


def cmd_lookup(args) -> int:
    spec = _load_pmq(args)
    for x in (args.a, args.b):
        if x not in spec.elements:
            raise UsageError(f"unknown element {x!r}")
    if args.op == "product":
        v = pmq_product(spec, args.a, args.b)
    else:
        v = pmq_conj(spec, args.a, args.b)
    _emit(args, {"op": args.op, "a": args.a, "b": args.b, "value": v},
          "undefined" if v is None else v)
    return 0


# completion --------------------------------------------------------------------


def cmd_complete(args) -> int:
    tc = complete(_load_pmq(args), args.max_norm)
    rows = []
    for c in tc.classes:
        rows.append({"id": tc.format(c), "norm": c.norm, "size": len(tc.members(c)), "in_Q": c.in_q,
                     "members": [list(w) for w in tc.members(c)]})
    lines = [f"{'id':<24} {'norm':>4} {'size':>5}  in_Q"]
    for r in rows:
        lines.append(f"{r['id']:<24} {r['norm']:>4} {r['size']:>5}  {r['in_Q'] or '-'}")
        if args.members:
            lines += ["    " + ".".join(w) for w in r["members"]]
    lines.append(f"{len(rows)} classes up to norm {args.max_norm}")
    _emit(args, {"max_norm": args.max_norm, "classes": rows}, "\n".join(lines))
    return 0


def cmd_hq(args) -> int:
    spec = _load_pmq(args)
    words = [args.u] + ([args.v] if args.v is not None else [])
    tc = _completion_for(spec, words, args.max_norm)
    u = tc.parse(args.u)
    if args.op == "decompositions":
        ws = decompositions(tc, u)
        _emit(args, {"class": tc.format(u), "decompositions": [list(w) for w in ws]},
              "\n".join(".".join(w) if w else "()" for w in ws))
        return 0
    if args.v is None:
        raise UsageError(f"--v is required for {args.op}")
    v = tc.parse(args.v)
    res = hq_product(tc, u, v) if args.op == "product" else hq_conj(tc, u, v)
    _emit(args, {"op": args.op, "value": tc.format(res), "norm": res.norm, "in_Q": res.in_q},
          tc.format(res))
    return 0


# arrays ----------------------------------------------------------------------


def _component(args):
    spec = _load_pmq(args)
    tc = _completion_for(spec, [args.element], args.max_norm)
    a = tc.parse(args.element)
    return spec, tc, enumerate_cells(spec, tc, a)


def cmd_cells(args) -> int:
    _, tc, cells = _component(args)
    counts = cells.counts()
    data = {
        "element": tc.format(cells.component),
        "counts": [{"p": p, "q": q, "count": n} for (p, q), n in counts.items()],
        "total": len(cells),
        "admissible": sum(cells.admissible.values()),
    }
    lines = [f"({p},{q}): {n}" for (p, q), n in counts.items()]
    lines.append(f"total {len(cells)}, admissible {data['admissible']}")
    if args.list:
        data["cells"] = [dict(c.to_dict(), admissible=cells.admissible[c]) for c in cells]
        for c in cells:
            lines += ["", f"({c.p},{c.q}) {'adm' if cells.admissible[c] else 'nadm'}", c.render()]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_array(args) -> int:
    spec = _load_pmq(args)
    raw = _read_json_arg(args.array)
    words = [w for col in raw.get("entries", []) for w in col]
    tc = _completion_for(spec, words, args.max_norm)
    ua = array_from_dict(tc, raw)
    op = args.op
    if op == "nondegenerate":
        v = is_nondegenerate(ua)
        _emit(args, {"nondegenerate": v}, str(v).lower())
        return 0
    if op == "admissible":
        v = is_admissible(ua)
        _emit(args, {"admissible": v}, str(v).lower())
        return 0
    if op == "total":
        v = total_product(ua)
        _emit(args, {"total_product": tc.format(v)}, tc.format(v))
        return 0
    if args.index is None:
        raise UsageError(f"--index is required for {op}")
    fn = {"face-h": face_h, "face-v": face_v, "degeneracy-h": degeneracy_h,
          "degeneracy-v": degeneracy_v}[op]
    try:
        out = fn(ua, args.index)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, out.to_dict(), out.render())
    return 0


def _read_json_arg(text: str):
    """Inline JSON or a path to a JSON file."""
    t = text.strip()
    if t.startswith(("{", "[")):
        try:
            return json.loads(t)
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"inline JSON: {exc.msg}") from None
    try:
        return json.loads(Path(t).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {t}") from None
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"{t}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# homology --------------------------------------------------------------------


def _homology_text(res) -> str:
    lines = [f"{'degree':>6} {'rank':>5}  torsion"]
    for n, (r, t) in res.nonzero().items():
        lines.append(f"{n:>6} {r:>5}  {' '.join(map(str, t)) or '-'}")
    if not res.nonzero():
        lines.append("(all groups vanish)")
    return "\n".join(lines)


def cmd_homology(args) -> int:
    _, tc, cells = _component(args)
    ring = parse_ring(args.ring)
    cx = build_total_complex(cells, args.relative, ring)
    res = homology(cx)
    data = dict(res.to_dict(), element=tc.format(cells.component), relative=args.relative,
                basis={str(n): len(b) for n, b in cx.basis.items()})
    _emit(args, data, _homology_text(res))
    return 0


def cmd_oracle(args) -> int:
    _, tc, cells = _component(args)
    ring = parse_ring(args.ring)
    res = diagonal_oracle(cells, args.relative, ring)
    data = dict(res.to_dict(), element=tc.format(cells.component), relative=args.relative)
    _emit(args, data, _homology_text(res))
    return 0


def cmd_snf(args) -> int:
    m = _read_json_arg(args.matrix)
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise MalformedSpec("matrix must be a JSON list of rows")
    if len({len(r) for r in m}) > 1:
        raise MalformedSpec("matrix rows have different lengths")
    try:
        factors, rank = smith_normal_form([[int(x) for x in r] for r in m])
    except (TypeError, ValueError):
        raise MalformedSpec("matrix entries must be integers") from None
    _emit(args, {"factors": factors, "rank": rank},
          f"factors: {' '.join(map(str, factors)) or '-'}\nrank: {rank}")
    return 0


# poincare --------------------------------------------------------------------


def cmd_poincare(args) -> int:
    spec = _load_pmq(args)
    ring = parse_ring(args.ring)
    rep = poincare_report(spec, ring)
    lines = [f"{'element':<10} {'h':>2} {'cells':>6} {'degree':>6}  pass  connected"]
    for v in rep.verdicts:
        deg = "-" if v.concentrated is None else str(v.concentrated)
        lines.append(f"{v.element:<10} {v.norm:>2} {v.cells:>6} {deg:>6}  "
                     f"{'yes' if v.passes else 'no ':<4}  {'yes' if v.connected else 'no'}")
    if not rep.norm_is_intrinsic:
        a, b, ab = rep.witness
        lines.append(f"norm is not intrinsic: h({ab}) != h({a}) + h({b})")
    lines.append(f"POINCARE: {'yes' if rep.overall else 'no'}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return 0 if rep.overall else 1


def cmd_coconnect(args) -> int:
    rows = coconnectivity_probe(_load_pmq(args), parse_ring(args.ring))
    lines = [f"{'element':<10} {'h':>2} {'sub':>4} {'full':>4}  equal"]
    for r in rows:
        lines.append(f"{r.element:<10} {r.norm:>2} {r.rank_sub:>4} {r.rank_full:>4}  "
                     f"{'yes' if r.equal else 'no'}")
    _emit(args, {"rows": [r.to_dict() for r in rows]}, "\n".join(lines))
    return 0 if all(r.equal for r in rows) else 1


# configurations ----------------------------------------------------------------


def _fine_words(raw: dict) -> list:
    return [str(p["fine"]) for p in raw.get("points", []) if "fine" in p]


def _config_setup(args, *raws):
    pair = _load_pair(args) if args.pair else None
    spec = pair.pmq if pair else _load_pmq(args)
    words = [w for raw in raws for w in _fine_words(raw)]
    tc = _completion_for(spec, words, args.max_norm)
    return pair, spec, tc


def _config_out(args, c, extra=None) -> None:
    data = c.to_dict()
    if extra:
        data.update(extra)
    lines = [f"sites: {' '.join(f'({x},{y})' for x, y in data['sites']) or '-'}"]
    for p in data["points"]:
        kind = "fine" if "fine" in p else "coarse"
        lines.append(f"({p['x']}, {p['y']}) {kind} {p.get('fine', p.get('coarse'))}")
    _emit(args, data, "\n".join(lines))


def _targets(text) -> list:
    if text is None or not text.strip():
        return []
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad coordinate list {text!r}") from None


def _need(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for config {args.op}")
    return getattr(args, name)


def cmd_config(args) -> int:
    op = args.op
    if op == "upsilon":
        raw = _read_json_arg(_need(args, "location"))
        words = [w for col in raw.get("array", {}).get("entries", []) for w in col]
        spec = _load_pair(args).pmq if args.pair else _load_pmq(args)
        tc = _completion_for(spec, words, args.max_norm)
        loc = location_from_dict(raw, tc)
        _config_out(args, upsilon(loc, tc, raw.get("sites", [])))
        return 0
    if op == "in-neighborhood":
        base_raw = _read_json_arg(_need(args, "base"))
        cand_raw = _read_json_arg(_need(args, "cand"))
        pair, spec, tc = _config_setup(args, base_raw, cand_raw)
        base = config_from_dict(base_raw, tc, pair)
        cand = config_from_dict(cand_raw, tc, pair)
        cov = covering_from_list(_read_json_arg(_need(args, "cover")))
        inside = neighborhood_contains(base, cov, cand, pair, tc)
        _emit(args, {"contains": inside}, "inside" if inside else "outside")
        return 0 if inside else 1
    raw = _read_json_arg(_need(args, "config"))
    pair, spec, tc = _config_setup(args, raw)
    c = config_from_dict(raw, tc, pair)
    if op == "omega":
        if pair is None:
            raise UsageError("config omega needs --pair")
        g = omega(c, pair)
        _emit(args, {"omega": g}, g)
    elif op == "omega-hat":
        v = omega_hat(c, tc)
        _emit(args, {"omega_hat": tc.format(v), "norm": v.norm}, tc.format(v))
    elif op == "cell-of":
        loc = cell_of(c, tc)
        _emit(args, loc.to_dict(),
              f"bidegree ({loc.ua.p},{loc.ua.q})\nus: {' '.join(map(str, loc.us)) or '-'}\n"
              f"ut: {' '.join(map(str, loc.ut)) or '-'}\n{loc.ua.render()}")
    elif op == "collide":
        _config_out(args, collide(c, _targets(args.us), _targets(args.ut), tc))
    elif op in ("conj", "act-left", "act-right"):
        if pair is None:
            raise UsageError(f"config {op} needs --pair")
        g = _need(args, "g")
        if g not in pair.group.elements:
            raise UsageError(f"unknown group element {g!r}")
        fn = {"conj": conj_global, "act-left": act_left, "act-right": act_right}[op]
        _config_out(args, fn(c, g, pair))
    elif op == "reduce":
        _config_out(args, reduce(c), {"was_reduced": is_reduced(c)})
    return 0


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pmqhur", description="Partially multiplicative quandles and Hurwitz-space cell complexes.")
    sub = ap.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, fn, help_, pmq=True, pair=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if pmq:
            sp.add_argument("--pmq", help="PMQ JSON file or bundled fixture name")
        if pair:
            sp.add_argument("--pair", help="PMQ-group pair JSON file or bundled fixture name")
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "check PMQ, group or pair axioms", pair=True)
    sp.add_argument("--group", help="group JSON file")

    add("classify", cmd_classify, "augmented / complete / locally finite, norms")

    sp = add("subpmq", cmd_subpmq, "sub-PMQ of elements with norm <= k")
    sp.add_argument("--k", type=int, required=True)

    add("norm-check", cmd_norm_check, "is the decomposition norm additive")

    sp = add("lookup", cmd_lookup, "table lookup of a product or conjugate")
    sp.add_argument("--op", choices=["product", "conj"], required=True)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("complete", cmd_complete, "completion classes up to a norm bound")
    sp.add_argument("--max-norm", type=int, required=True)
    sp.add_argument("--members", action="store_true", help="list member words")

    sp = add("hq", cmd_hq, "product, conjugation and decompositions in the completion")
    sp.add_argument("--op", choices=["product", "conj", "decompositions"], required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--v")
    sp.add_argument("--max-norm", type=int)

    def component(sp):
        sp.add_argument("--element", required=True, help="word, letters joined by '.'")
        sp.add_argument("--max-norm", type=int, help="truncation bound (default: norm of the element)")

    sp = add("cells", cmd_cells, "non-degenerate arrays with a given total product")
    component(sp)
    sp.add_argument("--list", action="store_true", help="print every cell")

    sp = add("array", cmd_array, "faces, degeneracies and predicates of one array")
    sp.add_argument("--array", required=True, help='inline JSON or file: {"p":..,"q":..,"entries":[[col0 bottom..top],..]}')
    sp.add_argument("--op", required=True, choices=["nondegenerate", "admissible", "total", "face-h",
                                                     "face-v", "degeneracy-h", "degeneracy-v"])
    sp.add_argument("--index", type=int)
    sp.add_argument("--max-norm", type=int)

    for name, fn, help_ in (("homology", cmd_homology, "homology of the total complex"),
                            ("oracle", cmd_oracle, "homology through the diagonal simplicial set")):
        sp = add(name, fn, help_)
        component(sp)
        sp.add_argument("--ring", default="Z", help="Z, Q or Fp")
        sp.add_argument("--relative", action="store_true", help="relative to the non-admissible cells")

    sp = add("snf", cmd_snf, "Smith normal form of an integer matrix", pmq=False)
    sp.add_argument("--matrix", required=True, help="inline JSON list of rows or a file")

    sp = add("poincare", cmd_poincare, "Poincare verdict per non-unit element")
    sp.add_argument("--ring", default="Z")

    sp = add("coconnect", cmd_coconnect, "top-degree ranks for Q<=1 against Q")
    sp.add_argument("--ring", default="Z")

    sp = add("config", cmd_config, "operations on labelled configurations", pair=True)
    sp.add_argument("op", choices=["omega", "omega-hat", "cell-of", "upsilon", "collide", "conj",
                                   "act-left", "act-right", "reduce", "in-neighborhood"])
    sp.add_argument("--config", help="configuration JSON (inline or file)")
    sp.add_argument("--location", help="cell location JSON for upsilon")
    sp.add_argument("--base", help="base configuration for in-neighborhood")
    sp.add_argument("--cand", help="candidate configuration for in-neighborhood")
    sp.add_argument("--cover", help="rectangles [[x0,x1,y0,y1],...] for in-neighborhood")
    sp.add_argument("--us", help="comma-separated x targets for collide")
    sp.add_argument("--ut", help="comma-separated y targets for collide")
    sp.add_argument("--g", help="group element")
    sp.add_argument("--max-norm", type=int)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PmqhurError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> int:
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
