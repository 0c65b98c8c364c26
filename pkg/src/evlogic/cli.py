"""Command line front end.

Exit codes: 0 verdict produced (and positive), 1 negative verdict or
counterexample, 2 usage or input error.  ``--format json`` output carries
``"version": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formula as F
from .dynamics import add_evidence, add_evidence_closed, harmony_masks
from .model import GeneralModel, ModelBounds, ModelError, load, save, sorted_labels, validate
from .morphism import check_pmorphism, find_surjective_pmorphism, is_surjective, load_map
from .representation import build_concise_representation, build_flat_representation, filtrate, verify_representation
from .scenario import derived_belief, derived_plausibility, relative_scenarios
from .semantics import EvalContext, truth_mask
from .validity import REGISTRY, check_axiom, check_rule, worked_examples

JSON_VERSION = 1


class UsageError(Exception):
    pass


def _out(args, text: str = "", data: dict | None = None) -> None:
    if getattr(args, "format", "text") == "json" and data is not None:
        print(json.dumps({"version": JSON_VERSION, **data}, indent=2, default=_jsonable))
    else:
        print(text)


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted_labels(x)
    return str(x)


def _model(args, path=None):
    return load(path or args.model, strict=getattr(args, "strict", False))


def _formula(text: str) -> F.Formula:
    return F.parse(text)


def _ctx(args, m) -> EvalContext:
    mode = getattr(args, "mode", None) or ("explicit" if isinstance(m, GeneralModel) else "intended")
    return EvalContext(m, mode)


def _world(m, ident: str):
    for w in m.worlds:
        if str(w) == str(ident):
            return w
    raise ModelError(f"unknown world {ident!r}")


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(w) for w in sorted_labels(s)) + "}"


def _fmt_rel(pairs) -> str:
    return ", ".join(f"({a},{b})" for a, b in sorted(pairs, key=lambda p: (str(p[0]), str(p[1]))))


# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    m = _model(args)
    f = _formula(args.formula)
    ctx = _ctx(args, m)
    ts = m.world_set(truth_mask(ctx, f))
    data = {"formula": F.render(f), "mode": ctx.mode, "truth_set": ts}
    if args.world is not None:
        w = _world(m, args.world)
        ok = w in ts
        data["world"] = w
        data["value"] = ok
        _out(args, f"{'true' if ok else 'false'} at {w}", data)
        return 0 if ok else 1
    ok = len(ts) == len(m.worlds)
    data["valid"] = ok
    _out(args, "true at all worlds" if ok else f"true exactly at {_fmt_set(ts)}", data)
    return 0 if ok else 1


def cmd_classify(args) -> int:
    m = _model(args)
    gm = m if isinstance(m, GeneralModel) else m.lifted
    rep = validate(gm)
    lines = [f"valid model: {'yes' if rep.is_valid_model else 'no'}"]
    if not isinstance(m, GeneralModel):
        lines[0] += " (relations derived from evidence)"
    for v in rep.violations[:20]:
        lines.append("  violation: " + " ".join(map(str, v)))
    lines.append("classes: " + (", ".join(rep.classes()) or "none"))
    _out(args, "\n".join(lines), {"valid": rep.is_valid_model, "violations": rep.violations,
                                  "flat": rep.is_flat, "uniform": rep.is_uniform, "concise": rep.is_concise})
    return 0 if rep.is_valid_model else 1


def cmd_scenarios(args) -> int:
    m = _model(args)
    w = _world(m, args.world)
    restriction = m.worlds
    if args.relative_to:
        restriction = m.world_set(truth_mask(_ctx(args, m), _formula(args.relative_to)))
    scen = relative_scenarios(m, w, restriction)
    lines, data = [], []
    for s in scen:
        fam = sorted((_fmt_set(x) for x in s.family))
        lines.append(f"family [{', '.join(fam)}]  intersection {_fmt_set(s.intersection)}")
        data.append({"family": [sorted_labels(x) for x in s.family], "intersection": s.intersection})
    _out(args, "\n".join(lines), {"world": w, "scenarios": data})
    return 0


def cmd_derive(args) -> int:
    m = _model(args)
    b, p = derived_belief(m), derived_plausibility(m)
    if args.format == "dot":
        lines = ["digraph derived {"]
        lines += [f'  "{w}";' for w in m.worlds]
        lines += [f'  "{u}" -> "{v}" [label="B"];' for u, v in sorted(b, key=str)]
        lines += [f'  "{u}" -> "{v}" [label="P", style=dashed];' for u, v in sorted(p, key=str) if u != v]
        lines.append("}")
        print("\n".join(lines))
        return 0
    _out(args, f"B_E: {_fmt_rel(b)}\n<=_E: {_fmt_rel(p)}",
         {"belief": sorted(map(list, b), key=str), "plausibility": sorted(map(list, p), key=str)})
    return 0


def cmd_add_evidence(args) -> int:
    m = _model(args)
    x = truth_mask(_ctx(args, m), _formula(args.formula))
    if x == 0:
        raise ModelError("empty evidence: the formula is true nowhere")
    if args.closed:
        gm = m if isinstance(m, GeneralModel) else m.lifted
        new = add_evidence_closed(gm, m.world_set(x))
    else:
        new = add_evidence(m.evidence_model, m.world_set(x))
    if args.output:
        save(new, args.output)
        print(f"wrote {args.output}")
    else:
        print(json.dumps(new.to_dict(), indent=2))
    return 0


def cmd_harmony(args) -> int:
    m = _model(args)
    em = m.evidence_model
    x = truth_mask(EvalContext(em, "intended"), _formula(args.formula))
    if x == 0:
        raise ModelError("empty evidence: the formula is true nowhere")
    left, right = harmony_masks(em, x)

    def pairs(up):
        return {(em.worlds[i], w) for i, u in enumerate(up) for w in em.world_set(u)}

    ok = left == right
    _out(args, f"cut of derived order: {_fmt_rel(pairs(left))}\n"
               f"derived order after addition: {_fmt_rel(pairs(right))}\n"
               f"harmony: {'yes' if ok else 'NO'}",
         {"cut": sorted(map(list, pairs(left)), key=str),
          "updated": sorted(map(list, pairs(right)), key=str), "harmony": ok})
    return 0 if ok else 1


def cmd_represent(args) -> int:
    m = _model(args)
    gm = m if isinstance(m, GeneralModel) else m.lifted
    builder = build_concise_representation if args.logic == "concise" else build_flat_representation
    rep, _ = builder(gm)
    lines = [f"{args.logic} representation: {rep.model.n} worlds"]
    data = {"logic": args.logic, "worlds": rep.model.n}
    code = 0
    if args.verify_depth is not None:
        r = verify_representation(gm, args.verify_depth, args.logic, max_worlds=args.max_worlds)
        lines += [f"  {k}: {'pass' if v else 'FAIL'}" for k, v in r.checks.items()]
        data["checks"] = r.checks
        code = 0 if r.ok else 1
    if args.output:
        save(rep.model, args.output)
        lines.append(f"wrote {args.output}")
    _out(args, "\n".join(lines), data)
    return code


def cmd_filter(args) -> int:
    m = _model(args)
    q = filtrate(m, _formula(args.formula))
    ok, witness = q.preserves_truth()
    lines = [f"{len(q.classes)} classes"]
    lines += [f"  {_fmt_set(c)}" for c in q.classes]
    lines.append(f"quotient valid: {'yes' if q.report.is_valid_model else 'no'}; classes: "
                 f"{', '.join(q.report.classes()) or 'none'}")
    lines.append("truth preserved: " + ("yes" if ok else f"NO ({F.render(witness[0])} at {witness[1]})"))
    if args.output:
        data = q.quotient.to_dict()
        data["class_map"] = {str(w): sorted_labels(c) for w, c in q.class_map.items()}
        Path(args.output).write_text(json.dumps(data, indent=2, default=str) + "\n")
        lines.append(f"wrote {args.output}")
    _out(args, "\n".join(lines), {"classes": [sorted_labels(c) for c in q.classes], "truth_preserved": ok,
                                  "quotient_valid": q.report.is_valid_model})
    return 0 if ok else 1


def cmd_pmorphism(args) -> int:
    m1, m2 = _model(args, args.m1), _model(args, args.m2)
    if args.map:
        p = load_map(json.loads(Path(args.map).read_text()), m1, m2)
        rep = check_pmorphism(p)
    else:
        p = find_surjective_pmorphism(m1, m2)
        if p is None:
            _out(args, "no surjective p-morphism", {"found": False})
            return 1
        rep = p.report
    lines = [f"map: {', '.join(f'{a}->{b}' for a, b in p.map.items())}"]
    for c in rep.in_scope:
        fails = rep.failures.get(c)
        lines.append(f"  {c}: " + ("pass" if not fails else f"FAIL e.g. {fails[0]}"))
    lines.append(f"surjective: {'yes' if is_surjective(p) else 'no'}")
    _out(args, "\n".join(lines), {"map": {str(k): v for k, v in p.map.items()}, "ok": rep.ok,
                                  "failures": rep.failures, "surjective": is_surjective(p)})
    return 0 if rep.ok else 1


def cmd_validate(args) -> int:
    if args.axiom not in REGISTRY:
        raise UsageError(f"unknown axiom {args.axiom!r}; known: {', '.join(REGISTRY)}")
    bounds = ModelBounds(args.max_worlds, args.max_sets, tuple(args.atoms.split(",")))
    if REGISTRY[args.axiom].is_rule:
        r = check_rule(args.axiom, bounds, args.depth, cls=args.cls, random_models=args.random, seed=args.seed)
    else:
        r = check_axiom(args.axiom, args.cls, bounds, args.depth, random_models=args.random, seed=args.seed)
    if r.ok:
        _out(args, f"no counterexample ({r.models} models, {r.instances} instances)",
             {"axiom": r.axiom, "class": r.cls, "models": r.models, "instances": r.instances,
              "counterexample": None})
        return 0
    c = r.counterexample
    msg = f"counterexample: {F.render(c.instance)} fails at world {c.world} ({c.mode} mode)"
    data = {"axiom": r.axiom, "class": r.cls, "models": r.models, "instances": r.instances,
            "counterexample": {"formula": F.render(c.instance), "world": c.world, "mode": c.mode,
                               "model": c.model.to_dict()}}
    if args.emit:
        save(c.model, args.emit)
        msg += f"\nwrote {args.emit}"
    _out(args, msg, data)
    return 1


def cmd_examples(args) -> int:
    checks = worked_examples()
    width = max(len(c.name) for c in checks)
    _out(args, "\n".join(f"{c.name:<{width}}  {'pass' if c.ok else 'FAIL'}" for c in checks),
         {"checks": [{"name": c.name, "ok": c.ok} for c in checks]})
    return 0 if all(c.ok for c in checks) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--strict", action="store_true", help="do not insert W into evidence families")
    shared.add_argument("--format", choices=("text", "json", "dot"), default="text")
    shared.add_argument("--mode", choices=("explicit", "intended"))
    shared.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="evlogic", description="Evidence logic workbench")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[shared], help="evaluate a formula")
    s.add_argument("model")
    s.add_argument("formula")
    s.add_argument("--world")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("classify", parents=[shared], help="constraints and class membership")
    s.add_argument("model")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("scenarios", parents=[shared], help="list (relative) scenarios at a world")
    s.add_argument("model")
    s.add_argument("--world", required=True)
    s.add_argument("--relative-to")
    s.set_defaults(func=cmd_scenarios)

    s = sub.add_parser("derive", parents=[shared], help="derived belief and plausibility")
    s.add_argument("model")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("add-evidence", parents=[shared], help="add the truth set of a formula as evidence")
    s.add_argument("model")
    s.add_argument("formula")
    s.add_argument("--closed", action="store_true", help="add the upward closure instead")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_add_evidence)

    s = sub.add_parser("harmony", parents=[shared], help="compare cut order with re-derived order")
    s.add_argument("model")
    s.add_argument("formula")
    s.set_defaults(func=cmd_harmony)

    s = sub.add_parser("represent", parents=[shared], help="build the intended representation")
    s.add_argument("model")
    s.add_argument("--logic", choices=("flat", "concise"), default="flat")
    s.add_argument("--verify-depth", type=int)
    s.add_argument("--max-worlds", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("filter", parents=[shared], help="filtration through a pivot formula")
    s.add_argument("model")
    s.add_argument("formula")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_filter)

    s = sub.add_parser("pmorphism", parents=[shared], help="verify a map or search for one")
    s.add_argument("m1")
    s.add_argument("m2")
    s.add_argument("--map")
    s.set_defaults(func=cmd_pmorphism)

    s = sub.add_parser("validate", parents=[shared], help="bounded counterexample search for an axiom")
    s.add_argument("--axiom", required=True)
    s.add_argument("--class", dest="cls", default="all",
                   choices=("all", "flat", "uniform", "concise", "intended"))
    s.add_argument("--max-worlds", type=int, default=2)
    s.add_argument("--max-sets", type=int, default=4, help="evidence sets per world, W included")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--atoms", default="p,q")
    s.add_argument("--random", type=int, default=0)
    s.add_argument("--emit", help="write a counterexample model file here")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("paper-examples", parents=[shared], help="reproduce the worked examples")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (F.ParseError, ModelError, UsageError, FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
