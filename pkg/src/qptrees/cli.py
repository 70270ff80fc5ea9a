"""Command-line front door.

Exit status: 0 on success, 1 when a countermodel or refutation was found,
2 on usage or input errors.  All output is line oriented with a stable
`KEY: value` shape and is byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from pathlib import Path

from .formula import free_vars, parse_formula, print_formula
from .godel import godel_eval, parse_truth_values
from .kripke import dump_model, load_model
from .embedding import t_embed
from .mso import LogicClass, emit, validity_sentence
from .search import STRUCTURE_CLASSES, SearchBounds, bounded_validity
from .semantics import extension_int, extension_s4
from .suite import run_separation_suite


def _world_text(m, world) -> str:
    return json.dumps(list(world), separators=(",", ":")) if m.kind == "tree" else world


def _worlds_text(m, worlds) -> str:
    if m.kind == "tree":
        return json.dumps([list(w) for w in sorted(worlds)], separators=(",", ":"))
    return json.dumps(sorted(worlds), separators=(",", ":"))


def _cmd_check(ns) -> int:
    m = load_model(Path(ns.model).read_text())
    f = parse_formula(ns.formula, lang=m.mode)
    ext = extension_int(m, f) if m.mode == "int" else extension_s4(m, f)
    if ns.world is None:
        world = m.root
    elif m.kind == "tree":
        try:
            world = tuple(json.loads(ns.world))
        except (json.JSONDecodeError, TypeError):
            raise ValueError(f"tree worlds are JSON arrays, got {ns.world!r}") from None
    else:
        world = ns.world
    m.index_of(world)
    verdict = world in ext.worlds
    print(f"FORMULA: {print_formula(f)}")
    print(f"MODE: {m.mode}")
    print(f"EXTENSION: {_worlds_text(m, ext.worlds)}")
    print(f"WORLD: {_world_text(m, world)}")
    print(f"VERDICT: {'true' if verdict else 'false'}")
    return 0 if verdict else 1


def _cmd_decide(ns) -> int:
    f = parse_formula(ns.formula, lang=ns.mode)
    outcome = bounded_validity(f, SearchBounds(ns.max, ns.cls), ns.mode)
    print(f"FORMULA: {print_formula(f)}")
    print(f"CLASS: {ns.cls}")
    print(f"MODE: {ns.mode}")
    print(f"MAX-WORLDS: {ns.max}")
    if outcome.countermodel is None:
        print("OUTCOME: no-counterexample")
        return 0
    print("OUTCOME: countermodel")
    print(f"COUNTERMODEL: {dump_model(outcome.countermodel)}")
    return 1


def _cmd_translate(ns) -> int:
    cls = LogicClass.parse(ns.cls)
    f = parse_formula(ns.formula, lang=cls.mode)
    print(f"FORMULA: {print_formula(f)}")
    print(f"CLASS: {cls}")
    print(f"MSO: {emit(validity_sentence(f, cls))}")
    return 0


def _cmd_embed(ns) -> int:
    f = parse_formula(ns.formula, lang="int")
    print(f"FORMULA: {print_formula(f)}")
    print(f"EMBEDDED: {print_formula(t_embed(f))}")
    return 0


def _parse_valuation(text: str) -> dict:
    valuation = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"valuation entries look like p=1/2, got {part!r}")
        valuation[name.strip()] = value.strip()
    return valuation


def _cmd_godel(ns) -> int:
    f = parse_formula(ns.formula, lang="int")
    values = parse_truth_values(ns.values)
    print(f"FORMULA: {print_formula(f)}")
    print(f"VALUES: {','.join(str(v) for v in values)}")
    if ns.valuation is not None:
        result = godel_eval(_parse_valuation(ns.valuation), f, values)
        print(f"VALUE: {result}")
        return 0
    names = sorted(free_vars(f))
    for choice in product(values, repeat=len(names)):
        valuation = dict(zip(names, choice))
        result = godel_eval(valuation, f, values)
        if result != 1:
            print("TAUTOLOGY: no")
            if names:
                witness = ",".join(f"{n}={valuation[n]}" for n in names)
                print(f"WITNESS: {witness}")
            print(f"VALUE: {result}")
            return 1
    print("TAUTOLOGY: yes")
    return 0


def _cmd_examples(ns) -> int:
    results = run_separation_suite()
    for name, ok in results:
        print(f"{name}: {'pass' if ok else 'fail'}")
    all_ok = all(ok for _, ok in results)
    print(f"RESULT: {'pass' if all_ok else 'fail'}")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qptrees",
        description="Model checking and bounded countermodel search for "
        "propositionally quantified intuitionistic and S4 logics on trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula over a model file")
    p.add_argument("--model", required=True, help="path to a model JSON file")
    p.add_argument("--formula", required=True)
    p.add_argument("--world", help="evaluate here instead of at the root")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decide", help="bounded countermodel search")
    p.add_argument("--formula", required=True)
    p.add_argument("--class", dest="cls", required=True, choices=STRUCTURE_CLASSES)
    p.add_argument("--max", type=int, required=True, help="largest world count")
    p.add_argument("--mode", choices=("int", "s4"), default="int")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("translate", help="emit the second-order validity sentence")
    p.add_argument("--formula", required=True)
    p.add_argument(
        "--class",
        dest="cls",
        required=True,
        help="qpHt, qpHt-fin, qpHt-omega, qpHt-N, s4t, s4t-fin, or s4t-N",
    )
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("embed", help="translate into S4 by guarding with box")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("godel", help="evaluate over a finite truth-value set")
    p.add_argument("--formula", required=True)
    p.add_argument("--values", required=True, help='e.g. "0,1/3,1/2,1"')
    p.add_argument("--valuation", help='e.g. "p=1/2,q=0"; omit to test tautology')
    p.set_defaults(func=_cmd_godel)

    p = sub.add_parser("examples", help="re-run the packaged separation suite")
    p.set_defaults(func=_cmd_examples)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return ns.func(ns)
    except (ValueError, OSError) as e:
        print(f"ERROR: {e}")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
