"""Command-line front end.

Exit codes: 0 success / predicate true, 1 predicate false (or a failing
relator), 2 parse error, 3 domain error (precondition violated).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import plmap, presentation, thompson
from .errors import DomainError, MalformedMap, ParseError, UnknownGenerator
from .plmap import Q, dumps, to_record
from .snf import smith_normal_form
from .words import format_word, parse_word, random_word

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _map_of(text):
    return presentation.eval_word(parse_word(text))


def cmd_eval(args):
    f = _map_of(args.word)
    if args.at is not None:
        value = plmap.evaluate(f, Q(args.at))
        _emit(args, str(value), {"word": args.word, "at": str(Q(args.at)), "value": str(value)})
    else:
        _emit(args, dumps(f), {"word": args.word, "map": to_record(f)})
    return EXIT_OK


def _membership(group):
    if ":" in group:
        name, _, p = group.partition(":")
        p = int(p)
        if p < 1:
            raise ValueError("period must be a positive integer")
        if name == "H":
            return lambda f: thompson.in_Hp(f, p)
        if name == "A":
            return lambda f: thompson.in_Ap(f, p)
        raise ValueError("unknown group %r" % group)
    if group not in thompson.MEMBERSHIP:
        raise ValueError("unknown group %r" % group)
    return thompson.MEMBERSHIP[group]


def cmd_member(args):
    try:
        test = _membership(args.group)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    result = test(_map_of(args.word))
    _emit(args, "true" if result else "false", {"group": args.group, "word": args.word, "member": result})
    return EXIT_OK if result else EXIT_FALSE


def _catalog(spec):
    if spec in presentation.BUILTIN:
        return presentation.BUILTIN[spec]
    path = Path(spec)
    if not path.exists():
        raise ValueError("no built-in catalog or file named %r (built-ins: T, H1)" % spec)
    return presentation.parse_catalog(path.read_text(), path.stem)


def cmd_relators(args):
    try:
        catalog = _catalog(args.catalog)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    checks = presentation.verify_relators(catalog)
    if args.json:
        print(json.dumps({
            "catalog": catalog.name,
            "relators": [
                {"relator": c.text, "holds": c.holds, "value": None if c.holds else to_record(c.value)}
                for c in checks
            ],
        }, sort_keys=True))
    else:
        for c in checks:
            line = "%-4s %s" % ("ok" if c.holds else "FAIL", c.text)
            if not c.holds:
                line += "  =  " + dumps(c.value)
            print(line)
        print("%d/%d relators hold" % (sum(c.holds for c in checks), len(checks)))
    return EXIT_OK if all(c.holds for c in checks) else EXIT_FALSE


def cmd_abelianize(args):
    try:
        catalog = _catalog(args.catalog)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    matrix = presentation.exponent_matrix(catalog)
    snf = smith_normal_form(matrix, cols=len(catalog.generators))
    group = presentation.abelian_group(snf)
    _emit(args, str(group), {
        "catalog": catalog.name,
        "generators": list(catalog.generators),
        "matrix": [list(r) for r in matrix],
        "invariants": list(snf.diagonal),
        "rank": group.rank,
        "torsion": list(group.torsion),
        "trivial": group.is_trivial,
    })
    return EXIT_OK


def cmd_canonical(args):
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    f = plmap.canonicalize(plmap.loads(text))
    print(dumps(f))
    return EXIT_OK


def cmd_rho(args):
    minus, plus = thompson.rho(_map_of(args.word))
    _emit(args, "%s\n%s" % (dumps(minus), dumps(plus)),
          {"word": args.word, "minus": to_record(minus), "plus": to_record(plus)})
    return EXIT_OK


def cmd_quotient(args):
    lo, hi = thompson.slope_quotient(_map_of(args.word))
    _emit(args, "(%s, %s)" % (lo, hi), {"word": args.word, "quotient": [str(lo), str(hi)]})
    return EXIT_OK


def cmd_random(args):
    rng = random.Random(args.seed)
    gens = [g for g in args.gens.replace(",", " ").split() if g]
    if not gens:
        print("error: --gens is empty", file=sys.stderr)
        return EXIT_PARSE
    for _ in range(args.words):
        print(format_word(random_word(rng, gens, args.length)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thompsonpl",
        description="Exact computations with periodically affine PL maps of the line.",
    )
    parser.add_argument("--json", action="store_true", help="structured output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a word to a map, or to a value with --at")
    p.add_argument("word")
    p.add_argument("--at", help="rational point, e.g. 5 or -3/4")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("member", parents=[common], help="membership test; exit 0 if true, 1 if false")
    p.add_argument("group", help="F, Fprime, K, ComF, ComPlusF, H, H:p, A:p, AutPlusF")
    p.add_argument("word")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("relators", parents=[common], help="check that each relator evaluates to the identity")
    p.add_argument("catalog", help="T, H1, or a catalog file")
    p.set_defaults(func=cmd_relators)

    p = sub.add_parser("abelianize", parents=[common], help="abelianization via Smith normal form")
    p.add_argument("catalog", help="T, H1, or a catalog file")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("canonical", parents=[common], help="canonical form of a serialized map ('-' for stdin)")
    p.add_argument("file")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("rho", parents=[common], help="germs (f-, f+) of an element of K")
    p.add_argument("word")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("quotient", parents=[common], help="image in Q* x Q* of an element of Com+(F)")
    p.add_argument("word")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("random", parents=[common], help="reproducible random words")
    p.add_argument("--words", type=int, default=10)
    p.add_argument("--length", type=int, default=8)
    p.add_argument("--gens", default="x0,x1,c")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownGenerator) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, MalformedMap) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
