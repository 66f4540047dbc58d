"""Command line interface.

Exit codes: 0 yes (equivalent, reachable, regular, covered), 1 no, 2 usage
or input error, 3 resource cap exceeded.  Results go to stdout as JSON,
except ``eval`` which prints one rational.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import analysis, boolean, equiv, exactla as la, model, oracle, reach, serialize, translate
from .errors import OdcaError, ResourceLimitError

YES, NO, USAGE, RESOURCE = 0, 1, 2, 3
COUNTER_LIMIT = 10 ** 6


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _counter_arg(args, value, name):
    if value is not None and value > COUNTER_LIMIT and not args.allow_large_counters:
        raise UsageError(f"{name} {value} exceeds {COUNTER_LIMIT}; pass --allow-large-counters")
    if value is not None and value < 0:
        raise UsageError(f"{name} must be non-negative")
    return value


def _deadline(args):
    return None if args.timeout is None else time.monotonic() + args.timeout


def _weighted(path):
    return serialize.load(path, "weighted-odca")


def _verdict_code(v):
    return YES if v.equivalent else NO


# -- subcommands ---------------------------------------------------------------

def cmd_eval(args):
    m = serialize.load(args.file, ("weighted-odca", "boolean-odca", "weighted-oca"))
    if isinstance(m, boolean.BooleanODCA):
        value = la.ONE * boolean.bool_eval(m, args.word)
    elif isinstance(m, translate.WeightedOCA):
        value = translate.oca_eval(m, args.word)
    else:
        value = model.evaluate(m, args.word)
    print(la.format_rational(value))
    return YES


def cmd_equiv(args):
    a, b = _weighted(args.a), _weighted(args.b)
    bound = _counter_arg(args, args.bound, "--bound")
    v = equiv.odca_equiv(a, b, bound, max_states=args.max_states, deadline=_deadline(args))
    _emit(v.to_json())
    return _verdict_code(v)


def cmd_bool_equiv(args):
    a = serialize.load(args.a, "boolean-odca")
    b = serialize.load(args.b, "boolean-odca")
    bound = _counter_arg(args, args.bound, "--bound")
    v = boolean.bool_equiv(a, b, bound, max_states=args.max_states, deadline=_deadline(args))
    _emit(v.to_json())
    return _verdict_code(v)


def _reach_instance(args):
    a = _weighted(args.file)
    c = serialize.load(args.config, "config") if args.config else model.initial_config(a)
    _counter_arg(args, c.n, "configuration counter")
    v = serialize.load(args.space, "vector-space")
    targets = [t for t in args.targets.split(",") if t]
    if args.counter == "any":
        m = None
    else:
        try:
            m = int(args.counter)
        except ValueError:
            raise UsageError("--counter takes a natural number or 'any'") from None
        _counter_arg(args, m, "--counter")
    return a, c, v, targets, m


def cmd_reach(args):
    a, c, v, targets, m = _reach_instance(args)
    bound = _counter_arg(args, args.bound, "--bound")
    if m is None:
        w = reach.covs_cover(a, c, v, targets, bound, deadline=_deadline(args))
        used = reach.counter_bound_cover(a, c.n) if bound is None else bound
    else:
        w = reach.covs_reach(a, c, v, targets, m, bound, deadline=_deadline(args))
        used = reach.counter_bound_reach(a, c.n, m) if bound is None else bound
    _emit({"verdict": "reachable" if w is not None else "unreachable", "witness": w, "bound_used": used})
    return YES if w is not None else NO


def cmd_regular(args):
    v = analysis.is_regular(_weighted(args.file), deadline=_deadline(args))
    _emit(v.to_json())
    return YES if v.regular else NO


def cmd_cover(args):
    a, b = _weighted(args.a), _weighted(args.b)
    bound = _counter_arg(args, args.bound, "--bound")
    v = analysis.covers(a, b, bound)
    out = v.to_json()
    out["bound_used"] = equiv.theoretical_counter_bound(equiv.size_parameter(a, b)) if bound is None else bound
    _emit(out)
    return YES if v.covered else NO


def cmd_coverable_equiv(args):
    a, b = _weighted(args.a), _weighted(args.b)
    bound = _counter_arg(args, args.bound, "--bound")
    ok = analysis.coverable_equiv(a, b, bound)
    _emit({"verdict": "coverable_equivalent" if ok else "not_coverable_equivalent"})
    return YES if ok else NO


def cmd_determinize(args):
    b = serialize.load(args.file, "boolean-odca")
    serialize.dump(boolean.determinize(b), args.output)
    return YES


def cmd_translate(args):
    m = serialize.load(args.file, ("weighted-odca", "weighted-oca"))
    if isinstance(m, translate.WeightedOCA):
        serialize.dump(translate.oca_to_odca(m), args.output)
    else:
        serialize.dump(translate.odca_to_oca(m), args.output)
    return YES


def cmd_check_determinacy(args):
    oca = serialize.load(args.file, "weighted-oca")
    r = translate.check_counter_determinacy(oca)
    if isinstance(r, translate.CounterViolation):
        _emit({"verdict": "not_counter_deterministic", "witness": r.word, "counters": list(r.counters)})
        return NO
    _emit({"verdict": "counter_deterministic", "coloring": list(r.color), "live": r.live_classes()})
    return YES


def cmd_random(args):
    pool = None if args.pool is None else [la.parse_rational(x) for x in args.pool.split(",")]
    m = oracle.random_odca(args.states, args.counter_states, args.alphabet, pool, args.seed)
    if args.output:
        serialize.dump(m, args.output)
    else:
        sys.stdout.write(serialize.dumps(m))
    return YES


def cmd_oracle_equiv(args):
    w = oracle.brute_equiv(_weighted(args.a), _weighted(args.b), args.max_len)
    _emit({"verdict": "equivalent" if w is None else "not_equivalent", "witness": w, "max_len": args.max_len})
    return YES if w is None else NO


def cmd_oracle_reach(args):
    a, c, v, targets, m = _reach_instance(args)
    w = oracle.brute_reach(a, c, v, targets, m, args.word_cap, args.counter_cap)
    _emit({"verdict": "reachable" if w is not None else "unreachable", "witness": w})
    return YES if w is not None else NO


def cmd_oracle_hankel(args):
    a = _weighted(args.file)
    ranks = {L: oracle.hankel_rank(lambda w: oracle.simulate(a, w), L, a.alphabet) for L in range(args.length + 1)}
    _emit({"ranks": {str(L): r for L, r in ranks.items()}})
    return YES


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="odca", description="Weighted one-deterministic-counter automata.")
    parser.add_argument("--allow-large-counters", action="store_true",
                        help=f"accept counter values and bounds above {COUNTER_LIMIT}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_limits(p):
        p.add_argument("--timeout", type=float, help="give up after this many seconds (exit 3)")
        return p

    p = sub.add_parser("eval", help="weight of a word")
    p.add_argument("file")
    p.add_argument("word", nargs="?", default="")
    p.set_defaults(func=cmd_eval)

    for name, func in (("equiv", cmd_equiv), ("bool-equiv", cmd_bool_equiv)):
        p = with_limits(sub.add_parser(name, help="equivalence with a shortest counterexample"))
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--bound", type=int, help="counter bound for the unfoldings (default: the theoretical one)")
        p.add_argument("--max-states", type=int, default=equiv.DEFAULT_MAX_STATES)
        p.set_defaults(func=func)

    def reach_args(p):
        p.add_argument("file")
        p.add_argument("--config", help="start configuration (default: the initial one)")
        p.add_argument("--space", required=True, help="vector-space document")
        p.add_argument("--targets", required=True, help="comma-separated counter states")
        p.add_argument("--counter", default="any", help="target counter value, or 'any' for coverability")

    p = with_limits(sub.add_parser("reach", help="co-VS reachability / coverability"))
    reach_args(p)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_reach)

    p = with_limits(sub.add_parser("regular", help="is the machine equivalent to a weighted automaton?"))
    p.add_argument("file")
    p.set_defaults(func=cmd_regular)

    for name, func, text in (("cover", cmd_cover, "does A cover B?"),
                             ("coverable-equiv", cmd_coverable_equiv, "do A and B cover each other?")):
        p = sub.add_parser(name, help=text)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--bound", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("determinize", help="subset construction for a boolean ODCA")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_determinize)

    p = sub.add_parser("translate", help="weighted OCA <-> weighted ODCA (direction from the file type)")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("check-determinacy", help="counter-determinacy of a weighted OCA")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_determinacy)

    def random_args(p):
        p.add_argument("--states", type=int, required=True)
        p.add_argument("--counter-states", type=int, required=True)
        p.add_argument("--alphabet", type=int, required=True, help="alphabet size")
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--pool", help="comma-separated weights, e.g. -1,0,1,1/2")
        p.add_argument("-o", "--output")
        p.set_defaults(func=cmd_random)

    random_args(sub.add_parser("random", help="seeded random weighted ODCA"))

    p = sub.add_parser("oracle", help="brute-force reference computations")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("equiv")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--max-len", type=int, default=8)
    q.set_defaults(func=cmd_oracle_equiv)
    q = osub.add_parser("reach")
    reach_args(q)
    q.add_argument("--word-cap", type=int, default=8)
    q.add_argument("--counter-cap", type=int, default=12)
    q.set_defaults(func=cmd_oracle_reach)
    q = osub.add_parser("hankel")
    q.add_argument("file")
    q.add_argument("--length", type=int, default=5)
    q.set_defaults(func=cmd_oracle_hankel)
    random_args(osub.add_parser("random"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else YES
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"odca: resource limit: {exc}", file=sys.stderr)
        return RESOURCE
    except (UsageError, OdcaError, ValueError, KeyError, OSError) as exc:
        print(f"odca: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
