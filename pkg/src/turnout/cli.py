"""Command-line interface.

Every successful invocation prints exactly one JSON record on stdout. Exit
status is 0 on success, 1 when a computation is refused (size limits,
unsupported rule, zero-probability precondition) and 2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from turnout import exact, fpras, zeroness
from turnout.core import CO_WINNER, UNIQUE, ProbabilisticProfile, Rule, score_vector_for, winners
from turnout.errors import PreconditionError, RefusalError, UnsupportedRuleError, ValidationError
from turnout.fileio import (
    format_profile,
    format_record,
    parse_graph,
    parse_profile,
    parse_set_system,
)
from turnout.generators import (
    gen_condorcet_from_x3c,
    gen_kapproval_from_matching,
    gen_kveto_from_edgecover,
    gen_maximin_from_x3c,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> ProbabilisticProfile:
    return parse_profile(_read(path))


def _semantics(args):
    return UNIQUE if args.unique else CO_WINNER


def _config(args) -> fpras.EstimatorConfig:
    return fpras.EstimatorConfig(args.epsilon, args.delta, args.seed, args.trials)


def cmd_winners(args) -> str:
    pp = _load(args.file)
    rule = Rule.parse(args.rule)
    if rule.is_positional and pp.m > 1:
        score_vector_for(rule, pp.m)
    won = winners(rule, pp.profile, _semantics(args))
    names = [pp.candidates.names[c] for c in sorted(won)]
    return format_record(command="winners", rule=str(rule), winners=names)


def cmd_win_prob(args) -> str:
    pp = _load(args.file)
    rule = Rule.parse(args.rule)
    c = pp.candidates.index(args.candidate)
    semantics = _semantics(args)
    trials = seed = None
    if args.method == "exact":
        if rule.kind == "plurality":
            value = exact.win_prob_plurality(pp, c, semantics)
        elif rule.kind == "veto":
            value = exact.win_prob_veto(pp, c, semantics)
        else:
            raise UnsupportedRuleError("exact method supports plurality and veto only")
    elif args.method == "brute":
        value = exact.brute_force_win_prob(pp, rule, c, semantics, args.limit)
    else:
        est = fpras.mc_win_prob_additive(pp, rule, c, semantics, _config(args))
        value, trials, seed = est.value, est.trials, args.seed
    return format_record(
        command="win-prob", rule=str(rule), candidate=args.candidate, method=args.method,
        probability=value, trials=trials, seed=seed,
    )


def cmd_lose_prob(args) -> str:
    pp = _load(args.file)
    rule = Rule.parse(args.rule)
    c = pp.candidates.index(args.candidate)
    if rule.kind == "maximin":
        raise UnsupportedRuleError("no FPRAS implemented (open problem)")
    est = fpras.klm_lose_prob(pp, rule, c, _config(args))
    return format_record(
        command="lose-prob", rule=str(rule), candidate=args.candidate, method=est.method,
        probability=est.value, trials=est.trials, seed=args.seed,
    )


def cmd_win_positive(args) -> str:
    pp = _load(args.file)
    rule = Rule.parse(args.rule)
    c = pp.candidates.index(args.candidate)
    instance = zeroness.split_ccauv(pp, c)
    semantics = _semantics(args)
    if zeroness.is_binary_rule(rule, pp.m):
        method, result = "binary", zeroness.ccauv_binary(instance, rule, semantics)
    else:
        method, result = "brute", zeroness.ccauv_brute(instance, rule, semantics, args.limit)
    witness = None
    if result.found:
        ids = instance.meta["registered_voters"] + tuple(
            instance.meta["unregistered_voters"][i] for i in result.witness
        )
        witness = sorted(ids)
    return format_record(
        command="win-positive", rule=str(rule), candidate=args.candidate, method=method,
        decision=result.found, witness=witness,
    )


def cmd_ccauv(args) -> str:
    registered = _load(args.registered).profile
    unregistered = _load(args.unregistered).profile
    rule = Rule.parse(args.rule)
    c = registered.candidates.index(args.candidate)
    instance = zeroness.CcauvInstance(registered, unregistered, c)
    semantics = _semantics(args)
    if args.count:
        count = zeroness.ccauv_count_brute(instance, rule, semantics, args.limit)
        return format_record(
            command="ccauv", rule=str(rule), candidate=args.candidate, method="brute", count=count
        )
    if zeroness.is_binary_rule(rule, registered.m):
        method, result = "binary", zeroness.ccauv_binary(instance, rule, semantics)
    else:
        method, result = "brute", zeroness.ccauv_brute(instance, rule, semantics, args.limit)
    return format_record(
        command="ccauv", rule=str(rule), candidate=args.candidate, method=method,
        decision=result.found, witness=list(result.witness) if result.found else None,
    )


_GENERATORS = {
    "matching-kapproval": (parse_graph, gen_kapproval_from_matching, True),
    "edgecover-kveto": (parse_graph, gen_kveto_from_edgecover, True),
    "x3c-condorcet": (parse_set_system, gen_condorcet_from_x3c, False),
    "x3c-maximin": (parse_set_system, gen_maximin_from_x3c, False),
}


def cmd_gen(args) -> str:
    parse, build, takes_k = _GENERATORS[args.kind]
    source = parse(_read(args.input))
    instance = build(source, args.k) if takes_k else build(source)
    meta = {
        "rule": instance.meta["rule"],
        "count": instance.meta["count"],
        "target": instance.candidates.names[instance.target],
    }
    files = []
    for part, profile, p in (
        ("registered", instance.registered, 1.0),
        ("unregistered", instance.unregistered, 0.5),
    ):
        path = f"{args.out}.{part}.txt"
        text = format_profile(ProbabilisticProfile(profile, (p,) * profile.n), meta)
        Path(path).write_text(text, encoding="utf-8")
        files.append(path)
    return format_record(
        command="gen", rule=meta["rule"], candidate=meta["target"], method=args.kind, files=files
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="turnout", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, candidate=True, unique=True):
        p.add_argument("--rule", required=True, help="plurality, veto, approval:K, kveto:K, "
                       "borda, rfl:F,L, vector:S1,S2,..., condorcet or maximin")
        if candidate:
            p.add_argument("--candidate", required=True)
        if unique:
            p.add_argument("--unique", action="store_true", help="unique-winner semantics")

    def randomized(p):
        p.add_argument("--epsilon", type=float, default=0.1)
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=None, help="override the trial count")

    p = sub.add_parser("winners", help="winners of the full profile")
    p.add_argument("file")
    common(p, candidate=False)
    p.set_defaults(func=cmd_winners)

    p = sub.add_parser("win-prob", help="probability that a candidate wins")
    p.add_argument("file")
    common(p)
    p.add_argument("--method", choices=("exact", "brute", "mc"), default="exact")
    p.add_argument("--limit", type=int, default=exact.BRUTE_FORCE_LIMIT)
    randomized(p)
    p.set_defaults(func=cmd_win_prob)

    p = sub.add_parser("lose-prob", help="FPRAS estimate of the co-winner losing probability")
    p.add_argument("file")
    common(p, unique=False)
    randomized(p)
    p.set_defaults(func=cmd_lose_prob)

    p = sub.add_parser("win-positive", help="decide whether the winning probability is positive")
    p.add_argument("file")
    common(p)
    p.add_argument("--limit", type=int, default=zeroness.CCAUV_LIMIT)
    p.set_defaults(func=cmd_win_positive)

    p = sub.add_parser("ccauv", help="control by adding unregistered voters")
    p.add_argument("--registered", required=True)
    p.add_argument("--unregistered", required=True)
    common(p)
    p.add_argument("--count", action="store_true", help="count successful sublists")
    p.add_argument("--limit", type=int, default=zeroness.CCAUV_LIMIT)
    p.set_defaults(func=cmd_ccauv)

    p = sub.add_parser("gen", help="write a reduction instance as two profile files")
    p.add_argument("kind", choices=sorted(_GENERATORS))
    p.add_argument("input")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        record = args.func(args)
    except _UsageError as exc:
        print(f"turnout: error: {exc}", file=sys.stderr)
        return 2
    except (RefusalError, PreconditionError) as exc:
        print(f"turnout: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"turnout: invalid input: {exc}", file=sys.stderr)
        return 2
    print(record)
    return 0


if __name__ == "__main__":
    sys.exit(main())
