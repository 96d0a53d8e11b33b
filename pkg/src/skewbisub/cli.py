"""Command-line front end over the JSON instance format.

Exit codes are strict: 0 when the requested property holds or the command
succeeds, 1 when a checked property is violated, 2 for malformed input or
usage errors.  All structured output is JSON on stdout; diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional

from .functions import (
    DEFAULT_ENUM_CAP,
    GenerationBudgetError,
    InstanceFormatError,
    ValueOracle,
    check_alpha_bisubmodular,
    generate_instance,
    instance_from_json,
    instance_to_json,
)
from .lattice import Alpha, NEG, POS, ZERO, all_labelings, join, meet0, numeric
from .lovasz import FractionalPoint, decompose, extension_value
from .minimize import DiminishingStep, FixedStep, MinimizeConfig, minimize
from .oracles import (
    DEFAULT_LP_CAP,
    brute_force_min,
    convex_closure,
    random_box_point,
)
from .rationals import format_rational


def _emit(payload: object) -> None:
    json.dump(payload, sys.stdout, separators=(", ", ": "))
    sys.stdout.write("\n")


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_instance(path: str) -> ValueOracle:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path!r} is not valid JSON: {exc}") from None
    return instance_from_json(document)


def _parse_point(text: str, f: ValueOracle) -> FractionalPoint:
    point = FractionalPoint.parse(text, f.alpha)
    if len(point.coords) != f.arity:
        raise ValueError(
            f"point has {len(point.coords)} coordinates, instance arity is {f.arity}"
        )
    return point


def _parse_step(text: str):
    kind, _, argument = text.partition(":")
    if kind == "fixed":
        if not argument:
            raise ValueError("step rule 'fixed' needs a size, e.g. fixed:0.5")
        return FixedStep(gamma=float(argument))
    if kind == "diminishing":
        return DiminishingStep(gamma0=float(argument) if argument else None)
    raise ValueError(f"unknown step rule {text!r} (expected fixed:G or diminishing[:G0])")


def _cmd_check(args) -> int:
    f = _load_instance(args.instance)
    witness = check_alpha_bisubmodular(f)
    if witness is None:
        print("alpha-bisubmodular")
        return 0
    _emit(witness.to_json())
    return 1


def _cmd_decompose(args) -> int:
    f = _load_instance(args.instance)
    point = _parse_point(args.point, f)
    _emit(decompose(point).to_json())
    return 0


def _cmd_eval(args) -> int:
    f = _load_instance(args.instance)
    point = _parse_point(args.point, f)
    _emit({"f_L": format_rational(extension_value(f, point))})
    return 0


def _cmd_minimize(args) -> int:
    f = _load_instance(args.instance)
    cfg = MinimizeConfig(
        max_iters=args.iters,
        step=_parse_step(args.step) if args.step else DiminishingStep(),
        seed=args.seed,
    )
    report = minimize(f, cfg)
    _emit(report.to_json())
    return 0


def _cmd_verify_closure(args) -> int:
    f = _load_instance(args.instance)
    rng = random.Random(args.seed)
    for trial in range(args.trials):
        point = random_box_point(f.arity, f.alpha, rng)
        extension = extension_value(f, point)
        closure = convex_closure(f, point)
        if closure.value != extension:
            _emit(
                {
                    "pass": False,
                    "trial": trial,
                    "point": str(point),
                    "extension": format_rational(extension),
                    "closure": format_rational(closure.value),
                }
            )
            return 1
    _emit({"pass": True, "trials": args.trials})
    return 0


def _verify_all_checks(f: ValueOracle, trials: int, seed: int) -> dict:
    checks: dict = {}

    witness = check_alpha_bisubmodular(f)
    checks["alpha_bisubmodular"] = (
        {"pass": True} if witness is None else {"pass": False, "witness": witness.to_json()}
    )

    # Round-trip: random chain-supported distributions must decompose back
    # to themselves, exactly.
    rng = random.Random(seed)
    roundtrip_ok = True
    detail = None
    for _ in range(trials):
        chain, weights = _random_chain_distribution(f.arity, rng)
        coords = [Fraction(0)] * f.arity
        for u, w in zip(chain, weights):
            for j, value in enumerate(numeric(u, f.alpha)):
                coords[j] += w * value
        point = FractionalPoint(tuple(coords), f.alpha)
        recovered = decompose(point).atoms
        if recovered != tuple(zip(chain, weights)):
            roundtrip_ok = False
            detail = {"point": str(point)}
            break
    checks["decompose_roundtrip"] = {"pass": roundtrip_ok, "trials": trials}
    if detail:
        checks["decompose_roundtrip"].update(detail)

    # Meet/join recombination identity.  It is componentwise, so beyond
    # n = 4 the 9 single-label pairs prove the general case.
    if f.arity <= 4:
        pairs = [(a, b) for a in all_labelings(f.arity) for b in all_labelings(f.arity)]
        exhaustive = True
    else:
        pairs = [((a,), (b,)) for a in all_labelings(1) for b in all_labelings(1)]
        exhaustive = False
    identity_ok = True
    for a, b in pairs:
        av = numeric(a, f.alpha)
        bv = numeric(b, f.alpha)
        mv = numeric(meet0(a, b), f.alpha)
        j0 = numeric(join(a, b, ZERO), f.alpha)
        j1 = numeric(join(a, b, POS), f.alpha)
        al = f.alpha.value
        if any(
            m + al * x + (1 - al) * y != p + q
            for m, x, y, p, q in zip(mv, j0, j1, av, bv)
        ):
            identity_ok = False
            break
    checks["lattice_identity"] = {
        "pass": identity_ok,
        "pairs": len(pairs),
        "exhaustive": exhaustive,
    }

    if 3**f.arity <= DEFAULT_LP_CAP:
        closure_ok = True
        closure_detail = {}
        rng = random.Random(seed + 1)
        for _ in range(trials):
            point = random_box_point(f.arity, f.alpha, rng)
            if convex_closure(f, point).value != extension_value(f, point):
                closure_ok = False
                closure_detail = {"point": str(point)}
                break
        checks["closure_equality"] = {"pass": closure_ok, "trials": trials}
        checks["closure_equality"].update(closure_detail)
    else:
        checks["closure_equality"] = {
            "pass": True,
            "skipped": f"3^{f.arity} LP variables exceed the cap {DEFAULT_LP_CAP}",
        }

    if 3**f.arity <= DEFAULT_ENUM_CAP:
        _, brute_value = brute_force_min(f)
        report = minimize(f)
        checks["minimize_vs_brute_force"] = {
            "pass": report.value == brute_value,
            "brute_force": format_rational(brute_value),
            "minimize": format_rational(report.value),
            "oracle_calls": report.oracle_calls,
        }
    else:
        checks["minimize_vs_brute_force"] = {
            "pass": True,
            "skipped": f"3^{f.arity} points exceed the enumeration cap",
        }

    return checks


def _random_chain_distribution(n: int, rng: random.Random):
    """A random strictly decreasing chain with positive weights summing to 1.

    Atoms are sign-pattern prefixes of a random permutation under random
    fixed signs, in outermost-first order; a size-0 prefix is the all-Zero
    vector and can only appear last.
    """
    signs = [rng.choice((NEG, POS)) for _ in range(n)]
    leave_order = list(range(n))
    rng.shuffle(leave_order)
    length = rng.randint(1, n + 1)
    sizes = sorted(rng.sample(range(n + 1), length), reverse=True)
    chain = []
    for size in sizes:
        labels = [ZERO] * n
        for j in leave_order[:size]:
            labels[j] = signs[j]
        chain.append(tuple(labels))
    raw = [rng.randint(1, 100) for _ in chain]
    total = sum(raw)
    weights = [Fraction(r, total) for r in raw]
    return chain, weights


def _cmd_verify_all(args) -> int:
    f = _load_instance(args.instance)
    checks = _verify_all_checks(f, trials=args.trials, seed=args.seed)
    ok = all(entry["pass"] for entry in checks.values())
    _emit({"pass": ok, "checks": checks})
    return 0 if ok else 1


def _cmd_generate(args) -> int:
    alpha = Alpha.parse(args.alpha)
    instance = generate_instance(
        n=args.n,
        alpha=alpha,
        num_terms=args.terms,
        max_scope=args.max_scope,
        seed=args.seed,
    )
    _emit(instance_to_json(instance))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewbisub",
        description="Minimize and verify skew bisubmodular functions given as JSON instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test skew bisubmodularity; exit 1 with a witness on failure")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="chain decomposition of a box point")
    p.add_argument("instance")
    p.add_argument("--point", required=True, help='comma-separated rationals, e.g. "3/5,-1/5"')
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("eval", help="extension value at a box point")
    p.add_argument("instance")
    p.add_argument("--point", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("minimize", help="projected subgradient minimization")
    p.add_argument("instance")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--step", default=None, help="fixed:G or diminishing[:G0]")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("verify-closure", help="compare extension against the closure LP")
    p.add_argument("instance")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_closure)

    p = sub.add_parser("verify-all", help="run the full verification bundle")
    p.add_argument("instance")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_all)

    p = sub.add_parser("generate", help="emit a random skew-bisubmodular instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--max-scope", type=int, default=2, choices=(1, 2))
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_generate)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse and execute one invocation, returning the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (InstanceFormatError, ValueError, GenerationBudgetError) as exc:
        # CapExceededError and arity mismatches are ValueErrors too; all of
        # them are input problems, not property violations.
        return _fail_usage(str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
