"""Command-line front end: classify, orbits, normalize, apply, verify, cocycle.

Every printed certificate is replay-verified first.  Runs outside the
n | 2g-2 regime are permitted only with --allow-invalid-euler and are
watermarked in the output.  Verification suites exit nonzero on any
failed check and print one line per check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import euler
from .action import WordSyntaxError, apply_word, parse_word
from .invariants import (
    orbit_count_expected, vanishing_number, vanishing_number_array,
)
from .normalize import macro_word, normalize
from .orbits import (
    BudgetExceededError, GENERATOR_SETS, MOD, MOD_PM, enumerate_orbits,
)
from .sl2 import generate_sl2, sl2_group_order
from .space import SpaceParams, decode_array, make_element, parse_element

DEFAULT_SEED = 20250810


class CliError(Exception):
    """Fatal argument or input error; message goes to stderr."""


def _space(args) -> SpaceParams:
    strict = not getattr(args, "allow_invalid_euler", False)
    try:
        return SpaceParams(args.g, args.n, strict_euler=strict)
    except ValueError as exc:
        message = str(exc).replace(
            "pass strict_euler=False to explore outside that regime",
            "pass --allow-invalid-euler to explore outside that regime")
        raise CliError(message) from None


def _element(args, params: SpaceParams):
    try:
        return parse_element(params, args.element)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _regime(params: SpaceParams) -> str:
    if (2 * params.g - 2) % params.n == 0:
        return "n divides 2g-2"
    return "outside n | 2g-2 regime"


def cmd_classify(args) -> int:
    params = _space(args)
    x = _element(args, params)
    form, cert = normalize(x)
    if not cert.replays():
        raise CliError("internal error: certificate failed replay")
    payload = {
        "g": params.g,
        "n": params.n,
        "regime": _regime(params),
        "element": list(x.coords),
        "parity_class": form.parity_class,
        "canonical_representative": list(form.representative.coords),
        "vanishing_number": vanishing_number(x) if params.n % 2 == 0 else None,
        "certificate": str(cert.word),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"element              {x}")
        print(f"parity class         {form.parity_class}")
        print(f"canonical            {form.representative}")
        if payload["vanishing_number"] is not None:
            print(f"vanishing number     {payload['vanishing_number']}")
        print(f"certificate          {cert.word}")
        if payload["regime"] != "n divides 2g-2":
            print(f"warning              {payload['regime']}")
    return 0


def cmd_orbits(args) -> int:
    params = _space(args)
    try:
        report = enumerate_orbits(params, args.gens, thread_count=args.threads,
                                  record_paths=False)
    except BudgetExceededError as exc:
        raise CliError(str(exc)) from None
    data = report.to_dict()
    data["regime"] = _regime(params)
    if data["regime"] == "n divides 2g-2":
        del data["regime"]  # keep the schema exact inside the regime
    if args.format == "json":
        print(json.dumps(data, indent=2))
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        print(f"g={params.g} n={params.n} generators={args.gens} "
              f"threads={args.threads} [{_regime(params)}]")
        print(f"orbit count: {report.orbit_count}")
        for o in report.orbits:
            v = "-" if o.vanishing_number is None else o.vanishing_number
            print(f"  representative {o.representative}  size {o.size}  "
                  f"vanishing {v}")
        print(f"elapsed: {report.elapsed_ms} ms")
    return 0


def cmd_normalize(args) -> int:
    params = _space(args)
    x = _element(args, params)
    form, cert = normalize(x)
    if not cert.replays():
        raise CliError("internal error: certificate failed replay")
    payload = {
        "element": list(x.coords),
        "canonical_representative": list(form.representative.coords),
        "parity_class": form.parity_class,
        "certificate": str(cert.word),
        "regime": _regime(params),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"canonical     {form.representative}")
        print(f"certificate   {cert.word}")
    return 0


def cmd_apply(args) -> int:
    params = _space(args)
    x = _element(args, params)
    try:
        word = parse_word(args.word)
        y = apply_word(word, x)
    except (WordSyntaxError, ValueError) as exc:
        raise CliError(str(exc)) from None
    if args.format == "json":
        print(json.dumps({"element": list(x.coords), "word": args.word,
                          "image": list(y.coords)}))
    else:
        print(y)
    return 0


def cmd_cocycle(args) -> int:
    group = euler.standard_group(args.genus)
    rng = random.Random(args.seed)
    names = [f"{letter}{i}" for letter in "ab" for i in range(1, args.genus + 1)]

    def rand_word():
        length = rng.randrange(1, args.max_len + 1)
        return tuple((rng.choice(names), rng.choice([-1, 1])) for _ in range(length))

    samples = []
    while len(samples) < args.pairs:
        w1, w2 = rand_word(), rand_word()
        try:
            value = euler.cocycle(group, w1, w2)
        except euler.IllConditionedError:
            continue
        samples.append({
            "w1": " ".join(f"{n}^{e}" if e != 1 else n for n, e in w1),
            "w2": " ".join(f"{n}^{e}" if e != 1 else n for n, e in w2),
            "c": value.value,
            "residual": value.residual,
        })
    print(json.dumps({"genus": args.genus, "seed": args.seed,
                      "samples": samples}, indent=2))
    return 0


# --- verification suites -----------------------------------------------------

class Checker:
    def __init__(self):
        self.failures = 0
        self.count = 0

    def check(self, name, actual, expected):
        self.count += 1
        if actual == expected:
            print(f"ok   {name}: {actual}")
        else:
            self.failures += 1
            print(f"FAIL {name}: expected {expected}, got {actual}")

    def check_true(self, name, condition, detail=""):
        self.count += 1
        if condition:
            print(f"ok   {name}")
        else:
            self.failures += 1
            print(f"FAIL {name} {detail}")


def _theorem_cases(max_states: float, max_genus: int = 7):
    for g in range(2, max_genus + 1):
        euler_class = 2 * g - 2
        for n in range(1, euler_class + 1):
            if euler_class % n == 0 and n ** (2 * g) <= max_states:
                yield g, n


def suite_theorem(args, chk: Checker) -> None:
    for g, n in _theorem_cases(args.max_states):
        params = SpaceParams(g, n)
        report = enumerate_orbits(params, MOD, thread_count=args.threads,
                                  record_paths=False)
        chk.check(f"theorem g={g} n={n} orbit_count", report.orbit_count,
                  orbit_count_expected(params))
        if n % 2 == 0:
            values = sorted(o.vanishing_number for o in report.orbits)
            chk.check(f"theorem g={g} n={n} vanishing separates", values, [0, 1])


def suite_invariants(args, chk: Checker) -> None:
    # vanishing number constant along orbits, exhaustively, incl. mod_pm
    for g, n in _theorem_cases(min(args.max_states, 10 ** 5)):
        if n % 2:
            continue
        params = SpaceParams(g, n)
        for selector in (MOD, MOD_PM):
            bounds = {}

            def hook(ordinal, batch):
                v = vanishing_number_array(decode_array(batch, params))
                lo, hi = int(v.min()), int(v.max())
                if ordinal in bounds:
                    lo = min(lo, bounds[ordinal][0])
                    hi = max(hi, bounds[ordinal][1])
                bounds[ordinal] = (lo, hi)

            enumerate_orbits(params, selector, thread_count=args.threads,
                             record_paths=False, batch_hook=hook)
            constant = all(lo == hi for lo, hi in bounds.values())
            chk.check_true(
                f"invariants g={g} n={n} {selector} vanishing constant per orbit",
                constant)
    # the +2 macro, exhaustively over beta
    for n in range(1, 13):
        params = SpaceParams(2, n, strict_euler=False)
        good = True
        for beta in range(n):
            x = make_element(params, [0, 0, 0, beta])
            y = apply_word(macro_word(beta, params), x)
            good &= y.coords == (0, 0, 0, (beta + 2) % n)
        chk.check_true(f"invariants macro beta+2 n={n}", good)


def suite_sl2(args, chk: Checker) -> None:
    values = [args.n] if args.n else list(range(2, 13))
    for n in values:
        closure = len(generate_sl2(n))
        chk.check(f"sl2 n={n} closure size", closure, sl2_group_order(n))


def suite_cocycle(args, chk: Checker) -> None:
    group = euler.standard_group(args.genus)
    chk.check(f"cocycle genus={args.genus} relator euler number",
              euler.relator_euler_number(group), 2 * args.genus - 2)
    aprime = euler.conjugated_generator_word(2)
    inv = tuple((n, -e) for (n, e) in reversed(aprime))
    value = euler.cocycle(group, "a1", inv)
    chk.check("cocycle c(a1, (a'2)^-1)", value.value, 1)
    rng = random.Random(args.seed)
    names = [f"{letter}{i}" for letter in "ab" for i in range(1, args.genus + 1)]
    bad = 0
    crossing_bad = 0
    done = 0
    while done < args.samples:
        w1 = tuple((rng.choice(names), rng.choice([-1, 1]))
                   for _ in range(rng.randrange(1, 7)))
        w2 = tuple((rng.choice(names), rng.choice([-1, 1]))
                   for _ in range(rng.randrange(1, 7)))
        try:
            cv = euler.cocycle(group, w1, w2)
        except euler.IllConditionedError:
            continue
        done += 1
        if cv.value not in (-1, 0, 1) or cv.residual >= 1e-6:
            bad += 1
        try:
            if euler.axes_cross(group, w1, w2) and cv.value != 0:
                crossing_bad += 1
        except euler.IllConditionedError:
            pass
    chk.check(f"cocycle {args.samples} samples out of range", bad, 0)
    chk.check("cocycle crossing-axes violations", crossing_bad, 0)


def cmd_verify(args) -> int:
    chk = Checker()
    suites = {
        "theorem": suite_theorem,
        "invariants": suite_invariants,
        "sl2": suite_sl2,
        "cocycle": suite_cocycle,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    for name in names:
        suites[name](args, chk)
    print(f"{chk.count - chk.failures}/{chk.count} checks passed")
    return 1 if chk.failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcgorbits",
        description="Orbit census and certificates for twist actions on "
                    "fiberwise covering spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space_flags(p):
        p.add_argument("--g", type=int, required=True, help="genus (>= 2)")
        p.add_argument("--n", type=int, required=True, help="covering index (>= 1)")
        p.add_argument("--allow-invalid-euler", action="store_true",
                       help="permit n that does not divide 2g-2 (watermarked)")

    p = sub.add_parser("classify", help="canonical class of one element")
    add_space_flags(p)
    p.add_argument("--element", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbits", help="enumerate all orbits exhaustively")
    add_space_flags(p)
    p.add_argument("--gens", choices=GENERATOR_SETS, default=MOD)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("normalize", help="canonical form plus word certificate")
    add_space_flags(p)
    p.add_argument("--element", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("apply", help="apply a twist word to an element")
    add_space_flags(p)
    p.add_argument("--element", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("theorem", "invariants", "sl2",
                                       "cocycle", "all"), required=True)
    p.add_argument("--max-states", type=float, default=1e6,
                   help="largest state space for exhaustive checks")
    p.add_argument("--n", type=int, default=None, help="single modulus for sl2")
    p.add_argument("--genus", type=int, default=2, help="genus for cocycle checks")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cocycle", help="sample cocycle values as JSON")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-len", type=int, default=6)
    p.set_defaults(func=cmd_cocycle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
