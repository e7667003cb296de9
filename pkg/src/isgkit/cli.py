"""Command-line interface: ``isgkit check | gen | info | replay``.

Exit codes: 0 law holds (possibly within budget), 1 law fails, 2 usage or
input error, 3 the law's hypothesis (infinite distributivity) was not
established.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import verify
from .budget import BudgetError, SubsetBudget
from .constructors import FAMILIES, FamilySpec
from .core import SemigroupError
from .io import (
    combined_digest,
    digest,
    emit_report,
    emit_semigroup,
    load_input,
    parse_report,
    sidecar_path,
)
from .order import NaturalOrder
from .verify import Verdict

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3

LAWS = {
    "distributive": verify.DISTRIBUTIVITY,
    "lemma1": verify.LEMMA1,
    "lemma2": verify.LEMMA2,
    "theorem": verify.THEOREM,
    "prop17": verify.PROP17,
    "prop20": verify.PROP20,
}


class UsageError(Exception):
    pass


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isgkit", description="Finite inverse semigroups: orders, joins, meets and law checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check a law and write a report")
    check.add_argument("inputs", nargs="+", metavar="INPUT",
                       help="semigroup file or builtin:<name>; prop20 accepts several")
    check.add_argument("--law", required=True, choices=sorted(LAWS))
    check.add_argument("--exhaustive", action="store_true",
                       help="enumerate every subset (fails if over the ceiling)")
    check.add_argument("--max-subset-size", type=_nonneg, metavar="K",
                       help="bounded mode: all subsets of size <= K")
    check.add_argument("--samples", type=_nonneg, metavar="N", help="random larger subsets")
    check.add_argument("--seed", type=int, default=0, metavar="W")
    check.add_argument("--include-empty-set", type=_bool, default=True, metavar="BOOL")
    check.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    gen = sub.add_parser("gen", help="write a semigroup file for a constructor family")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--n", type=int)
    gen.add_argument("--name", help="builtin fixture name (with --family builtin)")
    gen.add_argument("--table", metavar="PATH", help="JSON meet table (with --family semilattice)")
    gen.add_argument("--labels", metavar="L1,L2,...", help="comma-separated semilattice labels")
    gen.add_argument("--inner", metavar="INPUT", help="inner semigroup (with --family adjoin-zero)")
    gen.add_argument("--out", metavar="PATH")

    info = sub.add_parser("info", help="summarize a semigroup")
    info.add_argument("input", metavar="INPUT")
    info.add_argument("--json", action="store_true", help="structured output")

    replay = sub.add_parser("replay", help="re-check a report's digest and witness")
    replay.add_argument("report", metavar="REPORT")
    replay.add_argument("inputs", nargs="+", metavar="INPUT")
    return parser


def _budget(args) -> Optional[SubsetBudget]:
    bounded = args.max_subset_size is not None or args.samples is not None
    if args.exhaustive and bounded:
        flag = "--max-subset-size" if args.max_subset_size is not None else "--samples"
        raise UsageError(f"--exhaustive conflicts with {flag}")
    if args.exhaustive:
        return SubsetBudget.exhaustive(include_empty_set=args.include_empty_set)
    if bounded:
        return SubsetBudget.bounded(
            max_subset_size=3 if args.max_subset_size is None else args.max_subset_size,
            sample_count=args.samples or 0,
            seed=args.seed,
            include_empty_set=args.include_empty_set,
        )
    return None


def run_law(law: str, corpus, budget: Optional[SubsetBudget], include_empty_set: bool = True):
    if law == verify.PROP20:
        return verify.check_prop20_corpus(corpus, budget, include_empty_set=include_empty_set)
    (S,) = corpus
    if budget is None and law != verify.LEMMA1:
        budget = SubsetBudget.default_for(S.size, include_empty_set=include_empty_set)
    order = NaturalOrder(S)
    if law == verify.DISTRIBUTIVITY:
        return verify.is_infinitely_distributive(S, budget, order=order)
    if law == verify.LEMMA1:
        return verify.check_lemma1(S, order=order)
    if law == verify.LEMMA2:
        return verify.check_lemma2(S, budget, order=order)
    if law == verify.THEOREM:
        return verify.check_theorem(S, budget, order=order)
    if law == verify.PROP17:
        return verify.check_prop17(S, budget, order=order)
    raise ValueError(law)


def exit_code(verdict: Verdict) -> int:
    if verdict is Verdict.FAILS:
        return EXIT_FAILS
    if verdict is Verdict.HYPOTHESIS_NOT_ESTABLISHED:
        return EXIT_HYPOTHESIS
    return EXIT_HOLDS


def _write(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_check(args) -> int:
    law = LAWS[args.law]
    if law != verify.PROP20 and len(args.inputs) != 1:
        raise UsageError(f"--law {args.law} takes exactly one INPUT")
    budget = _budget(args)
    corpus = [load_input(ref) for ref in args.inputs]
    if law == verify.PROP20:
        names = [S.metadata.get("name") or ref for S, ref in zip(corpus, args.inputs)]
        corpus = [S.with_metadata(name=str(n)) for S, n in zip(corpus, names)]
    report = run_law(law, corpus, budget, args.include_empty_set)
    _write(emit_report(report, combined_digest(corpus)), args.out)
    print(f"{args.law}: {report.verdict.value} ({report.cases_checked} cases)", file=sys.stderr)
    return exit_code(report.verdict)


def cmd_gen(args) -> int:
    table = labels = inner = None
    if args.table:
        table = json.loads(Path(args.table).read_text())
    if args.labels:
        labels = args.labels.split(",")
    if args.inner:
        inner = load_input(args.inner)
    spec = FamilySpec(args.family, n=args.n, table=table, labels=labels, inner=inner, name=args.name)
    S = spec.build()
    _write(emit_semigroup(S), args.out)
    summary = f"generated {args.family}: size {S.size}"
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_HOLDS


def summarize(S, ref: Optional[str] = None) -> dict:
    order = NaturalOrder(S)
    comparable = order.comparable_pairs()
    zero = S.zero()
    cached = {}
    if ref is not None:
        d = digest(S)
        for name, law in LAWS.items():
            path = sidecar_path(ref, law)
            if path is None or not path.exists():
                continue
            try:
                rep = parse_report(path.read_bytes())
            except (SemigroupError, ValueError):
                cached[name] = "unreadable"
                continue
            cached[name] = rep["verdict"] if rep["input_digest"] == d else "stale"
    return {
        "size": S.size,
        "idempotents": len(S.idempotents()),
        "has_zero": zero is not None,
        "zero": None if zero is None else S.labels[zero],
        "comparable_pairs": comparable,
        "strict_comparable_pairs": comparable - S.size,
        "cached_verdicts": cached,
        "digest": digest(S),
    }


def cmd_info(args) -> int:
    S = load_input(args.input)
    info = summarize(S, args.input)
    if args.json:
        print(json.dumps(info, indent=2))
        return EXIT_HOLDS
    print(f"size: {info['size']}")
    print(f"idempotents: {info['idempotents']}")
    zero = f"yes ({info['zero']})" if info["has_zero"] else "no"
    print(f"has zero: {zero}")
    print(f"comparable pairs: {info['comparable_pairs']} "
          f"(strict: {info['strict_comparable_pairs']})")
    if info["cached_verdicts"]:
        for name, verdict in sorted(info["cached_verdicts"].items()):
            print(f"cached {name}: {verdict}")
    else:
        print("cached verdicts: none")
    return EXIT_HOLDS


def cmd_replay(args) -> int:
    report = parse_report(Path(args.report).read_bytes())
    corpus = [load_input(ref) for ref in args.inputs]
    if combined_digest(corpus) != report["input_digest"]:
        print("input digest mismatch: report does not belong to this input", file=sys.stderr)
        return EXIT_USAGE
    witness = report["witness"]
    if witness is None:
        print(f"{report['law']}: {report['verdict']}, no witness to replay")
        return EXIT_HOLDS
    law = report["law"]
    S = corpus[witness["member"]] if law == verify.PROP20 else corpus[0]
    if verify.replay_witness(S, law, witness):
        print(f"{law}: witness reproduces the violation")
        return EXIT_HOLDS
    print(f"{law}: witness does NOT reproduce", file=sys.stderr)
    return EXIT_FAILS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"check": cmd_check, "gen": cmd_gen, "info": cmd_info, "replay": cmd_replay}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SemigroupError, BudgetError, ValueError, OSError) as exc:
        print(f"isgkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
