"""Command-line front end: ``redukt classify|check|reduce|kripke|bench``."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .alphabet import ApSet
from .automata import to_dot
from .checker import (TRUE, UNKNOWN, Verdict, check_full, check_semi, classify,
                      default_aps, make_guard, portfolio, verdict_record)
from .errors import Cancelled, InternalError, ReduktError, ResourceLimitExceeded
from .ltl import negate, parse_formula, read_suite, to_text, translate
from .petri import ap_set, build_kripke, format_model, kripke_to_dot, read_model, reduce
from .words import format_word

EXIT_OK, EXIT_VIOLATION, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fixtures_dir() -> Path:
    return Path(str(resources.files("redukt") / "fixtures"))


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(path: str):
    try:
        return read_model(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _verdict_exit(v: Verdict) -> int:
    if v.value == UNKNOWN or not v.trusted:
        return EXIT_UNKNOWN
    return EXIT_OK if v.value == TRUE else EXIT_VIOLATION


def cmd_classify(args) -> int:
    aps = ApSet(args.aps.split(",")) if args.aps else None
    f = parse_formula(args.formula, aps.names if aps else None)
    c = classify(f, aps if aps else default_aps(f))
    fmt = lambda s: f"shortening={str(s.shortening).lower()} lengthening={str(s.lengthening).lower()}"  # noqa: E731
    print(f"{to_text(f)}: {fmt(c.phi)}")
    print(f"{to_text(negate(f))}: {fmt(c.neg_phi)}")
    if args.json:
        _write(args.json, _dump_json({"formula": to_text(f), "sensitivityOfPhi": c.phi.as_dict(),
                                      "sensitivityOfNegPhi": c.neg_phi.as_dict()}))
    return EXIT_OK


def cmd_check(args) -> int:
    net, props = _load(args.net)
    aps = ap_set(props)
    f = parse_formula(args.formula, aps.names)
    if args.mode == "portfolio":
        v = portfolio(net, props, f, args.state_limit, args.timeout_ms)
    else:
        fn = check_semi if args.mode == "semi" else check_full
        v = fn(net, props, f, args.state_limit, make_guard(args.timeout_ms))
    line = f"{v.value} {'trusted' if v.trusted else 'untrusted'}"
    if v.witness is not None:
        line += f" witness={format_word(v.witness.word, aps.names)}"
    if "note" in v.stats:
        line += f" ({v.stats['note']})"
    print(line)
    if args.json:
        _write(args.json, _dump_json(verdict_record(v, aps)))
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        target = reduce(net, props)[0] if args.mode == "semi" else net
        (out / "kripke.dot").write_text(kripke_to_dot(build_kripke(target, props, args.state_limit)))
        (out / "negation.dot").write_text(to_dot(translate(negate(f), aps), "negation"))
    return _verdict_exit(v)


def cmd_reduce(args) -> int:
    net, props = _load(args.net)
    red, report = reduce(net, props)
    _write(args.output, format_model(red, props))
    rep = report.as_dict()
    print(f"places {rep['placesBefore']} -> {rep['placesAfter']}, "
          f"transitions {rep['transitionsBefore']} -> {rep['transitionsAfter']}, "
          f"{len(rep['steps'])} rule applications", file=sys.stderr)
    if args.json:
        _write(args.json, _dump_json(rep))
    return EXIT_OK


def cmd_kripke(args) -> int:
    net, props = _load(args.net)
    if args.reduced:
        net = reduce(net, props)[0]
    ks = build_kripke(net, props, args.state_limit)
    _write(args.output, kripke_to_dot(ks, net.name.replace(".", "_") or "kripke"))
    return EXIT_OK


@dataclass(frozen=True)
class BenchRecord:
    modelPath: str
    formulaText: str
    sensitivityOfPhi: Optional[dict]
    sensitivityOfNegPhi: Optional[dict]
    verdictSemi: dict
    verdictFull: dict
    agreement: str
    timings: dict


def agreement(semi: Verdict, full: Verdict) -> str:
    if semi.value == UNKNOWN or full.value == UNKNOWN:
        return "timeout"
    if semi.trusted:
        if semi.value != full.value:
            raise InternalError("trusted reduced verdict disagrees with the unreduced one")
        return "trusted-match"
    return "untrusted-match" if semi.value == full.value else "untrusted-mismatch"


def _brief(v: Verdict, aps: ApSet) -> dict:
    out = {"value": v.value, "trusted": v.trusted,
           "ksStates": v.stats.get("ksStates"), "productStates": v.stats.get("productStates")}
    if v.witness is not None:
        out["witness"] = format_word(v.witness.word, aps.names)
    if "note" in v.stats:
        out["note"] = v.stats["note"]
    return out


def bench_pair(model_path: str, formula_text: str, state_limit: int,
               timeout_ms: Optional[float]) -> BenchRecord:
    net, props = read_model(model_path)
    aps = ap_set(props)
    f = parse_formula(formula_text, aps.names)
    semi = check_semi(net, props, f, state_limit, make_guard(timeout_ms))
    full = check_full(net, props, f, state_limit, make_guard(timeout_ms))
    cls = semi.classification or full.classification
    return BenchRecord(
        model_path, to_text(f),
        cls.phi.as_dict() if cls else None, cls.neg_phi.as_dict() if cls else None,
        _brief(semi, aps), _brief(full, aps), agreement(semi, full),
        {"semiMs": semi.stats.get("wallTimeMs"), "fullMs": full.stats.get("wallTimeMs")},
    )


def _bench_task(task):
    return bench_pair(*task)


def bench_summary(records: Sequence[BenchRecord]) -> dict:
    buckets = ("trusted-match", "untrusted-match", "untrusted-mismatch", "timeout")
    n = len(records)
    counts = {b: sum(r.agreement == b for r in records) for b in buckets}
    return {"pairs": n, "counts": counts,
            "percent": {b: (100.0 * c / n if n else 0.0) for b, c in counts.items()}}


def cmd_bench(args) -> int:
    root = Path(args.dir) if args.dir else fixtures_dir()
    models = sorted(str(p) for p in root.glob("*.rnet"))
    if not models:
        raise UsageError(f"no .rnet files in {root}")
    suite_path = Path(args.formulas) if args.formulas else fixtures_dir() / "suite.ltl"
    try:
        texts = [text for text, _ in read_suite(suite_path.read_text(encoding="utf-8"))]
    except OSError as exc:
        raise UsageError(f"cannot read {suite_path}: {exc.strerror}") from exc
    tasks = [(m, t, args.state_limit, args.timeout_ms) for m in models for t in texts]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_bench_task, tasks))
    else:
        records = [_bench_task(t) for t in tasks]
    summary = bench_summary(records)
    for b, c in summary["counts"].items():
        print(f"{b:20s} {c:5d}  {summary['percent'][b]:6.2f}%")
    print(f"{'total':20s} {summary['pairs']:5d}")
    if args.json:
        _write(args.json, _dump_json({"records": [asdict(r) for r in records], "summary": summary}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="redukt", description="Stutter-sensitivity aware LTL checking of Petri nets.")
    p.add_argument("--version", action="version", version=f"redukt {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, net=True):
        if net:
            sp.add_argument("--net", required=True, help=".rnet model file")
        sp.add_argument("--state-limit", type=int, default=1_000_000, help="maximum reachable markings")
        sp.add_argument("--timeout-ms", type=float, default=None, help="per-arm time budget")

    c = sub.add_parser("classify", help="shortening/lengthening insensitivity of a formula")
    c.add_argument("-f", "--formula", required=True)
    c.add_argument("--aps", help="comma-separated atomic propositions (default: those of the formula)")
    c.add_argument("--json")
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("check", help="model check a formula on a net")
    common(k)
    k.add_argument("-f", "--formula", required=True)
    k.add_argument("--mode", choices=("semi", "full", "portfolio"), default="portfolio")
    k.add_argument("--json")
    k.add_argument("--dot", help="directory for DOT dumps of the Kripke structure and negation automaton")
    k.set_defaults(func=cmd_check)

    r = sub.add_parser("reduce", help="apply agglomerations and print the reduced net")
    r.add_argument("--net", required=True)
    r.add_argument("-o", "--output")
    r.add_argument("--json", help="write the reduction report here")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("kripke", help="DOT dump of the reachability graph")
    common(g)
    g.add_argument("--reduced", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_kripke)

    b = sub.add_parser("bench", help="reduced vs. unreduced checks over models x formulas")
    common(b, net=False)
    b.add_argument("--dir", help="directory of .rnet files (default: bundled fixtures)")
    b.add_argument("--formulas", help="one formula per line (default: bundled suite)")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--json")
    b.set_defaults(func=cmd_bench)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "state_limit", 1) < 1:
            raise UsageError("--state-limit must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"redukt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"redukt: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ResourceLimitExceeded, Cancelled) as exc:
        # outside a check, e.g. while building a Kripke structure for a dump
        print(f"redukt: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (ReduktError, ValueError) as exc:
        print(f"redukt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
