"""Command-line surface: qprof check / order / interval / bounds / fano / table.

JSON-emitting commands print one envelope object:

    {"command": ..., "q": ..., "result": ..., "cache": ..., "timing_ms": ...}

with "q" only when the computation used it, "cache" only for cached commands,
and "timing_ms" only under --timing (wall time is not deterministic; every
other byte of the envelope is, for fixed inputs and cache state).  Magnitudes
that can exceed 2^53 (r0, r, n1, n2, n0, delta, gamma, thresholds) are
decimal strings so any JSON consumer survives them; ambient inputs (n, r, q)
stay JSON integers.

Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or parse
error, 3 resource cap exceeded, 4 cache I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .bounds import (
    CLASSICAL_N0_REFERENCE,
    DEFAULT_NODE_CAP,
    BoundsRecord,
    n0,
    n0_auto,
)
from .cache import BoundsCache, CacheError, default_cache_path
from .errors import ResourceCapError
from .fano import dominance, fano_verdict, plane_cover_thresholds
from .orderings import contains, prec, squig
from .poset import DEFAULT_NODE_CAP as INTERVAL_NODE_CAP
from .poset import interval
from .primes import PrimePower
from .profiles import (
    ParseError,
    is_profile,
    parse_multiprofile,
    parse_profile,
    render_profile,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_CACHE = 4


def _emit(
    command: str,
    result: object,
    *,
    q: int | None = None,
    cache: dict | None = None,
    timing_ms: int | None = None,
) -> None:
    envelope: dict = {"command": command, "result": result}
    if q is not None:
        envelope["q"] = q
    if cache is not None:
        envelope["cache"] = cache
    if timing_ms is not None:
        envelope["timing_ms"] = timing_ms
    print(json.dumps(envelope, sort_keys=True, indent=2))


def _fraction_obj(value: Fraction) -> dict:
    obj: dict = {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "integral": value.denominator == 1,
    }
    if value.denominator == 1:
        obj["value"] = str(value.numerator)
    return obj


def _prime_power(value: int) -> PrimePower:
    try:
        return PrimePower.from_q(value)
    except ValueError as err:
        raise _Usage(str(err)) from err


class _Usage(Exception):
    """Command-layer usage error (beyond argparse's grammar checks)."""


# --- subcommands -------------------------------------------------------------


def _cmd_check(args: argparse.Namespace) -> int:
    q = _prime_power(args.q)
    profile = parse_profile(args.profile)
    if profile.is_zero:
        raise _Usage("the zero polynomial is not a candidate profile")
    started = time.perf_counter()
    ok, witness = is_profile(profile, q)
    payload: dict = {"profile": render_profile(profile), "is_profile": ok}
    if witness is None:
        payload["witness"] = None
    else:
        b1, b2 = witness
        payload["witness"] = {
            "pair": [render_profile(b1), render_profile(b2)],
            "value": str(b1(q.q)),
        }
    _emit(
        "check",
        payload,
        q=q.q,
        timing_ms=_elapsed(args, started),
    )
    return EXIT_OK if ok else EXIT_FALSE


def _cmd_order(args: argparse.Namespace) -> int:
    a = parse_profile(args.a)
    b = parse_profile(args.b)
    if a.is_zero or b.is_zero:
        raise _Usage("order relations compare nonzero polynomials")
    q: PrimePower | None = None
    if args.relation in ("contain", "squig"):
        if args.q is None:
            raise _Usage(f"--q is required for --relation {args.relation}")
        q = _prime_power(args.q)
    started = time.perf_counter()
    if args.relation == "prec":
        verdict = prec(a, b)
    elif args.relation == "contain":
        verdict = contains(a, b, q)
    else:
        verdict = squig(a, b, q)
    payload = {"a": render_profile(a), "b": render_profile(b)}
    payload.update(verdict.to_json_obj())
    _emit(
        "order",
        payload,
        q=None if q is None else q.q,
        timing_ms=_elapsed(args, started),
    )
    return EXIT_OK if verdict.holds else EXIT_FALSE


def _cmd_interval(args: argparse.Namespace) -> int:
    mp = parse_multiprofile(args.multiprofile)
    started = time.perf_counter()
    graph = interval(mp, max_nodes=args.max_nodes)
    if args.format == "text":
        print(graph.to_text())
    elif args.format == "dot":
        sys.stdout.write(graph.to_dot())
    else:
        _emit("interval", graph.to_json_obj(), timing_ms=_elapsed(args, started))
    return EXIT_OK


def _bounds_payload(record: BoundsRecord) -> dict:
    return {
        "key": record.key,
        "r0": str(record.r0),
        "r": str(record.r),
        "n1": str(record.n1),
        "n2": str(record.n2),
        "n0": str(record.n0),
    }


def _cmd_bounds(args: argparse.Namespace) -> int:
    mp = parse_multiprofile(args.multiprofile)
    cache = BoundsCache(args.cache if args.cache else default_cache_path())
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    started = time.perf_counter()
    opts = dict(cache=cache, node_cap=args.node_cap, trace=trace)
    record = n0(mp, args.r, **opts) if args.r is not None else n0_auto(mp, **opts)
    _emit(
        "bounds",
        _bounds_payload(record),
        cache=cache.stats(),
        timing_ms=_elapsed(args, started),
    )
    return EXIT_OK


def _cmd_fano(args: argparse.Namespace) -> int:
    mp = parse_multiprofile(args.multiprofile)
    if not 0 <= args.r <= args.n:
        raise _Usage(f"need n >= r >= 0, got n={args.n}, r={args.r}")
    q = _prime_power(args.q) if args.q is not None else None
    started = time.perf_counter()
    report = fano_verdict(args.n, mp, args.r, q)
    payload: dict = {
        "input": mp.key(),
        "n": report.n,
        "r": report.r,
        "delta": str(report.delta),
        "delta_minus": str(report.delta_minus),
        "verdict": report.verdict,
        "dominance": dominance(args.n, mp),
    }
    if args.r >= 1:
        first, second = plane_cover_thresholds(mp, args.r)
        payload["plane_cover"] = {
            "holds": args.n >= first and args.n >= second,
            "first_threshold": str(first),
            "second_threshold": _fraction_obj(second),
        }
    else:
        payload["plane_cover"] = None
    if report.gamma is not None:
        payload["gamma"] = _fraction_obj(report.gamma)
        payload["canonical_exponent"] = (
            None
            if report.canonical_exponent is None
            else str(report.canonical_exponent)
        )
    _emit(
        "fano",
        payload,
        q=None if q is None else q.q,
        timing_ms=_elapsed(args, started),
    )
    return EXIT_OK


def _parse_degree_range(text: str) -> tuple[int, int]:
    lo_text, sep, hi_text = text.partition("..")
    if not sep:
        raise _Usage(f"--degrees expects LO..HI, got {text!r}")
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as err:
        raise _Usage(f"--degrees expects integers, got {text!r}") from err
    if lo < 2:
        raise _Usage(f"--degrees needs LO >= 2, got {lo}")
    if hi < lo:
        raise _Usage(f"--degrees needs HI >= LO, got {text!r}")
    return lo, hi


_PRESET_EXTRAS = ["[1+t]", "[2,1+t]", "[1+t,1+t]", "[1+t+t^2]"]


def _cmd_table(args: argparse.Namespace) -> int:
    cache = BoundsCache(args.cache if args.cache else default_cache_path())
    rows: list[tuple[str, str, str]] = []
    capped = False
    if args.preset == "full":
        degrees = range(3, 11)
        extras = list(_PRESET_EXTRAS)
    else:
        lo, hi = _parse_degree_range(args.degrees)
        degrees = range(lo, hi + 1)
        extras = []
    inputs = [(str(d), f"[{d}]", CLASSICAL_N0_REFERENCE.get(d, "-")) for d in degrees]
    inputs += [(None, text, "-") for text in extras]
    for label, text, classical in inputs:
        mp = parse_multiprofile(text)
        shown = label if label is not None else mp.display()
        try:
            record = n0_auto(mp, cache=cache, node_cap=args.node_cap)
        except ResourceCapError as err:
            rows.append((shown, f"cap exceeded ({err.cap} nodes)", classical))
            capped = True
        else:
            rows.append((shown, str(record.n0), classical))
    header = ("d", "n0", "classical")
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(3)
    ]
    lines = ["  ".join(header[i].ljust(widths[i]) for i in range(3)).rstrip()]
    for row in rows:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(3)).rstrip())
    print("\n".join(lines))
    return EXIT_CAP if capped else EXIT_OK


def _elapsed(args: argparse.Namespace, started: float) -> int | None:
    if not getattr(args, "timing", False):
        return None
    return int((time.perf_counter() - started) * 1000)


# --- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qprof",
        description=(
            "Profile calculus over a prime power q: validity, order "
            "relations, cover intervals, plane-scheme numerics, and "
            "recursive dimension thresholds."
        ),
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="decide whether a polynomial is a profile")
    p.add_argument("profile", help="profile text, e.g. 't^2+3' or '2t+1'")
    p.add_argument("--q", type=int, required=True, help="prime power")
    p.add_argument("--timing", action="store_true", help="include timing_ms")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("order", help="compare two profiles under a relation")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument(
        "--relation", required=True, choices=["prec", "contain", "squig"]
    )
    p.add_argument("--q", type=int, help="prime power (contain/squig only)")
    p.add_argument("--timing", action="store_true", help="include timing_ms")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("interval", help="Hasse diagram of the cover interval")
    p.add_argument("multiprofile", help="multi-profile text, e.g. '[6]'")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument(
        "--max-nodes",
        type=int,
        default=INTERVAL_NODE_CAP,
        help=f"node cap (default {INTERVAL_NODE_CAP})",
    )
    p.add_argument("--timing", action="store_true", help="include timing_ms")
    p.set_defaults(func=_cmd_interval)

    p = sub.add_parser("bounds", help="r0, r, n1, n2, n0 for a multi-profile")
    p.add_argument("multiprofile")
    p.add_argument(
        "--r", type=int, default=None, help="explicit budget (default: r(a))"
    )
    p.add_argument("--trace", action="store_true", help="recursion tree to stderr")
    p.add_argument(
        "--cache", default=None, help="cache file (default: user cache dir)"
    )
    p.add_argument(
        "--node-cap",
        type=int,
        default=DEFAULT_NODE_CAP,
        help=f"walk node cap (default {DEFAULT_NODE_CAP})",
    )
    p.add_argument("--timing", action="store_true", help="include timing_ms")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("fano", help="plane-scheme numerics at (n, r)")
    p.add_argument("multiprofile")
    p.add_argument("--n", type=int, required=True, help="ambient dimension")
    p.add_argument("--r", type=int, required=True, help="plane dimension")
    p.add_argument("--q", type=int, help="prime power (enables gamma)")
    p.add_argument("--timing", action="store_true", help="include timing_ms")
    p.set_defaults(func=_cmd_fano)

    p = sub.add_parser("table", help="n0 by degree with classical reference")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--degrees", help="range LO..HI with LO >= 2")
    group.add_argument("--preset", choices=["full"])
    p.add_argument(
        "--cache", default=None, help="cache file (default: user cache dir)"
    )
    p.add_argument(
        "--node-cap",
        type=int,
        default=DEFAULT_NODE_CAP,
        help=f"walk node cap per row (default {DEFAULT_NODE_CAP})",
    )
    p.set_defaults(func=_cmd_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as err:
        print(f"qprof: parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except _Usage as err:
        print(f"qprof: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"qprof: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as err:
        print(f"qprof: {err}", file=sys.stderr)
        return EXIT_CAP
    except CacheError as err:
        print(f"qprof: cache error: {err}", file=sys.stderr)
        return EXIT_CACHE


if __name__ == "__main__":
    sys.exit(main())
