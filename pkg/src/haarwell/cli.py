"""``haarwell`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 cap exceeded, 3 pole,
4 a requested check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CapExceededError, ParseError, PoleError
from .exactmath import RationalFunction, evaluate_at
from .integrate import integrate, parse_monomial
from .pairings import loop_type, parse_pairing_pair
from .symmetric import CycleType, Permutation, partitions
from .weingarten import (
    GroupKind,
    TableStore,
    default_cache_dir,
    get_table,
    series_truncation_check,
    series_value,
    uniform_bound_check,
    wg_unitary_character,
    wg_unitary_recursion_check,
    wg_unitary_series,
)
from .weingarten.tables import MAX_FREE_K_NUMERIC, MAX_ORTHOGONAL_K, MAX_UNITARY_K

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_POLE, EXIT_FAIL = 0, 1, 2, 3, 4

log = logging.getLogger("haarwell")


@dataclass
class Config:
    cache_dir: Path | None
    max_unitary_k: int = MAX_UNITARY_K
    max_orthogonal_k: int = MAX_ORTHOGONAL_K
    max_free_k: int = MAX_FREE_K_NUMERIC
    max_series_order: int = 12
    default_samples: int = 100_000
    fmt: str = "plain"

    def __post_init__(self):
        # user caps may tighten the module caps, never loosen them
        self.max_unitary_k = min(self.max_unitary_k, MAX_UNITARY_K)
        self.max_orthogonal_k = min(self.max_orthogonal_k, MAX_ORTHOGONAL_K)
        self.max_free_k = min(self.max_free_k, MAX_FREE_K_NUMERIC)

    def store(self) -> TableStore | None:
        return None if self.cache_dir is None else TableStore(self.cache_dir)

    def check_k(self, group: GroupKind, k: int) -> None:
        cap = {GroupKind.UNITARY: self.max_unitary_k, GroupKind.ORTHOGONAL: self.max_orthogonal_k,
               GroupKind.FREE: self.max_free_k}[group]
        if k > cap:
            raise CapExceededError("k", k, cap)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _add_n(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=_rational, help="evaluate at this n")
    g.add_argument("--symbolic", action="store_true", help="exact rational function in n (default)")


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--json", dest="format", action="store_const", const="json", default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", type=Path, default=argparse.SUPPRESS,
                        help="table cache (default: $HAARWELL_CACHE or ~/.cache/haarwell)")
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS,
                        help="do not read or write the table cache")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    p = _Parser(prog="haarwell", description="Exact Weingarten calculus for U(n), O(n), O_n^+.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    w = add("wg", help="Weingarten values")
    w.add_argument("group")
    w.add_argument("k", type=int)
    w.add_argument("key", nargs="?", default=None,
                   help='permutation "(1 2)" / "e" for unitary, "pi|rho" pairings otherwise')
    _add_n(w)
    w.add_argument("--method", action="append",
                   help="gram (default), character, series:<order>; repeat to cross-check")
    w.add_argument("--all-classes", action="store_true", help="print the whole table")

    i = add("integrate", help="Haar integral of a monomial")
    i.add_argument("group")
    i.add_argument("monomial", help='e.g. "u[1,1] u[2,2] ~u[1,2] ~u[2,1]"')
    _add_n(i)

    v = add("verify", help="run a check suite")
    v.add_argument("suite", help="recursion, bounds, three-path or mc:<samples>")
    v.add_argument("--k", type=int, required=True)
    _add_n(v)
    v.add_argument("--seed", type=int)

    c = add("channel", help="random channel on a Bell state")
    c.add_argument("--n", type=int, default=30)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--t", type=_rational, default=Fraction(1, 2))
    c.add_argument("--samples", type=int, default=1)
    c.add_argument("--seed", type=int, required=True)
    return p


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _emit(cfg: Config, rows: list[dict], plain_lines: list[str], out) -> None:
    if cfg.fmt == "json":
        doc = rows[0] if len(rows) == 1 else rows
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        fields = sorted({k for r in rows for k in r})
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write("\n".join(plain_lines) + "\n")


def _fmt_n(n) -> str | None:
    return None if n is None else str(n)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _table(cfg: Config, group: GroupKind, k: int, n):
    cfg.check_k(group, k)
    if n is not None and n >= 1 and (group is GroupKind.FREE or n.denominator == 1):
        return get_table(group, k, n, store=cfg.store())
    if n is not None and group is not GroupKind.FREE and n.denominator != 1:
        raise ParseError(f"n must be an integer for {group.value}")
    return get_table(group, k, None, store=cfg.store())


def _at(value, n):
    if n is None or not isinstance(value, RationalFunction):
        return value
    return evaluate_at(value, n)


def _wg_keys(group: GroupKind, k: int, table):
    if group is GroupKind.UNITARY:
        return [(str(CycleType(p).representative()), CycleType(p)) for p in partitions(k)]
    if group is GroupKind.ORTHOGONAL:
        return [(",".join(map(str, key)), key) for key in table.values]
    return [(f"{a}|{b}", (a, b)) for a, b in table.values]


def _method_value(method: str, group: GroupKind, k: int, sigma, n, table, cfg: Config):
    if method == "gram":
        return _at(table.values[sigma] if group is not GroupKind.UNITARY else table.wg(sigma), n), None
    if group is not GroupKind.UNITARY:
        raise ParseError(f"method {method!r} is only available for unitary")
    perm = sigma if isinstance(sigma, Permutation) else sigma.representative()
    if method == "character":
        if n is not None and n < 1:
            return evaluate_at(wg_unitary_character(perm), n), None
        return wg_unitary_character(perm, n), None
    if method.startswith("series:"):
        try:
            order = int(method.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad series order in {method!r}") from None
        if order > cfg.max_series_order:
            raise CapExceededError("order", order, cfg.max_series_order)
        if n is None:
            return series_value(wg_unitary_series(perm, order), k), None
        check = series_truncation_check(perm, n, order)
        return check.truncated, check
    raise ParseError(f"unknown method {method!r}")


def cmd_wg(args, cfg: Config, out) -> int:
    group = GroupKind.parse(args.group)
    k, n = args.k, args.n
    table = _table(cfg, group, k, n)
    methods = args.method or ["gram"]
    if args.all_classes:
        keys = _wg_keys(group, k, table)
    else:
        if args.key is None:
            raise ParseError("a permutation or pairing pair is required (or --all-classes)")
        if group is GroupKind.UNITARY:
            sigma = Permutation.parse(args.key, k)
            keys = [(str(sigma), sigma)]
        else:
            pi, rho = parse_pairing_pair(args.key)
            if pi.k != k or rho.k != k:
                raise ParseError(f"pairings must be on {k} points")
            key = loop_type(pi, rho) if group is GroupKind.ORTHOGONAL else (pi, rho)
            keys = [(f"{pi}|{rho}", key)]
    rows, lines, ok = [], [], True
    for label, key in keys:
        values = []
        for m in methods:
            val, check = _method_value(m, group, k, key, n, table, cfg)
            values.append((m, val, check))
            row = {"group": group.value, "k": k, "key": label, "method": m,
                   "mode": "symbolic" if n is None else f"n={n}", "value": str(val)}
            if check is not None:
                row.update(exact=str(check.exact), series_ok=check.ok, ratio=float(check.ratio))
                ok &= check.ok
            rows.append(row)
        exact_vals = [val for m, val, check in values if not m.startswith("series:")]
        agree = all(v == exact_vals[0] for v in exact_vals)
        ok &= agree
        if len(methods) == 1:
            lines.append(str(values[0][1]) if not args.all_classes else f"{label}: {values[0][1]}")
        else:
            for m, val, check in values:
                extra = "" if check is None else f"  (truncation {'ok' if check.ok else 'FAIL'}, ratio {float(check.ratio):.4f})"
                lines.append(f"{label} [{m}]: {val}{extra}")
            if len(exact_vals) > 1:
                diff = exact_vals[0] - exact_vals[1]
                lines.append(f"{label} diff: {diff}")
    _emit(cfg, rows, lines, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_integrate(args, cfg: Config, out) -> int:
    group = GroupKind.parse(args.group)
    q = parse_monomial(args.monomial, group, args.n)
    k = q.degree // 2 if group is GroupKind.UNITARY else q.degree
    cfg.check_k(group, k)
    value = integrate(q, store=cfg.store())
    row = {"group": group.value, "query": str(q), "n": _fmt_n(args.n), "value": str(value)}
    _emit(cfg, [row], [str(value)], out)
    return EXIT_OK


def _verify_recursion(args, cfg, out) -> int:
    rep = wg_unitary_recursion_check(args.k, args.n)
    status = "PASS" if rep.ok else "FAIL"
    row = {"suite": "recursion", "k": args.k, "mode": rep.mode, "checked": rep.checked,
           "violations": len(rep.violations), "status": status}
    lines = [f"recursion k={args.k} {rep.mode}: {rep.checked} permutations, "
             f"{len(rep.violations)} violations -> {status}"]
    lines += [f"  {s}: {d}" for s, d in rep.violations[:10]]
    _emit(cfg, [row], lines, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _verify_bounds(args, cfg, out) -> int:
    if args.n is None:
        raise ParseError("bounds needs --n")
    rep = uniform_bound_check(args.k, int(args.n))
    rows, lines = [], []
    for r in rep.rows:
        rows.append({"suite": "bounds", "k": args.k, "n": int(args.n), "class": list(r.cycle_type),
                     "ratio": str(r.ratio), "lower_ok": r.lower_ok,
                     "upper": None if r.upper_ok is None else r.upper_ok, "tight": r.tight})
        upper = "n/a" if r.upper_ok is None else ("ok" if r.upper_ok else "FAIL")
        lines.append(f"{r.cycle_type}: ratio={float(r.ratio):.10f} lower={'ok' if r.lower_ok else 'FAIL'}"
                     f"{' (tight)' if r.tight else ''} upper={upper}")
    lines.append(f"bounds k={args.k} n={int(args.n)} -> {'PASS' if rep.ok else 'FAIL'}")
    _emit(cfg, rows, lines, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def three_path(k: int, n=None, series_points=(10, 100), order: int | None = None):
    """Gram vs character equality on every class, plus series truncation checks.

    Returns ``(rows, ok)``.
    """
    gram = get_table(GroupKind.UNITARY, k, n if n is None or n >= 1 else None)
    order = order if order is not None else min(4, 12 - k)
    rows, ok = [], True
    for p in partitions(k):
        mu = CycleType(p)
        g = _at(gram.wg(mu), n) if gram.symbolic else gram.wg(mu)
        c = wg_unitary_character(mu, n) if n is None or n >= 1 else evaluate_at(wg_unitary_character(mu), n)
        pts = series_points if n is None else (n,)
        checks = [series_truncation_check(mu.representative(), pt, order) for pt in pts]
        row_ok = g == c and all(ch.ok for ch in checks)
        ok &= row_ok
        rows.append({"class": list(mu), "gram": str(g), "character": str(c), "equal": g == c,
                     "series": [{"n": str(ch.n0), "order": ch.order, "ratio": float(ch.ratio), "ok": ch.ok}
                                for ch in checks]})
    return rows, ok


def _verify_three_path(args, cfg, out) -> int:
    rows, ok = three_path(args.k, args.n)
    lines = []
    for r in rows:
        s = ", ".join(f"n={c['n']} ratio={c['ratio']:.4f} {'ok' if c['ok'] else 'FAIL'}" for c in r["series"])
        lines.append(f"{tuple(r['class'])}: gram {'==' if r['equal'] else '!='} character ({r['gram']}); series {s}")
    lines.append(f"three-path k={args.k} -> {'PASS' if ok else 'FAIL'}")
    _emit(cfg, rows, lines, out)
    return EXIT_OK if ok else EXIT_FAIL


def mc_queries(k: int, n: int) -> list[tuple[str, str]]:
    """Degree-``k`` (per side for unitary) checks at dimension ``n``."""
    qs = [("unitary", " ".join(["u[1,1]"] * k + ["~u[1,1]"] * k)),
          ("orthogonal", " ".join(["u[1,1]"] * (2 * k)))]
    m = min(k, n)
    if m >= 2:
        plain = " ".join(f"u[{i},{i}]" for i in range(1, m + 1))
        conj = " ".join(f"~u[{i},{i % m + 1}]" for i in range(1, m + 1))
        qs.append(("unitary", plain + " " + conj))
        qs.append(("orthogonal", " ".join(f"u[{i},{i}] u[{i},{i}]" for i in range(1, m + 1))))
    return qs


def _verify_mc(args, cfg, out, samples: int) -> int:
    from .montecarlo import RngSpec, moment_report

    if args.seed is None:
        raise ParseError("--seed is required for Monte-Carlo checks")
    if args.n is None or args.n.denominator != 1 or args.n < 1:
        raise ParseError("mc needs an integer --n >= 1")
    n = int(args.n)
    reports = [moment_report(g, m, n, samples, RngSpec(args.seed, i))
               for i, (g, m) in enumerate(mc_queries(args.k, n))]
    failures = sum(not r.ok for r in reports)
    # individual tests at 5 sigma; two simultaneous failures fail the suite
    ok = failures < 2
    rows = [{"query": r.query, "group": r.group, "n": r.n, "samples": r.samples, "seed": r.seed,
             "estimate": r.estimate_re, "se": r.se, "exact": r.exact, "z": r.z} for r in reports]
    lines = [f"{r.group} {r.query}: estimate={r.estimate_re:.6g} se={r.se:.3g} exact={r.exact} "
             f"z={r.z:.2f}{'' if r.ok else ' !'}" for r in reports]
    lines.append(f"mc k={args.k} n={n} samples={samples} seed={args.seed} -> {'PASS' if ok else 'FAIL'}")
    _emit(cfg, rows, lines, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, cfg: Config, out) -> int:
    suite = args.suite
    if suite == "recursion":
        return _verify_recursion(args, cfg, out)
    if suite == "bounds":
        return _verify_bounds(args, cfg, out)
    if suite == "three-path":
        return _verify_three_path(args, cfg, out)
    if suite.startswith("mc:"):
        try:
            samples = int(suite[3:])
        except ValueError:
            raise ParseError(f"bad sample count in {suite!r}") from None
        return _verify_mc(args, cfg, out, samples)
    raise ParseError(f"unknown suite {suite!r}")


def cmd_channel(args, cfg: Config, out) -> int:
    from .montecarlo import RngSpec, channel_demo

    rep = channel_demo(args.n, args.k, args.t, args.samples, RngSpec(args.seed))
    row = {"n": rep.n, "k": rep.k, "t": rep.t, "p": rep.p, "samples": rep.samples, "seed": rep.seed,
           "eigenvalues": rep.eigenvalues, "expected": rep.expected, "rel_errors": rep.rel_errors,
           "next_eigenvalue": rep.next_eigenvalue, "status": "PASS" if rep.ok else "FAIL"}
    lines = [f"channel n={rep.n} k={rep.k} t={rep.t} p={rep.p} samples={rep.samples} seed={rep.seed}"]
    for i, (e, x, r) in enumerate(zip(rep.eigenvalues, rep.expected, rep.rel_errors), start=1):
        lines.append(f"  lambda_{i} = {e:.6f}  expected {x:.6f}  rel.err {r:.4f}")
    lines.append(f"  next eigenvalue = {rep.next_eigenvalue:.3e}")
    lines.append("PASS" if rep.ok else "FAIL")
    _emit(cfg, [row], lines, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


_COMMANDS = {"wg": cmd_wg, "integrate": cmd_integrate, "verify": cmd_verify, "channel": cmd_channel}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    for name, default in (("format", "plain"), ("cache_dir", None), ("no_cache", False), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = Config(None if args.no_cache else (args.cache_dir or default_cache_dir()), fmt=args.format)
    try:
        return _COMMANDS[args.command](args, cfg, out)
    except CapExceededError as exc:
        print(f"haarwell: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PoleError as exc:
        print(f"haarwell: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (ParseError, ValueError) as exc:
        print(f"haarwell: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
