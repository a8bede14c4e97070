"""Command-line front end.

    monopot eval   --m 2 --potential A:-1 --point 1,0,0
    monopot eval   --m 3 --potential C:-2 --points pts.csv --format csv
    monopot table  --m 3 --series a --k -3..3
    monopot verify --m 3 --suite lemma
    monopot jump   --m 2 --n -1

Payloads go to stdout, diagnostics to stderr. Exit status is 0 on success,
1 when a verification fails and 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .boundary import boundary_value, lemma_check
from .clifford import AlgebraContext, blade_label
from .distributions import make_normalized, pair
from .hyperfunctions import (
    QuadratureConfig,
    fd_dirac,
    fd_dirac_residual,
    jump_check,
    point_battery,
)
from .potentials import PotentialId, eval_batch, is_available, parse_potential
from .special import sigma
from .testfunctions import GaussPolyTestFunction

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("monopot")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input parsing


def parse_range(text: str) -> list[int]:
    """'3', '-3..3' or '1,2,5'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse index range {text!r}") from None


def parse_point(text: str, m: int) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}") from None
    if len(vals) != m + 1:
        raise UsageError(f"point {text!r} has {len(vals)} coordinates, expected {m + 1}")
    return np.array(vals)


def read_points_csv(stream, m: int) -> np.ndarray:
    """Header x0,x1,...,xm then one point per row; bad rows are reported by line."""
    reader = csv.reader(stream)
    expected = [f"x{j}" for j in range(m + 1)]
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise UsageError("points file is empty") from None
    if header != expected:
        raise UsageError(f"line 1: header must be {','.join(expected)}, got {','.join(header)}")
    rows, problems = [], []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != m + 1:
            problems.append(f"line {line}: expected {m + 1} fields, got {len(row)}")
            continue
        try:
            vals = [float(c) for c in row]
        except ValueError:
            problems.append(f"line {line}: non-numeric field in {row!r}")
            continue
        if not all(np.isfinite(vals)):
            problems.append(f"line {line}: non-finite coordinate")
            continue
        rows.append(vals)
    if problems:
        raise UsageError("malformed points file:\n  " + "\n  ".join(problems))
    if not rows:
        raise UsageError("points file has no data rows")
    return np.array(rows)


def thread_count(arg: int | None) -> int:
    env = os.environ.get("MONOPOT_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"MONOPOT_THREADS must be an integer, got {env!r}") from None
    else:
        n = arg or 1
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


# ---------------------------------------------------------------- commands


def _labels(m: int) -> list[str]:
    return [blade_label(i) for i in range(1 << (m + 1))]


def cmd_eval(args) -> tuple[dict, int]:
    m = args.m
    try:
        pid = parse_potential(args.potential)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not is_available(pid.k, m):
        raise UsageError(f"{pid} has no evaluator for m={m}")
    if args.point:
        pts = np.array([parse_point(p, m) for p in args.point])
    elif args.points:
        if args.points == "-":
            pts = read_points_csv(sys.stdin, m)
        else:
            try:
                with open(args.points, newline="") as fh:
                    pts = read_points_csv(fh, m)
            except OSError as exc:
                raise UsageError(f"cannot read {args.points}: {exc.strerror}") from None
    else:
        raise UsageError("eval needs --point or --points")
    threads = thread_count(args.threads)
    chunks = np.array_split(pts, min(threads, len(pts)))
    try:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = np.concatenate(list(pool.map(lambda c: eval_batch(pid, c, m), chunks)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    labels = _labels(m)
    return {
        "command": "eval",
        "m": m,
        "potential": str(pid),
        "blades": labels,
        "points": pts.tolist(),
        "values": values.tolist(),
    }, EXIT_OK


def cmd_table(args) -> tuple[dict, int]:
    rows = []
    sides = ["+", "-"] if args.side == "both" else [args.side]
    for k in parse_range(args.k):
        for side in sides:
            T = boundary_value(args.series, k, side, args.m)
            rows.append({"series": args.series, "k": k, "side": side, "distribution": T.pretty()})
    return {"command": "table", "m": args.m, "rows": rows}, EXIT_OK


def _suite_monogenic(m: int, count: int, tol: float) -> list[dict]:
    out = []
    ks = [-5, -4, -3, -2, -1, 0, 1, 2]
    for k in ks:
        if not is_available(k, m):
            continue
        pid = PotentialId("C", k)
        for side, seed in ((1, 11), (-1, 12)):
            pts = point_battery(m, count, seed=seed, side=side)
            rep = fd_dirac_residual(pid, pts, m)
            out.append({"check": "monogenic", "id": str(pid), "half": "upper" if side > 0 else "lower",
                        "value": rep["max"], "passed": rep["max"] <= tol})
            if k >= 0:
                g = eval_batch(PotentialId("C", k - 1), pts, m)
                d = fd_dirac(pid, pts, m, conjugated=True)
                err = float(np.max(np.linalg.norm(d - g, axis=1) / np.linalg.norm(g, axis=1)))
                out.append({"check": "chain", "id": str(pid), "half": "upper" if side > 0 else "lower",
                            "value": err, "passed": err <= tol})
    return out


def _suite_pairs(m: int, tol: float) -> list[dict]:
    ctx = AlgebraContext(m)
    g = GaussPolyTestFunction.gaussian(ctx)
    xg = GaussPolyTestFunction.xvec_gaussian(ctx)
    out = []
    for lam in np.arange(-m - 4, 4.0 + 1e-9, 0.5):
        t = pair(make_normalized("T", float(lam), m), g).scalar_part()
        want_t = sigma(m) / 2 * np.pi ** ((lam + m) / 2)
        u = pair(make_normalized("U", float(lam), m), xg).scalar_part()
        want_u = -sigma(m) / 2 * np.pi ** ((lam + m + 1) / 2)
        for fam, got, want in (("T", t, want_t), ("U", u, want_u)):
            err = abs(got - want)
            out.append({"check": f"pairing {fam}*", "lambda": float(lam), "value": float(err), "passed": err <= tol})
    return out


def _suite_lemma(m: int, kmax: int) -> list[dict]:
    out = []
    for k in range(1, kmax + 1):
        rep = lemma_check(k, m)
        for row in rep.rows:
            extra = {("method" if x == "check" else x): row[x] for x in row if x != "part"}
            out.append({**extra, "check": f"lemma ({row['part']})", "k": k})
    return out


def cmd_verify(args) -> tuple[dict, int]:
    suites = ["monogenic", "pairs", "lemma"] if args.suite == "all" else [args.suite]
    results = {}
    for s in suites:
        log.info("running suite %s for m=%d", s, args.m)
        if s == "monogenic":
            results[s] = _suite_monogenic(args.m, args.count, args.tol if args.tol is not None else 1e-5)
        elif s == "pairs":
            results[s] = _suite_pairs(args.m, args.tol if args.tol is not None else 1e-10)
        else:
            results[s] = _suite_lemma(args.m, args.kmax)
    passed = all(r["passed"] for rows in results.values() for r in rows)
    return {"command": "verify", "m": args.m, "passed": passed, "suites": results}, EXIT_OK if passed else EXIT_FAIL


def cmd_jump(args) -> tuple[dict, int]:
    kw = {}
    if args.ladder:
        try:
            kw["x0_ladder"] = tuple(float(t) for t in args.ladder.split(","))
        except ValueError:
            raise UsageError(f"cannot parse ladder {args.ladder!r}") from None
    if args.order is not None:
        kw["richardson_order"] = args.order
    try:
        cfg = QuadratureConfig(**kw)
        rep = jump_check(args.n, args.m, cfg, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"command": "jump", **rep}, EXIT_OK if rep["passed"] else EXIT_FAIL


# ---------------------------------------------------------------- output


def _flatten_rows(payload: dict) -> tuple[list[str], list[list]]:
    cmd = payload["command"]
    if cmd == "eval":
        m = payload["m"]
        head = [f"x{j}" for j in range(m + 1)] + payload["blades"]
        return head, [p + v for p, v in zip(payload["points"], payload["values"])]
    if cmd == "table":
        head = ["series", "k", "side", "distribution"]
        return head, [[r[h] for h in head] for r in payload["rows"]]
    if cmd == "verify":
        head = ["suite", "check", "value", "passed"]
        rows = []
        for suite, items in payload["suites"].items():
            for r in items:
                rows.append([suite, r["check"], r.get("value", r.get("error", "")), r["passed"]])
        return head, rows
    head = ["n", "m", "phi_id", "kind", "relation", "rel_err", "applicable", "passed"]
    return head, [[r[h] for h in head] for r in payload["rows"]]


def emit(payload: dict, fmt: str, stream) -> None:
    if fmt == "json":
        json.dump({"schema": SCHEMA, **payload}, stream, indent=2, default=_json_default)
        stream.write("\n")
        return
    if fmt == "text" and payload["command"] == "table":
        for r in payload["rows"]:
            stream.write(f"{r['series']}_{r['k']}^{r['side']}: {r['distribution']}\n")
        return
    head, rows = _flatten_rows(payload)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    w.writerows(rows)
    stream.write(buf.getvalue())


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monopot", description="Monogenic potentials and their boundary values.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--m", type=int, required=True, help="boundary dimension (>= 2)")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    e = sub.add_parser("eval", help="evaluate a potential at points")
    common(e)
    e.add_argument("--potential", required=True, help="component and index, e.g. C:-2")
    e.add_argument("--point", action="append", help="x0,x1,...,xm (repeatable)")
    e.add_argument("--points", help="CSV file with header x0,...,xm ('-' for stdin)")
    e.add_argument("--threads", type=int, help="worker threads (MONOPOT_THREADS overrides)")

    t = sub.add_parser("table", help="print boundary distributions")
    common(t)
    t.add_argument("--series", choices=["a", "b", "c"], required=True)
    t.add_argument("--k", required=True, help="index or range like -3..3")
    t.add_argument("--side", choices=["+", "-", "both"], default="+")

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=["monogenic", "pairs", "lemma", "all"], required=True)
    v.add_argument("--tol", type=float, help="override the suite tolerance")
    v.add_argument("--count", type=int, default=100, help="points per half-space (monogenic)")
    v.add_argument("--kmax", type=int, default=3, help="largest lemma index")

    j = sub.add_parser("jump", help="measure a hyperfunction jump")
    common(j)
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--ladder", help="comma-separated decreasing x0 heights")
    j.add_argument("--order", type=int, help="Richardson polynomial degree")
    j.add_argument("--tol", type=float, default=5e-3)
    return p


VALUE_FLAGS = ("--k", "--n", "--point", "--ladder")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn '--k -3..3' into '--k=-3..3' so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and (argv[i + 1][1:2].isdigit() or argv[i + 1][1:2] == "."):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify, "jump": cmd_jump}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        AlgebraContext(args.m)
        payload, status = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"monopot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(payload, args.format, stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
