"""Command-line front end: ``radius``, ``boundary``, ``batch`` and ``bench``.

Matrices are given as four complex literals in row-major order, e.g.
``numradius radius 1 1 0 0``, or as JSON ``{"id": ..., "matrix": [[..], [..]]}``.
Literals look like ``1``, ``-2.5i``, ``3+4i`` or ``1e-3-2e2i``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .engine import Method, numerical_radius
from .geometry import boundary_points, classify, ellipse_from_matrix
from .linalg import Matrix2
from .oracle import radius_angle_sweep

EXIT_OK, EXIT_PARSE, EXIT_INTERNAL, EXIT_PARTIAL = 0, 2, 3, 4


class LiteralError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos = text, pos
        super().__init__(f"invalid complex literal {text!r} at position {pos}: expected {expected}")


class InputError(ValueError):
    pass


def _scan_number(s: str, i: int) -> int:
    """Return the end of an unsigned decimal number starting at ``i`` (``i`` if none)."""
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    digits = j - i
    if j < len(s) and s[j] == ".":
        j += 1
        k = j
        while j < len(s) and s[j].isdigit():
            j += 1
        digits += j - k
    if digits == 0:
        return i
    if j < len(s) and s[j] in "eE":
        k = j + 1
        if k < len(s) and s[k] in "+-":
            k += 1
        m = k
        while k < len(s) and s[k].isdigit():
            k += 1
        if k == m:
            raise LiteralError(s, k, "exponent digits")
        j = k
    return j


def parse_complex(text: str) -> complex:
    s, i = text, 0
    if not s:
        raise LiteralError(s, 0, "a number")
    if s[i] in "+-":
        i += 1
    j = _scan_number(s, i)
    if j < len(s) and s[j] == "i":
        if j + 1 != len(s):
            raise LiteralError(s, j + 1, "end of literal")
        mag = float(s[i:j]) if j > i else 1.0
        return complex(0.0, -mag if s[0] == "-" else mag)
    if j == i:
        raise LiteralError(s, i, "a digit or 'i'")
    re = float(s[:j])
    if j == len(s):
        return complex(re, 0.0)
    if s[j] not in "+-":
        raise LiteralError(s, j, "'+', '-', 'i' or end of literal")
    k = _scan_number(s, j + 1)
    if k >= len(s) or s[k] != "i":
        raise LiteralError(s, k, "'i'")
    if k + 1 != len(s):
        raise LiteralError(s, k + 1, "end of literal")
    mag = float(s[j + 1 : k]) if k > j + 1 else 1.0
    return complex(re, -mag if s[j] == "-" else mag)


def format_complex(z: complex) -> str:
    """Shortest literal that parses back to exactly ``z``."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("only finite values have literals")
    if z.imag == 0.0 and math.copysign(1.0, z.imag) > 0:
        return repr(z.real)
    im = repr(abs(z.imag)) + "i"
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{im}"


def _entry(value) -> complex:
    if isinstance(value, bool):
        raise InputError("booleans are not matrix entries")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        return parse_complex(value)
    raise InputError(f"unsupported matrix entry {value!r}")


def matrix_from_record(rec) -> tuple[Optional[str], Matrix2]:
    if not isinstance(rec, dict) or "matrix" not in rec:
        raise InputError('record must be an object with a "matrix" field')
    rows = rec["matrix"]
    if not (isinstance(rows, list) and len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise InputError('"matrix" must be a 2x2 array')
    ident = rec.get("id")
    if ident is not None and not isinstance(ident, str):
        raise InputError('"id" must be a string')
    return ident, Matrix2(*(_entry(v) for r in rows for v in r))


def matrix_from_args(entries: Sequence[str], path: Optional[str]) -> tuple[Optional[str], Matrix2]:
    if path is not None:
        if entries:
            raise InputError("give either four entries or --input, not both")
        with open(path, encoding="utf-8") as fh:
            try:
                rec = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: {exc}") from exc
        return matrix_from_record(rec)
    if len(entries) != 4:
        raise InputError(f"expected 4 matrix entries (row-major), got {len(entries)}")
    return None, Matrix2(*(parse_complex(e.strip()) for e in entries))


def result_record(ident, A: Matrix2, check: bool = False, timed: bool = False) -> dict:
    t0 = time.perf_counter_ns()
    res = numerical_radius(A)
    elapsed = time.perf_counter_ns() - t0
    rec = {
        "id": ident,
        "w": res.w,
        "method": res.method.value,
        "near": res.near,
        "far_point": list(res.far_point),
    }
    if check:
        ow = radius_angle_sweep(A).w
        rec["oracle_w"] = ow
        rec["abs_err"] = abs(res.w - ow)
    if timed:
        rec["wall_time_ns"] = elapsed
    return rec


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# ---- boundary -------------------------------------------------------------


def _boundary_xy(A: Matrix2, samples: int):
    E = ellipse_from_matrix(A)
    shape = classify(E, max(1.0, A.frobenius))
    ts = 2.0 * math.pi * np.arange(samples) / samples
    xs, ys = boundary_points(E.snapped(shape), ts)
    return ts, xs, ys


def boundary_csv(A: Matrix2, samples: int) -> str:
    ts, xs, ys = _boundary_xy(A, samples)
    lines = ["t,x,y"]
    lines += [f"{t:.17g},{x:.17g},{y:.17g}" for t, x, y in zip(ts, xs, ys)]
    return "\n".join(lines) + "\n"


def _num(v: float) -> str:
    s = format(float(v), ".12g")
    return "0" if s == "-0" else s


def boundary_svg(A: Matrix2, samples: int) -> str:
    """Boundary path plus the circle of radius w(A) about the origin.

    SVG's y axis points down, so imaginary parts are negated on output.
    """
    _, xs, ys = _boundary_xy(A, samples)
    w = numerical_radius(A).w
    ys = -ys
    lo_x, hi_x = min(float(xs.min()), -w), max(float(xs.max()), w)
    lo_y, hi_y = min(float(ys.min()), -w), max(float(ys.max()), w)
    extent = max(hi_x - lo_x, hi_y - lo_y)
    if extent == 0.0:
        extent = 1.0
    pad = 0.1 * extent
    vb = (lo_x - pad, lo_y - pad, hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad)
    d = " ".join(
        ("M" if k == 0 else "L") + f"{_num(x)},{_num(y)}" for k, (x, y) in enumerate(zip(xs, ys))
    ) + " Z"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(_num(v) for v in vb)}" '
        'preserveAspectRatio="xMidYMid meet">\n'
        f'  <path d="{d}" fill="none" stroke="#d62728" stroke-width="1" vector-effect="non-scaling-stroke"/>\n'
        f'  <circle cx="0" cy="0" r="{_num(w)}" fill="none" stroke="#000000" stroke-width="1" '
        'vector-effect="non-scaling-stroke"/>\n'
        "</svg>\n"
    )


# ---- batch ----------------------------------------------------------------


def _batch_one(item: tuple[int, str, bool]) -> dict:
    lineno, line, check = item
    ident = None
    try:
        rec = json.loads(line)
        if isinstance(rec, dict) and isinstance(rec.get("id"), str):
            ident = rec["id"]
        ident, A = matrix_from_record(rec)
    except (ValueError, TypeError) as exc:
        return {"line": lineno, "id": ident, "error": str(exc)}
    try:
        return result_record(ident, A, check=check)
    except Exception as exc:  # reported per record; the batch keeps going
        return {"line": lineno, "id": ident, "error": f"internal: {exc}"}


def run_batch(lines: Sequence[str], check: bool = False, jobs: int = 1) -> list[dict]:
    items = [(k + 1, ln, check) for k, ln in enumerate(lines) if ln.strip()]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_batch_one, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [_batch_one(it) for it in items]


# ---- bench ----------------------------------------------------------------


def random_matrices(n: int, seed: int) -> list[Matrix2]:
    """Entries uniform in the unit square [0, 1) x [0, 1) of the complex plane."""
    rng = np.random.default_rng(seed)
    z = rng.random((n, 2, 2)) + 1j * rng.random((n, 2, 2))
    return [Matrix2.from_array(m) for m in z]


def _percentiles(ns: list[int]) -> Optional[dict]:
    if not ns:
        return None
    q = np.percentile(np.asarray(ns, dtype=float), [50, 90, 99])
    return {"p50": int(q[0]), "p90": int(q[1]), "p99": int(q[2])}


def run_bench(n: int, seed: int) -> tuple[dict, dict]:
    """Return (deterministic report, wall-time report)."""
    counts = {m.value: 0 for m in Method}
    errs: list[float] = []
    t_engine: dict[str, list[int]] = {}
    t_oracle: list[int] = []
    for A in random_matrices(n, seed):
        t0 = time.perf_counter_ns()
        res = numerical_radius(A)
        t1 = time.perf_counter_ns()
        ow = radius_angle_sweep(A).w
        t2 = time.perf_counter_ns()
        counts[res.method.value] += 1
        errs.append(abs(res.w - ow))
        t_engine.setdefault(res.method.value, []).append(t1 - t0)
        t_oracle.append(t2 - t1)
    report = {
        "n": n,
        "seed": seed,
        "methods": counts,
        "fallback_rate": counts[Method.ORACLE.value] / n if n else None,
        "max_abs_err": max(errs) if errs else None,
        "mean_abs_err": (math.fsum(errs) / n) if n else None,
    }
    timing = {
        "wall_time_ns": {
            **{f"engine:{k}": _percentiles(v) for k, v in sorted(t_engine.items())},
            "oracle": _percentiles(t_oracle),
        }
    }
    return report, timing


# ---- entry point ----------------------------------------------------------


def _is_literal(tok: str) -> bool:
    try:
        parse_complex(tok)
    except LiteralError:
        return False
    return True


def _protect_negative_literals(argv: Sequence[str]) -> list[str]:
    # argparse would read "-2.5i" as an option; a leading space keeps it positional
    return [" " + t if t.startswith("-") and _is_literal(t) else t for t in argv]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="numradius", description="Numerical radius of 2x2 complex matrices.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def matrix_args(p):
        p.add_argument("entries", nargs="*", help="a11 a12 a21 a22 as complex literals")
        p.add_argument("--input", help="JSON file with {\"id\": ..., \"matrix\": [[..],[..]]}")

    p = sub.add_parser("radius", help="compute w(A) and print a JSON result record")
    matrix_args(p)
    p.add_argument("--check", action="store_true", help="compare with the angle-sweep oracle")
    p.add_argument("--time", action="store_true", help="include wall_time_ns")

    p = sub.add_parser("boundary", help="sample the boundary of W(A) as CSV or SVG")
    matrix_args(p)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--output", help="write here instead of standard output")

    p = sub.add_parser("batch", help="process a JSONL file of matrix records")
    p.add_argument("--input", required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("bench", help="seeded accuracy and timing run against the oracle")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    return ap


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_protect_negative_literals(argv))
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK

    if args.cmd in ("radius", "boundary"):
        try:
            ident, A = matrix_from_args(args.entries, args.input)
        except (ValueError, OSError) as exc:
            print(f"numradius: {exc}", file=sys.stderr)
            return EXIT_PARSE
        try:
            if args.cmd == "radius":
                sys.stdout.write(_dumps(result_record(ident, A, args.check, args.time)) + "\n")
            else:
                if args.samples < 1:
                    print("numradius: --samples must be positive", file=sys.stderr)
                    return EXIT_PARSE
                render = boundary_csv if args.format == "csv" else boundary_svg
                _write(render(A, args.samples), args.output)
        except Exception as exc:
            print(f"numradius: internal failure: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        return EXIT_OK

    if args.cmd == "batch":
        try:
            with open(args.input, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            print(f"numradius: {exc}", file=sys.stderr)
            return EXIT_PARSE
        records = run_batch(lines, check=args.check, jobs=max(1, args.jobs))
        for rec in records:
            sys.stdout.write(_dumps(rec) + "\n")
        ok = [r for r in records if "error" not in r]
        errs = [r["abs_err"] for r in ok if "abs_err" in r]
        summary = {
            "count": len(records),
            "errors": len(records) - len(ok),
            "fallbacks": sum(r["method"] == Method.ORACLE.value for r in ok),
            "max_abs_err": max(errs) if errs else None,
        }
        print(_dumps(summary), file=sys.stderr)
        return EXIT_PARTIAL if summary["errors"] else EXIT_OK

    report, timing = run_bench(max(0, args.n), args.seed)
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(_dumps(timing), file=sys.stderr)
    return EXIT_OK


def run() -> None:
    sys.exit(main())
