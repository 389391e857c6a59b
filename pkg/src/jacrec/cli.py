"""Command-line front end: verify / gram / assemble / bench.

Exit codes are a stable contract: 0 success, 1 numerical failure, 2 usage
error.  All outputs are deterministic for fixed flags and seed (timing
columns excepted); floats are written with 17 significant digits, exact
rationals as p/q strings.
"""

from __future__ import annotations

import argparse
import math
import random
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import relations
from .integrals import (INTEGRATED, PLAIN, IntegralSpec, integral_direct,
                        integral_quad)
from .jacobi import IDENTITIES, identity_residual, jacobi_all_array, jacobi_eval, jacobi_hyp
from .hyper import KampeSpec, kampe_eval, pfq_terminating
from .hyper import chu_vandermonde_rhs, gauss_sum_rhs, pfaff_saalschutz_rhs
from .numerics import gauss_legendre, integrate
from .scalars import EXACT, FLOAT, RAT, default_mode, format_scalar
from .fem import (MassMatrixCOO, Triangle, assemble_mass_quadrature,
                  assemble_mass_recursive, reference_triangle)
from .tables import fill_gram_band, fill_recint, fill_recint2, gram_band_seeds

GRID = (RAT(0), RAT(1, 2), RAT(1), RAT(3, 2), RAT(2))


@dataclass(frozen=True)
class BenchRecord:
    """One timing measurement; per_entry_time is wall_time/nnz by construction."""

    method: str
    pmax: int
    wall_time: float
    nnz: int
    amortized: bool = False

    @property
    def per_entry_time(self) -> float:
        return self.wall_time / max(1, self.nnz)

    def csv_row(self) -> str:
        return (f"{self.method},{self.pmax},{self.wall_time:.9g},{self.nnz},"
                f"{self.per_entry_time:.9g},{int(self.amortized)}")

    def console_line(self) -> str:
        tag = " (amortized)" if self.amortized else ""
        return (f"{self.method}{tag}: p={self.pmax} wall={self.wall_time:.6f}s "
                f"nnz={self.nnz} per_entry={self.per_entry_time:.3e}s")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _report(name: str, worst, cases: int, ok: bool, tol=None) -> bool:
    unit = "" if tol is None else f" (tol {tol:g})"
    print(f"{name:24s} cases={cases:<5d} max|residual|={worst}{unit} "
          f"{'ok' if ok else 'FAIL'}")
    return ok


def _rand_x(rng) -> RAT:
    return RAT(rng.randint(-9, 9), rng.choice((10, 7, 5, 4, 3, 2)))


def _verify_identities(seed: int, cases: int) -> bool:
    rng = random.Random(seed)
    all_ok = True
    for name, (_, regime) in sorted(IDENTITIES.items()):
        worst = 0
        done = 0
        first_bad = None
        while done < cases:
            n = rng.randint(0, 8)
            a, b = rng.choice(GRID), rng.choice(GRID)
            if not regime(n, a, b):
                continue
            x = _rand_x(rng)
            r = identity_residual(name, n, a, b, x)
            if r != 0 and first_bad is None:
                first_bad = (n, a, b, x)
            worst = max(worst, abs(r))
            done += 1
        ok = worst == 0
        all_ok &= _report(name, worst, done, ok)
        if first_bad:
            print(f"  first failure at (n, alpha, beta, x) = {first_bad}")
    return all_ok


def _verify_relations(seed: int, cases: int) -> bool:
    all_ok = True
    for name in relations.CATALOG:
        worst, done, first_bad = relations.verify_relation(name, seed, cases)
        ok = worst == 0
        all_ok &= _report(name, worst, done, ok)
        if first_bad is not None:
            print(f"  first failure at {first_bad}")
    return all_ok


def _verify_oracles(seed: int, cases: int) -> bool:
    rng = random.Random(seed)
    all_ok = True

    worst = 0
    for _ in range(cases):
        n = rng.randint(0, 20)
        a, b = rng.choice(GRID), rng.choice(GRID)
        x = _rand_x(rng)
        worst = max(worst, abs(jacobi_eval(n, a, b, x) - jacobi_hyp(n, a, b, x)))
    all_ok &= _report("jacobi-vs-hyp", worst, cases, worst == 0)

    worst = 0
    for _ in range(cases):
        mm = rng.randint(0, 12)
        b = rng.choice(GRID) + RAT(rng.randint(0, 2))
        c = rng.choice((RAT(1, 2), RAT(1), RAT(3, 2), RAT(5, 2))) + rng.randint(0, 3)
        worst = max(worst, abs(gauss_sum_rhs(-mm, b, c)
                               - pfq_terminating((-mm, b), (c,), RAT(1))))
        worst = max(worst, abs(chu_vandermonde_rhs(mm, b, c)
                               - pfq_terminating((-mm, b), (c,), RAT(1))))
        a = rng.choice((RAT(1, 2), RAT(1), RAT(3, 2), RAT(2)))
        low2 = 1 + a + b - c - mm
        if any(low2 + k == 0 for k in range(mm)):
            continue
        worst = max(worst, abs(pfaff_saalschutz_rhs(mm, a, b, c)
                               - pfq_terminating((-mm, a, b), (c, low2), RAT(1))))
    all_ok &= _report("summation-theorems", worst, cases, worst == 0)

    worst = 0
    for _ in range(cases):
        spec = IntegralSpec(rng.randint(0, 6), rng.randint(0, 6),
                            rng.choice(GRID), rng.choice(GRID),
                            rng.choice(GRID), rng.choice(GRID),
                            rng.randint(0, 5), rng.randint(0, 5), PLAIN)
        kspec = KampeSpec(spec.n, spec.m, spec.alpha, spec.beta, spec.rho,
                          spec.delta, spec.mu, spec.nu, RAT(1), RAT(1))
        scalefac = RAT(2) ** (int(spec.mu) + int(spec.nu))
        worst = max(worst, abs(kampe_eval(kspec) - scalefac * integral_direct(spec)))
    all_ok &= _report("kampe-vs-direct", worst, cases, worst == 0)

    worst = 0
    for _ in range(max(2, cases // 20)):
        mu = rng.randint(0, 8)
        a, r = RAT(rng.randint(0, 7)), RAT(rng.randint(0, 7))
        t2 = fill_recint2(mu, a, r, 10, mode=EXACT)
        ti = fill_recint(mu, a, r, 10, mode=EXACT)
        for _ in range(10):
            n, m = rng.randint(1, 10), rng.randint(1, 10)
            worst = max(worst, abs(t2.get(n, m) - integral_direct(t2.spec_at(n, m))))
            worst = max(worst, abs(ti.get(n, m) - integral_direct(ti.spec_at(n, m))))
    all_ok &= _report("tables-vs-direct", worst, cases, worst == 0)

    worst = 0.0
    for k in range(1, 65):
        rule = gauss_legendre(k)
        for d in range(0, 2 * k, 7):
            moment = 2.0 / (d + 1) if d % 2 == 0 else 0.0
            worst = max(worst, abs(integrate(rule, lambda t: t ** d) - moment))
    all_ok &= _report("quad-exactness", f"{worst:.3e}", 64, worst <= 1e-13, tol=1e-13)

    worst = 0.0
    for _ in range(cases):
        spec = IntegralSpec(rng.randint(0, 12), rng.randint(0, 12),
                            rng.choice(GRID), rng.choice(GRID),
                            rng.choice(GRID), rng.choice(GRID),
                            rng.randint(0, 6), rng.randint(0, 6), PLAIN)
        d = float(integral_direct(spec))
        q = integral_quad(spec)
        worst = max(worst, abs(d - q) / max(1.0, abs(d)))
    all_ok &= _report("direct-vs-quad", f"{worst:.3e}", cases, worst <= 1e-12, tol=1e-12)

    return all_ok


def cmd_verify(args) -> int:
    ok = True
    if args.suite in ("identities", "all"):
        print("== identity catalog (exact) ==")
        ok &= _verify_identities(args.seed, args.cases)
    if args.suite in ("relations", "all"):
        print("== relation catalog (exact) ==")
        ok &= _verify_relations(args.seed, args.cases)
    if args.suite in ("oracles", "all"):
        print("== cross-oracle checks ==")
        ok &= _verify_oracles(args.seed, args.cases)
    print("verify:", "ok" if ok else "FAILED")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# gram
# ---------------------------------------------------------------------------

def _median_time(fn, repeats: int):
    fn()  # warm-up
    times = []
    result = None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def _gram_quad_tables(pmax: int, weight_exp: int, alpha: float):
    """Pretabulated per-degree rules: kof[i+j] -> (weights, basis rows).

    Weights carry the ((1-x)/2)^w factor; basis rows are plain lists so the
    timed per-entry loop is a bare O(k) multiply-accumulate, matching the
    tabulated-basis assembly model.
    """
    by_k = {}
    kof = []
    for s in range(0, 2 * pmax + 1):
        k = math.ceil((s + weight_exp + 2) / 2)
        if k not in by_k:
            rule = gauss_legendre(k)
            x = np.asarray(rule.nodes)
            w = np.asarray(rule.weights) * ((1.0 - x) / 2.0) ** weight_exp
            basis = jacobi_all_array(pmax, float(alpha), 0.0, x)
            by_k[k] = (w.tolist(), [row.tolist() for row in basis])
        kof.append(by_k[k])
    return kof


def _gram_quad_run(kof, entryset, out: dict):
    for i, j in entryset:
        w, basis = kof[i + j]
        bi = basis[i]
        bj = basis[j]
        acc = 0.0
        for wq, biq, bjq in zip(w, bi, bj):
            acc += wq * biq * bjq
        out[(i, j)] = acc
    return out


def _gram_entry_set(pmax: int, weight_exp: int):
    return [(i, j) for i in range(pmax + 1) for j in range(pmax + 1)
            if abs(i - j) <= weight_exp]


def cmd_gram(args) -> int:
    mode = EXACT if args.exact else default_mode()
    alpha = RAT(args.alpha) if float(args.alpha).is_integer() else float(args.alpha)
    w_exp = args.weight_exp
    if w_exp < alpha:
        print("error: weight-exp must be >= alpha for the banded family",
              file=sys.stderr)
        return 2
    entryset = _gram_entry_set(args.pmax, w_exp)
    band = w_exp + 2
    bench_rows = []
    rec_vals = quad_vals = None

    if args.method in ("recursive", "both"):
        # both timing variants are measured: seeds included, and stencil-only
        # with precomputed seeds (--amortized picks which one leads)
        seeds = gram_band_seeds(args.pmax, w_exp, alpha, band, mode)
        wall_full, rec_vals = _median_time(
            lambda: fill_gram_band(args.pmax, w_exp, alpha, band, mode),
            args.repeats)
        wall_amort, _ = _median_time(
            lambda: fill_gram_band(args.pmax, w_exp, alpha, band, mode,
                                   seeds=seeds),
            args.repeats)
        scale = max(abs(float(v)) for v in rec_vals.values()) or 1.0
        nnz = sum(1 for v in rec_vals.values() if abs(float(v)) > 1e-13 * scale)
        pair = [BenchRecord("recursive", args.pmax, wall_full, nnz, False),
                BenchRecord("recursive", args.pmax, wall_amort, nnz, True)]
        bench_rows.extend(reversed(pair) if args.amortized else pair)

    if args.method in ("quadrature", "both"):
        kof = _gram_quad_tables(args.pmax, w_exp, float(alpha))
        wall, quad_vals = _median_time(
            lambda: _gram_quad_run(kof, entryset, {}), args.repeats)
        scale = max(abs(v) for v in quad_vals.values()) or 1.0
        nnz = sum(1 for v in quad_vals.values() if abs(v) > 1e-13 * scale)
        bench_rows.append(BenchRecord("quadrature", args.pmax, wall, nnz))

    if args.method == "both":
        scale = max(abs(v) for v in quad_vals.values()) or 1.0
        worst = max(abs(float(rec_vals.get(e, 0)) - quad_vals[e]) for e in entryset)
        print(f"gram agreement: max deviation {worst:.3e} (scale {scale:.3e})")
        if worst > 1e-10 * scale:
            print("error: recursive and quadrature Gram matrices disagree",
                  file=sys.stderr)
            return 1

    vals = rec_vals if rec_vals is not None else quad_vals
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("i,j,value\n")
        for i, j in entryset:
            v = vals.get((i, j), RAT(0) if mode == EXACT else 0.0)
            fh.write(f"{i},{j},{format_scalar(v)}\n")
    if args.bench_out:
        _write_bench_csv(args.bench_out, bench_rows, args.repeats)
    for rec in bench_rows:
        print(rec.console_line())
    return 0


def _write_bench_csv(path, rows, repeats: int):
    if repeats == 1:
        print("warning: medians are single samples (repeats=1)", file=sys.stderr)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("method,p,wall_time,nnz,per_entry_time,amortized\n")
        for rec in rows:
            fh.write(rec.csv_row() + "\n")


# ---------------------------------------------------------------------------
# assemble
# ---------------------------------------------------------------------------

def cmd_assemble(args) -> int:
    if args.vertices:
        try:
            coords = [float(v) for v in args.vertices.split(",")]
        except ValueError:
            print("error: vertices must be six comma-separated numbers",
                  file=sys.stderr)
            return 2
        if len(coords) != 6:
            print("error: vertices must be six comma-separated numbers",
                  file=sys.stderr)
            return 2
        try:
            tri = Triangle((coords[0], coords[1]), (coords[2], coords[3]),
                           (coords[4], coords[5]))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        tri = reference_triangle()

    mats = {}
    for method in (("recursive", "quadrature") if args.method == "both"
                   else (args.method,)):
        t0 = time.perf_counter()
        if method == "recursive":
            mats[method] = assemble_mass_recursive(args.p, tri, threads=args.threads)
        else:
            mats[method] = assemble_mass_quadrature(args.p, tri)
        dt = time.perf_counter() - t0
        print(f"{method}: dimension={mats[method].dimension} "
              f"nnz={mats[method].nnz} time={dt:.4f}s")

    if args.method == "both":
        dr = mats["recursive"].to_dense()
        dq = mats["quadrature"].to_dense()
        scale = float(np.max(np.abs(dq))) or 1.0
        worst = float(np.max(np.abs(dr - dq)))
        print(f"assembly agreement: max deviation {worst:.3e} (scale {scale:.3e})")
        if worst > 1e-10 * scale:
            print("error: assemblies disagree", file=sys.stderr)
            return 1

    out = mats.get("recursive", mats.get("quadrature"))
    if args.out_mm:
        out.to_matrix_market(args.out_mm)
    if args.out_pbm:
        out.to_pbm(args.out_pbm)
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    try:
        p_list = [int(v) for v in args.p_list.split(",") if v]
    except ValueError:
        print("error: p-list must be comma-separated integers", file=sys.stderr)
        return 2
    if not p_list:
        print("error: p-list must be nonempty", file=sys.stderr)
        return 2
    w_exp, alpha = args.weight_exp, RAT(args.alpha)
    rows = []
    for p in p_list:
        band = w_exp + 2
        seeds = gram_band_seeds(p, w_exp, alpha, band, FLOAT) \
            if args.amortized else None
        wall, vals = _median_time(
            lambda p=p, seeds=seeds: fill_gram_band(p, w_exp, alpha, band,
                                                    FLOAT, seeds=seeds),
            args.repeats)
        scale = max(abs(v) for v in vals.values()) or 1.0
        nnz = sum(1 for v in vals.values() if abs(v) > 1e-13 * scale)
        rows.append(BenchRecord("recursive", p, wall, nnz, args.amortized))

        kof = _gram_quad_tables(p, w_exp, float(alpha))
        entryset = _gram_entry_set(p, w_exp)
        wall, qvals = _median_time(
            lambda kof=kof, es=entryset: _gram_quad_run(kof, es, {}),
            args.repeats)
        scale = max(abs(v) for v in qvals.values()) or 1.0
        nnz = sum(1 for v in qvals.values() if abs(v) > 1e-13 * scale)
        rows.append(BenchRecord("quadrature", p, wall, nnz))

    _write_bench_csv(args.out, rows, args.repeats)
    for rec in rows:
        print(rec.console_line())
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jacrec",
        description="recursive weighted Jacobi product integrals: "
                    "verification, Gram matrices, element assembly")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run residual certification suites")
    p.add_argument("--suite", choices=("identities", "relations", "oracles", "all"),
                   default="all")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gram", help="weighted Gram matrix of Jacobi polynomials")
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--weight-exp", type=int, default=8)
    p.add_argument("--alpha", type=float, default=4)
    p.add_argument("--method", choices=("recursive", "quadrature", "both"),
                   default="recursive")
    p.add_argument("--out", required=True)
    p.add_argument("--bench-out", default=None)
    p.add_argument("--exact", action="store_true",
                   help="exact rational fill; CSV holds p/q strings")
    p.add_argument("--amortized", action="store_true",
                   help="exclude table-seed computation from timings")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("assemble", help="triangle element mass matrix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--vertices", default=None,
                   help="x1,y1,x2,y2,x3,y3 (default: reference element)")
    p.add_argument("--method", choices=("recursive", "quadrature", "both"),
                   default="recursive")
    p.add_argument("--out-mm", default=None)
    p.add_argument("--out-pbm", default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_assemble)

    p = sub.add_parser("bench", help="per-entry cost scaling of both methods")
    p.add_argument("--p-list", required=True)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--weight-exp", type=int, default=8)
    p.add_argument("--alpha", type=float, default=4)
    p.add_argument("--amortized", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "assemble" and args.p < 2:
        print("error: need p >= 2", file=sys.stderr)
        return 2
    if args.command == "gram" and args.pmax < 0:
        print("error: need pmax >= 0", file=sys.stderr)
        return 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
