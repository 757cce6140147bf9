"""Command line front end.

Subcommands: range, radius, psi, verify, shapiro, schreier.
Exit codes: 0 success, 1 verification failure, 2 input error.
JSON payloads go to stdout (one object, or one object per line for verify);
human-readable tables go to stderr.  Output is byte-identical across runs
with identical flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, combinat, jsonio, linalg, numrange, polytools, psi
from .rng import SplitMix64

SUITES = ("all", "jordan", "2x2", "cos", "hull", "bohr", "affine", "directsum", "schreier")


def _resolve_threads():
    raw = os.environ.get("SPECRANGE_THREADS", "0")
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"field 'SPECRANGE_THREADS': not an integer: {raw!r}")
    if v < 0:
        raise ValueError("field 'SPECRANGE_THREADS': must be >= 0")
    # the evaluation engine is serial; 0 means auto, which resolves to 1
    return {"requested": v, "effective": 1}


def _config(args, command):
    cfg = {"command": command, "version": __version__}
    for key in ("norm", "grid", "method", "degree", "budget", "seed",
                "suite", "samples", "trials", "k", "experiment"):
        if hasattr(args, key) and getattr(args, key) is not None:
            cfg[key] = getattr(args, key)
    cfg["threads"] = _resolve_threads()
    return cfg


def _emit(payload, args):
    text = jsonio.dumps(payload)
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


# ---------------------------------------------------------------------------
# svg / csv
# ---------------------------------------------------------------------------

def write_svg(path, region, eigenvalues):
    """Plain SVG: region polygon plus eigenvalue markers; fixed formatting
    keeps the file byte-stable."""
    v = region.vertices
    ev = np.asarray(eigenvalues, dtype=np.complex128)
    xs = np.concatenate([v.real, ev.real, [0.0]])
    ys = np.concatenate([v.imag, ev.imag, [0.0]])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    span = max(x1 - x0, y1 - y0, 1e-6)
    pad = 0.1 * span
    x0, x1 = x0 - pad, x1 + pad
    y0, y1 = y0 - pad, y1 + pad
    size = 640.0
    sc = size / max(x1 - x0, y1 - y0)

    def fx(x):
        return f"{(x - x0) * sc:.6f}"

    def fy(y):
        return f"{(y1 - y) * sc:.6f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" height="{size:.0f}" '
        f'viewBox="0 0 {size:.0f} {size:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if v.size >= 2:
        pts = " ".join(f"{fx(z.real)},{fy(z.imag)}" for z in v)
        lines.append(f'<polygon points="{pts}" fill="#dbe9ff" stroke="#1f4e9c" stroke-width="1.5"/>')
    else:
        z = v[0]
        lines.append(f'<circle cx="{fx(z.real)}" cy="{fy(z.imag)}" r="3" fill="#1f4e9c"/>')
    for z in ev:
        lines.append(f'<circle cx="{fx(z.real)}" cy="{fy(z.imag)}" r="4" fill="#c0392b"/>')
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_csv(path, tagged_reports):
    """Flatten report detail rows into one CSV (long format: the column set
    is the union of detail keys in first-appearance order)."""
    cols = ["suite", "report"]
    rows = []
    for suite, rep in tagged_reports:
        for row in rep.details:
            flat = {"suite": suite, "report": rep.name}
            for k, val in row.items():
                if k not in cols:
                    cols.append(k)
                flat[k] = val
            rows.append(flat)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for flat in rows:
            cells = []
            for c in cols:
                val = flat.get(c, "")
                if isinstance(val, (list, tuple, dict)):
                    cells.append('"' + jsonio.dumps(val).replace('"', '""') + '"')
                else:
                    cells.append(str(val))
            fh.write(",".join(cells) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_range(args):
    T = jsonio.load_matrix(args.matrix)
    region = numrange.range_polygon(T, args.norm, args.grid, method=args.method)
    spec = linalg.eigenvalues(T)
    payload = {
        "config": _config(args, "range"),
        "region": jsonio.region_to_dict(region),
        "eigenvalues": [[z.real, z.imag] for z in spec.eigenvalues],
        "eigen_residual": spec.residual,
    }
    _emit(payload, args)
    if args.svg:
        write_svg(args.svg, region, spec.eigenvalues)
    return 0


def cmd_radius(args):
    T = jsonio.load_matrix(args.matrix)
    value = numrange.numerical_radius(T, args.norm, args.grid)
    payload = {
        "config": _config(args, "radius"),
        "radius": value,
        "norm": linalg.induced_norm(T, args.norm),
    }
    _emit(payload, args)
    return 0


def cmd_psi(args):
    T = jsonio.load_matrix(args.matrix)
    est = psi.psi_lower_bound(T, args.norm, args.degree, args.budget, args.seed)
    payload = {"config": _config(args, "psi"), "estimate": jsonio.estimate_to_dict(est)}
    _emit(payload, args)
    return 0


def cmd_shapiro(args):
    p, q = polytools.rudin_shapiro(args.k)
    payload = {
        "config": _config(args, "shapiro"),
        "p": jsonio.poly_to_dict(p.coeffs),
        "q": jsonio.poly_to_dict(q.coeffs),
        "length": len(p),
    }
    _emit(payload, args)
    return 0


def cmd_schreier(args):
    if args.vector is None and args.experiment is None:
        raise ValueError("field 'vector'/'experiment': provide a vector file or an experiment size")
    if args.vector is not None:
        x = jsonio.load_sparse_vector(args.vector)
        payload = {
            "config": _config(args, "schreier"),
            "norm": combinat.family_norm(x),
            "support": x.indices(),
        }
        _emit(payload, args)
        return 0
    rep = combinat.cut_shift_experiment(args.experiment, seed=args.seed)
    payload = {"config": _config(args, "schreier"), "report": rep.to_dict()}
    _emit(payload, args)
    return 0 if rep.satisfied else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _suite_matrices(seed):
    rng = SplitMix64(seed)
    return [
        ("upper_2x2", np.array([[2.0, 1.0], [0.0, 0.0]], dtype=np.complex128)),
        ("jordan_4", linalg.jordan_block(4)),
        ("random_4x4", psi.random_gaussian_matrix(rng, 4)),
    ]


def _suite_reports(suite, seed, samples, trials):
    reports = []

    def add(tag, rep):
        reports.append((tag, rep))

    if suite in ("all", "jordan"):
        for n in (2, 4, 8, 16, 32, 64):
            for kind in linalg.KINDS:
                add("jordan", psi.jordan_experiment(n, kind, seed=seed))
    if suite in ("all", "2x2"):
        add("2x2", psi.two_by_two_l1_suite(samples, seed))
    if suite in ("all", "cos"):
        add("cos", psi.cos_example())
    if suite in ("all", "hull"):
        for name, T in _suite_matrices(seed):
            for kind in ("l1", "l2"):
                for eps in (0.25, 0.5, 1.0, 2.0):
                    add("hull", psi.epsilon_hull_check(T, kind, eps, trials, seed))
    if suite in ("all", "bohr"):
        for name, T in _suite_matrices(seed):
            for kind in linalg.KINDS:
                add("bohr", psi.bohr_check(T, kind, trials, seed))
    if suite in ("all", "affine"):
        rng = SplitMix64(seed)
        T3 = psi.random_gaussian_matrix(rng, 3)
        p = np.array([0.3 - 0.1j, 1.0, 0.0, 0.5j], dtype=np.complex128)
        cases = [
            ("l1", np.array([[2.0, 1.0], [0.0, 0.0]], dtype=np.complex128), 2.0, 1j),
            ("l2", linalg.jordan_block(2), 2.0, 1j),
            ("l1", T3, np.exp(1j * np.pi / 3.0), 0.0),
        ]
        for kind, T, alpha, beta in cases:
            add("affine", psi.affine_invariance_check(T, kind, alpha, beta, p))
    if suite in ("all", "directsum"):
        add("directsum", psi.direct_sum_example("l1", 63))
        add("directsum", psi.direct_sum_example("linf", 63))
    if suite in ("all", "schreier"):
        for n in (3, 7, 15, 31):
            add("schreier", combinat.cut_shift_experiment(n, seed=seed))
    return reports


def cmd_verify(args):
    reports = _suite_reports(args.suite, args.seed, args.samples, args.trials)
    lines = [jsonio.dumps({"config": _config(args, "verify")})]
    for tag, rep in reports:
        lines.append(jsonio.dumps({"suite": tag, **rep.to_dict()}))
    text = "\n".join(lines)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.csv:
        write_csv(args.csv, reports)

    failed = [rep for _, rep in reports if not rep.satisfied]
    print(f"{'suite':<10} {'report':<26} {'measured':>14} {'bound':>14}  status", file=sys.stderr)
    for tag, rep in reports:
        status = "ok" if rep.satisfied else "FAIL"
        print(f"{tag:<10} {rep.name:<26} {rep.measured:>14.6g} {rep.paper_bound:>14.6g}  {status}",
              file=sys.stderr)
    print(f"{len(reports)} reports, {len(failed)} failed", file=sys.stderr)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="specrange",
        description="Numerical ranges of complex matrices under induced norms, "
                    "spectral-constant searches, and verification suites.")
    sub = parser.add_subparsers(dest="command")

    def common(p, norm=True, grid=True, seed=True):
        if norm:
            p.add_argument("--norm", choices=linalg.KINDS, default="l1")
        if grid:
            p.add_argument("--grid", type=int, default=360)
        if seed:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", help="also write the JSON payload to this path")

    p = sub.add_parser("range", help="numerical-range polygon of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=("closed_form", "limit_scheme"), default="closed_form")
    p.add_argument("--svg", help="write an SVG of the polygon with eigenvalues overlaid")
    common(p)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("radius", help="numerical radius of a matrix")
    p.add_argument("--matrix", required=True)
    common(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("psi", help="searched lower bound for the spectral constant")
    p.add_argument("--matrix", required=True)
    p.add_argument("--degree", type=int, default=24)
    p.add_argument("--budget", type=int, default=2000)
    common(p, grid=False)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--samples", type=int, default=40, help="2x2 suite sample count")
    p.add_argument("--trials", type=int, default=16, help="hull/bohr polynomial trials")
    p.add_argument("--csv", help="flatten report details into this CSV file")
    common(p, norm=False, grid=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shapiro", help="emit a flat +-1 coefficient pair of length 2^k")
    p.add_argument("--k", type=int, required=True)
    common(p, norm=False, grid=False, seed=False)
    p.set_defaults(func=cmd_shapiro)

    p = sub.add_parser("schreier", help="combinatorial norms and the cut-shift experiment")
    p.add_argument("--vector", "--norm", dest="vector", default=None,
                   help="sparse-vector JSON file to take the norm of")
    p.add_argument("--experiment", type=int, default=None,
                   help="run the cut-shift growth experiment at this size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="also write the JSON payload to this path")
    p.set_defaults(func=cmd_schreier)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
