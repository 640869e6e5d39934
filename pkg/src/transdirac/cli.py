"""Batch command-line front-end.

Subcommands: torus-spectrum, sphere-index, sphere-kernel, compare-quotient,
verify.  Output is deterministic JSON (fixed field order, floats rendered
with 17 significant digits) or, for the index table, optional CSV.

Exit codes: 0 all requested checks pass, 1 a check failed (a machine-readable
failure report is still emitted), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from transdirac.index_engine import build_index_table, index_numerical
from transdirac.sphere_model import (
    CHARTS,
    CHIRALITIES,
    SphereBlock,
    compare_block_reductions,
    pde_residual,
    reduce_block,
    theta_weight,
)
from transdirac.torus_model import TorusGeometry, spectrum_DL, spectrum_DQ_band
from transdirac.verification import SUITES, run_suite

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    out: str = None
    fmt: str = "json"


# ---------------------------------------------------------------------------
# deterministic serialization


def _json_render(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            '%s  "%s": %s' % (pad, key, _json_render(value, indent + 1))
            for key, value in obj.items()
        )
        return "{\n%s\n%s}" % (items, pad)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join("%s  %s" % (pad, _json_render(v, indent + 1)) for v in obj)
        return "[\n%s\n%s]" % (items, pad)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if obj is None:
        return "null"
    return '"%s"' % str(obj).replace("\\", "\\\\").replace('"', '\\"')


def render_json(obj) -> str:
    return _json_render(obj) + "\n"


def _emit(text: str, out: str):
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def parse_g_spec(shorthand: str, coeffs: str) -> TorusGeometry:
    """Warping from '--g 0.3sin,0.1cos' shorthand or '--g-coeffs c,a1,...;b1,...'."""
    if shorthand and coeffs:
        raise ValueError("give either --g or --g-coeffs, not both")
    if coeffs:
        parts = coeffs.split(";")
        const = float(parts[0])
        sins = tuple(float(v) for v in parts[1].split(",")) if len(parts) > 1 and parts[1] else ()
        coss = tuple(float(v) for v in parts[2].split(",")) if len(parts) > 2 and parts[2] else ()
        return TorusGeometry(const=const, sin_coeffs=sins, cos_coeffs=coss)
    if not shorthand:
        return TorusGeometry()
    sins, coss = [], []
    for term in shorthand.split(","):
        term = term.strip()
        if term.endswith("sin"):
            sins.append(float(term[:-3]))
        elif term.endswith("cos"):
            coss.append(float(term[:-3]))
        else:
            raise ValueError("term %r must end in 'sin' or 'cos'" % term)
    return TorusGeometry(sin_coeffs=tuple(sins), cos_coeffs=tuple(coss))


def cmd_torus_spectrum(args) -> int:
    geom = parse_g_spec(args.g, args.g_coeffs)
    if args.op == "DL":
        eigenvalues = spectrum_DL(geom, args.mode, args.N)
    else:
        eigenvalues = spectrum_DQ_band(geom, args.mode, args.N)
    report = {
        "schema_version": SCHEMA_VERSION,
        "g_coeffs": geom.coefficient_list(),
        "op": args.op,
        "mode": args.mode,
        "N": args.N,
        "eigenvalues": [float(v) for v in eigenvalues],
    }
    _emit(render_json(report), args.out)
    return 0


def cmd_sphere_index(args) -> int:
    if args.n_min > args.n_max or args.m_min > args.m_max:
        raise ValueError("empty block range")
    table = build_index_table(
        range(args.n_min, args.n_max + 1),
        range(args.m_min, args.m_max + 1),
        method=args.method,
        eps=args.eps,
        steps=args.steps,
    )
    blocks = []
    for (n, m), entry in table.entries.items():
        blocks.append({
            "n": n,
            "m": m,
            "dim_ker_plus": entry["dim_ker_plus"],
            "dim_ker_minus": entry["dim_ker_minus"],
            "index": entry["index"],
            "method": args.method,
        })
    if args.format == "csv":
        lines = ["n,m,dim_ker_plus,dim_ker_minus,index,method"]
        lines += ["%d,%d,%d,%d,%d,%s" % (b["n"], b["m"], b["dim_ker_plus"],
                                         b["dim_ker_minus"], b["index"], b["method"])
                  for b in blocks]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        report = {"schema_version": SCHEMA_VERSION, "method": args.method, "blocks": blocks}
        _emit(render_json(report), args.out)
    return 0


def cmd_sphere_kernel(args) -> int:
    numeric = index_numerical(args.n, args.m)
    phis = np.linspace(0.05, 0.5 * np.pi, 25)
    charts = []
    for chart in CHARTS:
        for chirality in CHIRALITIES:
            block = SphereBlock(n=args.n, m=args.m, chirality=chirality)
            ode = reduce_block(block, chart)
            k = theta_weight(block, chart)
            # closed form: sin(phi)^s * (1 + cos(phi))^c * exp(i k theta)
            sin_power = ode.exponent
            cos_power = (-1 if chirality == "+" else 1) * (args.n if chart == "upper" else -args.n)
            charts.append({
                "chart": chart,
                "chirality": chirality,
                "theta_weight": k,
                "sin_power": sin_power,
                "one_plus_cos_power": cos_power,
                "indicial_exponent": ode.exponent,
                "estimated_exponent": numeric["estimated_exponents"][(chart, chirality)],
                "pde_residual": float(pde_residual(block, chart, phis)),
            })
    report = {
        "schema_version": SCHEMA_VERSION,
        "n": args.n,
        "m": args.m,
        "dim_ker_plus": numeric["d_plus"],
        "dim_ker_minus": numeric["d_minus"],
        "index": numeric["index"],
        "sections": charts,
    }
    _emit(render_json(report), args.out)
    ok = all(c["indicial_exponent"] == c["estimated_exponent"] for c in charts)
    ok = ok and all(c["pde_residual"] < 1e-6 for c in charts)
    return 0 if ok else 1


def cmd_compare_quotient(args) -> int:
    blocks = []
    worst = 0.0
    for n in range(-args.n_max, args.n_max + 1):
        for m in range(-args.m_max, args.m_max + 1):
            gap = float(compare_block_reductions(n, m))
            worst = max(worst, gap)
            blocks.append({"n": n, "m": m, "discrepancy": gap})
    report = {
        "schema_version": SCHEMA_VERSION,
        "tol": args.tol,
        "max_discrepancy": worst,
        "passed": bool(worst < args.tol),
        "blocks": blocks,
    }
    _emit(render_json(report), args.out)
    return 0 if worst < args.tol else 1


def cmd_verify(args) -> int:
    report = run_suite(args.suite, trials=args.trials, seed=args.seed, tol=args.tol)
    out = {"schema_version": SCHEMA_VERSION}
    out.update(report)
    _emit(render_json(out), args.out)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transdirac",
        description="Transverse Dirac operator computations: torus spectra, "
                    "sphere kernel sections, and equivariant index tables.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    torus = sub.add_parser("torus-spectrum", help="per-mode spectrum on the warped torus")
    torus.add_argument("--op", choices=("DL", "DQ"), required=True)
    torus.add_argument("--g", default="", help="warping shorthand, e.g. '0.3sin,0.1cos'")
    torus.add_argument("--g-coeffs", default="", help="explicit 'const;sin1,sin2;cos1,...'")
    torus.add_argument("--N", type=int, required=True, help="grid size (even)")
    torus.add_argument("--mode", type=int, default=0, help="x-Fourier mode")
    torus.add_argument("--out", default=None)
    torus.set_defaults(func=cmd_torus_spectrum)

    index = sub.add_parser("sphere-index", help="equivariant index table over (n, m) blocks")
    index.add_argument("--n-min", type=int, required=True)
    index.add_argument("--n-max", type=int, required=True)
    index.add_argument("--m-min", type=int, required=True)
    index.add_argument("--m-max", type=int, required=True)
    index.add_argument("--method", choices=("closed", "numeric", "both"), default="closed")
    index.add_argument("--eps", type=float, default=1e-3)
    index.add_argument("--steps", type=int, default=10000)
    index.add_argument("--format", choices=("json", "csv"), default="json")
    index.add_argument("--out", default=None)
    index.set_defaults(func=cmd_sphere_index)

    kernel = sub.add_parser("sphere-kernel", help="kernel sections and exponents for one block")
    kernel.add_argument("--n", type=int, required=True)
    kernel.add_argument("--m", type=int, required=True)
    kernel.add_argument("--out", default=None)
    kernel.set_defaults(func=cmd_sphere_kernel)

    quotient = sub.add_parser("compare-quotient",
                              help="compare per-block reductions of the two operators")
    quotient.add_argument("--n-max", type=int, default=4)
    quotient.add_argument("--m-max", type=int, default=4)
    quotient.add_argument("--tol", type=float, default=1e-12)
    quotient.add_argument("--out", default=None)
    quotient.set_defaults(func=cmd_compare_quotient)

    verify = sub.add_parser("verify", help="run a self-check suite")
    verify.add_argument("--suite", choices=SUITES + ("all",), required=True)
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=7)
    verify.add_argument("--tol", type=float, default=None,
                        help="override the suite pass threshold")
    verify.add_argument("--out", default=None)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        report = {"schema_version": SCHEMA_VERSION, "error": str(exc)}
        sys.stderr.write(render_json(report))
        return 1


if __name__ == "__main__":
    sys.exit(main())
