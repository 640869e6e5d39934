"""Kernel dimensions and the equivariant index per (n, m) block.

Two independent routes: integer arithmetic on the indicial exponents of the
radial kernel ODEs, and a numerical oracle that integrates the ODEs toward
the pole and estimates the exponents from log-log slopes.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from transdirac.spectral import fit_exponent, integrate_log_ode
from transdirac.sphere_model import CHARTS, CHIRALITIES, SphereBlock, reduce_block


class IndexError_(ValueError):
    pass


class ExponentFitError(IndexError_):
    """The log-log slope did not land near an integer (grid too coarse)."""


def kernel_dims_closed_form(n: int, m: int):
    """(dim ker+, dim ker-): a chirality contributes iff its radial solution
    is regular at both poles, i.e. both indicial exponents are >= 0."""
    d_plus = 1 if (n - m >= 0 and -n - m >= 0) else 0
    d_minus = 1 if (m - n >= 0 and m + n >= 0) else 0
    return d_plus, d_minus


def index_closed_form(n: int, m: int) -> int:
    d_plus, d_minus = kernel_dims_closed_form(n, m)
    return d_plus - d_minus


def _estimate_exponent(block: SphereBlock, chart: str, eps: float, steps: int) -> int:
    ode = reduce_block(block, chart)
    phis, log_psi = integrate_log_ode(ode.r, 0.25 * np.pi, eps, steps)
    window = phis <= 10.0 * eps
    slope = fit_exponent(np.log(np.sin(phis[window])), log_psi[window])
    snapped = round(slope)
    if abs(slope - snapped) > 0.1:
        raise ExponentFitError(
            "slope %.4f too far from an integer for block (%d, %d)" % (slope, block.n, block.m)
        )
    return int(snapped)


def index_numerical(n: int, m: int, eps: float = 1e-3, steps: int = 10000) -> dict:
    """ODE oracle for one block: integrate each radial equation toward the
    pole, snap the log-log slope to an integer exponent, and count a kernel
    dimension for a chirality iff it is regular in both charts."""
    if not (1e-4 <= eps <= 1e-2):
        raise IndexError_("eps must lie in [1e-4, 1e-2]")
    if steps < 10000:
        raise IndexError_("need at least 1e4 integration steps")
    exponents = {}
    dims = {}
    for chirality in CHIRALITIES:
        regular = True
        for chart in CHARTS:
            k = _estimate_exponent(SphereBlock(n=n, m=m, chirality=chirality), chart, eps, steps)
            exponents[(chart, chirality)] = k
            regular = regular and k >= 0
        dims[chirality] = 1 if regular else 0
    return {
        "d_plus": dims["+"],
        "d_minus": dims["-"],
        "index": dims["+"] - dims["-"],
        "estimated_exponents": exponents,
    }


@dataclass(frozen=True)
class IndexTable:
    entries: dict  # (n, m) -> {"dim_ker_plus", "dim_ker_minus", "index"}

    def __post_init__(self):
        for key, entry in self.entries.items():
            if entry["index"] != entry["dim_ker_plus"] - entry["dim_ker_minus"]:
                raise IndexError_("inconsistent entry at %s" % (key,))
            if entry["index"] not in (-1, 0, 1):
                raise IndexError_("index out of range at %s" % (key,))

    def index(self, n: int, m: int) -> int:
        return self.entries[(n, m)]["index"]

    def total_kernel(self, n: int, m: int) -> int:
        entry = self.entries[(n, m)]
        return entry["dim_ker_plus"] + entry["dim_ker_minus"]


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TRANSDIRAC_WORKERS", "1")))
    except ValueError:
        return 1


def build_index_table(n_range, m_range, method: str = "closed",
                      eps: float = 1e-3, steps: int = 10000) -> IndexTable:
    """Index table over finite ranges; method 'closed', 'numeric' or 'both'
    ('both' insists the two routes agree on every block)."""
    n_values = list(n_range)
    m_values = list(m_range)
    if not n_values or not m_values:
        raise IndexError_("ranges must be nonempty")
    if method not in ("closed", "numeric", "both"):
        raise IndexError_("unknown method %r" % method)

    def closed_entry(n, m):
        d_plus, d_minus = kernel_dims_closed_form(n, m)
        return {"dim_ker_plus": d_plus, "dim_ker_minus": d_minus, "index": d_plus - d_minus}

    def numeric_entry(n, m):
        res = index_numerical(n, m, eps=eps, steps=steps)
        return {"dim_ker_plus": res["d_plus"], "dim_ker_minus": res["d_minus"], "index": res["index"]}

    def entry(key):
        n, m = key
        if method == "closed":
            return key, closed_entry(n, m)
        if method == "numeric":
            return key, numeric_entry(n, m)
        closed = closed_entry(n, m)
        numeric = numeric_entry(n, m)
        if closed != numeric:
            raise IndexError_("route disagreement at (%d, %d): %s vs %s" % (n, m, closed, numeric))
        return key, closed

    keys = [(n, m) for n in n_values for m in m_values]
    workers = _worker_count()
    if workers > 1 and method != "closed":
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(entry, keys))
    else:
        results = dict(entry(key) for key in keys)
    return IndexTable(entries={key: results[key] for key in keys})
