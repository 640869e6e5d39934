"""Chartwise first-order operators: assembly of A_Q and D_Q = A_Q - c(H^L)/2,
principal symbols, and Hermitian-symmetric discretizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from transdirac.clifford import CliffordModule
from transdirac.spectral import (
    Grid1D,
    centered_diff_matrix,
    fourier_diff_matrix,
    hermitian_defect,
    smallest_singular_value,
)

GRAM_TOL = 1e-8


class OperatorError(ValueError):
    pass


class SingularPointError(OperatorError):
    """Raised when a coefficient is evaluated on a declared singular locus."""


@dataclass(frozen=True)
class FirstOrderOperator:
    """Coefficient description sum_k A^k(x) d_k + B0(x) on one chart.

    Each coefficient function maps a point (array of length dim) to a
    complex (fiber_dim, fiber_dim) matrix.
    """

    chart: str
    dim: int
    fiber_dim: int
    coeff: Sequence[Callable]
    zeroth: Callable

    def __post_init__(self):
        if len(self.coeff) != self.dim:
            raise OperatorError("expected %d derivative coefficients" % self.dim)

    def coefficients_at(self, x) -> list:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        mats = [np.asarray(a(x), dtype=complex) for a in self.coeff]
        for mat in mats:
            if not np.all(np.isfinite(mat)):
                raise SingularPointError("coefficient singular at %s" % x)
        return mats

    def zeroth_at(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        mat = np.asarray(self.zeroth(x), dtype=complex)
        if not np.all(np.isfinite(mat)):
            raise SingularPointError("zeroth-order term singular at %s" % x)
        return mat


@dataclass(frozen=True)
class FrameField:
    """Chartwise orthonormal Q-frame: coordinate components of f_1..f_q,
    the chart metric, and an optional Cl(Q)-connection term for the bundle."""

    chart: str
    dim: int
    q: int
    components: Callable  # x -> (q, dim) real array, rows are f_j
    metric: Callable  # x -> (dim, dim) real array
    samples: Sequence  # points where orthonormality is validated
    connection_term: Optional[Callable] = None  # x -> (fiber, fiber) matrix


def _validate_frame(frames: FrameField):
    for x in frames.samples:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        f = np.asarray(frames.components(x), dtype=float)
        g = np.asarray(frames.metric(x), dtype=float)
        gram = f @ g @ f.T
        if np.max(np.abs(gram - np.eye(frames.q))) > GRAM_TOL:
            raise OperatorError("frame not orthonormal at %s" % x)


def assemble_AQ(frames: FrameField, mod: CliffordModule) -> FirstOrderOperator:
    """Dirac operator A_Q = sum_j c(f_j) nabla_{f_j} in chart coordinates."""
    if mod.q != frames.q:
        raise OperatorError("module rank does not match frame count")
    _validate_frame(frames)

    def make_coeff(k):
        def coeff(x):
            f = np.asarray(frames.components(x), dtype=complex)
            out = np.zeros((mod.fiber_dim, mod.fiber_dim), dtype=complex)
            for j in range(frames.q):
                out += f[j, k] * mod.generators[j]
            return out

        return coeff

    def zeroth(x):
        if frames.connection_term is None:
            return np.zeros((mod.fiber_dim, mod.fiber_dim), dtype=complex)
        return np.asarray(frames.connection_term(x), dtype=complex)

    return FirstOrderOperator(
        chart=frames.chart,
        dim=frames.dim,
        fiber_dim=mod.fiber_dim,
        coeff=tuple(make_coeff(k) for k in range(frames.dim)),
        zeroth=zeroth,
    )


def assemble_DQ(frames: FrameField, mod: CliffordModule, mean_curvature: Callable) -> FirstOrderOperator:
    """Self-adjoint correction D_Q = A_Q - c(H^L)/2.

    mean_curvature maps a chart point to the f-frame coordinates of H^L.
    """
    aq = assemble_AQ(frames, mod)

    def zeroth(x):
        h = np.asarray(mean_curvature(x), dtype=complex)
        correction = np.zeros((mod.fiber_dim, mod.fiber_dim), dtype=complex)
        for j in range(frames.q):
            correction += h[j] * mod.generators[j]
        return aq.zeroth_at(x) - 0.5 * correction

    return FirstOrderOperator(
        chart=aq.chart, dim=aq.dim, fiber_dim=aq.fiber_dim, coeff=aq.coeff, zeroth=zeroth
    )


def principal_symbol(op: FirstOrderOperator, x, xi) -> np.ndarray:
    """Symbol sum_k A^k(x) xi_k (no factor of i)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if len(xi) != op.dim:
        raise OperatorError("covector length mismatch")
    mats = op.coefficients_at(x)
    out = np.zeros((op.fiber_dim, op.fiber_dim), dtype=complex)
    for mat, comp in zip(mats, xi):
        out += comp * mat
    return out


def symbol_smallest_singular_value(op: FirstOrderOperator, x, xi) -> float:
    return smallest_singular_value(principal_symbol(op, x, xi))


def discretize_hermitian(op: FirstOrderOperator, grid: Grid1D) -> np.ndarray:
    """Dense matrix of a 1D operator in the weighted orthonormal discrete basis.

    Multiplying sections by sqrt(w) maps L^2(w dy) unitarily onto the flat
    measure, where the operator A d + B becomes A d + (B - A w'/(2w)).  Its
    derivative part is discretized in the split form (A D + D A)/2, which is
    exactly anti-Hermitian times anti-Hermitian coefficients and consistently
    carries the A'/2 term; the pointwise remainder B - A'/2 - A w'/(2w) sits
    on the diagonal.  The result is Hermitian to rounding whenever the
    operator is formally self-adjoint with respect to the weight, while a
    missing self-adjointness correction shows up verbatim in the defect.
    """
    if op.dim != 1:
        raise OperatorError("only 1D discretization is provided")
    n, d = grid.n, op.fiber_dim
    diff = fourier_diff_matrix(n) if grid.periodic else centered_diff_matrix(grid.points)
    avals = np.stack([op.coefficients_at([x])[0] for x in grid.points])  # (n, d, d)
    bvals = np.stack([op.zeroth_at([x]) for x in grid.points])  # (n, d, d)
    a_prime = np.tensordot(diff, avals, axes=(1, 0))  # d/dy of the coefficient
    log_w_prime = (diff @ grid.weights) / grid.weights
    rem = bvals - 0.5 * a_prime - 0.5 * log_w_prime[:, None, None] * avals
    full = 0.5 * (
        avals[:, None, :, :] * diff[:, :, None, None]
        + avals[None, :, :, :] * diff[:, :, None, None]
    )
    full[np.arange(n), np.arange(n)] += rem
    return full.transpose(0, 2, 1, 3).reshape(n * d, n * d)


def hermitian_discretization_defect(op: FirstOrderOperator, grid: Grid1D) -> float:
    return hermitian_defect(discretize_hermitian(op, grid))
