"""Warped 2-torus with metric e^{2g(y)} dx^2 + dy^2.

The operator along L = span(d_y) is D_L = i(d_y + g'/2) with spectrum Z of
infinite multiplicity; the operator along Q = span(d_x) is D_Q = i e^{-g} d_x,
whose restriction to the x-mode n is multiplication by n e^{-g(y)} with
spectrum n [min e^{-g}, max e^{-g}].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from transdirac.clifford import build_standard_module
from transdirac.spectral import hermitian_eigensolve, periodic_grid
from transdirac.transverse_operator import (
    FirstOrderOperator,
    FrameField,
    assemble_AQ,
    assemble_DQ,
    discretize_hermitian,
)

MIN_GRID = 16


class TorusError(ValueError):
    pass


@dataclass(frozen=True)
class TorusGeometry:
    """2*pi-periodic warping g(y) = const + sum_k (a_k sin ky + b_k cos ky)."""

    const: float = 0.0
    sin_coeffs: tuple = field(default_factory=tuple)
    cos_coeffs: tuple = field(default_factory=tuple)

    def g(self, y):
        y = np.asarray(y, dtype=float)
        out = np.full_like(y, self.const, dtype=float)
        for k, a in enumerate(self.sin_coeffs, start=1):
            out += a * np.sin(k * y)
        for k, b in enumerate(self.cos_coeffs, start=1):
            out += b * np.cos(k * y)
        return out

    def g_prime(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y, dtype=float)
        for k, a in enumerate(self.sin_coeffs, start=1):
            out += a * k * np.cos(k * y)
        for k, b in enumerate(self.cos_coeffs, start=1):
            out -= b * k * np.sin(k * y)
        return out

    def coefficient_list(self) -> list:
        return [self.const, list(self.sin_coeffs), list(self.cos_coeffs)]


def full_chart_frames(geom: TorusGeometry, along: str = "Q") -> FrameField:
    """Q- or L-frame field on the (x, y) chart of the torus."""
    if along not in ("Q", "L"):
        raise TorusError("along must be 'Q' or 'L'")

    def components(pt):
        y = pt[1]
        if along == "Q":
            return np.array([[np.exp(-geom.g(y)), 0.0]])
        return np.array([[0.0, 1.0]])

    def metric(pt):
        y = pt[1]
        return np.diag([np.exp(2.0 * geom.g(y)), 1.0])

    samples = [np.array([0.3, y]) for y in np.linspace(0.0, 2.0 * np.pi, 7)]
    return FrameField(chart="torus", dim=2, q=1, components=components, metric=metric, samples=samples)


def operator_AQ_full(geom: TorusGeometry, along: str = "Q") -> FirstOrderOperator:
    """A_Q (or A_L) on the full (x, y) chart; c(f_1) acts as i."""
    return assemble_AQ(full_chart_frames(geom, along), build_standard_module(1))


def operator_D_full(geom: TorusGeometry, along: str = "Q") -> FirstOrderOperator:
    """D = A - c(H)/2 on the full chart. H^L = 0 for the Q-operator and
    H^Q = -g'(y) d_y for the L-operator."""
    mod = build_standard_module(1)
    frames = full_chart_frames(geom, along)
    if along == "Q":
        mean_curvature = lambda pt: np.array([0.0])
    else:
        mean_curvature = lambda pt: np.array([-geom.g_prime(pt[1])])
    return assemble_DQ(frames, mod, mean_curvature)


def dl_mode_operator(geom: TorusGeometry) -> FirstOrderOperator:
    """D_L = i(d_y + g'/2) restricted to a single x-Fourier mode."""
    return FirstOrderOperator(
        chart="torus-y",
        dim=1,
        fiber_dim=1,
        coeff=(lambda pt: np.array([[1j]]),),
        zeroth=lambda pt: np.array([[0.5j * geom.g_prime(pt[0])]]),
    )


def al_mode_operator(geom: TorusGeometry) -> FirstOrderOperator:
    """A_L = i d_y per x-mode, without the mean-curvature correction."""
    return FirstOrderOperator(
        chart="torus-y",
        dim=1,
        fiber_dim=1,
        coeff=(lambda pt: np.array([[1j]]),),
        zeroth=lambda pt: np.array([[0.0j]]),
    )


def dq_mode_operator(geom: TorusGeometry, n: int) -> FirstOrderOperator:
    """D_Q on the x-mode n: multiplication by n e^{-g(y)}."""
    return FirstOrderOperator(
        chart="torus-y",
        dim=1,
        fiber_dim=1,
        coeff=(lambda pt: np.array([[0.0j]]),),
        zeroth=lambda pt: np.array([[complex(n * np.exp(-geom.g(pt[0])))]]),
    )


def mode_grid(geom: TorusGeometry, n_points: int):
    """Periodic y-grid weighted by the volume density e^{g(y)}."""
    if n_points < MIN_GRID or n_points % 2:
        raise TorusError("grid size must be even and >= %d" % MIN_GRID)
    base = periodic_grid(n_points)
    weights = (2.0 * np.pi / n_points) * np.exp(geom.g(base.points))
    return periodic_grid(n_points, weights=weights)


def spectrum_DL(geom: TorusGeometry, x_mode: int, n_points: int) -> np.ndarray:
    """Eigenvalues of D_L on the x-mode subspace; independent of the mode."""
    int(x_mode)  # the 1D reduction carries no mode dependence
    grid = mode_grid(geom, n_points)
    mat = discretize_hermitian(dl_mode_operator(geom), grid)
    return hermitian_eigensolve(mat).eigenvalues


def spectrum_DQ_band(geom: TorusGeometry, x_mode: int, n_points: int) -> np.ndarray:
    """Eigenvalues of D_Q on the x-mode subspace: the diagonal n e^{-g(y_j)}."""
    grid = mode_grid(geom, n_points)
    mat = discretize_hermitian(dq_mode_operator(geom, x_mode), grid)
    return hermitian_eigensolve(mat).eigenvalues
