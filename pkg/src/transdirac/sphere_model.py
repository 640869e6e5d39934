"""Circle action on the two-sphere via its oriented frame bundle SO(3).

The frame bundle is charted by two hemisphere charts (theta, phi, alpha);
the horizontal fields V_1, V_2 and the orbit field T are left translates of
fixed so(3) elements. Sections are doubly reduced by the weight n of the
fiberwise SO(2) rotation and the weight m of the lifted circle action,
which collapses each chirality component to a radial ODE
d_phi psi = r(phi) psi on (0, pi/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from transdirac.transverse_operator import FirstOrderOperator, SingularPointError

UPPER = "upper"
LOWER = "lower"
CHARTS = (UPPER, LOWER)
CHIRALITIES = ("+", "-")

POLE_EPS = 1e-3

# so(3) generators of the two horizontal directions and the orbit direction
E1 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
E2 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
ET = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


class SphereModelError(ValueError):
    pass


def _check_chart(chart: str):
    if chart not in CHARTS:
        raise SphereModelError("unknown chart %r" % chart)


@dataclass(frozen=True)
class SphereBlock:
    """Isotypic label: frame-rotation weight n, lifted-rotation weight m."""

    n: int
    m: int
    chirality: str = "+"

    def __post_init__(self):
        if self.chirality not in CHIRALITIES:
            raise SphereModelError("chirality must be '+' or '-'")


@dataclass(frozen=True)
class RadialODE:
    block: SphereBlock
    chart: str
    r: Callable
    exponent: int


# ---------------------------------------------------------------------------
# charts of SO(3) and pushforward of the invariant fields


def _rz(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _drz(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[-s, -c, 0.0], [c, -s, 0.0], [0.0, 0.0, 0.0]])


def _ry(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _dry(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[-s, 0.0, c], [0.0, 0.0, 0.0], [-c, 0.0, -s]])


def _lmat(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def _dlmat(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[0.0, 0.0, 0.0], [0.0, -s, c], [0.0, -c, -s]])


# columns (e3, e1, e2): parallel transport of these gives the rows
# (point, X, Y) of the frame matrix
_BASIS_UPPER = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
_BASIS_LOWER = np.array([[0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
_FLIP = np.diag([1.0, 1.0, -1.0])


def _transport(theta: float, phi: float) -> np.ndarray:
    return _rz(theta) @ _ry(phi) @ _rz(-theta)


def _transport_dtheta(theta: float, phi: float) -> np.ndarray:
    return _drz(theta) @ _ry(phi) @ _rz(-theta) - _rz(theta) @ _ry(phi) @ _drz(-theta)


def _transport_dphi(theta: float, phi: float) -> np.ndarray:
    return _rz(theta) @ _dry(phi) @ _rz(-theta)


def chart_matrix(chart: str, theta: float, phi: float, alpha: float = 0.0) -> np.ndarray:
    """The SO(3) element of the hemisphere chart at (theta, phi, alpha)."""
    _check_chart(chart)
    p = _transport(theta, phi)
    if chart == UPPER:
        return _lmat(alpha) @ (p @ _BASIS_UPPER).T
    return _lmat(alpha) @ (p @ _BASIS_LOWER).T @ _FLIP


def _chart_partials(chart: str, theta: float, phi: float, alpha: float):
    basis = _BASIS_UPPER if chart == UPPER else _BASIS_LOWER
    post = np.eye(3) if chart == UPPER else _FLIP
    p = _transport(theta, phi)
    m = (p @ basis).T @ post
    la = _lmat(alpha)
    d_alpha = _dlmat(alpha) @ m
    d_theta = la @ (_transport_dtheta(theta, phi) @ basis).T @ post
    d_phi = la @ (_transport_dphi(theta, phi) @ basis).T @ post
    return la @ m, (d_alpha, d_theta, d_phi)


def _vec_skew(w: np.ndarray) -> np.ndarray:
    return np.array([w[0, 1], w[0, 2], w[1, 2]])


def pushforward_components(chart: str, theta: float, phi: float, generator: np.ndarray,
                           alpha: float = 0.0) -> np.ndarray:
    """Components of the left-invariant field A -> A*generator in the chart
    coordinate basis (d_alpha, d_theta, d_phi)."""
    _check_chart(chart)
    u, partials = _chart_partials(chart, theta, phi, alpha)
    cols = np.column_stack([_vec_skew(u.T @ d) for d in partials])
    try:
        return np.linalg.solve(cols, _vec_skew(generator))
    except np.linalg.LinAlgError as err:
        raise SingularPointError("chart degenerate at phi=%g" % phi) from err


def lifted_vector_fields(chart: str, theta: float, phi: float):
    """Component triples of V_1, V_2 in (d_alpha, d_theta, d_phi).

    The upper-chart components are in closed form; the lower chart is
    derived from the chart definition by solving the pushforward system.
    """
    _check_chart(chart)
    if abs(math.sin(phi)) < 1e-12:
        raise SingularPointError("coordinate pole at phi=%g" % phi)
    if chart == UPPER:
        st, ct = math.sin(theta), math.cos(theta)
        sp, cp = math.sin(phi), math.cos(phi)
        v1 = np.array([st * (cp - 1.0) / sp, st * cp / sp, -ct])
        v2 = np.array([ct * (1.0 - cp) / sp, -ct * cp / sp, -st])
        return v1, v2
    return (
        pushforward_components(chart, theta, phi, E1),
        pushforward_components(chart, theta, phi, E2),
    )


def orbit_field_components(chart: str, theta: float, phi: float) -> np.ndarray:
    return pushforward_components(chart, theta, phi, ET)


# ---------------------------------------------------------------------------
# isotypic reduction to radial ODEs


def _n_eff(n: int, chart: str) -> int:
    # the lower chart sees the frame weight with flipped sign (clutching)
    return n if chart == UPPER else -n


def theta_weight(block: SphereBlock, chart: str) -> int:
    """Angular weight k with psi(theta, phi) = e^{i k theta} psi(0, phi)."""
    return _n_eff(block.n, chart) - block.m


def reduce_block(block: SphereBlock, chart: str) -> RadialODE:
    """Radial reduction d_phi psi = r(phi) psi of the kernel equation."""
    _check_chart(chart)
    ne, m = _n_eff(block.n, chart), block.m
    if block.chirality == "+":
        r = lambda phi: (ne - m * np.cos(phi)) / np.sin(phi)
        exponent = ne - m
    else:
        r = lambda phi: (m * np.cos(phi) - ne) / np.sin(phi)
        exponent = m - ne
    return RadialODE(block=block, chart=chart, r=r, exponent=exponent)


def closed_form_kernel_section(block: SphereBlock, chart: str) -> Callable:
    """Closed-form kernel solution (C = 1); may be unbounded at the pole."""
    _check_chart(chart)
    ne, m = _n_eff(block.n, chart), block.m
    k = ne - m

    if block.chirality == "+":
        def section(theta, phi):
            return np.sin(phi) ** (ne - m) / (np.cos(phi) + 1.0) ** ne * np.exp(1j * k * theta)
    else:
        def section(theta, phi):
            return (np.cos(phi) + 1.0) ** ne * np.sin(phi) ** (m - ne) * np.exp(1j * k * theta)

    return section


# ---------------------------------------------------------------------------
# full chartwise operator and residual diagnostics


def _w_plus(chart: str, theta: float, phi: float) -> np.ndarray:
    v1, v2 = lifted_vector_fields(chart, theta, phi)
    return v1 + 1j * v2


def apply_chart_operator(n: int, chart: str, chirality: str, section: Callable,
                         theta: float, phi: float, step: float = 1e-4) -> complex:
    """Apply the chartwise kernel operator to a weight-n section.

    Chirality '+' applies V_1 + i V_2, chirality '-' applies
    -conj(V_1 + i V_2); d_alpha acts as multiplication by -i n and the
    remaining derivatives are 4th-order finite differences.
    """
    w = _w_plus(chart, theta, phi)
    if chirality == "-":
        w = -np.conj(w)
    elif chirality != "+":
        raise SphereModelError("chirality must be '+' or '-'")

    def d4(f, x0, h):
        return (-f(x0 + 2 * h) + 8 * f(x0 + h) - 8 * f(x0 - h) + f(x0 - 2 * h)) / (12.0 * h)

    d_theta = d4(lambda t: section(t, phi), theta, step)
    d_phi = d4(lambda p: section(theta, p), phi, step)
    return w[0] * (-1j * n) * section(theta, phi) + w[1] * d_theta + w[2] * d_phi


def pde_residual(block: SphereBlock, chart: str, phi_values, theta_values=None) -> float:
    """Max relative residual of the closed-form section under the full
    chartwise operator on a grid away from the poles."""
    phi_values = np.atleast_1d(np.asarray(phi_values, dtype=float))
    if np.min(phi_values) < POLE_EPS:
        raise SphereModelError("grid touches the coordinate pole")
    if theta_values is None:
        theta_values = np.linspace(0.0, 2.0 * np.pi, 7)[:-1]
    section = closed_form_kernel_section(block, chart)
    worst = 0.0
    for phi in phi_values:
        for theta in np.atleast_1d(theta_values):
            value = section(theta, phi)
            out = apply_chart_operator(block.n, chart, block.chirality, section, theta, phi)
            worst = max(worst, abs(out) / max(abs(value), 1e-300))
    return worst


def clutching_check(n: int, psi_upper: Callable, psi_lower: Callable,
                    thetas=None, tol: float = 1e-10) -> bool:
    """Equator matching psi1(theta, pi/2) = e^{2 i n theta} psi2(theta, pi/2)."""
    if thetas is None:
        thetas = np.linspace(0.0, 2.0 * np.pi, 17)[:-1]
    half_pi = 0.5 * np.pi
    scale = max(max(abs(psi_upper(t, half_pi)) for t in thetas), 1e-300)
    for t in thetas:
        if abs(psi_upper(t, half_pi) - np.exp(2j * n * t) * psi_lower(t, half_pi)) > tol * scale:
            return False
    return True


def matched_global_section(block: SphereBlock):
    """Kernel sections on both charts scaled to agree at the equator."""
    upper = closed_form_kernel_section(block, UPPER)
    lower = closed_form_kernel_section(block, LOWER)
    half_pi = 0.5 * np.pi
    ratio = upper(0.0, half_pi) / lower(0.0, half_pi)
    return upper, lambda theta, phi: ratio * lower(theta, phi)


# ---------------------------------------------------------------------------
# reduced 2x2 operators on the hemisphere


def _entry_ops(w_fn):
    """Package the chiral pair (w, -conj(w)) into 2x2 coefficient builders."""

    def pair(x, index):
        w = w_fn(x)
        return np.array([[0.0, -np.conj(w[index])], [w[index], 0.0]], dtype=complex)

    return pair


def sigma_reduced_operator(n: int) -> FirstOrderOperator:
    """The weight-n reduction of the sphere operator on the upper chart:
    a 2x2 first-order operator in (theta, phi) with d_alpha -> -i n."""

    def w_at(x):
        return _w_plus(UPPER, x[0], x[1])

    pair = _entry_ops(w_at)

    def zeroth(x):
        w = w_at(x)
        return np.array(
            [[0.0, 1j * n * np.conj(w[0])], [-1j * n * w[0], 0.0]], dtype=complex
        )

    return FirstOrderOperator(
        chart="sphere-upper",
        dim=2,
        fiber_dim=2,
        coeff=(lambda x: pair(x, 1), lambda x: pair(x, 2)),
        zeroth=zeroth,
    )


def quotient_reduced_operator(m: int) -> FirstOrderOperator:
    """The weight-m operator on the quotient hemisphere, obtained from the
    substitution d_alpha -> -d_theta - i m."""

    def a_theta(x):
        theta, phi = x
        val = -1j * np.exp(1j * theta) / np.sin(phi)
        return np.array([[0.0, -np.conj(val)], [val, 0.0]], dtype=complex)

    def a_phi(x):
        theta = x[0]
        val = -np.exp(1j * theta)
        return np.array([[0.0, -np.conj(val)], [val, 0.0]], dtype=complex)

    def zeroth(x):
        theta, phi = x
        val = -m * np.exp(1j * theta) * (1.0 / np.tan(phi) - 1.0 / np.sin(phi))
        # the (1,2) entry picks up conj(val), not -conj(val): the d_alpha
        # substitution happens after the chiral conjugation
        return np.array([[0.0, np.conj(val)], [val, 0.0]], dtype=complex)

    return FirstOrderOperator(
        chart="quotient-upper", dim=2, fiber_dim=2, coeff=(a_theta, a_phi), zeroth=zeroth
    )


def compare_block_reductions(n: int, m: int, phi_values=None) -> float:
    """Coefficient-level agreement of the two reduction routes.

    Route 1 restricts the quotient operator to frame weight n; route 2 is
    the radial table from the sphere-side reduction. Returns the sup over
    the phi grid of the coefficient discrepancy, across both chiralities.
    """
    if phi_values is None:
        phi_values = np.linspace(0.05, 0.5 * np.pi, 201)
    op = quotient_reduced_operator(m)
    theta = 0.3
    k = n - m  # theta weight of sigma_n sections on the upper chart
    worst = 0.0
    for chirality, (row, col) in (("+", (1, 0)), ("-", (0, 1))):
        table_r = reduce_block(SphereBlock(n=n, m=m, chirality=chirality), UPPER).r
        for phi in np.atleast_1d(phi_values):
            x = np.array([theta, phi])
            mats = op.coefficients_at(x)
            b0 = op.zeroth_at(x)
            a_phi = mats[1][row, col]
            r1 = -(mats[0][row, col] * 1j * k + b0[row, col]) / a_phi
            worst = max(worst, abs(r1 - table_r(phi)))
    return worst
