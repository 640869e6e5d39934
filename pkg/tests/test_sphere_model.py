import numpy as np
import pytest

from transdirac.sphere_model import (
    CHARTS,
    CHIRALITIES,
    LOWER,
    UPPER,
    SphereBlock,
    SphereModelError,
    apply_chart_operator,
    chart_matrix,
    closed_form_kernel_section,
    clutching_check,
    compare_block_reductions,
    lifted_vector_fields,
    matched_global_section,
    orbit_field_components,
    pde_residual,
    pushforward_components,
    quotient_reduced_operator,
    reduce_block,
    sigma_reduced_operator,
    theta_weight,
)
from transdirac.sphere_model import E1, E2
from transdirac.transverse_operator import (
    SingularPointError,
    symbol_smallest_singular_value,
)


# ---------------------------------------------------------------------------
# charts


def test_charts_land_in_rotation_group():
    rng = np.random.default_rng(0)
    for chart in CHARTS:
        for _ in range(20):
            theta = rng.uniform(0, 2 * np.pi)
            phi = rng.uniform(0.1, np.pi / 2)
            alpha = rng.uniform(0, 2 * np.pi)
            u = chart_matrix(chart, theta, phi, alpha)
            assert np.max(np.abs(u.T @ u - np.eye(3))) < 1e-12
            assert abs(np.linalg.det(u) - 1.0) < 1e-12


def test_charts_cover_their_hemispheres():
    # the base-point height is +cos(phi) on one chart and -cos(phi) on the
    # other: phi measures the distance from the respective pole
    u = chart_matrix(UPPER, 0.4, 0.3)
    assert abs(u[0, 2] - np.cos(0.3)) < 1e-12
    d = chart_matrix(LOWER, 0.4, 0.3)
    assert abs(d[0, 2] + np.cos(0.3)) < 1e-12


def test_chart_transition_at_equator():
    # U1(theta, pi/2, alpha) = U2(theta, pi/2, alpha - 2 theta)
    for theta in np.linspace(0, 2 * np.pi, 9):
        for alpha in (0.0, 0.7):
            gap = np.max(np.abs(chart_matrix(UPPER, theta, np.pi / 2, alpha)
                                - chart_matrix(LOWER, theta, np.pi / 2, alpha - 2 * theta)))
            assert gap < 1e-12


# ---------------------------------------------------------------------------
# lifted vector fields


def test_upper_chart_fields_closed_form():
    rng = np.random.default_rng(1)
    for _ in range(20):
        theta = rng.uniform(0, 2 * np.pi)
        phi = rng.uniform(0.05, np.pi / 2)
        v1, v2 = lifted_vector_fields(UPPER, theta, phi)
        s, c = np.sin(phi), np.cos(phi)
        expect1 = np.array([np.sin(theta) * (c - 1) / s, np.sin(theta) * c / s, -np.cos(theta)])
        expect2 = np.array([np.cos(theta) * (1 - c) / s, -np.cos(theta) * c / s, -np.sin(theta)])
        assert np.max(np.abs(v1 - expect1)) < 1e-10
        assert np.max(np.abs(v2 - expect2)) < 1e-10


def test_fields_agree_with_pushforward():
    rng = np.random.default_rng(2)
    for chart in CHARTS:
        for _ in range(10):
            theta = rng.uniform(0, 2 * np.pi)
            phi = rng.uniform(0.05, np.pi / 2)
            v1, v2 = lifted_vector_fields(chart, theta, phi)
            assert np.max(np.abs(v1 - pushforward_components(chart, theta, phi, E1))) < 1e-10
            assert np.max(np.abs(v2 - pushforward_components(chart, theta, phi, E2))) < 1e-10


def test_fields_singular_at_pole():
    with pytest.raises(SingularPointError):
        lifted_vector_fields(UPPER, 0.3, 0.0)


def test_orbit_field_is_alpha_plus_theta():
    # the rotation action moves alpha and theta together; the alpha component
    # flips sign on the lower chart (orientation of the chart pole)
    t = orbit_field_components(UPPER, 0.7, 0.9)
    assert np.max(np.abs(t - np.array([1.0, 1.0, 0.0]))) < 1e-12
    t = orbit_field_components(LOWER, 0.7, 0.9)
    assert np.max(np.abs(t - np.array([-1.0, 1.0, 0.0]))) < 1e-12


# ---------------------------------------------------------------------------
# radial reduction and closed forms


def test_radial_table_upper():
    # chirality +: r = n csc(phi) - m cot(phi), indicial exponent n - m
    ode = reduce_block(SphereBlock(n=2, m=3, chirality="+"), UPPER)
    phi = 0.8
    assert abs(ode.r(phi) - (2 / np.sin(phi) - 3 / np.tan(phi))) < 1e-12
    assert ode.exponent == -1
    ode = reduce_block(SphereBlock(n=2, m=3, chirality="-"), UPPER)
    assert abs(ode.r(phi) - (3 / np.tan(phi) - 2 / np.sin(phi))) < 1e-12
    assert ode.exponent == 1


def test_lower_exponents_flip_n():
    # the clutching weight flip: lower-chart table is the upper one at -n
    for n in range(-3, 4):
        for m in range(-3, 4):
            for chirality in CHIRALITIES:
                lower = reduce_block(SphereBlock(n=n, m=m, chirality=chirality), LOWER)
                flipped = reduce_block(SphereBlock(n=-n, m=m, chirality=chirality), UPPER)
                assert lower.exponent == flipped.exponent
                assert abs(lower.r(0.6) - flipped.r(0.6)) < 1e-12


def test_theta_weight():
    block = SphereBlock(n=2, m=3, chirality="+")
    assert theta_weight(block, UPPER) == -1
    assert theta_weight(block, LOWER) == -5


def test_closed_forms_solve_radial_ode():
    h = 1e-6
    for n, m in ((0, 0), (2, 3), (1, -2), (3, 1)):
        for chart in CHARTS:
            for chirality in CHIRALITIES:
                block = SphereBlock(n=n, m=m, chirality=chirality)
                section = closed_form_kernel_section(block, chart)
                ode = reduce_block(block, chart)
                for phi in (0.4, 1.0, 1.5):
                    deriv = (section(0.0, phi + h) - section(0.0, phi - h)) / (2 * h)
                    expect = ode.r(phi) * section(0.0, phi)
                    assert abs(deriv - expect) < 1e-6 * max(abs(expect), 1.0)


def test_closed_forms_satisfy_full_pde():
    phis = np.linspace(0.05, np.pi / 2, 25)
    for n, m in ((0, 0), (2, 3), (1, -2), (3, 1), (2, -2), (1, 1)):
        for chart in CHARTS:
            for chirality in CHIRALITIES:
                block = SphereBlock(n=n, m=m, chirality=chirality)
                assert pde_residual(block, chart, phis) < 1e-6


def test_mode_reduction_consistency():
    # applying the full operator to e^{ik theta} f(phi) and stripping the
    # angular factor reproduces the radial operator
    for n, m in ((1, 2), (2, -1)):
        for chart in CHARTS:
            block = SphereBlock(n=n, m=m, chirality="+")
            k = theta_weight(block, chart)
            ode = reduce_block(block, chart)
            f = lambda phi: np.exp(np.sin(phi))  # arbitrary smooth radial profile

            def section(theta, phi):
                return np.exp(1j * k * theta) * f(phi)

            theta, phi = 0.9, 0.7
            out = apply_chart_operator(n, chart, "+", section, theta, phi)
            # the operator output carries one extra unit of theta-weight and
            # an overall chart-dependent sign
            radial = out / np.exp(1j * (k + 1) * theta)
            sign = -1.0 if chart == UPPER else 1.0
            df = (f(phi + 1e-5) - f(phi - 1e-5)) / 2e-5
            expect = sign * (df - ode.r(phi) * f(phi))
            assert abs(radial - expect) < 1e-8 * max(abs(expect), 1.0)


def test_residual_grid_must_avoid_pole():
    block = SphereBlock(n=1, m=1, chirality="+")
    with pytest.raises(SphereModelError):
        pde_residual(block, UPPER, [1e-5, 0.3])


# ---------------------------------------------------------------------------
# clutching


def test_matched_sections_clutch():
    for n, m in ((0, 0), (1, 1), (2, 3), (2, -3), (3, -3)):
        for chirality in CHIRALITIES:
            block = SphereBlock(n=n, m=m, chirality=chirality)
            upper, lower = matched_global_section(block)
            assert clutching_check(n, upper, lower)


def test_clutching_detects_mismatch():
    block = SphereBlock(n=2, m=0, chirality="+")
    upper, lower = matched_global_section(block)
    assert not clutching_check(3, upper, lower)  # wrong weight


# ---------------------------------------------------------------------------
# reduced 2x2 operators


def test_sigma_operator_fails_ellipticity_at_equator():
    op = sigma_reduced_operator(2)
    x = [0.3, np.pi / 2]
    assert symbol_smallest_singular_value(op, x, [1.0, 0.0]) < 1e-10
    for phi in (np.pi / 2 - 0.1, np.pi / 2 + 0.1):
        assert symbol_smallest_singular_value(op, [0.3, phi], [1.0, 0.0]) > 1e-2


def test_sigma_operator_elliptic_in_phi_direction():
    op = sigma_reduced_operator(2)
    assert symbol_smallest_singular_value(op, [0.3, np.pi / 2], [0.0, 1.0]) > 0.5


def test_quotient_operator_elliptic_inside_hemisphere():
    rng = np.random.default_rng(3)
    op = quotient_reduced_operator(1)
    for _ in range(100):
        x = [rng.uniform(0, 2 * np.pi), rng.uniform(0.05, np.pi / 2 - 0.01)]
        xi = rng.standard_normal(2)
        xi /= np.linalg.norm(xi)
        assert symbol_smallest_singular_value(op, x, xi) > 0.5


def test_reductions_agree_blockwise():
    for n in range(-4, 5):
        for m in range(-4, 5):
            assert compare_block_reductions(n, m) < 1e-12
