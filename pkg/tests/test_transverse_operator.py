import numpy as np
import pytest

from transdirac.clifford import build_standard_module
from transdirac.spectral import periodic_grid
from transdirac.torus_model import (
    TorusGeometry,
    al_mode_operator,
    dl_mode_operator,
    dq_mode_operator,
    full_chart_frames,
    mode_grid,
    operator_AQ_full,
)
from transdirac.transverse_operator import (
    FirstOrderOperator,
    FrameField,
    OperatorError,
    SingularPointError,
    assemble_AQ,
    discretize_hermitian,
    hermitian_discretization_defect,
    principal_symbol,
    symbol_smallest_singular_value,
)


def test_assemble_aq_torus_coefficients():
    geom = TorusGeometry(sin_coeffs=(0.3,))
    op = operator_AQ_full(geom)
    y = 0.8
    a_x, a_y = op.coefficients_at([0.1, y])
    # c(f_1) acts as multiplication by i; f_1 = e^{-g} d_x
    assert np.allclose(a_x, [[1j * np.exp(-0.3 * np.sin(y))]], atol=1e-14)
    assert np.allclose(a_y, [[0.0]], atol=1e-14)


def test_frame_orthonormality_enforced():
    def components(x):
        return np.array([[2.0, 0.0]])  # not unit length for the flat metric

    frames = FrameField(chart="flat", dim=2, q=1,
                        components=components,
                        metric=lambda x: np.eye(2),
                        samples=[np.zeros(2)])
    with pytest.raises(OperatorError):
        assemble_AQ(frames, build_standard_module(1))


def test_principal_symbol_is_clifford_contraction():
    geom = TorusGeometry(sin_coeffs=(0.3,))
    op = operator_AQ_full(geom)
    x = [0.0, 1.2]
    xi = [0.7, -0.4]
    expected = 0.7 * np.exp(-0.3 * np.sin(1.2)) * 1j
    assert np.allclose(principal_symbol(op, x, xi), [[expected]], atol=1e-14)
    # symbol vanishes on covectors conormal to Q
    assert symbol_smallest_singular_value(op, x, [0.0, 1.0]) < 1e-14


def test_symbol_squares_to_minus_q_norm():
    # c(xi)^2 = -|pi xi|^2 for the full-rank frame
    def components(x):
        return np.eye(2)

    frames = FrameField(chart="flat", dim=2, q=2,
                        components=components,
                        metric=lambda x: np.eye(2),
                        samples=[np.zeros(2)])
    op = assemble_AQ(frames, build_standard_module(2))
    xi = np.array([0.6, -1.1])
    sym = principal_symbol(op, [0.0, 0.0], xi)
    assert np.allclose(sym @ sym, -np.dot(xi, xi) * np.eye(2), atol=1e-12)


def test_multiplication_operator_discretizes_to_real_diagonal():
    geom = TorusGeometry(sin_coeffs=(0.3,))
    grid = mode_grid(geom, 32)
    mat = discretize_hermitian(dq_mode_operator(geom, 3), grid)
    assert np.max(np.abs(mat - np.diag(np.diag(mat)))) == 0.0
    assert np.max(np.abs(mat.imag)) == 0.0
    assert np.allclose(np.diag(mat).real, 3.0 * np.exp(-geom.g(grid.points)), atol=1e-14)


def test_corrected_operator_is_hermitian():
    geom = TorusGeometry(sin_coeffs=(0.3,), cos_coeffs=(0.1,))
    grid = mode_grid(geom, 64)
    assert hermitian_discretization_defect(dl_mode_operator(geom), grid) < 1e-10


def test_missing_correction_breaks_hermiticity_by_half_ch():
    # A_L = i d_y alone is not self-adjoint for the weighted measure: the
    # defect equals |c(H^Q)/2| = |g'|/2 pointwise
    geom = TorusGeometry(sin_coeffs=(0.3,))
    grid = mode_grid(geom, 64)
    defect = hermitian_discretization_defect(al_mode_operator(geom), grid)
    assert defect > 1e-3
    assert abs(defect - 0.15) < 1e-10


def test_discretization_consistent_on_smooth_mode():
    # i(d_y + g'/2) applied to a resolved Fourier mode
    geom = TorusGeometry(sin_coeffs=(0.3,))
    n = 128
    grid = mode_grid(geom, n)
    mat = discretize_hermitian(dl_mode_operator(geom), grid)
    y = grid.points
    # the matrix acts on sqrt(density) * psi samples (flat-measure picture)
    psi = np.exp(2j * y)
    d_psi = 1j * (2j * psi + 0.5 * geom.g_prime(y) * psi)
    half_density = np.exp(geom.g(y) / 2)
    assert np.max(np.abs(mat @ (half_density * psi) - half_density * d_psi)) < 1e-10


def test_singular_coefficient_raises():
    op = FirstOrderOperator(
        chart="test", dim=1, fiber_dim=1,
        coeff=(lambda x: np.array([[np.inf if x[0] == 0.0 else 1.0 / x[0]]]),),
        zeroth=lambda x: np.zeros((1, 1)),
    )
    with pytest.raises(SingularPointError):
        op.coefficients_at([0.0])


def test_dimension_mismatch_rejected():
    with pytest.raises(OperatorError):
        FirstOrderOperator(chart="test", dim=2, fiber_dim=1,
                           coeff=(lambda x: np.eye(1),),
                           zeroth=lambda x: np.zeros((1, 1)))
    geom = TorusGeometry()
    op = dl_mode_operator(geom)
    with pytest.raises(OperatorError):
        principal_symbol(op, [0.0], [1.0, 0.0])


def test_only_1d_discretization():
    geom = TorusGeometry()
    op = operator_AQ_full(geom)
    with pytest.raises(OperatorError):
        discretize_hermitian(op, periodic_grid(16))


def test_frame_rank_must_match_module():
    geom = TorusGeometry()
    frames = full_chart_frames(geom)
    with pytest.raises(OperatorError):
        assemble_AQ(frames, build_standard_module(2))
