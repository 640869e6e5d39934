"""Dense numerical kernel: spectral differentiation, Hermitian eigensolver,
log-ODE integration and indicial-exponent fitting.

The eigensolver is a Householder tridiagonalization followed by implicit
QL with Wilkinson shifts; matrices here stay small (<= a few hundred), so
dense arithmetic is sufficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_EPS = np.finfo(float).eps


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    points: np.ndarray
    weights: np.ndarray
    periodic: bool = False

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if pts.ndim != 1 or pts.shape != wts.shape:
            raise SpectralError("points/weights shape mismatch")
        if np.any(np.diff(pts) <= 0):
            raise SpectralError("grid points must be strictly increasing")
        if np.any(wts <= 0):
            raise SpectralError("quadrature weights must be positive")

    @property
    def n(self) -> int:
        return len(self.points)


def periodic_grid(n: int, weights=None) -> Grid1D:
    """Uniform grid on [0, 2*pi) with optional nonuniform weights."""
    pts = 2.0 * np.pi * np.arange(n) / n
    if weights is None:
        weights = np.full(n, 2.0 * np.pi / n)
    return Grid1D(points=pts, weights=np.asarray(weights, dtype=float), periodic=True)


def fourier_diff_matrix(n: int) -> np.ndarray:
    """Spectral differentiation matrix on n equispaced points of [0, 2*pi).

    Exact on trigonometric polynomials up to degree n/2 - 1; the Nyquist
    mode is assigned wavenumber -n/2, so -1j * D has integer eigenvalues
    -n/2 .. n/2 - 1 and D is exactly anti-Hermitian.
    """
    if n < 4 or n % 2:
        raise SpectralError("need an even grid size >= 4")
    k = np.fft.fftfreq(n, d=1.0 / n)
    return np.fft.ifft(1j * k[:, None] * np.fft.fft(np.eye(n), axis=0), axis=0)


def centered_diff_matrix(points: np.ndarray) -> np.ndarray:
    """Second-order differentiation on a uniform non-periodic grid."""
    points = np.asarray(points, dtype=float)
    n = len(points)
    if n < 3:
        raise SpectralError("need at least 3 points")
    h = points[1] - points[0]
    if np.max(np.abs(np.diff(points) - h)) > 1e-12 * abs(h):
        raise SpectralError("grid must be uniform")
    d = np.zeros((n, n))
    for j in range(1, n - 1):
        d[j, j - 1] = -0.5 / h
        d[j, j + 1] = 0.5 / h
    d[0, :3] = np.array([-1.5, 2.0, -0.5]) / h
    d[-1, -3:] = np.array([0.5, -2.0, 1.5]) / h
    return d


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_defect(m: np.ndarray) -> float:
    """Entrywise distance to the Hermitian part (m + m^H)/2."""
    return float(0.5 * np.max(np.abs(m - m.conj().T)))


def _householder_tridiagonalize(m: np.ndarray):
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx < 1e-300:
            continue
        phase = x[0] / abs(x[0]) if abs(x[0]) > 0 else 1.0
        v = x.copy()
        v[0] += phase * nx
        nv = np.linalg.norm(v)
        if nv < 1e-300:
            continue
        v /= nv
        w = v.conj() @ a[k + 1:, :]
        a[k + 1:, :] -= 2.0 * np.outer(v, w)
        w2 = a[:, k + 1:] @ v
        a[:, k + 1:] -= 2.0 * np.outer(w2, v.conj())
        qv = q[:, k + 1:] @ v
        q[:, k + 1:] -= 2.0 * np.outer(qv, v.conj())
    d = np.real(np.diag(a)).copy()
    sub = np.diag(a, -1).copy() if n > 1 else np.zeros(0, dtype=complex)
    # phase-scale columns so the subdiagonal becomes real nonnegative
    scale = np.ones(n, dtype=complex)
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 1):
        r = abs(sub[k])
        e[k] = r
        scale[k + 1] = scale[k] * (sub[k] / r) if r > 1e-300 else scale[k]
    q *= scale[None, :]
    return d, e, q


def _tqli(d: np.ndarray, e: np.ndarray, z: np.ndarray, max_sweeps: int = 60):
    """Implicit QL with Wilkinson-style shifts on a real symmetric
    tridiagonal (d, e); rotations are accumulated into the columns of z."""
    n = len(d)
    e = np.append(e.copy(), 0.0)
    for l in range(n):
        for sweep in range(max_sweeps):
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if sweep == max_sweeps - 1:
                raise SpectralError("QL iteration failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def hermitian_eigensolve(m: np.ndarray) -> HermitianSpectrum:
    """Full spectrum of a Hermitian matrix, eigenvalues ascending."""
    m = np.asarray(m, dtype=complex)
    scale = max(float(np.max(np.abs(m))), 1e-300)
    defect = hermitian_defect(m)
    if defect > 1e-8 * scale:
        raise SpectralError("matrix is not Hermitian (defect %.3e)" % defect)
    m = 0.5 * (m + m.conj().T)
    d, e, q = _householder_tridiagonalize(m)
    d, q = _tqli(d, e, q)
    order = np.argsort(d, kind="stable")
    return HermitianSpectrum(eigenvalues=d[order], eigenvectors=q[:, order])


def smallest_singular_value(m: np.ndarray) -> float:
    """Smallest singular value via the Hermitian spectrum of m^dagger m."""
    m = np.asarray(m, dtype=complex)
    gram = m.conj().T @ m
    lam = hermitian_eigensolve(gram).eigenvalues[0]
    return math.sqrt(max(float(lam), 0.0))


def integrate_log_ode(r, phi_start: float, phi_end: float, steps: int):
    """RK4 integration of d(log psi)/dphi = r(phi) from phi_start to phi_end.

    Since the right-hand side depends on phi only, the classical RK4 step
    collapses to Simpson's rule; r is evaluated vectorized on all nodes and
    midpoints. Returns (phi nodes, log|psi| samples) with log|psi| = 0 at
    phi_start.
    """
    if steps < 1:
        raise SpectralError("need at least one step")
    phis = np.linspace(phi_start, phi_end, steps + 1)
    h = (phi_end - phi_start) / steps
    mids = 0.5 * (phis[:-1] + phis[1:])
    r_nodes = np.asarray(r(phis), dtype=float)
    r_mids = np.asarray(r(mids), dtype=float)
    if not (np.all(np.isfinite(r_nodes)) and np.all(np.isfinite(r_mids))):
        raise SpectralError("singular coefficient encountered on the integration span")
    increments = (h / 6.0) * (r_nodes[:-1] + 4.0 * r_mids + r_nodes[1:])
    log_psi = np.concatenate([[0.0], np.cumsum(increments)])
    return phis, log_psi


def fit_exponent(log_abscissas, log_samples) -> float:
    """Least-squares slope of log samples against log abscissas."""
    x = np.asarray(log_abscissas, dtype=float)
    y = np.asarray(log_samples, dtype=float)
    if len(x) < 10:
        raise SpectralError("need at least 10 samples in the fit window")
    x0 = x - x.mean()
    denom = float(x0 @ x0)
    if denom < 1e-300:
        raise SpectralError("degenerate abscissas")
    return float(x0 @ (y - y.mean())) / denom
