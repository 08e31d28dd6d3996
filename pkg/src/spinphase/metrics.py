"""Squeezing figures of merit and the canonical phase distribution.

Conventions
-----------
The canonical phase measurement projects onto the phase states
|J,phi> = (2J+1)^{-1/2} sum_mu exp(-i mu phi) |J,mu>_z, giving the density

    P(phi) = (2 pi)^{-1} | sum_mu c_mu exp(+i mu phi) |^2

for a state with J_z-basis coefficients c_mu.  With this sign a state
rotated by exp(-i varphi J_z) produces a distribution translated to peak
at +varphi, and the sharpness identities below hold exactly:

    S = sum_mu c_{mu+1} c_mu^*  =  integral P(phi) exp(-i phi) dphi .

Most functions accept either a SpinState or a density matrix (a square
complex ndarray); the latter is what the mixture bounds are stated for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .algebra import SpinQuantum, SpinState, _spin_matrices, basis_matrix
from .errors import DivergentAtQuadrature, GridTooCoarse, MeanSpinZero

MEAN_SPIN_REL_TOL = 1e-9  # |<J>| below this fraction of J means "undefined"


def _coeffs_or_rho(state) -> tuple[SpinQuantum, np.ndarray | None, np.ndarray | None]:
    """Normalize the input: returns (j, coeffs, rho) with exactly one of the two."""
    if isinstance(state, SpinState):
        return state.j, state.coeffs, None
    m = np.asarray(state, dtype=complex)
    if m.ndim == 2 and m.shape[0] == m.shape[1]:
        return SpinQuantum(m.shape[0] - 1), None, m
    raise TypeError("expected a SpinState or a square density matrix")


def _expect(op: np.ndarray, coeffs, rho) -> float:
    if coeffs is not None:
        return float(np.real(np.vdot(coeffs, op @ coeffs)))
    return float(np.real(np.trace(rho @ op)))


def mean_spin(state) -> np.ndarray:
    """Expectation vector (<J_x>, <J_y>, <J_z>) in units of hbar."""
    j, coeffs, rho = _coeffs_or_rho(state)
    jx, jy, jz = _spin_matrices(j.two_j)
    return np.array([_expect(m, coeffs, rho) for m in (jx, jy, jz)])


def _variance(op: np.ndarray, coeffs, rho) -> float:
    first = _expect(op, coeffs, rho)
    second = _expect(op @ op, coeffs, rho)
    return second - first * first


def xi_squared(state) -> float:
    """Spin-squeezing parameter 2J Var(J_y) / |<J>|^2.

    The standard-quantum-limit benchmark: 1 for a coherent state, < 1
    only for entangled states.  Raises MeanSpinZero when the mean spin
    vanishes (e.g. the NOON state), where the ratio is undefined.
    """
    j, coeffs, rho = _coeffs_or_rho(state)
    m = mean_spin(state)
    norm = np.linalg.norm(m)
    if norm <= MEAN_SPIN_REL_TOL * j.j:
        raise MeanSpinZero(f"|<J>| = {norm:.3e} is below {MEAN_SPIN_REL_TOL:g}*J")
    _, jy, _ = _spin_matrices(j.two_j)
    return 2 * j.j * _variance(jy, coeffs, rho) / (norm * norm)


def xi_squared_min(state) -> float:
    """Direction-optimized variant: minimum of 2J Var(J.n) / |<J>|^2 over
    unit vectors n perpendicular to the mean spin."""
    j, coeffs, rho = _coeffs_or_rho(state)
    m = mean_spin(state)
    norm = np.linalg.norm(m)
    if norm <= MEAN_SPIN_REL_TOL * j.j:
        raise MeanSpinZero(f"|<J>| = {norm:.3e} is below {MEAN_SPIN_REL_TOL:g}*J")
    ms = _spin_matrices(j.two_j)
    mhat = m / norm
    helper = np.array([0.0, 0.0, 1.0]) if abs(mhat[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(mhat, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(mhat, e1)
    op1 = sum(e1[k] * ms[k] for k in range(3))
    op2 = sum(e2[k] * ms[k] for k in range(3))
    a = _variance(op1, coeffs, rho)
    b = _variance(op2, coeffs, rho)
    sym = (op1 @ op2 + op2 @ op1) / 2
    c = _expect(sym, coeffs, rho) - _expect(op1, coeffs, rho) * _expect(op2, coeffs, rho)
    lam = (a + b) / 2 - math.sqrt(((a - b) / 2) ** 2 + c * c)
    return 2 * j.j * lam / (norm * norm)


def ramsey_precision(state, m_measurements: int, varphi: float) -> float:
    """Phase uncertainty Delta(J_y) / (|<J>| cos(varphi) sqrt(M)) for M
    independent measurements, with the spread taken on the unrotated state."""
    if m_measurements < 1:
        raise ValueError("the measurement count must be a positive integer")
    cosv = math.cos(varphi)
    if abs(cosv) < 1e-12:
        raise DivergentAtQuadrature("signal slope cos(varphi) vanishes")
    j, coeffs, rho = _coeffs_or_rho(state)
    m = mean_spin(state)
    norm = np.linalg.norm(m)
    if norm <= MEAN_SPIN_REL_TOL * j.j:
        raise MeanSpinZero("mean spin vanishes; precision is undefined")
    _, jy, _ = _spin_matrices(j.two_j)
    return math.sqrt(_variance(jy, coeffs, rho)) / (norm * abs(cosv) * math.sqrt(m_measurements))


class Sharpness(NamedTuple):
    value: complex
    re: float
    mod: float


def sharpness(state) -> Sharpness:
    """Adjacent-coefficient sum S = sum_mu c_{mu+1} c_mu^* (or the first
    subdiagonal sum of a density matrix).

    |S| <= 1 always; for states oriented along +x the value is real
    positive, and S close to 1 means a sharply defined phase.
    """
    _, coeffs, rho = _coeffs_or_rho(state)
    if coeffs is not None:
        s = complex(np.sum(coeffs[1:] * np.conj(coeffs[:-1])))
    else:
        s = complex(np.trace(rho, offset=-1))
    return Sharpness(s, s.real, abs(s))


def zeta_squared(state) -> float:
    """Phase-squeezing parameter 4J (1 - Re S): single-shot figure of merit
    with no prior phase information.  Near 1 for coherent states; < 1
    indicates better-than-standard-quantum-limit single-shot estimation."""
    j, _, _ = _coeffs_or_rho(state)
    return 4 * j.j * (1 - sharpness(state).re)


def zeta_squared_rc(state) -> float:
    """Same quantity rescaled by the coherent-state value at the same J:
    (1 - S) / (1 - S_coh).  Exactly 1 for the coherent state itself."""
    from .states import coherent_state
    j, _, _ = _coeffs_or_rho(state)
    ref = sharpness(coherent_state(j)).re
    return (1 - sharpness(state).re) / (1 - ref)


@dataclass(frozen=True)
class PhaseDistribution:
    """Canonical phase density on a uniform grid over [-pi, pi).

    correlation[k] = sum_mu c_{mu+k} c_mu^* of the rotated coefficients,
    k = 0..2J; the density is a trigonometric polynomial determined by it
    exactly, so the grid is for convenience, not accuracy.
    """

    j: SpinQuantum
    varphi: float
    phi_grid: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    correlation: np.ndarray = field(repr=False)

    def evaluate(self, phi):
        """Density at arbitrary angles, reconstructed from the correlation."""
        arr = np.atleast_1d(np.asarray(phi, dtype=float))
        k = np.arange(1, len(self.correlation))
        terms = self.correlation[1:] * np.exp(1j * np.outer(arr, k))
        out = (self.correlation[0].real + 2 * np.sum(terms.real, axis=-1)) / (2 * np.pi)
        if np.ndim(phi) == 0:
            return float(out[0])
        return out

    def integral(self) -> float:
        """Integral over the period (rectangle rule, exact for this band limit)."""
        return float(np.mean(self.density) * 2 * np.pi)

    def sharpness_value(self) -> complex:
        """Rotation-independent sharpness <exp(i(varphi - phi))>."""
        return complex(np.exp(1j * self.varphi) * self.correlation[1])

    def peak_phi(self) -> float:
        return float(self.phi_grid[int(np.argmax(self.density))])


def phase_distribution(state: SpinState, varphi: float = 0.0,
                       n_points: int | None = None) -> PhaseDistribution:
    """Canonical phase density of the state rotated by exp(-i varphi J_z).

    n_points defaults to max(512, 8J+1) and must be at least 4J+3 so the
    sampled grid can resolve every harmonic of the density.
    """
    j = state.j
    min_points = 2 * j.two_j + 3
    if n_points is None:
        n_points = max(512, 4 * j.two_j + 1)
    if n_points < min_points:
        raise GridTooCoarse(f"need at least {min_points} points, got {n_points}")
    c = np.exp(-1j * j.mu_values() * varphi) * state.coeffs
    phi = np.linspace(-np.pi, np.pi, n_points, endpoint=False)
    amp = np.exp(1j * np.outer(phi, j.mu_values())) @ c
    density = np.abs(amp) ** 2 / (2 * np.pi)
    corr = np.array([np.sum(c[k:] * np.conj(c[:j.dim - k])) for k in range(j.dim)])
    return PhaseDistribution(j, varphi, phi, density, corr)


class WrappedVariance(NamedTuple):
    direct: float
    approx: float
    holevo: float


def variance_wrapped(dist: PhaseDistribution) -> WrappedVariance:
    """Dispersion measures of a phase distribution.

    direct  second moment about the circular mean, integrating over the
            window whose edges sit opposite the peak
    approx  2 (1 - Re S), valid when the distribution is sharp
    holevo  (Re S)^{-2} - 1, infinite when the sharpness vanishes
    """
    s_re = dist.sharpness_value().real
    approx = 2 * (1 - s_re)
    holevo = math.inf if s_re <= 0 else 1 / (s_re * s_re) - 1

    origin = dist.peak_phi() - np.pi  # window [peak-pi, peak+pi)
    x = origin + np.mod(dist.phi_grid - origin, 2 * np.pi)
    dphi = 2 * np.pi / len(dist.phi_grid)
    mean = float(np.sum(x * dist.density) * dphi)
    direct = float(np.sum((x - mean) ** 2 * dist.density) * dphi)
    return WrappedVariance(direct, approx, holevo)


def basis_coefficients(state: SpinState, axis: str) -> tuple[np.ndarray, float]:
    """Coefficients <J,mu|psi> in the requested eigenbasis, mu ascending.

    A global phase maximizing sum_mu Re <J,mu|psi> is applied first (the
    positive-phase plotting convention); returns the real parts and the
    largest residual imaginary magnitude, which is at float-noise level
    for every state this package constructs.
    """
    if axis == "z":
        d = state.coeffs.copy()
    else:
        d = basis_matrix(state.j, axis).conj().T @ state.coeffs
    g = d.sum()
    if abs(g) > 1e-12:
        d = d * np.conj(g / abs(g))
    else:
        mags = np.abs(d)
        k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
        d = d * np.conj(d[k] / mags[k])
    return d.real.copy(), float(np.max(np.abs(d.imag)))


@dataclass(frozen=True)
class SqueezingReport:
    """All scalar figures of merit for one state.

    xi_sq and xi_sq_min are None when the mean spin vanishes;
    holevo_variance is math.inf when the sharpness is zero.
    """

    mean_spin: np.ndarray
    xi_sq: float | None
    xi_sq_min: float | None
    zeta_sq: float
    zeta_sq_rc: float
    sharpness_re: float
    sharpness_mod: float
    variance_approx: float
    holevo_variance: float


def squeezing_report(state) -> SqueezingReport:
    """Assemble every metric for one state (or density matrix)."""
    s = sharpness(state)
    j, _, _ = _coeffs_or_rho(state)
    try:
        xi = xi_squared(state)
        xi_min = xi_squared_min(state)
    except MeanSpinZero:
        xi = None
        xi_min = None
    holevo = math.inf if s.re <= 0 else 1 / (s.re * s.re) - 1
    return SqueezingReport(
        mean_spin=mean_spin(state),
        xi_sq=xi,
        xi_sq_min=xi_min,
        zeta_sq=4 * j.j * (1 - s.re),
        zeta_sq_rc=zeta_squared_rc(state),
        sharpness_re=s.re,
        sharpness_mod=s.mod,
        variance_approx=2 * (1 - s.re),
        holevo_variance=holevo,
    )
