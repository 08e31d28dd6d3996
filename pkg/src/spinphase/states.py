"""Factory for the collective-spin test states and the twisting evolution family.

All factory states except the NOON state carry their mean spin along +x.
After construction the largest-magnitude coefficient is made real
positive, so equal states compare equal coefficient-wise.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .algebra import SpinQuantum, SpinState, eigenbasis, ladder_about_x, unitary_exp
from .errors import OddParticleNumber

DEFAULT_YURKE_ALPHA = 0.1

KIND_TAGS = ("coherent", "yurke", "noon", "optimal", "twist", "sss", "pss")


@dataclass(frozen=True)
class StateKind:
    """Tagged description of one test state (used for dispatch and the CLI).

    tag      one of 'coherent', 'yurke', 'noon', 'optimal', 'twist',
             'sss' (twisting time that minimizes the spin-squeezing
             parameter), 'pss' (time that minimizes the phase-squeezing
             parameter)
    alpha    mixing angle for 'yurke' (radians)
    nu       scaled twisting time for 'twist', must be >= 0
    """

    tag: str
    alpha: float = DEFAULT_YURKE_ALPHA
    nu: float = 0.0

    def __post_init__(self):
        if self.tag not in KIND_TAGS:
            raise ValueError(f"unknown state kind {self.tag!r}")
        if self.tag == "twist" and self.nu < 0:
            raise ValueError("twisting time nu must be >= 0")

    @classmethod
    def coherent(cls):
        return cls("coherent")

    @classmethod
    def yurke(cls, alpha: float = DEFAULT_YURKE_ALPHA):
        return cls("yurke", alpha=alpha)

    @classmethod
    def noon(cls):
        return cls("noon")

    @classmethod
    def optimal(cls):
        return cls("optimal")

    @classmethod
    def two_axis_evolved(cls, nu: float):
        return cls("twist", nu=nu)

    @classmethod
    def spin_squeezed(cls):
        return cls("sss")

    @classmethod
    def phase_squeezed(cls):
        return cls("pss")

    def label(self) -> str:
        if self.tag == "twist":
            return f"twist_nu{self.nu:g}"
        return self.tag


def _canonical_phase(c: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-|c| entry is real positive."""
    mags = np.abs(c)
    k = int(np.flatnonzero(mags >= mags.max() * (1 - 1e-12))[0])
    return c * np.conj(c[k] / mags[k])


def coherent_state(j: SpinQuantum) -> SpinState:
    """All spins aligned along +x: the highest-weight J_x eigenstate.

    In the J_z basis the coefficients are the binomial amplitudes
    c_mu = 2^{-J} sqrt(C(2J, J+mu)), evaluated in log space so any
    particle number is safe.
    """
    n = j.two_j
    k = np.arange(n + 1)
    log_c = 0.5 * (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)) - j.j * np.log(2.0)
    c = np.exp(log_c).astype(complex)
    return SpinState(j, c / np.linalg.norm(c))


def yurke_state(j: SpinQuantum, alpha: float = DEFAULT_YURKE_ALPHA) -> SpinState:
    """Three-component superposition of the mu = -1, 0, +1 states of J_y.

    (sin(alpha)/sqrt(2)) |J,1>_y + cos(alpha) |J,0>_y
    + (sin(alpha)/sqrt(2)) |J,-1>_y, converted to the J_z basis.  Needs an
    even particle number so that J is an integer and mu = 0 exists.

    As alpha -> 0 the spin-squeezing parameter approaches its minimum
    (1 + N/2)^{-1}, about 2/N for large N, at the price of the state
    becoming invariant under a pi rotation about z (the phase is then
    only defined modulo pi).
    """
    if j.two_j % 2 != 0:
        raise OddParticleNumber(
            f"the three-component y-basis state needs even N, got N={j.two_j}")
    basis = eigenbasis(j, "y")
    mid = j.two_j // 2  # index of mu = 0
    c = (np.sin(alpha) / np.sqrt(2)) * basis[mid + 1][1] \
        + np.cos(alpha) * basis[mid][1] \
        + (np.sin(alpha) / np.sqrt(2)) * basis[mid - 1][1]
    c = _canonical_phase(c / np.linalg.norm(c))
    return SpinState(j, c)


def noon_state(j: SpinQuantum) -> SpinState:
    """Equal superposition of the two extreme J_z eigenstates."""
    c = np.zeros(j.dim, dtype=complex)
    c[0] = c[-1] = 1 / np.sqrt(2)
    return SpinState(j, c)


def optimal_phase_state(j: SpinQuantum) -> SpinState:
    """The state minimizing the phase-squeezing parameter at fixed J.

    Coefficients over mu' = 0..2J (mu = mu' - J) are
    (J+1)^{-1/2} sin[(mu'+1) pi / (2J+2)]; the prefactor makes the norm
    exactly 1.
    """
    mu_prime = np.arange(j.dim)
    c = np.sin((mu_prime + 1) * np.pi / (j.two_j + 2)) / np.sqrt(j.j + 1)
    return SpinState(j, c.astype(complex))


class TwoAxisEvolver:
    """Two-axis counter-twisting evolution applied to the coherent state.

    U(nu) = exp[nu (J_+^2 - J_-^2)/8] with J_pm the ladder operators about
    the x axis; nu is the scaled interaction time.  The generator is
    diagonalized once so states at many times are cheap.
    """

    def __init__(self, j: SpinQuantum):
        self.j = j
        jp, jm = ladder_about_x(j)
        herm = 1j * (jp.matrix @ jp.matrix - jm.matrix @ jm.matrix) / 8
        self._eigvals, self._eigvecs = np.linalg.eigh((herm + herm.conj().T) / 2)
        self._start = self._eigvecs.conj().T @ coherent_state(j).coeffs

    def state(self, nu: float) -> SpinState:
        if nu < 0:
            raise ValueError("twisting time nu must be >= 0")
        c = self._eigvecs @ (np.exp(-1j * nu * self._eigvals) * self._start)
        c = _canonical_phase(c / np.linalg.norm(c))
        return SpinState(self.j, c)

    def unitary(self, nu: float):
        """The evolution operator itself (mainly for testing)."""
        jp, jm = ladder_about_x(self.j)
        herm = 1j * (jp.matrix @ jp.matrix - jm.matrix @ jm.matrix) / 8
        from .algebra import SpinOperator
        return unitary_exp(SpinOperator(self.j, herm), nu)


@functools.lru_cache(maxsize=32)
def _evolver(two_j: int) -> TwoAxisEvolver:
    return TwoAxisEvolver(SpinQuantum(two_j))


def evolve_2act(j: SpinQuantum, nu: float) -> SpinState:
    """Coherent state evolved for scaled time nu under two-axis twisting."""
    return _evolver(j.two_j).state(nu)


def make_state(kind: StateKind, j: SpinQuantum) -> SpinState:
    """Build any of the test states; 'sss' and 'pss' run the optimizer."""
    if kind.tag == "coherent":
        return coherent_state(j)
    if kind.tag == "yurke":
        return yurke_state(j, kind.alpha)
    if kind.tag == "noon":
        return noon_state(j)
    if kind.tag == "optimal":
        return optimal_phase_state(j)
    if kind.tag == "twist":
        return evolve_2act(j, kind.nu)
    # optimizer-backed states; import here to avoid a module cycle
    from .twist import minimize
    optimum = minimize(j, "xi" if kind.tag == "sss" else "zeta")
    return evolve_2act(j, optimum.nu_star)


def save_state(state: SpinState, kind: StateKind | None = None) -> dict:
    """JSON-ready dict that round-trips through load_state bit-exactly."""
    doc = {
        "two_j": state.j.two_j,
        "basis": "z",
        "re": state.coeffs.real.tolist(),
        "im": state.coeffs.imag.tolist(),
    }
    if kind is not None:
        doc["kind"] = kind.tag
        params = {}
        if kind.tag == "yurke":
            params["alpha"] = kind.alpha
        if kind.tag == "twist":
            params["nu"] = kind.nu
        doc["params"] = params
    return doc


def load_state(doc: dict) -> SpinState:
    """Inverse of save_state (kind metadata is ignored)."""
    if doc.get("basis", "z") != "z":
        raise ValueError(f"unsupported basis {doc.get('basis')!r}")
    c = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    return SpinState(SpinQuantum(int(doc["two_j"])), c)
