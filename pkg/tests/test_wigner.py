"""Clebsch-Gordan, spherical harmonics, kernel, Wigner grids, overlaps."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import sph_harm_y

from spinphase import (
    CgKey,
    GridMismatch,
    GridTooCoarse,
    MagnitudeOverflow,
    SpinQuantum,
    SpinState,
    clebsch_gordan,
    coherent_state,
    equal_area_values,
    kernel_delta,
    marginal_phi,
    noon_state,
    overlap,
    phase_distribution,
    phase_state,
    rotate_about_z,
    sharpness,
    spherical_harmonic,
    wigner_function,
)

# --- exact-arithmetic oracle for Clebsch-Gordan coefficients -----------------
# Same closed-form sum, but in integer/rational arithmetic throughout, so the
# only rounding is the final square root.


def cg_exact(tj1, tj2, tm1, tm2, tj, tm):
    if tm != tm1 + tm2 or not (abs(tj1 - tj2) <= tj <= tj1 + tj2):
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm) > tj:
        return 0.0
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tj + tm) % 2 or (tj1 + tj2 + tj) % 2:
        return 0.0

    def f(doubled):
        return math.factorial(doubled // 2)

    pre = Fraction(
        (tj + 1) * f(tj1 + tj2 - tj) * f(tj1 - tj2 + tj) * f(-tj1 + tj2 + tj)
        * f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2)
        * f(tj + tm) * f(tj - tm),
        f(tj1 + tj2 + tj + 2))
    k_min = max(0, (tj2 - tj - tm1) // 2, (tj1 + tm2 - tj) // 2)
    k_max = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        den = (math.factorial(k) * f(tj1 + tj2 - tj - 2 * k) * f(tj1 - tm1 - 2 * k)
               * f(tj2 + tm2 - 2 * k) * math.factorial((tj - tj2 + tm1) // 2 + k)
               * math.factorial((tj - tj1 - tm2) // 2 + k))
        total += Fraction((-1) ** k, den)
    sign = 1.0 if total >= 0 else -1.0
    return sign * math.sqrt(float(pre * total * total))


def random_valid_key(rng, max_two_j):
    tj1 = int(rng.integers(1, max_two_j + 1))
    tj2 = int(rng.integers(1, max_two_j + 1))
    tj = int(rng.integers(abs(tj1 - tj2), tj1 + tj2 + 1))
    if (tj1 + tj2 + tj) % 2:
        tj += 1 if tj < tj1 + tj2 else -1
    tm1 = int(rng.integers(0, tj1 + 1)) * 2 - tj1
    tm2 = int(rng.integers(0, tj2 + 1)) * 2 - tj2
    return CgKey(tj1, tj2, tm1, tm2, tj, tm1 + tm2)


# --- Clebsch-Gordan ----------------------------------------------------------

def test_cg_known_table_values():
    assert clebsch_gordan(CgKey.of(0.5, 0.5, 0.5, -0.5, 0, 0)) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert clebsch_gordan(CgKey.of(1, 1, 1, -1, 0, 0)) == pytest.approx(1 / math.sqrt(3), abs=1e-14)
    assert clebsch_gordan(CgKey.of(1, 1, 0, 0, 0, 0)) == pytest.approx(-1 / math.sqrt(3), abs=1e-14)
    assert clebsch_gordan(CgKey.of(1, 1, 1, 0, 2, 1)) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert clebsch_gordan(CgKey.of(1, 1, 0, 0, 2, 0)) == pytest.approx(math.sqrt(2 / 3), abs=1e-14)


def test_cg_selection_rules_exact_zero():
    assert clebsch_gordan(CgKey.of(1, 1, 1, 1, 2, 1)) == 0.0  # M != m1+m2
    assert clebsch_gordan(CgKey.of(1, 1, 0, 0, 3, 0)) == 0.0  # triangle violated
    assert clebsch_gordan(CgKey.of(1, 1, 2, -2, 0, 0)) == 0.0  # |m| > j
    assert clebsch_gordan(CgKey(2, 2, 1, 1, 2, 2)) == 0.0  # m-j parity broken


def test_cg_key_of_validates_half_integers():
    key = CgKey.of(1.5, 1, 0.5, -1, 0.5, -0.5)
    assert (key.two_j1, key.two_j2) == (3, 2)
    with pytest.raises(ValueError):
        CgKey.of(0.3, 1, 0, 0, 1, 0)


def test_cg_against_exact_oracle_small_spins():
    rng = np.random.default_rng(42)
    checked = 0
    for _ in range(300):
        key = random_valid_key(rng, 12)  # spins up to 6
        exact = cg_exact(key.two_j1, key.two_j2, key.two_m1, key.two_m2,
                         key.two_j, key.two_m)
        got = clebsch_gordan(key)
        if exact == 0.0:
            assert abs(got) < 1e-13
        else:
            assert abs(got - exact) <= 1e-12 * max(1.0, abs(exact))
            checked += 1
    assert checked > 150


def test_cg_against_exact_oracle_kernel_regime():
    # couplings the phase-point kernel needs at N = 20: j = l = up to 20
    rng = np.random.default_rng(7)
    for _ in range(60):
        l = int(rng.integers(0, 21))
        r = int(rng.integers(-10, 11))
        md = int(rng.integers(-l, l + 1))
        if abs(r + md) > 10:
            continue
        key = CgKey(20, 2 * l, 2 * r, 2 * md, 20, 2 * (r + md))
        exact = cg_exact(*vars(key).values()) if hasattr(key, "__dict__") else None
        exact = cg_exact(key.two_j1, key.two_j2, key.two_m1, key.two_m2,
                         key.two_j, key.two_m)
        got = clebsch_gordan(key)
        assert abs(got - exact) <= 1e-9 * max(1.0, abs(exact))


def test_cg_completeness_sum():
    # sum over (m1, m2) of |<j1 m1 j2 m2|J M>|^2 over all (J, M) couplings is 1
    for tj1, tj2, tm1, tm2 in [(2, 2, 0, 2), (3, 1, 1, -1), (4, 4, -2, 0)]:
        total = 0.0
        for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
            total += clebsch_gordan(CgKey(tj1, tj2, tm1, tm2, tj, tm1 + tm2)) ** 2
        assert abs(total - 1) < 1e-12


def test_cg_overflow_guard():
    # equal large spins coupling to equal total: hundreds of huge
    # alternating terms, far beyond the float64 cancellation budget
    with pytest.raises(MagnitudeOverflow):
        clebsch_gordan(CgKey.of(200, 200, 0, 0, 200, 0))
    with pytest.raises(MagnitudeOverflow):
        clebsch_gordan(CgKey.of(400, 400, 0, 0, 400, 0))


# --- spherical harmonics -------------------------------------------------------

def test_harmonic_closed_forms():
    theta, phi = 0.7, 1.9
    assert spherical_harmonic(0, 0, theta, phi) == pytest.approx(math.sqrt(1 / (4 * math.pi)), abs=1e-15)
    assert spherical_harmonic(1, 0, theta, phi) == pytest.approx(
        math.sqrt(3 / (4 * math.pi)) * math.cos(theta), abs=1e-14)
    expected_11 = -math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * np.exp(1j * phi)
    assert abs(spherical_harmonic(1, 1, theta, phi) - expected_11) < 1e-14


def test_harmonic_negative_m_relation():
    theta, phi = 1.2, 0.4
    for l, m in [(3, 2), (5, 5), (8, 1)]:
        ym = spherical_harmonic(l, m, theta, phi)
        assert abs(spherical_harmonic(l, -m, theta, phi) - (-1) ** m * np.conj(ym)) < 1e-13


def test_harmonic_against_scipy():
    rng = np.random.default_rng(1)
    theta = rng.uniform(0.01, np.pi - 0.01, size=8)
    phi = rng.uniform(0, 2 * np.pi, size=8)
    for l in (0, 1, 2, 5, 13, 30):
        for m in range(-l, l + 1, max(1, l // 3)):
            mine = spherical_harmonic(l, m, theta, phi)
            ref = sph_harm_y(l, m, theta, phi)
            assert np.max(np.abs(mine - ref)) < 1e-12, (l, m)


def test_harmonic_quadrature_orthonormality():
    x, w = np.polynomial.legendre.leggauss(32)
    n_phi = 64
    phi = np.linspace(0, 2 * np.pi, n_phi, endpoint=False)
    theta = np.arccos(x)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    pairs = [(0, 0), (1, 1), (4, -2), (7, 0), (10, 9), (10, -10)]
    for i, (l1, m1) in enumerate(pairs):
        y1 = spherical_harmonic(l1, m1, tt, pp)
        for l2, m2 in pairs[i:]:
            y2 = spherical_harmonic(l2, m2, tt, pp)
            val = np.sum(w[:, None] * y1 * np.conj(y2)) * (2 * np.pi / n_phi)
            want = 1.0 if (l1, m1) == (l2, m2) else 0.0
            assert abs(val - want) < 1e-10


def test_harmonic_rejects_bad_m():
    with pytest.raises(ValueError):
        spherical_harmonic(2, 3, 0.1, 0.1)


# --- phase-point kernel -----------------------------------------------------------

def test_kernel_unit_trace_and_hermitian():
    rng = np.random.default_rng(0)
    j = SpinQuantum(7)
    for _ in range(25):
        theta = rng.uniform(0, np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        d = kernel_delta(j, theta, phi)
        assert abs(np.trace(d.matrix) - 1) < 1e-10
        assert np.max(np.abs(d.matrix - d.matrix.conj().T)) < 1e-12


def test_kernel_spin_half_eigenvalues():
    j = SpinQuantum(1)
    for theta, phi in [(0.3, 0.0), (1.2, 2.2), (2.8, 5.5)]:
        evals = np.linalg.eigvalsh(kernel_delta(j, theta, phi).matrix)
        assert np.allclose(evals, [(1 - math.sqrt(3)) / 2, (1 + math.sqrt(3)) / 2], atol=1e-12)


def test_kernel_consistent_with_grid_fill():
    j = SpinQuantum(6)
    st = coherent_state(j)
    grid = wigner_function(st)
    rho = st.density_matrix()
    for a in (0, 3, grid.costheta_nodes.size - 1):
        theta = math.acos(grid.costheta_nodes[a])
        for b in (0, 5):
            d = kernel_delta(j, theta, grid.phi_nodes[b])
            direct = float(np.real(np.trace(rho @ d.matrix)))
            assert abs(direct - grid.values[a, b]) < 1e-10


# --- Wigner grids -------------------------------------------------------------------

def test_wigner_maximally_mixed_flat():
    dim = 9
    grid = wigner_function(np.eye(dim) / dim)
    assert np.max(np.abs(grid.values - 1 / dim)) < 1e-10


def test_wigner_normalization_states():
    for st in (coherent_state(SpinQuantum(40)), noon_state(SpinQuantum(40)),
               coherent_state(SpinQuantum(7))):
        grid = wigner_function(st)
        assert abs(grid.normalization() - 1) < 1e-8


def test_wigner_coherent_lobe_at_plus_x():
    grid = wigner_function(coherent_state(SpinQuantum(20)))
    a, b = np.unravel_index(int(np.argmax(grid.values)), grid.values.shape)
    assert abs(grid.costheta_nodes[a]) < 0.1  # equator
    assert grid.phi_nodes[b] == 0.0


def test_wigner_noon_concentrated_at_poles():
    n = 20
    grid = wigner_function(noon_state(SpinQuantum(n)), n_phi=80)
    pole = np.abs(grid.costheta_nodes) > 0.9
    equator = np.abs(grid.costheta_nodes) < 0.4
    assert grid.values[pole].mean() > 10 * abs(grid.values[equator].mean())
    # interference ripples share the 2 pi / N period
    shift = 80 // n * (n // 4)  # integer number of quarter periods
    period_nodes = 80 // n
    rolled = np.roll(grid.values, period_nodes, axis=1)
    assert np.max(np.abs(grid.values - rolled)) < 1e-8


def test_wigner_grid_floor():
    st = coherent_state(SpinQuantum(10))
    with pytest.raises(GridTooCoarse):
        wigner_function(st, n_phi=12)
    with pytest.raises(GridTooCoarse):
        wigner_function(st, n_costheta=8)


def test_wigner_rotational_covariance():
    st = coherent_state(SpinQuantum(8))
    base = wigner_function(st)
    dphi = 2 * np.pi / base.phi_nodes.size
    rotated = wigner_function(rotate_about_z(st, 3 * dphi))
    assert np.max(np.abs(rotated.values - np.roll(base.values, 3, axis=1))) < 1e-8


def test_wigner_rejects_nonhermitian():
    m = np.eye(4, dtype=complex)
    m[0, 1] = 0.5
    with pytest.raises(ValueError):
        wigner_function(m / np.trace(m))


def test_overlap_pure_state_identities():
    j = SpinQuantum(8)
    a = coherent_state(j)
    b = noon_state(j)
    ga, gb = wigner_function(a), wigner_function(b)
    assert abs(overlap(ga, ga) - 1) < 1e-8
    assert abs(overlap(ga, gb) - a.fidelity(b)) < 1e-8
    up = SpinState(j, np.eye(9)[:, 0])
    down = SpinState(j, np.eye(9)[:, 8])
    assert abs(overlap(wigner_function(up), wigner_function(down))) < 1e-8


def test_overlap_random_pairs_match_trace_product():
    rng = np.random.default_rng(2024)
    for _ in range(12):
        two_j = int(rng.integers(1, 11))  # J <= 5
        dim = two_j + 1
        c1 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        c2 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        s1 = SpinState(SpinQuantum(two_j), c1 / np.linalg.norm(c1))
        s2 = SpinState(SpinQuantum(two_j), c2 / np.linalg.norm(c2))
        got = overlap(wigner_function(s1), wigner_function(s2))
        assert abs(got - s1.fidelity(s2)) < 1e-8


def test_overlap_grid_mismatch():
    a = wigner_function(coherent_state(SpinQuantum(4)))
    b = wigner_function(coherent_state(SpinQuantum(6)))
    with pytest.raises(GridMismatch):
        overlap(a, b)
    c = wigner_function(coherent_state(SpinQuantum(4)), n_phi=16)
    with pytest.raises(GridMismatch):
        overlap(a, c)


# --- phase states --------------------------------------------------------------------

def test_phase_state_uniform_at_zero():
    st = phase_state(SpinQuantum(6), 0.0)
    assert np.allclose(st.coeffs, np.full(7, 1 / math.sqrt(7)), atol=1e-15)


def test_phase_state_sharpness():
    for two_j in (4, 11):
        s = sharpness(phase_state(SpinQuantum(two_j), 0.0))
        assert abs(s.re - two_j / (two_j + 1)) < 1e-12


def test_phase_state_dirichlet_overlaps():
    j = SpinQuantum(10)
    for delta in (0.3, 1.1, 2.9):
        a = phase_state(j, 0.2)
        b = phase_state(j, 0.2 + delta)
        dim = j.dim
        expected = math.sin(dim * delta / 2) / (dim * math.sin(delta / 2))
        assert abs(a.overlap(b) - expected) < 1e-12


def test_phase_state_overlap_reproduces_phase_density():
    j = SpinQuantum(10)
    st = coherent_state(j)
    dist = phase_distribution(st)
    grid_state = wigner_function(st)
    for phi0 in (-2.0, 0.0, 0.9):
        grid_phase = wigner_function(phase_state(j, phi0))
        lhs = j.dim / (2 * np.pi) * overlap(grid_state, grid_phase)
        assert abs(lhs - dist.evaluate(phi0)) < 1e-8


# --- marginals and export -------------------------------------------------------------

def test_marginal_flat_for_maximally_mixed():
    dim = 7
    grid = wigner_function(np.eye(dim) / dim)
    marg = marginal_phi(grid)
    assert np.max(np.abs(marg - 1 / (2 * np.pi))) < 1e-10
    assert abs(np.sum(marg) * 2 * np.pi / marg.size - 1) < 1e-10


def test_marginal_noon_periodicity():
    n = 10
    grid = wigner_function(noon_state(SpinQuantum(n)), n_phi=60)
    marg = marginal_phi(grid)
    assert np.max(np.abs(marg - np.roll(marg, 60 // n))) < 1e-10


def test_marginal_tracks_phase_density_qualitatively():
    j = SpinQuantum(40)
    st = coherent_state(j)
    grid = wigner_function(st, n_phi=128)
    marg = marginal_phi(grid)
    dist = phase_distribution(st)
    dens = dist.evaluate(grid.phi_nodes)
    assert int(np.argmax(marg)) == int(np.argmax(dens)) == 0
    assert np.max(np.abs(marg - dens)) < 0.2 * dens.max()


def test_equal_area_resample():
    dim = 9
    grid = wigner_function(np.eye(dim) / dim)
    x, values = equal_area_values(grid)
    assert values.shape == (grid.costheta_nodes.size, grid.phi_nodes.size)
    assert np.max(np.abs(values - 1 / dim)) < 1e-10
    assert np.all(np.diff(x) > 0) and x[0] > -1 and x[-1] < 1
    x2, values2 = equal_area_values(wigner_function(coherent_state(SpinQuantum(10))), 40)
    assert values2.shape[0] == 40 and np.all(np.isfinite(values2))
