"""Angular-momentum coefficients of the test states in all three bases.

Each state is multiplied by the global phase that makes the coefficient
sums real, then plotted over mu for the x, y and z eigenbases (N = 20).
The z row shows antisqueezing directly: the coherent bell broadens into
the sinusoid of the phase-squeezed state, flattens for the spin-squeezed
state (with the largest weights pushed out to mu = +-J), and ends at the
two-point NOON distribution.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from spinphase import SpinQuantum, StateKind, basis_coefficients, make_state

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

j = SpinQuantum(20)
kinds = [
    ("coherent", StateKind.coherent()),
    ("phase squeezed", StateKind.phase_squeezed()),
    ("spin squeezed", StateKind.spin_squeezed()),
    ("yurke", StateKind.yurke(0.1)),
    ("noon", StateKind.noon()),
]
mu = j.mu_values()

fig, axes = plt.subplots(3, 5, figsize=(15, 7), sharex=True)
for col, (label, kind) in enumerate(kinds):
    state = make_state(kind, j)
    for row, axis in enumerate("xyz"):
        coeffs, residual = basis_coefficients(state, axis)
        assert residual < 1e-9
        ax = axes[row, col]
        ax.bar(mu, coeffs, width=0.8)
        if row == 0:
            ax.set_title(label, fontsize=10)
        if col == 0:
            ax.set_ylabel(rf"$\langle J,\mu|\psi\rangle_{axis}$")
for ax in axes[-1]:
    ax.set_xlabel(r"$\mu$")

fig.tight_layout()
fig.savefig(OUT / "state_coefficients.png", dpi=150)
print(f"wrote {OUT/'state_coefficients.png'}")
