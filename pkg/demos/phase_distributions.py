"""Canonical phase distributions of the five test states at N = 20.

The distribution P(phi) is what an optimal single-shot phase measurement
would record.  Reading across: the coherent state is broad; the
phase-squeezed twisting state is a clean narrow peak; the spin-squeezed
state is narrower still but pays for it with heavy side lobes; the
three-component y-basis state is bimodal (phase known only modulo pi);
the NOON state fragments into N peaks (modulo 2 pi / N).
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from spinphase import SpinQuantum, StateKind, make_state, phase_distribution

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

fig, axes = plt.subplots(1, 5, figsize=(15, 2.8), sharey=False)
for ax, (label, kind) in zip(axes, kinds):
    dist = phase_distribution(make_state(kind, j), n_points=1024)
    ax.plot(dist.phi_grid, dist.density, lw=1)
    ax.set_title(label, fontsize=10)
    ax.set_xlabel(r"$\phi$")
    ax.set_xlim(-3.2, 3.2)
axes[0].set_ylabel(r"$P(\phi)$")

fig.tight_layout()
fig.savefig(OUT / "phase_distributions.png", dpi=150)
print(f"wrote {OUT/'phase_distributions.png'}")
