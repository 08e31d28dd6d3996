"""Equal-area Wigner maps of the five test states at N = 20.

Each panel plots W against (phi, cos theta) so equal plot areas are equal
sphere areas.  The coherent lobe sits at the +x point (phi = 0 on the
equator); phase squeezing narrows it in phi at the cost of cos(theta)
spread; the spin-squeezed state already piles weight onto the poles and
grows interference ripples; the bimodal y-basis state wraps around the
sphere; the NOON state lives at the poles with 2 pi / N fringes.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spinphase import (
    SpinQuantum,
    StateKind,
    equal_area_values,
    make_state,
    wigner_function,
)

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

fig, axes = plt.subplots(1, 5, figsize=(15, 3.0))
for ax, (label, kind) in zip(axes, kinds):
    grid = wigner_function(make_state(kind, j), n_phi=121, n_costheta=64)
    costheta, values = equal_area_values(grid, 96)
    # center phi = 0 for plotting
    phi = np.where(grid.phi_nodes > np.pi, grid.phi_nodes - 2 * np.pi, grid.phi_nodes)
    order = np.argsort(phi)
    vmax = np.abs(values).max()
    ax.pcolormesh(phi[order], costheta, values[:, order],
                  cmap="RdBu_r", vmin=-vmax, vmax=vmax)
    ax.set_title(label, fontsize=10)
    ax.set_xlabel(r"$\phi$")
axes[0].set_ylabel(r"$\cos\theta$")

fig.tight_layout()
fig.savefig(OUT / "wigner_gallery.png", dpi=150)
print(f"wrote {OUT/'wigner_gallery.png'}")
