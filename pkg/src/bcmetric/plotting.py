"""Figures written next to the CSV output of ``plot-data``."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def sandwich_figure(rho, rho_phi, in_vicinity, K: float, C: float, path, title: str = "", width: float = 6.0):
    """Scatter of original vs collapsed distance with the quasi-isometry envelope."""
    rho = np.asarray(rho, dtype=float)
    rho_phi = np.asarray(rho_phi, dtype=float)
    near = np.asarray(in_vicinity, dtype=bool)
    fig, ax = plt.subplots(figsize=(width, width * GOLDEN))
    ax.scatter(rho[~near], rho_phi[~near], s=4, alpha=0.5, label="not in vicinity", color="0.55")
    ax.scatter(rho[near], rho_phi[near], s=4, alpha=0.6, label="in vicinity", color="C0")
    xs = np.linspace(0.0, rho.max() if rho.size else 1.0, 200)
    ax.plot(xs, K * xs + C, "C3-", lw=1.2, label=f"K rho + C  (K={K:.3g}, C={C:.3g})")
    ax.plot(xs, np.maximum(xs / K - C, 0.0), "C3--", lw=1.2, label="rho / K - C")
    ax.plot(xs, xs, "k:", lw=0.8, label="identity")
    ax.set_xlabel("rho(x, y)")
    ax.set_ylabel("collapsed distance")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, frameon=False, loc="upper left")
    fig.tight_layout()
    # Fixed metadata keeps repeated renders byte-stable for PNG.
    fig.savefig(path, dpi=120, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
    return path
