"""Static SVG rendering of Dirac-point paths in the k-plane."""
from __future__ import annotations

import numpy as np


def track_svg(paths, path: str, color: str = "alpha", title: str = "") -> None:
    """Scatter the ``k_+`` and ``k_-`` paths of each ``(theta, Trajectory)`` pair.

    Points are coloured by coupling (``color="alpha"``) or by the field phase
    fraction (``color="theta"``), with a colour bar as legend.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "chiraltbg"
    fig, ax = plt.subplots(figsize=(5, 5))
    thetas = np.array([th for th, _ in paths], dtype=float)
    all_alpha = np.concatenate([traj.alphas() for _, traj in paths])
    if color == "theta":
        lo, hi = thetas.min(), max(thetas.max(), thetas.min() + 1e-12)
    else:
        lo, hi = all_alpha.min(), all_alpha.max()
    norm = matplotlib.colors.Normalize(lo, hi)
    cmap = matplotlib.colormaps["viridis"]
    for th, traj in paths:
        kp = traj.k_plus()
        vals = np.full(len(kp), th) if color == "theta" else traj.alphas()
        for ks in (kp, -kp):
            ax.plot(ks.real, ks.imag, color="0.8", lw=0.5, zorder=1)
            ax.scatter(ks.real, ks.imag, c=vals, cmap=cmap, norm=norm, s=6, zorder=2)
    fig.colorbar(matplotlib.cm.ScalarMappable(norm=norm, cmap=cmap), ax=ax,
                 label="theta" if color == "theta" else "alpha")
    ax.set_aspect("equal")
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    if title:
        ax.set_title(title)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
