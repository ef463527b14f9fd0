"""Plots written next to the reproduction report (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import bounds  # noqa: E402
from .core import binomial  # noqa: E402
from .search import count_maximal_intersecting  # noqa: E402


def plot_s_of_k(path: Path, k_max: int = 40) -> Path:
    ks = list(range(1, k_max + 1))
    ys = [float(bounds.s_of_k(k)[1]) for k in ks]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, ys, marker="o", ms=3)
    ax.axhline(1.1, ls="--", c="grey", lw=1, label="11/10")
    ax.axhline(1.0, ls=":", c="grey", lw=1, label="1")
    ax.set_xlabel("k")
    ax.set_ylabel("S(k) / C(2k,k)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_bound_ladder(path: Path, k_max: int = 8) -> Path:
    """Lower and upper bounds on n(k,k), normalised by C(2k,k)."""
    ks = list(range(2, k_max + 1))
    series = {
        "construction 2k-2+2C(2k-2,k-1)": [bounds.erdos_lovasz_lower(k) for k in ks],
        "C(2k+1,k+1)/4": [bounds.tuza_n_bounds(k, k)[0] for k in ks],
        "S(k)": [bounds.s_of_k(k)[0] for k in ks],
        "C(2k,k+1) * 2": [bounds.lemma_g_bound(k, k) for k in ks],
    }
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, vals in series.items():
        ax.plot(ks, [float(v) / binomial(2 * k, k) for v, k in zip(vals, ks)], marker="o", ms=3, label=label)
    ax.set_xlabel("k")
    ax.set_ylabel("bound / C(2k,k)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_m_n2(path: Path, n_max: int = 9) -> Path:
    ns = list(range(3, n_max + 1))
    counted = [count_maximal_intersecting(n, 2).value for n in ns]
    formula = [n + binomial(n, 3) for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, counted, "o", label="clique count")
    ax.plot(ns, formula, "-", label="n + C(n,3)")
    ax.set_xlabel("n")
    ax.set_ylabel("M(n,2)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_all(outdir: str | Path) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        plot_s_of_k(out / "s_of_k.png"),
        plot_bound_ladder(out / "bound_ladder.png"),
        plot_m_n2(out / "m_n2.png"),
    ]
