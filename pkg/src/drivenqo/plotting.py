"""Figure rendering for the CLI report path.

Every renderer reads one of the emitted CSV files back in, so the figures
are guaranteed to show exactly the delimited data.
"""

from __future__ import annotations

import math

import numpy as np

from .report import read_report

_RC = {
    "figure.figsize": (7.0, 5.0),
    "figure.dpi": 110,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.bbox": "tight",
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    plt.rcParams.update(_RC)
    return plt


def render_spectrum_eps(csv_path, png_path):
    plt = _pyplot()
    meta, columns, data = read_report(csv_path)
    eps = np.array(data["eps"])
    fig, ax = plt.subplots()
    for col in columns:
        v = np.array(data[col])
        if col.startswith("ref_"):
            ax.plot(eps, v, color="0.75", lw=0.7, zorder=1)
        elif col.startswith("ana_"):
            ax.plot(eps, v, "k.", ms=2.0, zorder=3)
        elif col.startswith("num_"):
            ax.plot(eps, v, "^", color="tab:red", ms=2.5, mfc="none", zorder=2)
    ax.plot([], [], color="0.75", lw=0.7, label="zero-tunneling reference")
    ax.plot([], [], "k.", ms=4, label="analytic (2x2 blocks)")
    ax.plot([], [], "^", color="tab:red", ms=4, mfc="none", label="Sambe numerics")
    unit = meta.get("config units", "")
    ax.set_xlabel("bias epsilon")
    ax.set_ylabel("quasienergy")
    ax.set_title(f"quasienergy spectrum vs bias [{unit} units]")
    ax.legend(loc="best", fontsize=8)
    finite = np.concatenate([np.array(data[c]) for c in columns if c != "eps"])
    finite = finite[np.isfinite(finite)]
    if finite.size:
        lo, hi = np.percentile(finite, [2, 98])
        pad = 0.1 * (hi - lo + 1e-12)
        ax.set_ylim(lo - pad, hi + pad)
    fig.savefig(png_path)
    plt.close(fig)


def render_spectrum_g(csv_path, png_path):
    plt = _pyplot()
    meta, columns, data = read_report(csv_path)
    g = np.array(data["g"])
    fig, ax = plt.subplots()
    for col in columns:
        v = np.array(data[col])
        if col.startswith("ref_"):
            ax.plot(g, v, color="0.75", lw=0.7, zorder=1)
        elif col.startswith(("ana_minus", "ana_plus")):
            ax.plot(g, v, "k-", lw=0.9, zorder=3)
        elif col.startswith("num_"):
            ax.plot(g, v, "^", color="tab:red", ms=2.0, mfc="none", zorder=2)
    unit = meta.get("config units", "")
    ax.set_xlabel("coupling g")
    ax.set_ylabel("quasienergy")
    ax.set_title(f"quasienergy spectrum vs coupling [{unit} units]")
    fig.savefig(png_path)
    plt.close(fig)


def render_gaps(csv_path, png_path):
    plt = _pyplot()
    meta, columns, data = read_report(csv_path)
    x = np.array(data["g_over_Omega"])
    fig, ax = plt.subplots()
    for col in columns:
        if col.startswith("Omega_K"):
            ax.plot(x, np.array(data[col]), lw=1.2, label=col.replace("Omega_K", "K = "))
    for key, val in meta.items():
        if key.startswith("laguerre_zeros_K"):
            for z in val.split():
                ax.axvline(float(z), color="0.8", ls="--", lw=0.7, zorder=0)
    ax.set_xlabel("g / Omega")
    ax.set_ylabel("dressed gap")
    ax.set_title("avoided-crossing widths vs scaled coupling")
    ax.legend(loc="best", fontsize=8)
    fig.savefig(png_path)
    plt.close(fig)


def render_dynamics(timeseries_path, spectrum_path, png_path):
    plt = _pyplot()
    _, _, ts = read_report(timeseries_path)
    meta, _, sp = read_report(spectrum_path)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7.0, 6.5))
    t = np.array(ts["t"])
    ax1.plot(t, np.array(ts["P_analytic"]), "k-", lw=0.9, label="analytic")
    if "P_numeric" in ts:
        ax1.plot(t, np.array(ts["P_numeric"]), color="tab:orange", ls="--", lw=0.7, label="numeric")
    ax1.set_xlabel("t")
    ax1.set_ylabel("survival probability")
    ax1.set_ylim(-0.05, 1.05)
    ax1.legend(loc="best", fontsize=8)
    nu = np.array(sp["nu"])
    ax2.plot(nu, np.array(sp["F_analytic"]), "k-", lw=0.9, label="analytic")
    if "F_numeric" in sp:
        ax2.plot(nu, np.array(sp["F_numeric"]), color="tab:orange", ls="--", lw=0.7, label="numeric")
    peaks = [(k, v) for k, v in meta.items() if k.startswith("peak ")]
    for key, val in peaks:
        fields = dict(f.split("=") for f in val.split() if "=" in f)
        if fields.get("kind") == "gap":
            ax2.axvline(float(fields["omega"]), color="tab:blue", ls=":", lw=0.8, zorder=0)
    top = np.array(sp["F_analytic"])
    if np.any(top > 0):
        span = [e for e in (np.array(sp["F_analytic"]),) ]
        nz = np.nonzero(top > 0.01 * top.max())[0]
        if nz.size:
            ax2.set_xlim(0, min(nu[-1], 3.0 * nu[nz[-1]] + 10 * (nu[1] - nu[0])))
    ax2.set_xlabel("angular frequency nu")
    ax2.set_ylabel("|F(nu)|")
    ax2.legend(loc="best", fontsize=8)
    fig.savefig(png_path)
    plt.close(fig)
