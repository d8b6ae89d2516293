"""Plot the CSV output of ``sympsim evolve --out csv`` or ``sympsim bench``.

    sympsim evolve demos/sigma_x_evolve.json --out csv > traj.csv
    python demos/plot_csv.py traj.csv traj.png
"""

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

df = pd.read_csv(sys.argv[1])
out = sys.argv[2] if len(sys.argv) > 2 else "plot.png"

if "hsym" in df:
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
    axes[0].plot(df["time"], df["hsym"] - df["hsym"].iloc[0])
    axes[0].set_ylabel("H_sym - H_sym(0)")
    axes[1].plot(df["time"], df["norm"] - df["norm"].iloc[0])
    axes[1].set_ylabel("|x|^2 - |x0|^2")
    axes[1].set_xlabel("t")
else:
    fig, ax = plt.subplots(figsize=(6, 4))
    for (n, backend), g in df.groupby(["n", "backend"]):
        ax.plot(g["depth"], g["median_ns"] / 1e3, marker="o", label=f"n={n} {backend}")
    ax.set_xlabel("gates")
    ax.set_ylabel("median time [us]")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.legend()
fig.tight_layout()
fig.savefig(out)
print("wrote", out)
