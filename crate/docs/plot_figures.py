"""Sample plots for the CSV files written by `groverian`.

Not part of the supported tooling. Needs matplotlib:

    python docs/plot_figures.py fig3.csv fig3.png
"""

import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def plot(rows, ax):
    cols = list(rows[0].keys())
    if cols[:2] == ["a_even", "t"]:
        curves = defaultdict(list)
        for r in rows:
            curves[r["a_even"]].append((int(r["t"]), float(r["groverian"])))
        for a, pts in curves.items():
            ax.plot(*zip(*pts), marker=".", label=f"a_even={float(a):.4f}")
        ax.set_xlabel("t")
        ax.set_ylabel("G")
    else:
        x = [float(r[cols[0]]) for r in rows]
        for c in cols[1:]:
            y = [float(r[c]) if r[c] else float("nan") for r in rows]
            ax.plot(x, y, marker=".", label=c)
        ax.set_xlabel(cols[0])
    ax.legend()


def main():
    src, dst = sys.argv[1], sys.argv[2]
    fig, ax = plt.subplots(figsize=(6, 4))
    plot(read(src), ax)
    fig.tight_layout()
    fig.savefig(dst, dpi=120)


if __name__ == "__main__":
    main()
