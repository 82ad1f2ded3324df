"""Plots the CSVs written next to this script. Usage: python plot.py [dir]"""
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


def curves(dir_, name, ylabel, std=True):
    header, rows = read(os.path.join(dir_, name))
    x = [r[0] for r in rows]
    step = 2 if std else 1
    fig, ax = plt.subplots(figsize=(6, 4))
    for i in range(1, len(header), step):
        label = header[i].rsplit("_", 1)[0]
        mean = [r[i] for r in rows]
        ax.plot(x, mean, label=label)
        if std:
            sd = [r[i + 1] for r in rows]
            ax.fill_between(x, [m - s for m, s in zip(mean, sd)], [m + s for m, s in zip(mean, sd)], alpha=0.15)
    ax.set_xlabel("episode")
    ax.set_ylabel(ylabel)
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(dir_, name.replace(".csv", ".png")), dpi=150)
    plt.close(fig)


def selection(dir_):
    with open(os.path.join(dir_, "selection.csv"), newline="") as f:
        rows = list(csv.reader(f))
    header, rows = rows[0], rows[1:]
    for alg in sorted({r[0] for r in rows}):
        sub = [r for r in rows if r[0] == alg]
        x = [int(r[2]) for r in sub]
        fig, ax = plt.subplots(figsize=(6, 4))
        for j in range(3, len(header)):
            ys = [float(r[j]) for r in sub]
            if any(ys):
                ax.plot(x, ys, label=header[j])
        ax.set_xlabel("episode")
        ax.set_ylabel("selection frequency")
        ax.set_title(alg)
        ax.legend()
        fig.tight_layout()
        fig.savefig(os.path.join(dir_, f"selection_{alg}.png"), dpi=150)
        plt.close(fig)


if __name__ == "__main__":
    d = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    curves(d, "curves_smoothed.csv", "average evaluation reward")
    curves(d, "running_average.csv", "W(k)")
    curves(d, "expected_reward.csv", "expected reward", std=False)
    selection(d)
