#!/usr/bin/env python3
"""Plot the aggregate rows of a `seebf sweep` CSV."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--stat", default=None, help="aggregate statistic (default: see_mean or outage_freq)")
    ap.add_argument("--out", default=None, help="image path (default: <csv>.<stat>.png)")
    args = ap.parse_args()

    with open(args.csv) as f:
        header = f.readline()
    meta = dict(kv.split("=", 1) for kv in header.split()[3:])
    df = pd.read_csv(args.csv, comment="#")
    agg = df[df.trial < 0]
    stat = args.stat or ("outage_freq" if meta.get("experiment") == "outage" else "see_mean")
    sel = agg[agg.stat == stat]
    if sel.empty:
        raise SystemExit(f"no aggregate rows for stat '{stat}'")
    se = agg[agg.stat == "see_se"] if stat == "see_mean" else None

    fig, ax = plt.subplots(figsize=(6, 4))
    for algo, g in sel.groupby("algo", sort=False):
        g = g.sort_values("x")
        if se is not None:
            e = se[se.algo == algo].set_index("x").reindex(g.x).value.to_numpy()
            ax.errorbar(g.x, g.value, yerr=e, marker="o", capsize=3, label=algo)
        else:
            ax.plot(g.x, g.value, marker="o", label=algo)
    ax.set_xlabel(meta.get("sweep", "x"))
    ax.set_ylabel(stat)
    ax.set_title(f"{meta.get('experiment', '')} (trials={meta.get('trials', '?')})")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    out = args.out or f"{args.csv}.{stat}.png"
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
