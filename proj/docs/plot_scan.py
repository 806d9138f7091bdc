#!/usr/bin/env python3
"""Render a gaplab holo-scan CSV as residual and classification maps.

Usage: plot_scan.py scan.csv [out.png]
"""
import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    frame = pd.read_csv(sys.argv[1])
    res = frame.pivot_table(index="im", columns="re", values="cr_residual")
    codes = frame["class"].map({"H": 0, "N": 1, "I": 2}).to_numpy()
    grid = codes.reshape(res.shape)

    fig, (ax_res, ax_cls) = plt.subplots(1, 2, figsize=(11, 4.5))
    extent = [res.columns.min(), res.columns.max(), res.index.min(), res.index.max()]
    im = ax_res.imshow(
        np.log10(np.maximum(res.to_numpy(), 1e-18)),
        origin="lower",
        extent=extent,
        aspect="auto",
    )
    fig.colorbar(im, ax=ax_res, label="log10 CR residual")
    ax_res.set_title("Cauchy-Riemann residual")

    ax_cls.imshow(grid, origin="lower", extent=extent, aspect="auto", vmin=0, vmax=2)
    ax_cls.set_title("classification (0=H, 1=N, 2=I)")
    for ax in (ax_res, ax_cls):
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")

    if len(sys.argv) > 2:
        fig.savefig(sys.argv[2], dpi=150, bbox_inches="tight")
    else:
        plt.show()


if __name__ == "__main__":
    main()
