"""Static matplotlib renderings of tables, scans and verification reports.

Imported lazily by the CLI so that library use never pulls in
matplotlib.  Every function writes one figure file and returns the path.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .congruence import CongruenceClaim, CongruenceReport, primes_up_to
from .partitions import DistributionTable


def save_distribution_figure(table: DistributionTable, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    residues = list(range(table.modulus))
    ax.bar(residues, table.counts, color="#39627a")
    ax.set_xlabel(f"{table.stat} mod {table.modulus}")
    ax.set_ylabel("partitions")
    ax.set_title(f"{table.stat} classes of the partitions of {table.n}")
    ax.set_xticks(residues)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_scan_figure(
    claims: Sequence[CongruenceClaim], k: int, j: int, ell_max: int, depth: int, path: str
) -> str:
    primes = primes_up_to(ell_max)
    hits = {(c.ell, c.delta) for c in claims}
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for row, ell in enumerate(primes):
        for delta in range(ell):
            found = (ell, delta) in hits
            ax.scatter(
                delta,
                row,
                marker="s" if found else ".",
                s=120 if found else 15,
                color="#a03232" if found else "#b8c2c9",
            )
    ax.set_yticks(range(len(primes)), [str(p) for p in primes])
    ax.set_xlabel("delta")
    ax.set_ylabel("modulus")
    ax.set_title(f"zero progressions of p_{{{k},{j}}} through n={depth}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_verify_figure(reports: Sequence[CongruenceReport], path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.4, 0.9 + 0.5 * max(len(reports), 1)))
    labels = []
    for row, rep in enumerate(reports):
        ok = not rep.failures
        ax.barh(row, rep.claim.depth, color="#39627a" if ok else "#a03232")
        for d in rep.failures:
            ax.scatter(d, row, color="black", zorder=3, s=25)
        labels.append(f"delta={rep.claim.delta} [{rep.method}]")
    ax.set_yticks(range(len(reports)), labels)
    ax.set_xlabel("checked depth (failures marked)")
    ax.set_title("congruence verification")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
