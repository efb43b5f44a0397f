"""Figure rendering for conformity reports.

Saves one observed-versus-expected chart per (slice, law) record, using
the same record naming as report.plot_data so the images sit alongside
the delimited data files.  matplotlib is imported lazily with the Agg
backend, so no display is required and the rest of the package works
without ever importing it.
"""

from __future__ import annotations

import os

from .report import ConformityReport, _slug


def save_figures(report: ConformityReport, directory, dpi: int = 150):
    """Render every record to <directory>/<record name>.png; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(directory, exist_ok=True)
    paths = []
    for record in report.slices:
        bins = list(record.law.bins)
        observed = [record.observed[b] for b in bins]
        expected = [record.expected[b] for b in bins]
        fig, ax = plt.subplots(figsize=(8, 4.5))
        ax.bar(bins, observed, color="#4878a8", label="observed")
        ax.plot(bins, expected, color="#c04040", marker="o", markersize=3, label="expected")
        ax.set_xlabel("digit bin")
        ax.set_ylabel("frequency")
        reject = "reject" if record.result.chi2_reject else "no reject"
        ax.set_title(
            f"{record.label} [{record.law.value}]  "
            f"chi2={record.result.chi2:.2f} ({reject}), "
            f"mad_mean={record.result.mad_mean:.5f} ({record.result.conformity.value})"
        )
        if len(bins) > 20:
            ax.set_xticks([b for b in bins if b % 10 == 0])
        ax.legend()
        fig.tight_layout()
        name = f"{_slug(record.label)}_{record.law.value}.png"
        path = os.path.join(directory, name)
        fig.savefig(path, dpi=dpi)
        plt.close(fig)
        paths.append(path)
    return paths
