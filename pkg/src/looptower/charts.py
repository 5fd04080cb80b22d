"""Chart emitters: TSV rows, an ASCII grid in the classical chart layout, and a
matplotlib rendering for the file-report path.

The TSV block lists one row per nonempty cell, t descending then s
ascending, class names joined by ";".  The grid puts s = -w..0 left to
right with t descending down the left margin.  Both are deterministic for
a fixed page; the chart document is the TSV block, a blank line, then the
grid.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .tower import E2Report, SpectralPage


def chart_rows(page: SpectralPage, e2: Optional[E2Report] = None) -> List[Tuple[int, int, Tuple[str, ...]]]:
    if e2 is None:
        return [(c.s, c.t, c.names) for c in page.cells()]
    rows = []
    for c in page.cells():
        cell = e2.cell(c.s, c.t)
        if cell is None:
            continue
        if cell.dim_e2 is None:
            rows.append((c.s, c.t, tuple(f"{n}?" for n in c.names)))
        elif cell.dim_e2:
            rows.append((c.s, c.t, cell.basis))
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows


def chart_tsv(rows: List[Tuple[int, int, Tuple[str, ...]]]) -> str:
    lines = ["s\tt\tclasses"]
    for s, t, names in rows:
        lines.append(f"{s}\t{t}\t" + ";".join(names))
    return "\n".join(lines) + "\n"


def chart_ascii(rows: List[Tuple[int, int, Tuple[str, ...]]], max_weight: int) -> str:
    """Grid with columns s = -max_weight..0 left to right, t descending."""
    grid: Dict[Tuple[int, int], str] = {}
    tmax = 0
    for s, t, names in rows:
        grid[(s, t)] = ",".join(names)
        tmax = max(tmax, t)
    s_range = list(range(-max_weight, 1))
    widths = {}
    for s in s_range:
        entries = [grid.get((s, t), ".") for t in range(0, tmax + 1)]
        widths[s] = max([len(f"s={s}")] + [len(e) for e in entries])
    tw = max(2, len(str(tmax)))
    lines = [
        " " * tw + " | " + "  ".join(f"s={s}".ljust(widths[s]) for s in s_range)
    ]
    for t in range(tmax, -1, -1):
        cells = [grid.get((s, t), ".").ljust(widths[s]) for s in s_range]
        lines.append(str(t).rjust(tw) + " | " + "  ".join(cells))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def chart_document(page: SpectralPage, e2: Optional[E2Report] = None) -> str:
    rows = chart_rows(page, e2)
    return chart_tsv(rows) + "\n" + chart_ascii(rows, page.max_weight)


def render_chart_figure(page: SpectralPage, path: str, e2: Optional[E2Report] = None, title: str = "") -> None:
    """Draw the chart with matplotlib and write it to `path`."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = chart_rows(page, e2)
    tmax = max([t for _, t, _ in rows], default=1)
    fig, ax = plt.subplots(figsize=(1.8 * (page.max_weight + 1), 0.55 * (tmax + 2)))
    for s, t, names in rows:
        ax.plot([s], [t], "ko", markersize=3)
        ax.annotate(
            ", ".join(names),
            (s, t),
            textcoords="offset points",
            xytext=(5, 3),
            fontsize=8,
        )
    ax.set_xlim(-page.max_weight - 0.5, 0.5)
    ax.set_ylim(-0.5, tmax + 0.5)
    ax.set_xticks(range(-page.max_weight, 1))
    ax.set_yticks(range(0, tmax + 1))
    ax.set_xlabel("s")
    ax.set_ylabel("t")
    ax.grid(True, linewidth=0.3, alpha=0.5)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
