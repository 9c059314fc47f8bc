"""
Formatting layer: statistics reports, histogram CSV, comparison tables
and the histogram comparison chart.

NO computation beyond presentation. Reals in the text report use
REPORT_DECIMALS; CSV reals use CSV_DECIMALS.
"""

from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import plotly.graph_objects as go

from config.settings import (
    REPORT_DECIMALS,
    CSV_DECIMALS,
    NOT_AVAILABLE,
)
from ops.histogram import Histogram, normalize, cumulative
from ops.stats import RegionStatistics
from utils.errors import UnknownMethod


HISTOGRAM_COLUMNS = {
    "counts": "count",
    "normalized": "probability",
    "cdf": "cumulative",
}


# --------------------------------------------------
# Statistics report
# --------------------------------------------------

def _format_value(value) -> str:
    if value is None:
        return NOT_AVAILABLE
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.{REPORT_DECIMALS}f}"


def format_statistics_report(
    image_stats: RegionStatistics,
    roi_stats: Optional[RegionStatistics] = None,
) -> str:
    """
    One "name<TAB>value" line per row. With a ROI, a header line and a
    second value column are added.
    """
    lines = []
    if roi_stats is not None:
        lines.append("Statistics\tImage\tROI")

    for i, (name, value) in enumerate(image_stats.rows()):
        cells = [name, _format_value(value)]
        if roi_stats is not None:
            cells.append(_format_value(roi_stats.rows()[i][1]))
        lines.append("\t".join(cells))

    return "\n".join(lines) + "\n"


def _format_csv_value(value) -> str:
    if value is None:
        return NOT_AVAILABLE
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.{CSV_DECIMALS}f}"


def statistics_table(
    image_stats: RegionStatistics,
    roi_stats: Optional[RegionStatistics] = None,
) -> pd.DataFrame:
    def column(stats: RegionStatistics) -> List[str]:
        values = [value for _, value in stats.rows()] + [stats.cv, stats.count]
        return [_format_csv_value(v) for v in values]

    names = [name for name, _ in image_stats.rows()] + ["CV(%)", "Count"]
    data = {"statistic": names, "image": column(image_stats)}
    if roi_stats is not None:
        data["roi"] = column(roi_stats)
    return pd.DataFrame(data)


def statistics_csv(
    image_stats: RegionStatistics,
    roi_stats: Optional[RegionStatistics] = None,
) -> str:
    return statistics_table(image_stats, roi_stats).to_csv(index=False, lineterminator="\n")


# --------------------------------------------------
# Histogram CSV
# --------------------------------------------------

def histogram_table(hist: Histogram, mode: str = "counts") -> pd.DataFrame:
    if mode not in HISTOGRAM_COLUMNS:
        raise UnknownMethod(f"unknown histogram mode {mode!r}")

    if mode == "counts":
        values = hist.bins
    elif mode == "normalized":
        values = normalize(hist).probs
    else:
        values = cumulative(normalize(hist)).cdf

    return pd.DataFrame({
        "level": np.arange(hist.levels),
        HISTOGRAM_COLUMNS[mode]: values,
    })


def histogram_csv(hist: Histogram, mode: str = "counts") -> str:
    return histogram_table(hist, mode).to_csv(
        index=False,
        float_format=f"%.{CSV_DECIMALS}f",
        lineterminator="\n",
    )


# --------------------------------------------------
# Equalization comparison
# --------------------------------------------------

def format_comparison(rows: List[Dict]) -> str:
    """
    rows: [{"image": name, "mean": .., "ambe": .., "uniformity": ..}, ...]
    """
    df = pd.DataFrame(rows, columns=["image", "mean", "ambe", "uniformity"])
    return df.to_string(
        index=False,
        formatters={
            "mean": lambda v: f"{v:.{REPORT_DECIMALS}f}",
            "ambe": lambda v: f"{v:.{REPORT_DECIMALS}f}",
            "uniformity": lambda v: f"{v:.3f}",
        },
    ) + "\n"


def histogram_comparison_html(histograms: Dict[str, Histogram], title: str) -> str:
    fig = go.Figure()
    for name, hist in histograms.items():
        fig.add_trace(go.Bar(
            x=np.arange(hist.levels),
            y=hist.bins,
            name=name,
            opacity=0.6,
        ))

    fig.update_layout(
        title=title,
        barmode="overlay",
        xaxis_title="Gray level",
        yaxis_title="Pixel count",
    )
    # Fixed div id keeps the HTML byte-identical across runs
    return fig.to_html(
        include_plotlyjs="cdn",
        full_html=True,
        div_id="histogram-comparison",
    )
