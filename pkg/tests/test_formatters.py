import pytest

from ops.histogram import Histogram
from ops.stats import RegionStatistics, region_statistics
from report.formatters import (
    format_statistics_report,
    statistics_table,
    histogram_table,
    histogram_csv,
    format_comparison,
    histogram_comparison_html,
)
from utils.errors import UnknownMethod


def _stats(**overrides):
    values = dict(mean=12.25, std=3.0, min=1, max=30, median=10, mode=9, cv=24.49, count=16)
    values.update(overrides)
    return RegionStatistics(**values)


def test_report_rounds_reals_and_keeps_ints():
    text = format_statistics_report(_stats(snr_db=19.96))
    assert text == (
        "Average\t12.2\n"
        "Standard deviation\t3.0\n"
        "Minimum\t1\n"
        "Median\t10\n"
        "Maximum\t30\n"
        "Mode\t9\n"
        "SNR(db)\t20.0\n"
    )


def test_report_with_roi_column():
    text = format_statistics_report(_stats(), _stats(mean=100.0, min=50))
    lines = text.splitlines()
    assert lines[0] == "Statistics\tImage\tROI"
    assert lines[1] == "Average\t12.2\t100.0"
    assert lines[3] == "Minimum\t1\t50"
    assert lines[-1] == "SNR(db)\tNA\tNA"


def test_statistics_table_keeps_text_cells(ramp4):
    df = statistics_table(region_statistics(ramp4))
    assert list(df.columns) == ["statistic", "image"]
    cells = dict(zip(df["statistic"], df["image"]))
    assert cells["Minimum"] == "1"
    assert cells["SNR(db)"] == "NA"
    assert cells["CV(%)"].startswith("64.549")
    assert cells["Count"] == "4"


def test_histogram_table_modes():
    hist = Histogram.from_counts([2, 0, 2])
    assert histogram_table(hist)["count"].tolist() == [2, 0, 2]
    assert histogram_table(hist, "normalized")["probability"].tolist() == [0.5, 0.0, 0.5]
    assert histogram_table(hist, "cdf")["cumulative"].tolist() == [0.5, 0.5, 1.0]


def test_histogram_table_unknown_mode():
    with pytest.raises(UnknownMethod):
        histogram_table(Histogram.from_counts([1, 1]), "log")


def test_histogram_csv_uses_fixed_decimals():
    text = histogram_csv(Histogram.from_counts([1, 3]), "normalized")
    assert text == "level,probability\n0,0.250000000\n1,0.750000000\n"


def test_comparison_table():
    text = format_comparison([
        {"image": "original", "mean": 2.5, "ambe": 0.0, "uniformity": 0.375},
        {"image": "he", "mean": 5.0, "ambe": 2.5, "uniformity": 0.125},
    ])
    rows = [line.split() for line in text.splitlines()]
    assert rows == [
        ["image", "mean", "ambe", "uniformity"],
        ["original", "2.5", "0.0", "0.375"],
        ["he", "5.0", "2.5", "0.125"],
    ]


def test_histogram_chart_is_stable():
    histograms = {
        "original": Histogram.from_counts([1, 2, 3, 4]),
        "he": Histogram.from_counts([0, 1, 2, 7]),
    }
    first = histogram_comparison_html(histograms, "sample")
    assert 'id="histogram-comparison"' in first
    assert "original" in first and "he" in first
    assert first == histogram_comparison_html(histograms, "sample")
