"""
Histogram Toolkit: batch command-line interface
Verbs: stats, hist, eq, segment, gen, compare

Exit codes: 0 ok, 2 I/O, 3 invalid geometry/params,
4 unknown method/shape, 5 algorithmic failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

sys.path.append(str(Path(__file__).parent))

from config.settings import (
    DEFAULT_LEVELS,
    DEFAULT_SMOOTH_WINDOW,
    DEFAULT_SNR_KIND,
    DEFAULT_GRID_SIZE,
    DEFAULT_EXTENT,
    DEFAULT_SHAPE_A,
    DEFAULT_SIGMA,
    DEFAULT_BIMODAL_SPREAD,
    DEFAULT_BIMODAL_RATIO,
    MIN_LEVELS,
    MAX_LEVELS,
    EXIT_OK,
    EXIT_IO,
)
from imaging.gray_image import GrayImage, RegionOfInterest
from imaging.pgm_codec import read_image, save_pgm, write_image, levels_for_maxval
from ops.histogram import compute_histogram, histogram_cdf, uniformity_deviation
from ops.stats import NoiseModel, SnrKind, region_statistics, absolute_mean_brightness_error, sample_mean
from ops.equalize import EqualizationMethod, equalize, equalize_he, equalize_bbhe
from ops.segment import ThresholdMethod, threshold_valley, apply_threshold
from ops.synth import ShapeKind, ShapeSpec, sample_shape, quantize_field, two_gaussian_image
from report.formatters import (
    format_statistics_report,
    statistics_csv,
    histogram_csv,
    format_comparison,
    histogram_comparison_html,
)
from utils.artifacts import BatchOutputs
from utils.errors import HistogramToolkitError, InvalidParams

logger = logging.getLogger("histkit")

BIMODAL_SHAPE = "bimodal"


# --------------------------------------------------
# Batch runner
# --------------------------------------------------

def _report_error(path, error: Exception):
    prefix = f"{path}: " if path else ""
    print(f"❌ {prefix}{error}", file=sys.stderr)


def run_batch(inputs: List[str], process: Callable[[str], None]) -> int:
    """
    Runs `process` on every input in order. A failing file is reported
    and skipped; the result is the highest exit code seen.
    """
    code = EXIT_OK
    for path in inputs:
        try:
            process(path)
        except HistogramToolkitError as e:
            _report_error(path, e)
            code = max(code, e.exit_code)
        except OSError as e:
            _report_error(path, e)
            code = max(code, EXIT_IO)
    return code


# --------------------------------------------------
# stats
# --------------------------------------------------

def run_stats(args) -> int:
    roi = RegionOfInterest.parse(args.roi) if args.roi else None
    noise = NoiseModel(args.noise_std) if args.noise_std is not None else None
    snr_kind = SnrKind.parse(args.snr_kind)
    batch = len(args.inputs) > 1

    def process(path: str):
        image = read_image(path)
        image_stats = region_statistics(image, None, noise, snr_kind)
        roi_stats = region_statistics(image, roi, noise, snr_kind) if roi else None

        if args.format == "csv":
            text = statistics_csv(image_stats, roi_stats)
        else:
            text = format_statistics_report(image_stats, roi_stats)

        if batch:
            text = f"# {path}\n{text}"
        sys.stdout.write(text)

    return run_batch(args.inputs, process)


# --------------------------------------------------
# hist
# --------------------------------------------------

def run_hist(args) -> int:
    mode = "cdf" if args.cdf else "normalized" if args.normalized else "counts"
    outputs = BatchOutputs(args.out, len(args.inputs), suffix=f"_{mode}.csv")

    def process(path: str):
        hist = compute_histogram(read_image(path))
        outputs.write(path, histogram_csv(hist, mode))

    code = run_batch(args.inputs, process)
    logger.info("📊 Histogram outputs: %s", outputs.summary()["written"])
    return code


# --------------------------------------------------
# eq
# --------------------------------------------------

def run_eq(args) -> int:
    method = EqualizationMethod.parse(args.method)
    outputs = BatchOutputs(args.out, len(args.inputs), suffix=f"_{method.value}.pgm")

    def process(path: str):
        result = equalize(read_image(path), method)
        outputs.write(path, save_pgm(result, binary=not args.ascii))

    return run_batch(args.inputs, process)


# --------------------------------------------------
# segment
# --------------------------------------------------

def run_segment(args) -> int:
    method = ThresholdMethod.parse(args.method)
    if method is ThresholdMethod.MANUAL and args.threshold is None:
        raise InvalidParams("manual segmentation requires --threshold")

    outputs = BatchOutputs(args.out, len(args.inputs), suffix="_mask.pgm")
    batch = len(args.inputs) > 1

    def process(path: str):
        image = read_image(path)
        if method is ThresholdMethod.VALLEY:
            threshold = threshold_valley(compute_histogram(image), args.window).threshold
        else:
            threshold = args.threshold

        mask = apply_threshold(image, threshold)
        outputs.write(path, save_pgm(mask.to_image(), binary=not args.ascii))
        print(f"{path}\t{threshold}" if batch else threshold)

    return run_batch(args.inputs, process)


# --------------------------------------------------
# gen
# --------------------------------------------------

def _generate(args) -> GrayImage:
    if not MIN_LEVELS <= args.levels <= MAX_LEVELS:
        raise InvalidParams(f"--levels must lie in [{MIN_LEVELS}, {MAX_LEVELS}]")
    # PGM only records maxval; other depths reload as L=256
    if levels_for_maxval(args.levels - 1) != args.levels:
        raise InvalidParams(f"--levels must be a power of two, got {args.levels}")

    if args.shape == BIMODAL_SHAPE:
        return two_gaussian_image(
            args.size,
            levels=args.levels,
            sigma=args.spread,
            ratio=args.ratio,
            seed=args.seed,
        )

    kind = ShapeKind.parse(args.shape)
    a = args.a if args.a is not None else DEFAULT_SHAPE_A
    spec = ShapeSpec(
        kind,
        a=a,
        b=args.b if args.b is not None else a,
        sigma=args.sigma if args.sigma is not None else DEFAULT_SIGMA,
    )
    return quantize_field(sample_shape(spec, args.size, args.extent), args.levels)


def run_gen(args) -> int:
    try:
        image = _generate(args)
        write_image(image, args.out, binary=not args.ascii)
    except HistogramToolkitError as e:
        _report_error(None, e)
        return e.exit_code
    except OSError as e:
        _report_error(args.out, e)
        return EXIT_IO
    return EXIT_OK


# --------------------------------------------------
# compare
# --------------------------------------------------

def run_compare(args) -> int:
    plots = BatchOutputs(args.plot, len(args.inputs), suffix="_histograms.html") if args.plot else None
    batch = len(args.inputs) > 1

    def process(path: str):
        image = read_image(path)
        results = {
            "original": image,
            "he": equalize_he(image),
            "bbhe": equalize_bbhe(image),
        }
        rows = [
            {
                "image": name,
                "mean": sample_mean(result),
                "ambe": absolute_mean_brightness_error(image, result),
                "uniformity": uniformity_deviation(histogram_cdf(compute_histogram(result))),
            }
            for name, result in results.items()
        ]
        text = format_comparison(rows)
        sys.stdout.write(f"# {path}\n{text}" if batch else text)

        if plots is not None:
            histograms = {name: compute_histogram(result) for name, result in results.items()}
            plots.write(path, histogram_comparison_html(histograms, Path(path).name))

    return run_batch(args.inputs, process)


# --------------------------------------------------
# CLI
# --------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        "histkit",
        description="Grayscale histogram toolkit: statistics, equalization, segmentation",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    verbs = parser.add_subparsers(dest="verb", required=True)

    stats = verbs.add_parser("stats", help="Region statistics report")
    stats.add_argument("inputs", nargs="+")
    stats.add_argument("--roi", type=str, help="Region of interest as x,y,w,h")
    stats.add_argument("--noise-std", type=float, help="Noise standard deviation s_n for SNR")
    stats.add_argument("--snr-kind", type=str, default=DEFAULT_SNR_KIND, help="range | mean | signal")
    stats.add_argument("--format", choices=["text", "csv"], default="text")
    stats.set_defaults(handler=run_stats)

    hist = verbs.add_parser("hist", help="Histogram CSV export")
    hist.add_argument("inputs", nargs="+")
    hist.add_argument("-o", "--out", required=True)
    kind = hist.add_mutually_exclusive_group()
    kind.add_argument("--normalized", action="store_true", help="Emit probabilities")
    kind.add_argument("--cdf", action="store_true", help="Emit cumulative values")
    hist.set_defaults(handler=run_hist)

    eq = verbs.add_parser("eq", help="Histogram equalization")
    eq.add_argument("inputs", nargs="+")
    eq.add_argument("-o", "--out", required=True)
    eq.add_argument("--method", type=str, default=EqualizationMethod.HE.value, help="he | bbhe")
    eq.add_argument("--ascii", action="store_true", help="Write plain P2 instead of P5")
    eq.set_defaults(handler=run_eq)

    seg = verbs.add_parser("segment", help="Histogram-threshold segmentation")
    seg.add_argument("inputs", nargs="+")
    seg.add_argument("-o", "--out", required=True)
    seg.add_argument("--method", type=str, default=ThresholdMethod.VALLEY.value, help="valley | manual")
    seg.add_argument("--threshold", type=int, help="Threshold for the manual method")
    seg.add_argument("--window", type=int, default=DEFAULT_SMOOTH_WINDOW, help="Odd smoothing window")
    seg.add_argument("--ascii", action="store_true", help="Write plain P2 instead of P5")
    seg.set_defaults(handler=run_segment)

    gen = verbs.add_parser("gen", help="Synthetic test image")
    gen.add_argument("--shape", required=True, help="rectangle | pyramid | pillbox | cone | gaussian | peak | expdecay | bimodal")
    gen.add_argument("--size", type=int, default=DEFAULT_GRID_SIZE)
    gen.add_argument("--extent", type=float, default=DEFAULT_EXTENT)
    gen.add_argument("--a", type=float, help="Half-width, radius or decay rate")
    gen.add_argument("--b", type=float, help="Second half-width (rectangle, pyramid)")
    gen.add_argument("--sigma", type=float, help="Gaussian width")
    gen.add_argument("--spread", type=float, default=DEFAULT_BIMODAL_SPREAD, help="bimodal: mode std in gray levels")
    gen.add_argument("--ratio", type=float, default=DEFAULT_BIMODAL_RATIO, help="bimodal: dark:bright mass ratio")
    gen.add_argument("--seed", type=int, help="bimodal: random seed (omit for quantile sampling)")
    gen.add_argument("--levels", type=int, default=DEFAULT_LEVELS)
    gen.add_argument("-o", "--out", required=True)
    gen.add_argument("--ascii", action="store_true", help="Write plain P2 instead of P5")
    gen.set_defaults(handler=run_gen)

    compare = verbs.add_parser("compare", help="Compare HE and BBHE brightness preservation")
    compare.add_argument("inputs", nargs="+")
    compare.add_argument("--plot", type=str, help="Write an HTML histogram chart")
    compare.set_defaults(handler=run_compare)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(message)s",
        stream=sys.stderr,
        force=True,
    )

    try:
        return args.handler(args)
    except HistogramToolkitError as e:
        _report_error(None, e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
