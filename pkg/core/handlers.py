"""
Handler functions for the shadow edge toolkit.

Each handler receives the raw argument list of its subcommand, does the work
and returns a (message, exit code) pair for main to print.
"""
# flake8: noqa: E501
import logging

from colorama import Fore, Style

from models.image import LabelMap
from models.report import scaled
from models.sampler_config import SampleMode
from storage.annotation_io import load_annotation, save_annotation
from storage.image_io import load_image, load_labelmap, load_mask, save_image
from storage.manifest_io import load_manifest
from storage.report_io import save_json, save_report
from utils.parsers import (
    band_se_from_args, parse_args, parse_triplet, refine_config_from_args, sampler_from_args,
)
from utils.table_formatters import format_region_table, format_report_table
from utils.visualization import render_edge_visualization
from . import __version__
from .commands import Command
from .decorators import EXIT_OK, input_error
from .harness import annotation_cdd, auto_annotate, evaluate, run_refine_batch
from .mc_edges import build_sample_sets, extract_regions
from .refine import optimize, synth_shadow

logger = logging.getLogger(__name__)


def _load_segmentation(ns, shape):
    """Label map from --segmentation, or one full-frame segment with --fallback-single-segment."""
    if ns.segmentation:
        return load_labelmap(ns.segmentation)
    if not ns.fallback_single_segment:
        raise ValueError("Pass --segmentation or --fallback-single-segment")
    logger.warning("Using the whole frame as one segment: every shadow edge is treated as material-consistent")
    return LabelMap.single_segment(*shape)


def _ok(text):
    return f"✅ {text}", EXIT_OK


@input_error
def extract_edges(args):
    """
    Extract material-consistent shadow edges and their samples.

    Args:
        args (list): Command arguments

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.EXTRACT_EDGES, args)
    image = load_image(ns.image)
    shadow = load_mask(ns.mask)
    labels = _load_segmentation(ns, image.shape)
    cfg = sampler_from_args(ns)
    regions = extract_regions(labels, shadow, cfg)
    sample_sets = build_sample_sets(image, labels, shadow, cfg, SampleMode.PER_REGION, regions)

    save_image(ns.out_viz, render_edge_visualization(image, sample_sets))
    save_json(ns.out_json, {
        "version": __version__,
        "config": cfg.to_dict(),
        "fallback_single_segment": ns.fallback_single_segment,
        "regions": [r.to_dict() for r in regions],
        "sample_sets": [s.to_dict() for s in sample_sets],
    })
    return (
        f"{format_region_table(regions)}\n"
        f"✅ {Fore.CYAN}{len(regions)}{Style.RESET_ALL} region(s) written to {Fore.GREEN}{ns.out_json}{Style.RESET_ALL} "
        f"and {Fore.GREEN}{ns.out_viz}{Style.RESET_ALL}."
    ), EXIT_OK


@input_error
def refine(args):
    """
    Refine one image with the relighting model.

    Args:
        args (list): Command arguments

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.REFINE, args)
    image = load_image(ns.image)
    shadow = load_mask(ns.mask)
    labels = _load_segmentation(ns, image.shape)
    cfg = refine_config_from_args(ns)
    result = optimize(image, shadow, labels, cfg)
    save_image(ns.out, result.output)
    if ns.report:
        save_json(ns.report, {
            "version": __version__,
            "config": cfg.to_dict(),
            "fallback_single_segment": ns.fallback_single_segment,
            **result.to_dict(),
        })
    status = "converged" if result.converged else "stopped"
    return (
        f"✅ Refined {Fore.CYAN}{ns.image}{Style.RESET_ALL} ({status} after {result.iterations_run} iteration(s), "
        f"loss {result.best_loss:.4g}): {Fore.YELLOW}{result.params}{Style.RESET_ALL}\n"
        f"   CDD x1000 {Fore.MAGENTA}{scaled(result.cdd_before):.2f}{Style.RESET_ALL} → "
        f"{Fore.GREEN}{scaled(result.cdd_after):.2f}{Style.RESET_ALL}, saved to {Fore.GREEN}{ns.out}{Style.RESET_ALL}"
    ), EXIT_OK


@input_error
def show_cdd(args):
    """
    Print the CDD (x1000) of an image on an annotation.

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.CDD, args)
    value = annotation_cdd(load_image(ns.image), load_annotation(ns.annotation), ns.bins)
    return f"{scaled(value):.4f}", EXIT_OK


@input_error
def bench(args):
    """
    Evaluate or refine every entry of a manifest and print the report table.

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.BENCH, args)
    manifest = load_manifest(ns.manifest)
    if ns.refine:
        report = run_refine_batch(manifest, refine_config_from_args(ns), ns.out_dir,
                                  ns.fallback_single_segment, ns.workers)
    else:
        report = evaluate(manifest, ns.bins)
    lines = [format_report_table(report)]
    if ns.report:
        save_report(ns.report, report)
        lines.append(f"✅ Report saved to {Fore.GREEN}{ns.report}{Style.RESET_ALL}")
    return "\n".join(lines), EXIT_OK


@input_error
def synth(args):
    """
    Synthesize a shadow inside a mask.

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.SYNTH, args)
    output = synth_shadow(
        load_image(ns.image), load_mask(ns.mask), parse_triplet(ns.w, "--w"), parse_triplet(ns.b, "--b"),
        ns.penumbra, ns.noise, ns.seed,
    )
    save_image(ns.out, output)
    return _ok(f"Synthetic shadow saved to {Fore.GREEN}{ns.out}{Style.RESET_ALL}")


@input_error
def annotate(args):
    """
    Annotate a shadow mask from its inner and outer bands.

    Returns:
        tuple: (message, exit code)
    """
    ns = parse_args(Command.ANNOTATE, args)
    shadow = load_mask(ns.mask)
    background = None
    if ns.image:
        background = load_image(ns.image)
        background.require_same_shape(shadow, "shadow mask")
    annotation = auto_annotate(shadow, band_se_from_args(ns))
    save_annotation(ns.out, annotation, shape=shadow.shape, background=background)
    return _ok(
        f"{Fore.RED}{len(annotation.s_pixels)}{Style.RESET_ALL} shadow and "
        f"{Fore.GREEN}{len(annotation.ns_pixels)}{Style.RESET_ALL} non-shadow pixel(s) saved to {Fore.GREEN}{ns.out}{Style.RESET_ALL}"
    )
