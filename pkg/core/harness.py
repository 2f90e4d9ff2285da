"""
Batch evaluation and refinement over a dataset manifest.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from tqdm import tqdm

from models.annotation import Annotation
from models.errors import AnnotationError, ManifestError, NoMaterialEdgeError, ShadowToolError
from models.image import BinaryMask, LabelMap, RgbImage
from models.pixel_set import gather_colors
from models.report import EntryResult, EvalReport
from models.structuring_element import StructuringElement
from storage.annotation_io import load_annotation
from storage.image_io import load_image, load_labelmap, load_mask, save_image
from storage.report_io import save_json
from . import __version__
from .metrics import cdd, cdd_aggregate, mae_regions
from .morphology import inner_band, outer_band
from .refine import optimize

logger = logging.getLogger(__name__)

FLAG_FALLBACK = "fallback-single-segment"
FLAG_AUTO_ANNOTATION = "auto-annotation"
FLAG_NO_MC_EDGE = "no-mc-edge"


def auto_annotate(shadow: BinaryMask, se: StructuringElement = None) -> Annotation:
    """
    Annotate a shadow mask automatically: S is the inner band, NS the outer band.

    Raises:
        AnnotationError: If either band is empty
    """
    se = se if se is not None else StructuringElement()
    return Annotation(inner_band(shadow, se).coords(), outer_band(shadow, se).coords())


def annotation_cdd(image: RgbImage, annotation: Annotation, bins) -> float:
    """
    Raw CDD of an image on the annotated pixels.

    Raises:
        AnnotationError: If an annotated pixel lies outside the image
    """
    try:
        s = gather_colors(image, annotation.s_pixels)
        ns = gather_colors(image, annotation.ns_pixels)
    except IndexError as e:
        raise AnnotationError(f"Annotation does not fit the image: {e}") from e
    return cdd(s, ns, bins)


def _entry_annotation(entry, shadow, flags):
    if entry.annotation_path is not None:
        return load_annotation(entry.annotation_path)
    flags.append(FLAG_AUTO_ANNOTATION)
    return auto_annotate(shadow)


def _aggregate(values):
    values = [v for v in values if v is not None]
    return cdd_aggregate(values) if values else None


def _build_report(results, config):
    return EvalReport(
        results,
        before=_aggregate(r.cdd_before for r in results),
        after=_aggregate(r.cdd_after for r in results),
        config=config,
        version=__version__,
    )


def _evaluate_entry(entry, bins):
    flags = []
    try:
        image = load_image(entry.image_path)
        shadow = load_mask(entry.shadow_mask_path)
        image.require_same_shape(shadow, "shadow mask")
        annotation = _entry_annotation(entry, shadow, flags)
        before = annotation_cdd(image, annotation, bins)
        evaluated = image
        after = None
        if entry.result_path is not None:
            evaluated = load_image(entry.result_path)
            image.require_same_shape(evaluated, "result image")
            after = annotation_cdd(evaluated, annotation, bins)
        mae = None
        if entry.gt_path is not None:
            mae = mae_regions(evaluated, load_image(entry.gt_path), shadow)
        return EntryResult(entry.id, before, after, mae=mae, flags=flags)
    except (ShadowToolError, OSError) as e:
        logger.error("Entry %s failed: %s", entry.id, e)
        return EntryResult(entry.id, status=EntryResult.STATUS_ERROR, error=str(e), flags=flags)


def evaluate(manifest, bins=256) -> EvalReport:
    """
    CDD of every manifest entry on its annotated pixels.

    cdd_before is measured on the input image; cdd_after on the result image
    when the entry names one (entries without a result reproduce the input
    baseline). Entries without an annotation file are annotated from their
    shadow mask bands and flagged. Dataset files are only read. Failures are
    recorded per entry and never abort the run.

    Args:
        manifest (DatasetManifest): Entries to evaluate
        bins (int): Histogram bins per channel

    Returns:
        EvalReport: Entries in manifest order with x1000 aggregates
    """
    results = [_evaluate_entry(entry, bins) for entry in tqdm(manifest.entries(), desc="evaluate", unit="image",
                                                              disable=len(manifest) < 2)]
    logger.info("Evaluated %d entries", len(results))
    return _build_report(results, {"bins": bins, "refine": False})


def _load_labels(entry, shape, fallback_single_segment, flags):
    if entry.labelmap_path is not None:
        return load_labelmap(entry.labelmap_path)
    if not fallback_single_segment:
        raise ManifestError(f"Entry {entry.id} has no segmentation; pass --fallback-single-segment to use the whole frame")
    flags.append(FLAG_FALLBACK)
    return LabelMap.single_segment(*shape)


def refine_entry(entry, cfg, out_dir, fallback_single_segment=False):
    """
    Refine one manifest entry and write <id>.png and <id>.json into out_dir.

    Entries without a material-consistent shadow edge are copied through
    unchanged and flagged. Errors are caught and returned in the result row.

    Returns:
        EntryResult
    """
    flags = []
    out_dir = Path(out_dir)
    try:
        image = load_image(entry.image_path)
        shadow = load_mask(entry.shadow_mask_path)
        labels = _load_labels(entry, image.shape, fallback_single_segment, flags)
        annotation = _entry_annotation(entry, shadow, flags)
        before = annotation_cdd(image, annotation, cfg.bins)
        try:
            result = optimize(image, shadow, labels, cfg)
        except NoMaterialEdgeError as e:
            logger.warning("Entry %s: %s, copied through unchanged", entry.id, e)
            save_image(out_dir / f"{entry.id}.png", image)
            flags.append(FLAG_NO_MC_EDGE)
            return EntryResult(entry.id, before, before, status=EntryResult.STATUS_NO_MC_EDGE, flags=flags)
        save_image(out_dir / f"{entry.id}.png", result.output)
        save_json(out_dir / f"{entry.id}.json", {"id": entry.id, **result.to_dict()})
        after = annotation_cdd(result.output, annotation, cfg.bins)
        mae = None
        if entry.gt_path is not None:
            mae = mae_regions(result.output, load_image(entry.gt_path), shadow)
        return EntryResult(entry.id, before, after, mae=mae, flags=flags)
    except (ShadowToolError, OSError) as e:
        logger.error("Entry %s failed: %s", entry.id, e)
        return EntryResult(entry.id, status=EntryResult.STATUS_ERROR, error=str(e), flags=flags)


def run_refine_batch(manifest, cfg, out_dir, fallback_single_segment=False, workers=1) -> EvalReport:
    """
    Refine every manifest entry and report CDD before and after refinement.

    Entries are independent; with workers > 1 they run in a process pool and
    results are merged back in manifest order, so the report does not depend
    on completion order.

    Args:
        manifest (DatasetManifest): Entries to refine
        cfg (RefineConfig): Refinement settings shared by all entries
        out_dir (str | Path): Directory for refined PNGs and per-image JSON
        fallback_single_segment (bool): Use one full-frame segment for entries
            without a label map (the all-edges baseline)
        workers (int): Parallel entry workers

    Returns:
        EvalReport
    """
    entries = manifest.entries()
    if fallback_single_segment:
        logger.warning("Fallback enabled: entries without a label map use the whole frame as one segment")
    args = [(entry, cfg, out_dir, fallback_single_segment) for entry in entries]
    progress = dict(desc="refine", unit="image", total=len(entries), disable=len(entries) < 2)
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(_refine_args, args), **progress))
    else:
        results = [refine_entry(*a) for a in tqdm(args, **progress)]
    failed = sum(r.status == EntryResult.STATUS_ERROR for r in results)
    logger.info("Refined %d entries, %d failed", len(results), failed)
    config = {**cfg.to_dict(), "refine": True, "fallback_single_segment": bool(fallback_single_segment)}
    return _build_report(results, config)


def _refine_args(args):
    return refine_entry(*args)
