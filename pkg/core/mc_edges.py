"""
Material-consistent shadow edge extraction and supervision sampling.

A segment qualifies when the shadow boundary crosses it: enough inner-band
pixels and enough outer-band pixels fall inside the same segment. Edge pixels
of segments that do not straddle the boundary (object borders that coincide
with the shadow edge) never reach a sample set.
"""
import logging

import numpy as np

from models.errors import EmptySampleError
from models.image import BinaryMask, LabelMap, RgbImage
from models.pixel_set import PixelSet, extract_patch, gather_colors
from models.region import EdgeSampleSet, MaterialRegion
from models.sampler_config import SampleMode, SamplerConfig
from .morphology import erode, inner_band, outer_band

logger = logging.getLogger(__name__)


def shadow_bands(shadow: BinaryMask, cfg: SamplerConfig):
    """
    Return the inner and outer bands of a shadow mask.

    Returns:
        tuple[BinaryMask, BinaryMask]: (inner, outer)
    """
    return inner_band(shadow, cfg.band_se), outer_band(shadow, cfg.band_se)


def extract_regions(labels: LabelMap, shadow: BinaryMask, cfg: SamplerConfig) -> list[MaterialRegion]:
    """
    Select the segments crossed by the shadow edge.

    A segment is returned iff its area is at least cfg.min_region_area and it
    contains at least cfg.tau_band pixels of both the inner and the outer
    shadow band. Unlabeled pixels (id 0) never form a region.

    Args:
        labels (LabelMap): Material segmentation
        shadow (BinaryMask): Shadow mask
        cfg (SamplerConfig): Band element, area filter and tau_band

    Returns:
        list[MaterialRegion]: Qualifying regions ordered by segment id

    Raises:
        DimensionMismatchError: If labels and shadow differ in size
    """
    shadow.require_same_shape(labels, "label map")
    inner, outer = shadow_bands(shadow, cfg)
    length = int(labels.data.max()) + 1
    areas = np.bincount(labels.data.ravel(), minlength=length)
    in_counts = np.bincount(labels.data[inner.data], minlength=length)
    out_counts = np.bincount(labels.data[outer.data], minlength=length)

    regions = []
    for segment_id in labels.segment_ids():
        if areas[segment_id] < cfg.min_region_area:
            continue
        region = MaterialRegion(
            segment_id, labels.segment_mask(segment_id), in_counts[segment_id], out_counts[segment_id]
        )
        if region.is_consistent(cfg.tau_band):
            regions.append(region)
    logger.info("%d of %d segment(s) carry a material-consistent shadow edge",
                len(regions), len(labels.segment_ids()))
    return regions


def sample_edge_pixels(image: RgbImage, region: MaterialRegion, shadow: BinaryMask, cfg: SamplerConfig):
    """
    Collect every band pixel of a region on both sides of the shadow edge.

    Returns:
        tuple[PixelSet, PixelSet]: (S_in, S_out) in raster order

    Raises:
        EmptySampleError: If either side is empty (the region was not qualified)
    """
    image.require_same_shape(shadow, "shadow mask")
    inner, outer = shadow_bands(shadow, cfg)
    s_in = gather_colors(image, (inner & region.mask).coords())
    s_out = gather_colors(image, (outer & region.mask).coords())
    if not s_in or not s_out:
        raise EmptySampleError(f"Region {region.segment_id} has an empty shadow band side")
    return s_in, s_out


def valid_patch_positions(allowed: BinaryMask, size):
    """
    Top-left positions whose size x size footprint lies fully inside ``allowed``.

    Returns:
        np.ndarray: K x 2 (row, col) positions in raster order
    """
    height, width = allowed.shape
    if height < size or width < size:
        return np.empty((0, 2), dtype=np.int64)
    integral = np.pad(allowed.data.astype(np.int64).cumsum(axis=0).cumsum(axis=1), ((1, 0), (1, 0)))
    sums = integral[size:, size:] - integral[:-size, size:] - integral[size:, :-size] + integral[:-size, :-size]
    rows, cols = np.nonzero(sums == size * size)
    return np.stack([rows, cols], axis=1).astype(np.int64)


def _draw_patches(image, positions, count, size, rng, region_id):
    if len(positions) == 0:
        return []
    picks = rng.choice(len(positions), size=min(count, len(positions)), replace=False)
    return [extract_patch(image, positions[i], size, region_id) for i in picks]


def sample_patches(image: RgbImage, region: MaterialRegion, shadow: BinaryMask, cfg: SamplerConfig):
    """
    Draw patches inside the eroded region, on each side of the shadow.

    Up to cfg.patch_count top-left positions per side are drawn uniformly
    without replacement. The region RNG is seeded with cfg.region_seed so the
    draw does not depend on the order regions are processed in. A side with
    no valid position yields an empty list.

    Returns:
        tuple[list[Patch], list[Patch]]: (P_in, P_out)
    """
    image.require_same_shape(shadow, "shadow mask")
    core = erode(region.mask, cfg.material_erosion)
    rng = np.random.default_rng(cfg.region_seed(region.segment_id))
    in_positions = valid_patch_positions(core & shadow, cfg.patch_size)
    out_positions = valid_patch_positions(core - shadow, cfg.patch_size)
    p_in = _draw_patches(image, in_positions, cfg.patch_count, cfg.patch_size, rng, region.segment_id)
    p_out = _draw_patches(image, out_positions, cfg.patch_count, cfg.patch_size, rng, region.segment_id)
    return p_in, p_out


def build_sample_sets(image: RgbImage, labels: LabelMap, shadow: BinaryMask, cfg: SamplerConfig,
                      mode=SampleMode.POOLED, regions=None) -> list[EdgeSampleSet]:
    """
    Build the supervision sets of an image.

    Args:
        image (RgbImage): Image the colors are read from
        labels (LabelMap): Material segmentation
        shadow (BinaryMask): Shadow mask
        cfg (SamplerConfig): Sampling settings
        mode (SampleMode): One set per region, or one pooled set (region_id 0)
            whose pixel sets are the union over regions; patches keep their
            region tag in both modes
        regions (list[MaterialRegion] | None): Precomputed extract_regions result

    Returns:
        list[EdgeSampleSet]: Empty when no region qualifies
    """
    image.require_same_shape(shadow, "shadow mask")
    image.require_same_shape(labels, "label map")
    if regions is None:
        regions = extract_regions(labels, shadow, cfg)
    if not regions:
        return []

    per_region = []
    for region in regions:
        s_in, s_out = sample_edge_pixels(image, region, shadow, cfg)
        p_in, p_out = sample_patches(image, region, shadow, cfg)
        per_region.append(EdgeSampleSet(region.segment_id, s_in, s_out, p_in, p_out))

    if SampleMode(mode) == SampleMode.PER_REGION:
        return per_region
    return [EdgeSampleSet(
        EdgeSampleSet.POOLED_ID,
        PixelSet.concat(s.s_in for s in per_region),
        PixelSet.concat(s.s_out for s in per_region),
        [p for s in per_region for p in s.p_in],
        [p for s in per_region for p in s.p_out],
    )]
