"""
Color histograms, 1-D Earth Mover's Distance, the refinement losses and
the Color Distribution Difference (CDD) metric.

Histograms are per channel; EMD is computed per channel with bin k placed at
k / B and averaged over R, G and B, so values live on the unit color scale.
"""
import math

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist
from scipy.stats import wasserstein_distance

from models.errors import DimensionMismatchError, EmptySampleError, HistogramError
from models.histogram import ColorHistogram
from models.image import BinaryMask, RgbImage
from models.loss import LossComponents, LossReport, LossWeights
from models.pixel_set import Patch, PixelSet
from models.report import REPORT_SCALE

DESCRIPTOR_BINS = 8
GRADIENT_RANGE = math.sqrt(2.0)
DESCRIPTOR_SIZE = 3 + 3 + DESCRIPTOR_BINS


def histogram(pixels: PixelSet, bins=ColorHistogram.DEFAULT_BINS) -> ColorHistogram:
    """
    Per-channel histogram of a pixel set, normalized by the pixel count.

    Args:
        pixels (PixelSet): Colors to count
        bins (int): Bins per channel, at least 2

    Returns:
        ColorHistogram: Normalized histogram, flagged empty for an empty set
    """
    if bins < 2:
        raise HistogramError(f"Histogram needs at least 2 bins, got {bins}")
    return _histogram_of(pixels.colors, bins)


def _histogram_of(colors, bins):
    if len(colors) == 0:
        return ColorHistogram(np.zeros((3, bins)), empty=True)
    index = np.minimum((colors * bins).astype(np.int64), bins - 1)
    counts = np.stack([np.bincount(index[:, c], minlength=bins) for c in range(3)])
    return ColorHistogram(counts / len(colors))


def _require_normalized(values, name):
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        raise HistogramError(f"{name} must be a vector of at least 2 bins")
    if np.any(values < 0) or abs(values.sum() - 1.0) > ColorHistogram.SUM_TOLERANCE:
        raise HistogramError(f"{name} must be non-negative and sum to 1")
    return values


def emd_1d(a, b) -> float:
    """
    Earth Mover's Distance between two normalized B-bin histograms.

    Bin k sits at k / B, so the result equals (1/B) * sum_k |CDF_a(k) - CDF_b(k)|.

    Raises:
        HistogramError: If an input is not normalized or the sizes differ
    """
    a = _require_normalized(a, "first histogram")
    b = _require_normalized(b, "second histogram")
    if a.size != b.size:
        raise HistogramError(f"Histogram sizes differ: {a.size} vs {b.size}")
    positions = np.arange(a.size) / a.size
    return float(wasserstein_distance(positions, positions, a, b))


def channel_emd(a: ColorHistogram, b: ColorHistogram) -> float:
    """
    Mean of the per-channel EMDs of two color histograms.

    Raises:
        HistogramError: If either histogram is empty or bin counts differ
    """
    a.require_nonempty()
    b.require_nonempty()
    if a.bins != b.bins:
        raise HistogramError(f"Histogram bin counts differ: {a.bins} vs {b.bins}")
    return float(np.mean([emd_1d(a.channel(c), b.channel(c)) for c in range(3)]))


def _require_pixels(*sets):
    for pixels in sets:
        if len(pixels) == 0:
            raise EmptySampleError("Pixel set is empty")


def mean_min_distance(inside, outside) -> float:
    """Mean over ``inside`` colors of the Euclidean distance to the nearest ``outside`` color."""
    distances, _ = cKDTree(outside).query(inside, k=1)
    return float(np.mean(distances))


def l_distance(s_in: PixelSet, s_out: PixelSet) -> float:
    """
    RGB distance loss: mean over S_in of the distance to the closest S_out color.

    Raises:
        EmptySampleError: If either set is empty
    """
    _require_pixels(s_in, s_out)
    return mean_min_distance(s_in.colors, s_out.colors)


def l_distribution(s_in: PixelSet, s_out: PixelSet, bins=ColorHistogram.DEFAULT_BINS) -> float:
    """
    RGB distribution loss: channel EMD between the histograms of S_in and S_out.

    Raises:
        EmptySampleError: If either set is empty
    """
    _require_pixels(s_in, s_out)
    return channel_emd(histogram(s_in, bins), histogram(s_out, bins))


def patch_descriptor(patch: Patch) -> np.ndarray:
    """
    14-component texture descriptor of a patch.

    Per-channel mean (3), per-channel standard deviation (3) and an 8-bin
    histogram of the luminance gradient magnitude (forward differences, zero
    at the last row / column), normalized to sum 1. Luminance is the channel
    mean; magnitudes are binned over [0, sqrt(2)].

    Raises:
        ValueError: If the patch is smaller than 2x2
    """
    if patch.size < 2:
        raise ValueError(f"Patch descriptor needs at least a 2x2 patch, got {patch.size}")
    return describe_pixels(patch.pixels)


def describe_pixels(pixels) -> np.ndarray:
    """Descriptor of a raw size x size x 3 array, see patch_descriptor."""
    means = pixels.mean(axis=(0, 1))
    stds = pixels.std(axis=(0, 1))
    luminance = pixels.mean(axis=2)
    grad_x = np.zeros_like(luminance)
    grad_y = np.zeros_like(luminance)
    grad_x[:, :-1] = luminance[:, 1:] - luminance[:, :-1]
    grad_y[:-1, :] = luminance[1:, :] - luminance[:-1, :]
    magnitude = np.hypot(grad_x, grad_y)
    index = np.minimum((magnitude / GRADIENT_RANGE * DESCRIPTOR_BINS).astype(np.int64), DESCRIPTOR_BINS - 1)
    gradient_hist = np.bincount(index.ravel(), minlength=DESCRIPTOR_BINS) / index.size
    return np.concatenate([means, stds, gradient_hist])


def l_texture(p_in, p_out, distance=None) -> float:
    """
    Patch texture loss: mean over P_in of the distance to the closest P_out patch.

    Args:
        p_in (list[Patch]): Patches inside the shadow
        p_out (list[Patch]): Patches outside the shadow
        distance (callable | None): ``distance(p, q) -> float`` replacing the
            default descriptor distance, e.g. an external perceptual scorer

    Raises:
        EmptySampleError: If either list is empty
    """
    if not p_in or not p_out:
        raise EmptySampleError("Patch list is empty")
    if distance is None:
        inside = np.stack([patch_descriptor(p) for p in p_in])
        outside = np.stack([patch_descriptor(q) for q in p_out])
        return float(np.mean(cdist(inside, outside).min(axis=1)))
    scores = np.array([[distance(p, q) for q in p_out] for p in p_in], dtype=np.float64)
    return float(np.mean(scores.min(axis=1)))


def l_nonshadow(output: RgbImage, input_image: RgbImage, shadow: BinaryMask) -> float:
    """
    Mean squared error between output and input over the non-shadow pixels.

    Raises:
        DimensionMismatchError: If the rasters differ in size
        EmptySampleError: If the shadow mask covers the whole image
    """
    input_image.require_same_shape(output, "output image")
    input_image.require_same_shape(shadow, "shadow mask")
    outside = ~shadow.data
    if not np.any(outside):
        raise EmptySampleError("Shadow mask leaves no non-shadow pixel")
    diff = output.data[outside] - input_image.data[outside]
    return float(np.mean(diff * diff))


def _mean_of(values):
    present = [v for v in values if v is not None]
    return (float(np.mean(present)), True) if present else (0.0, False)


def l_total(components, weights: LossWeights, nonshadow=0.0, use_nonshadow=True) -> LossReport:
    """
    Average loss components over the sample sets that measured them and weight them.

    Each term is averaged over the components where it is not None, so a
    region without patches only contributes to L_distance and L_distribution.
    In pooled configurations the pooled set (region 0) carries the pixel
    losses and the regions carry L_per.

    Args:
        components (list[LossComponents]): Measured terms per sample set
        weights (LossWeights): Term weights
        nonshadow (float): L_nonshadow of the current output
        use_nonshadow (bool): Whether the weighted L_nonshadow enters the total

    Returns:
        LossReport: Averages, total and the per-region breakdown

    Raises:
        EmptySampleError: If no component measured any term
    """
    components = list(components)
    distance, has_distance = _mean_of(c.l_distance for c in components)
    distribution, has_distribution = _mean_of(c.l_distribution for c in components)
    per, has_per = _mean_of(c.l_per for c in components)
    if not (has_distance or has_distribution or has_per):
        raise EmptySampleError("No region produced a valid loss")
    total = weights.l1 * distance + weights.l2 * distribution + weights.l3 * per
    if use_nonshadow:
        total += weights.l4 * nonshadow
    return LossReport(
        distance, distribution, per, nonshadow, total,
        per_region={c.region_id: c.to_dict() for c in components},
        nonshadow_enabled=use_nonshadow,
    )


def cdd(s: PixelSet, ns: PixelSet, bins=ColorHistogram.DEFAULT_BINS) -> float:
    """
    Color Distribution Difference between shadow-side and non-shadow-side pixels.

    Returns the raw value; reports multiply it by REPORT_SCALE.

    Raises:
        EmptySampleError: If either side is empty
    """
    if len(s) == 0 or len(ns) == 0:
        raise EmptySampleError("CDD annotation side is empty")
    return channel_emd(histogram(s, bins), histogram(ns, bins))


def cdd_aggregate(values):
    """
    Mean and population variance of raw CDD values, both scaled by REPORT_SCALE.

    Returns:
        tuple[float, float]: (mean x1000, variance x1000)

    Raises:
        ValueError: If values is empty
    """
    values = np.asarray(list(values), dtype=np.float64)
    if values.size == 0:
        raise ValueError("Cannot aggregate an empty list of CDD values")
    mean = float(np.mean(values))
    variance = float(np.mean((values - mean) ** 2))
    return mean * REPORT_SCALE, variance * REPORT_SCALE


def mae_regions(output: RgbImage, ground_truth: RgbImage, shadow: BinaryMask):
    """
    Mean absolute error on the 0-255 scale over shadow, non-shadow and all pixels.

    Returns:
        dict[str, float | None]: Keys "shadow", "nonshadow", "all"; None for an empty region

    Raises:
        DimensionMismatchError: If the rasters differ in size
    """
    if output.shape != ground_truth.shape or output.shape != shadow.shape:
        raise DimensionMismatchError("Output, ground truth and shadow mask must share dimensions")
    error = np.abs(output.data - ground_truth.data) * 255.0
    result = {}
    for name, selector in (("shadow", shadow.data), ("nonshadow", ~shadow.data),
                           ("all", np.ones(shadow.shape, dtype=bool))):
        result[name] = float(np.mean(error[selector])) if np.any(selector) else None
    return result


def components_for_sets(sample_sets, with_pixels=True, with_patches=True, bins=ColorHistogram.DEFAULT_BINS,
                        distance=None):
    """
    Measure loss components of sample sets as they are (no relighting).

    Pixel losses are measured on every set; L_per per region from the
    patch groups, skipped where a side has no patch.

    Returns:
        list[LossComponents]
    """
    components = []
    for sample in sample_sets:
        if with_pixels:
            components.append(LossComponents(
                sample.region_id, l_distance(sample.s_in, sample.s_out),
                l_distribution(sample.s_in, sample.s_out, bins),
            ))
        if with_patches:
            for region_id, (p_in, p_out) in sample.patch_groups().items():
                if not p_in or not p_out:
                    continue
                per = l_texture(p_in, p_out, distance)
                match = next((c for c in components if c.region_id == region_id), None)
                if match is not None:
                    match.l_per = per
                else:
                    components.append(LossComponents(region_id, l_per=per))
    return components
