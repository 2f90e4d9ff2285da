"""
Test-time refinement of a shadow-removal result.

A per-channel affine relighting model (scale w, offset b) is applied inside
the shadow mask and optimized per image against the edge-consistency losses
measured on the material-consistent edge samples of that image.
"""
import logging
import math

import numpy as np
from scipy import ndimage

from models.errors import NoMaterialEdgeError, OptimizationError
from models.image import BinaryMask, LabelMap, RgbImage
from models.pixel_set import Patch, PixelSet, gather_colors
from models.refine_config import LossVariant, RefineConfig, RefineResult, RelightMode, StepRule
from models.region import EdgeSampleSet
from models.relight import RelightParams
from models.sampler_config import SampleMode
from .mc_edges import build_sample_sets, extract_regions
from .metrics import cdd, components_for_sets, l_nonshadow, l_total

logger = logging.getLogger(__name__)

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8
MAX_HALVINGS = 10


def blend_alpha(shadow: BinaryMask, blend_width) -> np.ndarray:
    """
    Relighting weight per pixel.

    0 outside the shadow; inside it ramps linearly with the Euclidean
    distance to the nearest non-shadow pixel and reaches 1 at ``blend_width``
    pixels. With blend_width 0 (or no non-shadow pixel) the mask itself is used.

    Returns:
        np.ndarray: H x W float64 weights in [0, 1]
    """
    inside = shadow.data
    if blend_width <= 0 or inside.all():
        return inside.astype(np.float64)
    distance = ndimage.distance_transform_edt(inside)
    return np.clip(distance / float(blend_width), 0.0, 1.0)


def relight_colors(colors, alpha, w, b):
    """
    Blend the affine relight of ``colors`` into the originals by ``alpha``.

    Pixels with alpha 1 take the relit value and pixels with alpha 0 keep
    their input value bit for bit.

    Args:
        colors (np.ndarray): ... x 3 input colors
        alpha (np.ndarray): Weights broadcastable against colors[..., :1]
        w, b (np.ndarray): Scale and offset broadcastable against colors
    """
    relit = np.clip(w * colors + b, 0.0, 1.0)
    blended = colors + alpha * (relit - colors)
    blended = np.where(alpha >= 1.0, relit, blended)
    return np.clip(blended, 0.0, 1.0)


def _parameter_table(params: RelightParams, regions):
    """Rows of (w, b): row 0 is the global fallback, row k the k-th region."""
    pairs = [(params.w, params.b)] + [params.for_region(r.segment_id) for r in regions]
    return np.stack([p[0] for p in pairs]), np.stack([p[1] for p in pairs])


def region_index_map(shape, regions) -> np.ndarray:
    """H x W map of the parameter row each pixel uses (0 = global fallback)."""
    index = np.zeros(shape, dtype=np.int64)
    for row, region in enumerate(regions, start=1):
        index[region.mask.data] = row
    return index


def apply_relight(input_image: RgbImage, shadow: BinaryMask, regions, params: RelightParams,
                  blend_width=RefineConfig.BLEND_WIDTH) -> RgbImage:
    """
    Apply the relighting model to an image.

    Each pixel gets clamp(w * in + b) blended by the penumbra weight; in
    per-region parameterization the (w, b) of the pixel's region is used and
    pixels outside every region use the global pair.

    Returns:
        RgbImage: Relit image
    """
    input_image.require_same_shape(shadow, "shadow mask")
    alpha = blend_alpha(shadow, blend_width)[:, :, None]
    table_w, table_b = _parameter_table(params, regions)
    index = region_index_map(shadow.shape, regions)
    return RgbImage(relight_colors(input_image.data, alpha, table_w[index], table_b[index]))


def synth_shadow(input_image: RgbImage, mask: BinaryMask, w_dark, b_dark=(0.0, 0.0, 0.0), penumbra=0,
                 noise_sd=0.0, seed=0) -> RgbImage:
    """
    Darken an image inside a mask to produce a synthetic shadow.

    With penumbra 0 and no noise this is the exact inverse of apply_relight
    with w = 1 / w_dark (and the matching offset).

    Args:
        input_image (RgbImage): Shadow-free image
        mask (BinaryMask): Shadow region
        w_dark (sequence): Per-channel scale in (0, 1]
        b_dark (sequence): Per-channel offset
        penumbra (int): Blend ramp width in pixels
        noise_sd (float): Standard deviation of added Gaussian noise
        seed (int): Noise seed

    Raises:
        ValueError: If a w_dark channel is outside (0, 1] or noise_sd is negative
    """
    w_dark = np.asarray(w_dark, dtype=np.float64).reshape(3)
    b_dark = np.asarray(b_dark, dtype=np.float64).reshape(3)
    if np.any(w_dark <= 0) or np.any(w_dark > 1):
        raise ValueError("w_dark channels must lie in (0, 1]")
    if noise_sd < 0:
        raise ValueError("noise_sd must be non-negative")
    input_image.require_same_shape(mask, "shadow mask")
    alpha = blend_alpha(mask, penumbra)[:, :, None]
    darkened = relight_colors(input_image.data, alpha, w_dark, b_dark)
    if noise_sd > 0:
        rng = np.random.default_rng(seed)
        darkened = np.clip(darkened + rng.normal(0.0, noise_sd, darkened.shape), 0.0, 1.0)
    return RgbImage(darkened)


class _PixelSamples:
    """Fixed coordinates of a pixel set with the inputs needed to relight them."""

    def __init__(self, pixels: PixelSet, support, index):
        rows, cols = pixels.coords[:, 0], pixels.coords[:, 1]
        self.coords = pixels.coords
        self.colors = pixels.colors
        self.alpha = support[rows, cols][:, None]
        self.index = index[rows, cols]

    def relit(self, table_w, table_b) -> PixelSet:
        return PixelSet(self.coords, relight_colors(self.colors, self.alpha, table_w[self.index], table_b[self.index]))


class _PatchSamples:
    """Fixed patch windows with the inputs needed to relight them."""

    def __init__(self, patch: Patch, support, index):
        row, col = patch.top_left
        window = (slice(row, row + patch.size), slice(col, col + patch.size))
        self.patch = patch
        self.alpha = support[window][:, :, None]
        self.index = index[window]

    def relit(self, table_w, table_b) -> Patch:
        pixels = relight_colors(self.patch.pixels, self.alpha, table_w[self.index], table_b[self.index])
        return Patch(self.patch.top_left, self.patch.size, pixels, self.patch.region_id)


class _EdgeSamples:
    """One EdgeSampleSet whose pixels and patches can be relit."""

    def __init__(self, sample: EdgeSampleSet, support, index):
        self.region_id = sample.region_id
        self.s_in = _PixelSamples(sample.s_in, support, index)
        self.s_out = _PixelSamples(sample.s_out, support, index)
        self.p_in = [_PatchSamples(p, support, index) for p in sample.p_in]
        self.p_out = [_PatchSamples(q, support, index) for q in sample.p_out]

    def relit(self, table_w, table_b) -> EdgeSampleSet:
        return EdgeSampleSet(
            self.region_id,
            self.s_in.relit(table_w, table_b),
            self.s_out.relit(table_w, table_b),
            [p.relit(table_w, table_b) for p in self.p_in],
            [q.relit(table_w, table_b) for q in self.p_out],
        )


class RefineContext:
    """
    Everything the objective needs, fixed once per image.

    Sample coordinates come from mc_edges; every objective evaluation relights
    the input colors at those coordinates with the fitted model, i.e. at full
    strength on every shadow pixel. The penumbra ramp only shapes the rendered
    output, so the losses see exactly the correction the parameters describe.

    Attributes:
        input_image (RgbImage), shadow (BinaryMask), regions (list[MaterialRegion])
        sample_sets (list[EdgeSampleSet]): Sets matching the loss variant
        cfg (RefineConfig)
        patch_distance (callable | None): Replacement patch distance for L_per
    """

    def __init__(self, input_image, shadow, regions, sample_sets, cfg: RefineConfig, patch_distance=None):
        self.input_image = input_image
        self.shadow = shadow
        self.regions = list(regions)
        self.sample_sets = list(sample_sets)
        self.cfg = cfg
        self.patch_distance = patch_distance

        support = blend_alpha(shadow, 0)
        index = region_index_map(shadow.shape, self.regions)
        self.samples = [_EdgeSamples(s, support, index) for s in self.sample_sets]


def build_context(input_image: RgbImage, shadow: BinaryMask, labels: LabelMap, cfg: RefineConfig,
                  regions=None, patch_distance=None) -> RefineContext:
    """
    Extract the MC regions and the sample sets the configured variant needs.

    Raises:
        NoMaterialEdgeError: If no region qualifies
    """
    if regions is None:
        regions = extract_regions(labels, shadow, cfg.sampler)
    if not regions:
        raise NoMaterialEdgeError()
    mode = SampleMode.PER_REGION if cfg.variant == LossVariant.PER_MASK else SampleMode.POOLED
    sample_sets = build_sample_sets(input_image, labels, shadow, cfg.sampler, mode, regions)
    return RefineContext(input_image, shadow, regions, sample_sets, cfg, patch_distance)


def objective(params: RelightParams, context: RefineContext):
    """
    Total loss of the relit samples under the configured loss variant.

    per-mask: all three losses per region, averaged over regions.
    pixels: pooled L_distance and L_distribution only.
    pixels-and-patches: pooled pixel losses plus L_per per region.

    L_nonshadow is 0: the relight has no support outside the shadow mask.

    Returns:
        LossReport
    """
    cfg = context.cfg
    table_w, table_b = _parameter_table(params, context.regions)
    relit = [sample.relit(table_w, table_b) for sample in context.samples]
    components = components_for_sets(
        relit, with_patches=cfg.variant != LossVariant.PIXELS, bins=cfg.bins, distance=context.patch_distance,
    )
    return l_total(components, cfg.weights, 0.0, cfg.use_nonshadow)


def fd_gradient(func, x, step, active=None):
    """
    Central finite difference gradient of a scalar function.

    Args:
        func (callable): f(vector) -> float
        x (np.ndarray): Point of evaluation
        step (float): Difference step
        active (iterable[int] | None): Coordinates to differentiate, all by default

    Returns:
        np.ndarray: Gradient, zero on inactive coordinates
    """
    x = np.asarray(x, dtype=np.float64)
    grad = np.zeros_like(x)
    for j in (range(x.size) if active is None else active):
        forward = x.copy()
        backward = x.copy()
        forward[j] += step
        backward[j] -= step
        grad[j] = (func(forward) - func(backward)) / (2.0 * step)
    return grad


def _check_finite(report):
    if not math.isfinite(report.l_total):
        raise OptimizationError("Refinement loss is not finite; the input may be corrupt")


def _with_fallback(params: RelightParams, mode):
    """In per-region mode the global pair becomes the mean of the region pairs."""
    if mode != RelightMode.PER_REGION or not params.regions:
        return params
    ws = np.stack([w for w, _ in params.regions.values()])
    bs = np.stack([b for _, b in params.regions.values()])
    return RelightParams(ws.mean(axis=0), bs.mean(axis=0), params.regions)


def pooled_cdd(image: RgbImage, context: RefineContext):
    """CDD of an image on the pooled S_in / S_out coordinates of a context."""
    coords_in = np.concatenate([s.s_in.coords for s in context.sample_sets])
    coords_out = np.concatenate([s.s_out.coords for s in context.sample_sets])
    return cdd(gather_colors(image, coords_in), gather_colors(image, coords_out), context.cfg.bins)


def phase_coordinates(size, first_block, channel_offset):
    """
    Vector positions of the scale (offset 0) or offset (offset 3) channels.

    Args:
        size (int): Parameter vector length, 6 per block
        first_block (int): Index of the first optimized block
        channel_offset (int): 0 for w, 3 for b

    Returns:
        list[int]
    """
    return [6 * block + channel_offset + c for block in range(first_block, size // 6) for c in range(3)]


class _AdamDirection:
    """Moment-normalized descent direction, reset at the start of each phase."""

    def __init__(self, size):
        self.first = np.zeros(size)
        self.second = np.zeros(size)
        self.count = 0

    def __call__(self, grad):
        self.count += 1
        self.first = ADAM_BETA1 * self.first + (1 - ADAM_BETA1) * grad
        self.second = ADAM_BETA2 * self.second + (1 - ADAM_BETA2) * grad * grad
        m_hat = self.first / (1 - ADAM_BETA1 ** self.count)
        v_hat = self.second / (1 - ADAM_BETA2 ** self.count)
        return m_hat / (np.sqrt(v_hat) + ADAM_EPSILON)


def _gradient_direction(grad):
    """The gradient scaled so its largest coordinate is 1."""
    largest = float(np.max(np.abs(grad))) if grad.size else 0.0
    return grad / largest if largest > 0 else grad


def _backtrack(x, direction, current, layout, evaluate, cfg):
    """
    Projected step along -direction, halving the step until the loss drops.

    Returns:
        tuple[np.ndarray, LossReport] | None: Accepted point and its report,
        None when MAX_HALVINGS halvings find no decrease
    """
    step = cfg.step
    for _ in range(MAX_HALVINGS + 1):
        trial = layout.from_vector(x - step * direction).project(cfg.w_max)
        report = evaluate(trial)
        if report.l_total < current.l_total:
            return trial.to_vector(), report
        step /= 2.0
    return None


def optimize(input_image: RgbImage, shadow: BinaryMask, labels: LabelMap, cfg: RefineConfig,
             patch_distance=None) -> RefineResult:
    """
    Refine the relighting parameters of one image.

    Starts from identity parameters and runs projected gradient descent on
    central finite difference gradients, first on the scales w (offsets held
    at 0) and then on the offsets b. Every step starts at cfg.step for the
    largest coordinate, is projected into the w and b boxes and is halved
    until the loss decreases, so the loss trace is non-increasing and its
    last entry is the best iterate. A phase ends when no halving decreases
    the loss, when the relative loss change over cfg.convergence_window
    steps falls to cfg.convergence_tol, or when its share of cfg.max_iters
    is spent (the scale phase may use all but a quarter of the steps).

    The returned output carries the penumbra ramp of cfg.blend_width;
    cdd_before and cdd_after are measured on the pooled edge bands of the
    input and of the fitted relight.

    Args:
        input_image (RgbImage): Image to refine
        shadow (BinaryMask): Shadow mask
        labels (LabelMap): Material segmentation
        cfg (RefineConfig): Refinement settings
        patch_distance (callable | None): Replacement patch distance for L_per

    Returns:
        RefineResult

    Raises:
        NoMaterialEdgeError: If the image has no material-consistent shadow edge
        OptimizationError: If the loss becomes non-finite
    """
    context = build_context(input_image, shadow, labels, cfg, patch_distance=patch_distance)
    region_ids = [r.segment_id for r in context.regions] if cfg.mode == RelightMode.PER_REGION else []
    layout = RelightParams.identity(region_ids)
    size = len(layout.to_vector())
    # the global block only matters for pixels outside every region, which carry no samples
    first_block = 1 if region_ids else 0

    def evaluate(params):
        report = objective(params, context)
        _check_finite(report)
        return report

    def loss_at(vector):
        return evaluate(layout.from_vector(vector)).l_total

    x = layout.to_vector()
    trace = [evaluate(layout)]
    phases = (
        ("scale", phase_coordinates(size, first_block, 0), cfg.max_iters - cfg.max_iters // 4),
        ("offset", phase_coordinates(size, first_block, 3), cfg.max_iters),
    )
    iterations = 0
    converged = False

    for name, active, limit in phases:
        converged = False
        direction_of = _AdamDirection(size) if cfg.step_rule == StepRule.ADAM else _gradient_direction
        phase_start = len(trace) - 1
        while iterations < limit:
            grad = fd_gradient(loss_at, x, cfg.fd_step, active)
            accepted = _backtrack(x, direction_of(grad), trace[-1], layout, evaluate, cfg)
            if accepted is None:
                converged = True
                break
            x, report = accepted
            trace.append(report)
            iterations += 1
            logger.debug("%s step %d: %s", name, iterations, report)
            if len(trace) - 1 - phase_start >= cfg.convergence_window:
                previous = trace[-1 - cfg.convergence_window].l_total
                change = abs(previous - report.l_total) / max(abs(previous), np.finfo(float).tiny)
                if change <= cfg.convergence_tol:
                    converged = True
                    break
        logger.debug("%s phase ended after %d step(s), loss %.6f", name, iterations, trace[-1].l_total)

    params = _with_fallback(layout.from_vector(x), cfg.mode)
    fitted = apply_relight(input_image, shadow, context.regions, params, blend_width=0)
    output = apply_relight(input_image, shadow, context.regions, params, cfg.blend_width)
    cdd_before = pooled_cdd(input_image, context)
    cdd_after = pooled_cdd(fitted, context)
    nonshadow = l_nonshadow(output, input_image, shadow) if not shadow.data.all() else 0.0
    logger.info("refined in %d step(s): loss %.6f -> %.6f, CDD %.4f -> %.4f",
                iterations, trace[0].l_total, trace[-1].l_total, cdd_before, cdd_after)
    return RefineResult(output, params, trace, cdd_before, cdd_after, iterations, converged, len(trace) - 1,
                        output_nonshadow=nonshadow)
