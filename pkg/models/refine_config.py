"""
Refinement configuration and result.
"""
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

from .loss import LossWeights
from .sampler_config import SamplerConfig
from .relight import RelightParams


class RelightMode(StrEnum):
    """Parameterization of the relighting model."""
    GLOBAL = "global"
    PER_REGION = "per-region"


class LossVariant(StrEnum):
    """Which sample sets and loss terms drive the refinement."""
    PER_MASK = "per-mask"
    PIXELS = "pixels"
    PIXELS_AND_PATCHES = "pixels-and-patches"


class StepRule(StrEnum):
    """Descent direction of the refinement loop."""
    SGD = "sgd"
    ADAM = "adam"


class RefineConfig:
    """
    Settings of the test-time refinement loop.

    Attributes:
        max_iters (int): Maximum gradient steps (0 evaluates the identity only)
        step (float): Initial move of the largest coordinate per step (halved until the loss drops)
        fd_step (float): Central finite difference step
        blend_width (int): Penumbra ramp width of the rendered output in pixels (0 = hard mask)
        weights (LossWeights): Loss weights
        mode (RelightMode): Global or per-region parameters
        variant (LossVariant): Loss configuration
        convergence_tol (float): Relative loss change that stops the loop
        convergence_window (int): Iterations the relative change is measured over
        bins (int): Histogram bins for L_distribution and CDD
        w_max (float): Upper bound of the scale box
        use_nonshadow (bool): Add the weighted L_nonshadow term to the total
        sampler (SamplerConfig): Edge extraction and sampling settings
        rng_seed (int): Seed for all sampling
        step_rule (StepRule): "sgd" (steepest descent) or "adam" (moment-normalized direction)
    """
    MAX_ITERS = 200
    STEP = 0.05
    FD_STEP = 1e-3
    BLEND_WIDTH = 5
    CONVERGENCE_TOL = 1e-6
    CONVERGENCE_WINDOW = 10
    BINS = 256

    def __init__(
        self,
        max_iters=MAX_ITERS,
        step=STEP,
        fd_step=FD_STEP,
        blend_width=BLEND_WIDTH,
        weights=None,
        mode=RelightMode.GLOBAL,
        variant=LossVariant.PIXELS_AND_PATCHES,
        convergence_tol=CONVERGENCE_TOL,
        convergence_window=CONVERGENCE_WINDOW,
        bins=BINS,
        w_max=RelightParams.W_MAX,
        use_nonshadow=True,
        sampler=None,
        rng_seed=0,
        step_rule=StepRule.SGD,
    ):
        """
        Raises:
            ValueError: If a step, count or bound is out of range
        """
        if max_iters < 0:
            raise ValueError("max_iters must be non-negative")
        if step <= 0 or fd_step <= 0:
            raise ValueError("step and fd_step must be positive")
        if blend_width < 0:
            raise ValueError("blend_width must be non-negative")
        if convergence_tol < 0 or convergence_window < 1:
            raise ValueError("convergence_tol must be non-negative and convergence_window positive")
        if bins < 2:
            raise ValueError("bins must be at least 2")
        if w_max < RelightParams.W_MIN:
            raise ValueError(f"w_max must be at least {RelightParams.W_MIN}")
        self.max_iters = int(max_iters)
        self.step = float(step)
        self.fd_step = float(fd_step)
        self.blend_width = int(blend_width)
        self.weights = weights if weights is not None else LossWeights()
        self.mode = RelightMode(mode)
        self.variant = LossVariant(variant)
        self.convergence_tol = float(convergence_tol)
        self.convergence_window = int(convergence_window)
        self.bins = int(bins)
        self.w_max = float(w_max)
        self.use_nonshadow = bool(use_nonshadow)
        self.rng_seed = int(rng_seed)
        self.step_rule = StepRule(step_rule)
        self.sampler = sampler if sampler is not None else SamplerConfig(rng_seed=self.rng_seed)

    def to_dict(self):
        return {
            "max_iters": self.max_iters,
            "step": self.step,
            "fd_step": self.fd_step,
            "blend_width": self.blend_width,
            "weights": list(self.weights.as_tuple()),
            "mode": str(self.mode),
            "variant": str(self.variant),
            "convergence_tol": self.convergence_tol,
            "convergence_window": self.convergence_window,
            "bins": self.bins,
            "w_max": self.w_max,
            "use_nonshadow": self.use_nonshadow,
            "rng_seed": self.rng_seed,
            "step_rule": str(self.step_rule),
            "sampler": self.sampler.to_dict(),
        }


class RefineResult:
    """
    Outcome of one refinement run.

    Attributes:
        output (RgbImage): Relit image at the best iterate
        params (RelightParams): Best parameters
        loss_trace (list[LossReport]): Report per iteration, the initial one first
        cdd_before (float): CDD of the input on the pooled edge bands
        cdd_after (float): CDD of the fitted relight (without the penumbra ramp) on the same bands
        iterations_run (int): Accepted descent steps
        converged (bool): True if the last phase stopped before spending its steps
        best_index (int): Position of the returned iterate in loss_trace
        output_nonshadow (float): L_nonshadow of the output against the input
    """

    def __init__(self, output, params, loss_trace, cdd_before, cdd_after, iterations_run, converged, best_index=0,
                 output_nonshadow=0.0):
        if not loss_trace:
            raise ValueError("RefineResult requires a non-empty loss trace")
        self.output = output
        self.params = params
        self.loss_trace = list(loss_trace)
        self.cdd_before = float(cdd_before)
        self.cdd_after = float(cdd_after)
        self.iterations_run = int(iterations_run)
        self.converged = bool(converged)
        self.best_index = int(best_index)
        self.output_nonshadow = float(output_nonshadow)

    @property
    def best_loss(self):
        return self.loss_trace[self.best_index].l_total

    def to_dict(self):
        return {
            "params": self.params.to_dict(),
            "cdd_before": self.cdd_before,
            "cdd_after": self.cdd_after,
            "iterations_run": self.iterations_run,
            "converged": self.converged,
            "best_index": self.best_index,
            "output_nonshadow": self.output_nonshadow,
            "loss_trace": [report.to_dict() for report in self.loss_trace],
        }
