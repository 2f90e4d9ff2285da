"""
Command line parsing: subcommand detection, per-command argument parsers and
the builders that turn parsed flags into configuration objects.
"""
import argparse
from difflib import get_close_matches

from colorama import Fore, Style

from core.commands import Command
from models.loss import LossWeights
from models.refine_config import LossVariant, RefineConfig, RelightMode, StepRule
from models.relight import RelightParams
from models.sampler_config import SamplerConfig
from models.structuring_element import StructuringElement

VERBOSE_FLAGS = ("-v", "--verbose")
QUIET_FLAGS = ("-q", "--quiet")


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises ValueError instead of exiting the process."""

    def error(self, message):
        raise ValueError(f"{self.prog}: {message}")


def split_verbosity(argv):
    """
    Remove the logging flags from an argument list.

    Returns:
        tuple[int, list[str]]: (verbosity, remaining arguments); -v may repeat
        (or be written -vv) and -q sets -1
    """
    verbosity = 0
    rest = []
    for token in argv:
        if token in VERBOSE_FLAGS:
            verbosity += 1
        elif token.startswith("-v") and set(token[1:]) == {"v"}:
            verbosity += len(token) - 1
        elif token in QUIET_FLAGS:
            verbosity = -1
        else:
            rest.append(token)
    return verbosity, rest


def detect_command(user_command):
    """
    Detect the subcommand named by the first argument.

    Returns:
        tuple[Command | None, str | None]: The command, or None with a message
        suggesting close matches
    """
    user_command = (user_command or "").strip().lower()
    for cmd in Command:
        if cmd.value == user_command:
            return cmd, None

    if suggestions := get_close_matches(user_command, [c.value for c in Command], n=3, cutoff=0.5):
        return None, (
            f"❔ Unknown command {Fore.CYAN}{user_command}{Style.RESET_ALL}. "
            f"Did you mean: {Fore.YELLOW}{', '.join(suggestions)}{Style.RESET_ALL}?"
        )
    return None, (
        f"⚠️  Unknown command {Fore.CYAN}{user_command}{Style.RESET_ALL}. "
        f"Use {Fore.YELLOW}{Command.HELP}{Style.RESET_ALL} to review available commands."
    )


def parse_triplet(text, name="value"):
    """
    Parse "a,b,c" into three floats.

    Raises:
        ValueError: If there are not exactly three numbers
    """
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise ValueError(f"{name} must be three comma separated numbers, got '{text}'")
    return tuple(float(p) for p in parts)


def _add_band_flags(parser):
    parser.add_argument("--band-radius", type=int, default=StructuringElement.DEFAULT_RADIUS)
    parser.add_argument("--band-iters", type=int, default=StructuringElement.DEFAULT_ITERATIONS)


def _add_sampler_flags(parser):
    parser.add_argument("--min-area", type=int, default=SamplerConfig.MIN_REGION_AREA)
    parser.add_argument("--tau-band", type=int, default=SamplerConfig.TAU_BAND)
    _add_band_flags(parser)
    parser.add_argument("--patch-count", type=int, default=SamplerConfig.PATCH_COUNT)
    parser.add_argument("--patch-size", type=int, default=SamplerConfig.PATCH_SIZE)
    parser.add_argument("--seed", type=int, default=0)


def _add_segmentation_flags(parser):
    """A label map or the whole-frame fallback, never both."""
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--segmentation")
    group.add_argument("--fallback-single-segment", action="store_true")


def _add_refine_flags(parser):
    _add_sampler_flags(parser)
    parser.add_argument("--mode", choices=[m.value for m in RelightMode], default=RelightMode.GLOBAL.value)
    parser.add_argument("--variant", choices=[v.value for v in LossVariant],
                        default=LossVariant.PIXELS_AND_PATCHES.value)
    parser.add_argument("--iters", type=int, default=RefineConfig.MAX_ITERS)
    parser.add_argument("--step", type=float, default=RefineConfig.STEP)
    parser.add_argument("--fd-step", type=float, default=RefineConfig.FD_STEP)
    parser.add_argument("--step-rule", choices=[s.value for s in StepRule], default=StepRule.SGD.value)
    parser.add_argument("--weights", default=str(LossWeights()))
    parser.add_argument("--blend", type=int, default=RefineConfig.BLEND_WIDTH)
    parser.add_argument("--bins", type=int, default=RefineConfig.BINS)
    parser.add_argument("--w-max", type=float, default=RelightParams.W_MAX)
    parser.add_argument("--no-nonshadow", action="store_true")


def build_parser(command):
    """
    Build the argument parser of a subcommand.

    Args:
        command (Command): Subcommand

    Returns:
        CommandParser: Parser raising ValueError on bad input

    Raises:
        KeyError: If the command takes no flags
    """
    parser = CommandParser(prog=str(command), add_help=False)
    if command == Command.EXTRACT_EDGES:
        parser.add_argument("--image", required=True)
        parser.add_argument("--mask", required=True)
        _add_segmentation_flags(parser)
        _add_sampler_flags(parser)
        parser.add_argument("--out-viz", required=True)
        parser.add_argument("--out-json", required=True)
    elif command == Command.REFINE:
        parser.add_argument("--image", required=True)
        parser.add_argument("--mask", required=True)
        _add_segmentation_flags(parser)
        _add_refine_flags(parser)
        parser.add_argument("--out", required=True)
        parser.add_argument("--report")
    elif command == Command.CDD:
        parser.add_argument("--image", required=True)
        parser.add_argument("--annotation", required=True)
        parser.add_argument("--bins", type=int, default=RefineConfig.BINS)
    elif command == Command.BENCH:
        parser.add_argument("--manifest", required=True)
        parser.add_argument("--refine", action="store_true")
        parser.add_argument("--out-dir", default="refined")
        parser.add_argument("--report")
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--fallback-single-segment", action="store_true")
        _add_refine_flags(parser)
    elif command == Command.SYNTH:
        parser.add_argument("--image", required=True)
        parser.add_argument("--mask", required=True)
        parser.add_argument("--w", required=True)
        parser.add_argument("--b", default="0,0,0")
        parser.add_argument("--penumbra", type=int, default=0)
        parser.add_argument("--noise", type=float, default=0.0)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", required=True)
    elif command == Command.ANNOTATE:
        parser.add_argument("--mask", required=True)
        _add_band_flags(parser)
        parser.add_argument("--out", required=True)
        parser.add_argument("--image")
    else:
        raise KeyError(command)
    return parser


def parse_args(command, args):
    """Parse the arguments of a subcommand (raises ValueError on bad input)."""
    return build_parser(command).parse_args(list(args))


def band_se_from_args(ns) -> StructuringElement:
    return StructuringElement(ns.band_radius, ns.band_iters)


def sampler_from_args(ns) -> SamplerConfig:
    """Build a SamplerConfig from parsed sampler flags."""
    return SamplerConfig(
        band_se=band_se_from_args(ns),
        min_region_area=ns.min_area,
        tau_band=ns.tau_band,
        patch_count=ns.patch_count,
        patch_size=ns.patch_size,
        rng_seed=ns.seed,
    )


def refine_config_from_args(ns) -> RefineConfig:
    """Build a RefineConfig from parsed refine flags."""
    return RefineConfig(
        max_iters=ns.iters,
        step=ns.step,
        fd_step=ns.fd_step,
        blend_width=ns.blend,
        weights=LossWeights.parse(ns.weights),
        mode=ns.mode,
        variant=ns.variant,
        bins=ns.bins,
        w_max=ns.w_max,
        use_nonshadow=not ns.no_nonshadow,
        sampler=sampler_from_args(ns),
        rng_seed=ns.seed,
        step_rule=ns.step_rule,
    )
