"""
Tests for the parsers module.

This module contains tests for verbosity flags, command detection, the
per-command argument parsers and the configuration builders.
"""
import pytest

from core.commands import Command
from models.refine_config import LossVariant, RelightMode, StepRule
from utils.parsers import (
    band_se_from_args, build_parser, detect_command, parse_args, parse_triplet, refine_config_from_args,
    sampler_from_args, split_verbosity,
)

REFINE_REQUIRED = ["--image", "in.png", "--mask", "mask.png", "--out", "out.png"]


class TestSplitVerbosity:
    """Test suite for the split_verbosity function."""

    def test_no_flags(self):
        """Test that arguments pass through untouched."""
        assert split_verbosity(["cdd", "--bins", "8"]) == (0, ["cdd", "--bins", "8"])

    def test_repeated_verbose(self):
        """Test that -v counts and -vv counts twice."""
        assert split_verbosity(["-v", "bench", "--verbose"])[0] == 2
        assert split_verbosity(["-vv", "bench"]) == (2, ["bench"])

    def test_quiet(self):
        """Test that -q selects errors only."""
        assert split_verbosity(["bench", "-q"]) == (-1, ["bench"])


class TestDetectCommand:
    """Test suite for the detect_command function."""

    def test_detect_known_command(self):
        """Test detecting a known command."""
        assert detect_command("refine") == (Command.REFINE, None)

    def test_detect_command_case_insensitive(self):
        """Test that command detection is case-insensitive."""
        command, _ = detect_command("  Extract-Edges ")
        assert command == Command.EXTRACT_EDGES

    def test_detect_unknown_with_suggestion(self):
        """Test that a typo suggests close commands."""
        command, message = detect_command("refin")
        assert command is None
        assert "Did you mean" in message
        assert "refine" in message

    def test_detect_unknown_without_suggestion(self):
        """Test an unrelated word."""
        command, message = detect_command("xyzzy")
        assert command is None
        assert "help" in message

    def test_detect_empty(self):
        """Test that an empty token is unknown."""
        command, _ = detect_command("")
        assert command is None


class TestParseTriplet:
    """Test suite for the parse_triplet function."""

    def test_three_numbers(self):
        """Test parsing with spaces."""
        assert parse_triplet("0.5, 1,2") == (0.5, 1.0, 2.0)

    @pytest.mark.parametrize("text", ["1,2", "1,2,3,4", "a,b,c"])
    def test_rejected(self, text):
        """Test that anything but three numbers is rejected."""
        with pytest.raises(ValueError):
            parse_triplet(text, "--w")


class TestParseArgs:
    """Test suite for build_parser and parse_args."""

    def test_refine_defaults(self):
        """Test the defaults of the refine flags."""
        ns = parse_args(Command.REFINE, REFINE_REQUIRED)
        assert ns.iters == 200
        assert ns.step == 0.05
        assert ns.fd_step == 1e-3
        assert ns.blend == 5
        assert ns.weights == "1,1,0.1,10"
        assert ns.mode == "global"
        assert ns.variant == "pixels-and-patches"
        assert ns.step_rule == "sgd"
        assert ns.segmentation is None
        assert not ns.fallback_single_segment

    def test_unknown_flag(self):
        """Test that an unknown flag raises ValueError instead of exiting."""
        with pytest.raises(ValueError, match="unrecognized arguments"):
            parse_args(Command.CDD, ["--image", "a.png", "--annotation", "b.png", "--bogus"])

    def test_missing_required(self):
        """Test that a missing required flag raises ValueError."""
        with pytest.raises(ValueError, match="required"):
            parse_args(Command.SYNTH, ["--image", "a.png"])

    def test_bad_choice(self):
        """Test that an invalid mode is rejected."""
        with pytest.raises(ValueError, match="invalid choice"):
            parse_args(Command.REFINE, REFINE_REQUIRED + ["--mode", "local"])

    @pytest.mark.parametrize("command, required", [
        (Command.EXTRACT_EDGES, ["--image", "a.png", "--mask", "m.png", "--out-viz", "v.png", "--out-json", "e.json"]),
        (Command.REFINE, REFINE_REQUIRED),
    ])
    def test_segmentation_excludes_fallback(self, command, required):
        """Test that --segmentation and --fallback-single-segment are mutually exclusive."""
        with pytest.raises(ValueError, match="not allowed with"):
            parse_args(command, required + ["--segmentation", "l.png", "--fallback-single-segment"])

    def test_bench_has_fallback_only(self):
        """Test that bench takes the fallback but no per-image segmentation."""
        ns = parse_args(Command.BENCH, ["--manifest", "m.json", "--fallback-single-segment"])
        assert ns.fallback_single_segment
        with pytest.raises(ValueError, match="unrecognized arguments"):
            parse_args(Command.BENCH, ["--manifest", "m.json", "--segmentation", "l.png"])

    def test_help_has_no_parser(self):
        """Test that help takes no flags."""
        with pytest.raises(KeyError):
            build_parser(Command.HELP)


class TestConfigBuilders:
    """Test suite for the configuration builders."""

    def test_refine_config(self):
        """Test that every refine flag reaches the configuration."""
        ns = parse_args(Command.REFINE, REFINE_REQUIRED + [
            "--iters", "7", "--step", "0.1", "--mode", "per-region", "--variant", "pixels", "--weights", "1,0,0,2",
            "--step-rule", "adam", "--bins", "64", "--w-max", "4", "--no-nonshadow", "--seed", "9",
            "--tau-band", "5", "--min-area", "10", "--band-radius", "2", "--band-iters", "1",
        ])
        cfg = refine_config_from_args(ns)
        assert cfg.max_iters == 7
        assert cfg.step == 0.1
        assert cfg.mode == RelightMode.PER_REGION
        assert cfg.variant == LossVariant.PIXELS
        assert cfg.weights.as_tuple() == (1.0, 0.0, 0.0, 2.0)
        assert cfg.step_rule == StepRule.ADAM
        assert cfg.bins == 64
        assert cfg.w_max == 4.0
        assert cfg.use_nonshadow is False
        assert cfg.rng_seed == 9
        assert cfg.sampler.rng_seed == 9
        assert cfg.sampler.tau_band == 5
        assert cfg.sampler.min_region_area == 10
        assert cfg.sampler.band_se.radius == 2
        assert cfg.sampler.band_se.iterations == 1

    def test_sampler_config(self):
        """Test the sampler builder of extract-edges."""
        ns = parse_args(Command.EXTRACT_EDGES, [
            "--image", "a.png", "--mask", "m.png", "--out-viz", "v.png", "--out-json", "e.json",
            "--patch-count", "3", "--patch-size", "8",
        ])
        cfg = sampler_from_args(ns)
        assert cfg.patch_count == 3
        assert cfg.patch_size == 8

    def test_band_se(self):
        """Test the annotate band element."""
        ns = parse_args(Command.ANNOTATE, ["--mask", "m.png", "--out", "a.json", "--band-radius", "3"])
        se = band_se_from_args(ns)
        assert (se.radius, se.iterations) == (3, 2)

    def test_invalid_config_value(self):
        """Test that out of range values are rejected by the configuration."""
        ns = parse_args(Command.REFINE, REFINE_REQUIRED + ["--iters", "-1"])
        with pytest.raises(ValueError, match="max_iters"):
            refine_config_from_args(ns)
