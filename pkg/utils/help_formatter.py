"""
Help formatter with usage lines and examples.
"""
# flake8: noqa: E501
from colorama import Fore, Style

from core.commands import Command
from models.loss import LossWeights
from models.refine_config import RefineConfig
from .parsers import build_parser

# Formatting constants
LINE_WIDTH = 70

COMMAND_HELP = {
    Command.EXTRACT_EDGES: (
        "Find material-consistent shadow edges and write a visualization and the sample sets",
        "extract-edges --image in.png --mask mask.png --segmentation labels.png --out-viz edges.png --out-json edges.json",
    ),
    Command.REFINE: (
        "Refine a shadow-removal result with the relighting model",
        "refine --image result.png --mask mask.png --segmentation labels.png --out refined.png --report refine.json",
    ),
    Command.CDD: (
        "Print the CDD (x1000) of an image on an annotation",
        "cdd --image result.png --annotation edges.png",
    ),
    Command.BENCH: (
        "Evaluate (or refine and evaluate) every entry of a manifest",
        "bench --manifest data.json --refine --out-dir refined --report report.csv",
    ),
    Command.SYNTH: (
        "Darken an image inside a mask to synthesize a shadow",
        "synth --image free.png --mask mask.png --w 0.5,0.5,0.5 --b 0,0,0 --out shadowed.png",
    ),
    Command.ANNOTATE: (
        "Write the inner / outer band annotation of a shadow mask",
        "annotate --mask mask.png --out edges.png --image in.png",
    ),
}


def _header_line(color=Fore.CYAN, char="═"):
    """Generate a header line with specified color and character."""
    return f"{color}{char * LINE_WIDTH}{Style.RESET_ALL}"


def _section_line(color=Fore.YELLOW, char="─"):
    """Generate a section separator line with specified color and character."""
    return f"{color}{char * LINE_WIDTH}{Style.RESET_ALL}"


def _usage(command):
    return build_parser(command).format_usage().replace("usage: ", "").strip()


def format_help_full():
    """
    Format the full command reference.

    Returns:
        str: Formatted help text
    """
    help_text = [_header_line(), f"{Fore.CYAN}{' ' * 20}{Style.BRIGHT}📚 COMMAND REFERENCE{Style.RESET_ALL}", _header_line() + "\n"]

    for command, (summary, example) in COMMAND_HELP.items():
        help_text.append(f"  {Fore.GREEN}{command}{Style.RESET_ALL}")
        help_text.append(f"    {summary}")
        help_text.append(f"    {Fore.CYAN}Usage:{Style.RESET_ALL} {_usage(command)}")
        help_text.append(f"    {Fore.YELLOW}Example:{Style.RESET_ALL} {example}\n")

    help_text.append(_section_line())
    help_text.append(f"{Fore.YELLOW}{Style.BRIGHT}💡 TIPS{Style.RESET_ALL}")
    help_text.append(_section_line() + "\n")
    help_text.append(f"  • Loss weights are {Fore.MAGENTA}l1,l2,l3,l4{Style.RESET_ALL} (default {LossWeights()}); any of them may be 0")
    help_text.append(f"  • Refinement runs at most {RefineConfig.MAX_ITERS} iterations by default ({Fore.BLUE}--iters{Style.RESET_ALL})")
    help_text.append(f"  • Add {Fore.BLUE}-v{Style.RESET_ALL} / {Fore.BLUE}-vv{Style.RESET_ALL} for progress logs, {Fore.BLUE}-q{Style.RESET_ALL} for errors only")
    help_text.append(f"  • Use {Fore.CYAN}{Command.HELP}{Style.RESET_ALL} {Fore.MAGENTA}<command>{Style.RESET_ALL} for the flags of one command")
    help_text.append(f"\n{_header_line()}\n")
    return "\n".join(help_text)


def format_help_command(command):
    """
    Format the help of a single subcommand, including every flag and default.

    Args:
        command (Command): Subcommand to describe
    """
    summary, example = COMMAND_HELP[command]
    parser = build_parser(command)
    help_text = [_header_line(), f"{Fore.CYAN}{Style.BRIGHT}{str(command).upper()}{Style.RESET_ALL}", _header_line()]
    help_text.append(f"  {summary}")
    help_text.append(f"  {Fore.CYAN}Usage:{Style.RESET_ALL} {_usage(command)}\n")
    for action in parser._actions:
        flag = ", ".join(action.option_strings)
        if action.required:
            detail = f"{Fore.MAGENTA}required{Style.RESET_ALL}"
        elif action.choices:
            detail = f"one of {', '.join(action.choices)} (default {action.default})"
        elif action.const is True:
            detail = "switch"
        else:
            detail = f"default {action.default}"
        help_text.append(f"    {Fore.GREEN}{flag}{Style.RESET_ALL}  {detail}")
    help_text.append(f"\n  {Fore.YELLOW}Example:{Style.RESET_ALL} {example}")
    help_text.append(f"{_header_line()}\n")
    return "\n".join(help_text)
