"""
Shadow Edge Toolkit - command line entry point.

Extracts material-consistent shadow edges, measures the Color Distribution
Difference of shadow-removal results and refines them with a per-image
relighting model.
"""
import sys

from colorama import Fore, Style, just_fix_windows_console

from core.commands import Command
from core.decorators import EXIT_OK, EXIT_USAGE
from core.handlers import annotate, bench, extract_edges, refine, show_cdd, synth
from utils.help_formatter import format_help_command, format_help_full, _header_line
from utils.log_setup import setup_logging
from utils.parsers import detect_command, split_verbosity


def get_help_output(args):
    """
    Generate help output for the whole tool or for one command.

    Args:
        args (list): Optional command name

    Returns:
        tuple: (help text, exit code)
    """
    if not args:
        return format_help_full(), EXIT_OK
    command, message = detect_command(args[0])
    if command is None or command in (Command.HELP, Command.HELP_ALT):
        return (message or format_help_full()), (EXIT_USAGE if message else EXIT_OK)
    return format_help_command(command), EXIT_OK


def get_output_by_command(command, args):
    """
    Run a command and return its result.

    Args:
        command (Command): Command to execute
        args (list): Command arguments

    Returns:
        tuple: (command output, exit code)
    """
    if command == Command.EXTRACT_EDGES:
        return extract_edges(args)
    elif command == Command.REFINE:
        return refine(args)
    elif command == Command.CDD:
        return show_cdd(args)
    elif command == Command.BENCH:
        return bench(args)
    elif command == Command.SYNTH:
        return synth(args)
    elif command == Command.ANNOTATE:
        return annotate(args)
    elif command in (Command.HELP, Command.HELP_ALT):
        return get_help_output(args)
    return f"Unknown command {Fore.CYAN}{command}{Style.RESET_ALL}.", EXIT_USAGE


def main(argv=None):
    """
    Run one command line invocation.

    Args:
        argv (list | None): Arguments without the program name, sys.argv by default

    Returns:
        int: Exit code (0 success, 1 handled error, 2 unknown command)
    """
    verbosity, args = split_verbosity(sys.argv[1:] if argv is None else argv)
    setup_logging(verbosity)
    if not args:
        print(f"{_header_line()}\n{Fore.CYAN}{Style.BRIGHT}🌗 Shadow edge toolkit{Style.RESET_ALL}")
        print(format_help_full())
        return EXIT_OK

    command, message = detect_command(args[0])
    if command is None:
        print(message)
        return EXIT_USAGE

    output, code = get_output_by_command(command, args[1:])
    print(output)
    return code


if __name__ == "__main__":
    just_fix_windows_console()
    sys.exit(main())
