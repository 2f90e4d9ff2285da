"""Command definitions for the shadow edge toolkit."""

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__


class Command(StrEnum):
    """Enumeration of all available subcommands."""
    EXTRACT_EDGES = "extract-edges"
    REFINE = "refine"
    CDD = "cdd"
    BENCH = "bench"
    SYNTH = "synth"
    ANNOTATE = "annotate"
    HELP = "help"
    HELP_ALT = "?"
