"""
Simple table formatters using tabulate.
"""
# flake8: noqa: E501
from colorama import Fore, Style
from tabulate import tabulate

from models.report import EntryResult, scaled

DASH = f"{Fore.WHITE}-{Style.RESET_ALL}"


def _number(value, color):
    return DASH if value is None else f"{color}{value:.2f}{Style.RESET_ALL}"


def format_region_table(regions):
    """
    Format material-consistent regions as a table.

    Args:
        regions: List of MaterialRegion objects

    Returns:
        str: Formatted table string
    """
    if not regions:
        return f"{Fore.YELLOW}No material-consistent shadow edge found.{Style.RESET_ALL}"
    headers = [
        f"{Fore.CYAN}Segment{Style.RESET_ALL}",
        f"{Fore.GREEN}Area{Style.RESET_ALL}",
        f"{Fore.RED}Inner band{Style.RESET_ALL}",
        f"{Fore.GREEN}Outer band{Style.RESET_ALL}",
    ]
    rows = [[r.segment_id, r.area, r.in_band_count, r.out_band_count] for r in regions]
    return tabulate(rows, headers=headers, tablefmt="rounded_outline")


def _status(entry):
    color = {EntryResult.STATUS_OK: Fore.GREEN, EntryResult.STATUS_NO_MC_EDGE: Fore.YELLOW}.get(entry.status, Fore.RED)
    return f"{color}{entry.status}{Style.RESET_ALL}"


def format_report_table(report):
    """
    Format an evaluation report: one row per entry and the aggregate rows.

    CDD values are shown x1000.

    Returns:
        str: Formatted table string
    """
    if not report.entries:
        return f"{Fore.YELLOW}Manifest has no entries.{Style.RESET_ALL}"
    headers = [
        f"{Fore.CYAN}Id{Style.RESET_ALL}",
        f"{Fore.MAGENTA}CDD before{Style.RESET_ALL}",
        f"{Fore.GREEN}CDD after{Style.RESET_ALL}",
        f"{Fore.YELLOW}Status{Style.RESET_ALL}",
        f"{Fore.BLUE}Flags{Style.RESET_ALL}",
    ]
    rows = [
        [entry.id, _number(scaled(entry.cdd_before), Fore.MAGENTA), _number(scaled(entry.cdd_after), Fore.GREEN),
         _status(entry), ", ".join(entry.flags) or DASH]
        for entry in report.entries
    ]
    for label, index in (("mean", 0), ("var", 1)):
        before = report.before[index] if report.before else None
        after = report.after[index] if report.after else None
        rows.append([f"{Style.BRIGHT}{label}{Style.RESET_ALL}", _number(before, Fore.MAGENTA), _number(after, Fore.GREEN), "", ""])
    return tabulate(rows, headers=headers, tablefmt="rounded_outline")
