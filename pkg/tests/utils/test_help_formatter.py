"""
Tests for the help formatter.
"""
from core.commands import Command
from utils.help_formatter import COMMAND_HELP, format_help_command, format_help_full


def test_full_help_lists_every_command():
    """Test that each subcommand appears with its usage."""
    text = format_help_full()
    for command in COMMAND_HELP:
        assert str(command) in text
    assert "--manifest" in text
    assert "1,1,0.1,10" in text


def test_command_help_lists_flags_and_defaults():
    """Test the per-command flag list."""
    text = format_help_command(Command.REFINE)
    assert "--step-rule" in text
    assert "one of adam, sgd (default adam)" in text
    assert "default 200" in text
    assert "required" in text


def test_every_command_has_help():
    """Test that all flag-taking commands are documented."""
    documented = set(COMMAND_HELP)
    assert documented == {c for c in Command if c not in (Command.HELP, Command.HELP_ALT)}
