"""
Decorators for the command handlers.

Handlers return a (message, exit code) pair; the decorator turns expected
failures into a colored error message with exit code 1.
"""

from functools import wraps

from colorama import Fore, Style

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def error_message(text):
    return f"❌ Error: {Fore.RED}{text}{Style.RESET_ALL}"


def input_error(func):
    """
    Decorator to handle expected errors and provide user-friendly messages.

    Handles the following exceptions:
    - ValueError (including every toolkit error): the exception message
    - FileNotFoundError: "File not found: <name>"
    - KeyError: "Missing value: <key>"
    - IndexError: the exception message

    Any other exception propagates.

    Args:
        func: Handler to be decorated

    Returns:
        function: Decorated handler returning (message, exit code)
    """
    @wraps(func)
    def inner(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValueError as e:
            return error_message(str(e)), EXIT_ERROR
        except FileNotFoundError as e:
            return error_message(f"File not found: {e.filename or e}"), EXIT_ERROR
        except KeyError as e:
            return error_message(f"Missing value: {e.args[0] if e.args else e}"), EXIT_ERROR
        except IndexError as e:
            return error_message(str(e)), EXIT_ERROR
    return inner
