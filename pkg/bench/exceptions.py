"""Module with custom exceptions.

Classes:
    ConfigParseError: Error raised when a suite file or flag is invalid.
"""


class ConfigParseError(Exception):
    """Error raised when a suite file or command line flag is invalid."""
