"""
Filename: error.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines possible scenario and harness error types.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""


class ParseError(Exception):
    """Exception raised when a scenario file cannot be parsed.

    Attributes:
        line -- 1-based line number, 0 for whole-file problems
        message -- explanation of the error
    """

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        self.message = f"Scenario parse error - line: {line}\treason: {reason}"
        super().__init__(self.message)


class UnknownActor(ParseError):
    """Exception raised when a scenario line references an undeclared node.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, line, actor):
        self.actor = actor
        super().__init__(line, f"unknown actor '{actor}'")


class BadParameter(ParseError):
    """Exception raised when a scenario parameter is missing, unknown or out of range.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, line, name, reason):
        self.name = name
        super().__init__(line, f"bad parameter '{name}': {reason}")
