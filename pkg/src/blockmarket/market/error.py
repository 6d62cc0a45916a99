"""
Filename: error.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines possible market-level error types.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""


class SaltTooShort(Exception):
    """Exception raised when a reserve-price commitment uses a short salt.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, expected, present):
        self.message = f"Salt too short - expected: >= {expected} bytes\tpresent: {present}"
        super().__init__(self.message)


class IllegalTransition(Exception):
    """Exception raised when a trade lifecycle moves along an edge it does not have.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, source, target):
        self.message = f"Illegal lifecycle transition - from: {source}\tto: {target}"
        super().__init__(self.message)


class BadFixedPoint(Exception):
    """Exception raised when a score component cannot be read as a fixed-point number.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, text):
        self.message = f"Not a fixed-point number - text: {text!r}"
        super().__init__(self.message)
