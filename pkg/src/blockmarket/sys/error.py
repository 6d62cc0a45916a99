"""
Filename: error.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines possible system-level error types.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""


class BadEngineConfiguration(Exception):
    """Exception raised when the engine configuration is incomplete or inconsistent.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, expected, present):
        self.message = f"Bad engine configuration - expected: {expected}\tpresent: {present}"
        super().__init__(self.message)
