"""
Filename: error.py
Author: Santiago Nunez-Corrales
Date: 2026-06-02
Version: 1.0
Description:
    This file defines possible policy-level error types.

License: Apache 2.0
Contact: nunezco2@illinois.edu
"""


class EmptyCandidates(Exception):
    """Exception raised when a pseudo-random selection is asked to pick from nothing.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, ad_id: bytes):
        self.message = f"No candidates to select from - advertisement: {ad_id.hex()[:8]}"
        super().__init__(self.message)


class BadRanking(Exception):
    """Exception raised when a ranking plug-in returns a score outside its input set.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, plugin, score):
        self.message = f"Ranking returned a score not in its input - plug-in: {plugin}\tscore: {score}"
        super().__init__(self.message)


class MissingPlugin(Exception):
    """Exception raised when a trade type needs a plug-in and none is bound.

    Attributes:
        message -- explanation of the error
    """

    def __init__(self, trade_type):
        self.message = f"No policy plug-in bound - trade type: {trade_type}"
        super().__init__(self.message)
