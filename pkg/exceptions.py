"""
Exception hierarchy shared by every module.
The CLI maps these onto exit codes (input errors -> 1).
"""


class CensusError(Exception):
    """Base class for all library errors"""


class InputDomainError(CensusError, ValueError):
    """An argument lies outside the documented domain of an operation"""


class ArithmeticOverflowError(CensusError, ArithmeticError):
    """An exact integer computation left the configured safe range"""


class TorsionDetectedError(CensusError):
    """A stalk group carries torsion where a free group was required"""


class CertificateError(CensusError):
    """A build_P certificate clause failed"""

    def __init__(self, clause: str, offending, message: str = ""):
        self.clause = clause
        self.offending = offending
        super().__init__(message or f"certificate clause ({clause}) failed for {offending}")
