"""
Error taxonomy for depfca.
Library code raises these; only the CLI maps them to exit codes.
"""


class DepFCAError(Exception):
    """Base class for every error raised by depfca"""


class IngestionError(DepFCAError):
    """CSV could not be turned into a Relation"""


class ContractError(DepFCAError, ValueError):
    """A precondition of an operation was violated"""


class CapacityError(DepFCAError):
    """A configured size cap was exceeded"""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class InvariantViolation(DepFCAError):
    """A structural assumption was falsified on concrete data"""


class UsageError(DepFCAError):
    """Bad command-line usage"""
