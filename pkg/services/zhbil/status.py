"""A context manager that turns service exceptions into exit codes."""

from contextlib import contextmanager

from services.zhbil.errors import (
    BudgetExceededError, FamilyError, InvalidParameterError,
    VerificationError)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET_EXCEEDED = 3


class Status:  # pylint: disable=R0903
    """Holds the exit code chosen inside a ``context`` block."""

    def __init__(self):
        self.code = EXIT_OK
        self.details = None

    def fail(self, code, details):
        """Record a failure."""
        self.code = code
        self.details = details


@contextmanager
def context(log, stderr=None):
    """Run a command, mapping exceptions to exit codes.

    Verification failures map to 1, invalid input to 2 and exhausted
    budgets to 3. The message goes to the log and to ``stderr``.
    """
    status = Status()
    try:
        yield status
    except VerificationError as err:
        status.fail(EXIT_VERIFICATION_FAILED, str(err))
    except (InvalidParameterError, FamilyError) as err:
        status.fail(EXIT_USAGE, str(err))
    except BudgetExceededError as err:
        status.fail(EXIT_BUDGET_EXCEEDED, str(err))
    except (OSError, ValueError) as err:
        status.fail(EXIT_USAGE, str(err))

    if status.code != EXIT_OK:
        log.error('exit %d: %s', status.code, status.details)
        if stderr is not None:
            stderr.write('error: {}\n'.format(status.details))
