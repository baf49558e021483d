"""Exception type shared by the whole package.

Every error carries a short machine-readable ``code`` (for example
``"DIM_MISMATCH"`` or ``"TOO_LARGE"``) next to the human-readable message.
The command-line layer maps codes onto exit statuses, and tests assert on
codes rather than on message wording.
"""


class EdlkitError(Exception):
    """Error with a stable machine-readable code."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self):
        return "%s: %s" % (self.code, super().__str__())


# Codes raised by the solver layer; the CLI maps these to exit status 3,
# everything else to exit status 2.
SOLVER_CODES = frozenset({"SOLVER_FAIL", "MAX_ITER", "INFEASIBLE"})
