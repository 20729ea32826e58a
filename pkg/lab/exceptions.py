EXIT_CONTRACT = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class LabError(Exception):
    """Base for every error a lab operation reports to its caller."""

    exit_code = EXIT_CONTRACT


class PrefixViolation(LabError):
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f'{first or "^"} is a prefix of {second or "^"}')


class NotClosedWorld(LabError):
    pass


class NoHaltingInput(LabError):
    pass


class KraftExceeded(LabError):
    def __init__(self, length, spent):
        self.length = length
        self.spent = spent
        super().__init__(f'no free node for a codeword of length {length} (Kraft sum spent {spent})')


class OracleBoundTooSmall(LabError):
    def __init__(self, bound, required):
        self.bound = bound
        self.required = required
        super().__init__(f'oracle bound {bound} is below the required {required}')


class InvalidPrefix(LabError):
    pass


class InconsistentOracle(LabError):
    pass


class BudgetExhaustedError(LabError):
    exit_code = EXIT_BUDGET
