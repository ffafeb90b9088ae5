"""Exception hierarchy. Each family carries the process exit code the CLI reports."""


class CliqueRootError(Exception):
    exit_code = 1


class InputError(CliqueRootError):
    """Malformed input or an argument outside an operation's domain."""
    exit_code = 2


class GraphParseError(InputError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}")


class UnknownVertexError(InputError):
    def __init__(self, token: str, line: int = 0):
        self.token = token
        self.line = line
        where = f" (line {line})" if line else ""
        super().__init__(f"unknown vertex token '{token}'{where}")


class InvalidParameterError(InputError):
    pass


class NotACliqueError(InputError):
    pass


class EdgeAbsentError(InputError):
    pass


class PolynomialShapeError(InputError):
    pass


class EmptyVertexSetError(InputError):
    pass


class PreconditionError(CliqueRootError):
    """A framework hypothesis fails (the (n,d,lambda) operations need regularity)."""
    exit_code = 3


class NotRegularError(PreconditionError):
    def __init__(self, degrees: tuple):
        self.degrees = degrees
        super().__init__(
            f"graph is not regular (degrees range {min(degrees)}..{max(degrees)}); "
            "the (n,d,lambda) framework requires a d-regular graph")


class ResourceLimitError(CliqueRootError):
    exit_code = 4


class CliqueCapExceededError(ResourceLimitError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} cliques; use counting instead of enumeration")


class SamplingExhaustedError(ResourceLimitError):
    pass


class EigenvalueConvergenceError(ResourceLimitError):
    pass


class InstanceTooLargeError(ResourceLimitError):
    pass
