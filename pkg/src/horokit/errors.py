"""Exception hierarchy shared by all modules."""


class HorokitError(Exception):
    pass


class ConfigurationError(HorokitError, ValueError):
    """Bad static configuration (e.g. algebra size out of range)."""


class ArgumentError(HorokitError, ValueError):
    """Input outside an operation's precondition."""


class ResourceError(HorokitError):
    """A configured size or memory limit would be exceeded."""


class DomainError(HorokitError, ValueError):
    """A divergent integral or violated analytic hypothesis."""


class ResolutionError(HorokitError):
    """Quadrature too coarse for the requested flow time."""


class FitRejected(HorokitError):
    """Samples too noisy for a decay fit."""


class InvariantError(HorokitError):
    """A verified invariant failed; `name` identifies which."""

    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)
