"""Exception types shared across the package."""


class AwgLinkError(Exception):
    """Base class for all awglink errors."""


class DomainError(AwgLinkError):
    """An input lies outside the supported numeric domain, or an
    evaluation produced a value that left it (vanishing denominator,
    non-positive squared index, inverted index contrast)."""


class NoBracketError(AwgLinkError):
    """Root-bracket endpoints evaluate to the same sign."""


class ConvergenceError(AwgLinkError):
    """An iterative solver exhausted its budget before reaching tolerance."""


class ConfigError(AwgLinkError):
    """Malformed, unknown, or inconsistent run configuration."""


class UnknownScenarioError(ConfigError):
    """Requested figure or scenario id is not registered."""
