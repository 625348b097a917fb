"""Exception types shared across the package."""


class XilabError(Exception):
    """Base class for every error raised by xilab."""


class DomainError(XilabError, ValueError):
    """An argument lies outside the region where the object is defined."""


class ToleranceUnreachable(XilabError):
    """A series or quadrature cannot meet the requested tolerance within its caps."""


class NoSignChange(XilabError):
    """A bracketing root search was given an interval without a sign change."""


class ConsistencyError(XilabError):
    """Two independent evaluation routes disagree beyond their error estimates."""


class BranchLost(XilabError):
    """A continued zero crossing disappeared along the path."""


class NoCrossing(XilabError):
    """No sign change of G_R was found where one was required to start."""


class ConfigError(XilabError):
    """A run configuration is malformed or names something that does not exist."""
