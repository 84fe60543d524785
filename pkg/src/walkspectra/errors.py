"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph construction or graph operation."""


class FormatError(GraphError):
    """Malformed graph file or string.

    Carries an optional 1-based line number for diagnostics.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SpectralError(RuntimeError):
    """Spectral computation could not be performed as requested."""


class SeriesError(ValueError):
    """Series evaluation outside its certified domain."""


class HypothesisNotMet(SeriesError):
    """A theorem hypothesis (spectral radius above max host degree) fails.

    Distinguished from plain failures so callers can report 'inapplicable'
    rather than 'wrong'.
    """
