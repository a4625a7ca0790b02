"""Exception types shared across the package."""


class TvkdeError(Exception):
    """Base class for all package errors."""


class ParameterError(TvkdeError, ValueError):
    """Invalid bandwidth, discount factor, or other tuning parameter."""


class DataError(TvkdeError, ValueError):
    """Bad or insufficient input data (files, series, observations)."""


class GridError(TvkdeError, ValueError):
    """Evaluation grids that are empty, non-monotone, or mismatched."""


class SelectionError(TvkdeError, RuntimeError):
    """Parameter search failed to produce a finite optimum."""
