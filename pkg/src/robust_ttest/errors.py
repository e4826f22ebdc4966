"""Exception hierarchy shared by every module of the package."""


class RobustTError(Exception):
    """Base class for all errors raised by robust_ttest."""


class DomainError(RobustTError, ValueError):
    """An argument lies outside the domain of the operation."""


class InsufficientDataError(DomainError):
    """The sample is too small for the requested statistic."""


class DegenerateSampleError(DomainError):
    """The scale estimate (MAD or standard deviation) is zero."""


class SimulationIntegrityError(RobustTError):
    """Too many Monte Carlo replications had to be discarded."""


class TableError(RobustTError):
    """Base class for quantile-table problems."""


class TableMismatchError(TableError, DomainError):
    """A table was built for a different sample size or lacks a probability."""


class IncompatibleTableError(TableError):
    """A table file does not follow the supported schema version."""


class CorruptTableError(TableError):
    """A table file parses but violates the table invariants."""


class DataParseError(RobustTError):
    """A data file could not be turned into a sample."""
