"""Exception hierarchy shared by the sorters, the kernel model and the harness."""


class RankBenchError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateElements(RankBenchError, ValueError):
    """Two equal keys would be written to the same output slot."""


class IndexViolation(RankBenchError, IndexError):
    """Merge bounds are out of range or mis-ordered."""


class InvalidSize(RankBenchError, ValueError):
    """A dataset size is not usable (e.g. zero elements)."""


class ConfigMismatch(RankBenchError, ValueError):
    """Kernel geometry does not cover the input exactly."""


class VerificationFailure(RankBenchError):
    """A sorter returned something other than the identity permutation.

    ``reports`` carries the reports for sizes that did verify, so a caller
    can still emit partial results.
    """

    def __init__(self, failures, reports=()):
        self.failures = list(failures)
        self.reports = list(reports)
        parts = [f"{f.algorithm} n={f.n} sort error {f.index}" for f in self.failures]
        super().__init__("; ".join(parts) or "verification failed")
