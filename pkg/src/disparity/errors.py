"""Exception and warning types shared across the package.

Input problems (bad CSV rows, missing indices) derive from :class:`InputError`;
numerical failures on valid input derive from :class:`ComputationError`.  The
CLI maps the two families to different exit codes.
"""

from __future__ import annotations


class DisparityError(Exception):
    """Base class for every error raised by this package."""


class DataWarning(UserWarning):
    """Non-fatal data issue (skipped year, unexpected supra-region, ...)."""


class InputError(DisparityError, ValueError):
    pass


class ComputationError(DisparityError, ArithmeticError):
    pass


# -- panel ---------------------------------------------------------------


class MalformedRow(InputError):
    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateKey(InputError):
    def __init__(self, region: str, year: int) -> None:
        self.region = region
        self.year = year
        super().__init__(f"duplicate observation for ({region}, {year})")


class NonPositiveValue(InputError):
    def __init__(self, field: str, region: str, year: int) -> None:
        self.field = field
        self.region = region
        self.year = year
        super().__init__(f"{field} must be > 0 for ({region}, {year})")


class InconsistentSupraRegion(InputError):
    def __init__(self, region: str) -> None:
        self.region = region
        super().__init__(f"region {region!r} is assigned to more than one supra-region")


class InvalidGrowthIndex(InputError):
    def __init__(self, region: str, year: int, value: float) -> None:
        self.region = region
        self.year = year
        self.value = value
        super().__init__(
            f"growth_index for {region!r} must be 1.0 at its first year {year}, got {value!r}"
        )


class UnknownRegion(InputError, KeyError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown region {name!r}")

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


class EmptyYear(InputError, LookupError):
    def __init__(self, year: int) -> None:
        self.year = year
        super().__init__(f"no observations for year {year}")


# -- deflation -----------------------------------------------------------


class MissingIndex(InputError):
    def __init__(self, region: str, year: int) -> None:
        self.region = region
        self.year = year
        super().__init__(f"growth_index missing for ({region}, {year})")


class BaseYearOutOfRange(InputError):
    def __init__(self, base_year: int, year_range: tuple[int, int]) -> None:
        self.base_year = base_year
        self.year_range = year_range
        super().__init__(f"base year {base_year} outside panel range {year_range[0]}-{year_range[1]}")


class AlreadyDeflated(InputError):
    def __init__(self) -> None:
        super().__init__("panel is already at constant prices; refusing to deflate twice")


class NominalPanel(InputError):
    def __init__(self) -> None:
        super().__init__("panel is at nominal prices; deflate it first or pass allow_nominal=True")


# -- inequality / ratios -------------------------------------------------


class TooFewRegions(ComputationError):
    def __init__(self, count: int, needed: int = 2) -> None:
        self.count = count
        super().__init__(f"need at least {needed} regions, got {count}")


class DegenerateFit(ComputationError):
    pass


class ZeroPopulationShare(ComputationError):
    def __init__(self, region: str) -> None:
        self.region = region
        super().__init__(f"region {region!r} has zero population share but positive GDP share")


class EmptyGroup(ComputationError):
    def __init__(self, group: object) -> None:
        self.group = group
        super().__init__(f"group {group!r} has no members")


class NoCommonYears(ComputationError):
    def __init__(self, numerator: str, denominator: str) -> None:
        super().__init__(f"{numerator} and {denominator} share no observed year")


# -- rescaled range ------------------------------------------------------


class ZeroVariance(ComputationError):
    def __init__(self, tau: int) -> None:
        self.tau = tau
        super().__init__(f"window of length {tau} has zero standard deviation")


class TauOutOfRange(ComputationError):
    def __init__(self, tau: int, length: int) -> None:
        self.tau = tau
        super().__init__(f"tau={tau} must satisfy 2 <= tau <= {length}")


class InsufficientWindows(ComputationError):
    pass


class PeriodOutsideSeries(ComputationError):
    def __init__(self, start: int, end: int) -> None:
        self.start = start
        self.end = end
        super().__init__(f"period {start}-{end} lies outside the series")


class EmbeddingFailure(ComputationError):
    pass
