"""Exception hierarchy shared across the package.

Every error the CLI surfaces carries an ``exit_code`` so command handlers can
map failures to the documented process exit codes without inspecting types.
"""


class GainchartError(Exception):
    exit_code = 1


class ParseError(GainchartError):
    """Malformed problem file, rational literal, or CLI argument."""

    exit_code = 2


class UncontrollableError(GainchartError):
    """The pair (F, G) is not controllable."""

    exit_code = 3

    def __init__(self, rank, n):
        super().__init__(
            f"pair is not controllable: controllability matrix has rank {rank} < {n}"
        )
        self.rank = rank
        self.n = n


class InfeasibleError(GainchartError):
    """No feedback gain can assign the requested similarity class."""

    exit_code = 3


class ChartDomainError(GainchartError):
    """Coordinates fall outside the chart's open domain."""

    exit_code = 4


class NotInChartError(GainchartError):
    """The gain lies in the class manifold but not in this chart."""

    exit_code = 4


class NotInClassError(GainchartError):
    """F + G K does not have the prescribed invariant polynomials."""

    exit_code = 5


class VerificationError(GainchartError):
    """Internal self-check failed; indicates a bug, not a user error."""

    exit_code = 1
