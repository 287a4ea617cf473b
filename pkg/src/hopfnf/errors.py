"""Exception hierarchy for hopfnf."""


class HopfnfError(Exception):
    """Base class for all hopfnf errors."""


class NotInSpan(HopfnfError):
    """A polynomial vector field has a monomial outside the X/Y span.

    Raised by projection; on bracket results this signals a closure
    violation, i.e. an internal bug.
    """


class BadLinearPart(HopfnfError):
    """The field's grade-0 part is not exactly the rotation Y_10."""


class NotGeneric(HopfnfError):
    """rank of the parameter-linear coefficient matrix is below N0."""

    def __init__(self, rank, n0):
        super().__init__(f"parameter-linear matrix has rank {rank}, need {n0}")
        self.rank = rank
        self.n0 = n0


class NoParametricDimension(HopfnfError):
    """No nonzero resonant amplitude coefficient within the truncation degree."""


class DimensionMismatch(HopfnfError):
    """Parameter count does not match what the requested reduction needs."""


class DegenerateInput(HopfnfError):
    """Nonparametric input without a nonzero resonant amplitude term."""


class NonResonantTerm(HopfnfError):
    """Polar conversion saw a basis term outside the resonant families."""


class SystemSyntaxError(HopfnfError):
    """Malformed input file; carries 1-based line/column diagnostics."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class LinearPartError(HopfnfError):
    """Input system's linear part at mu=0 is not exactly (y, -x)."""


class UndeclaredParameter(HopfnfError):
    """An identifier in an equation is not x, y, or a declared parameter."""


class TruncationOverflow(HopfnfError):
    """An input term's grade exceeds the engine truncation degree."""
