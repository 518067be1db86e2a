"""Exception and warning types shared across the library."""


class NcwalkError(Exception):
    """Base class for all library errors."""


class ParseError(NcwalkError):
    """A dataset file could not be parsed; message carries file and line."""


class StructuralError(NcwalkError):
    """A dataset violates structural constraints (bad indices, cross-graph edges)."""


class ContractViolation(NcwalkError):
    """An operation was called outside its contract."""


class BudgetExceededError(NcwalkError):
    """An enumeration, backtracking, or memory budget was exhausted."""


class WalkCountOverflowWarning(RuntimeWarning):
    """Walk counts left the exact-integer range of double precision (> 2^52)."""
