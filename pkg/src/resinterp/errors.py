"""Exception hierarchy.

Every exception carries a ``kind`` string that the command-line front end
copies verbatim into its JSON error payload.  Subclasses of
:class:`InputError` are usage problems (exit code 2); subclasses of
:class:`MathError` are violated mathematical preconditions (exit code 3).
"""


class ResinterpError(Exception):
    kind = "error"


class InputError(ResinterpError, ValueError):
    kind = "input_error"


class ArityError(InputError):
    kind = "arity_mismatch"


class ParseError(InputError):
    """Malformed polynomial or scalar text.

    ``position`` is a 1-based byte offset into the offending string.
    """

    kind = "parse_error"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class UnknownIdentifierError(ParseError):
    kind = "unknown_identifier"


class SchemaError(InputError):
    """Problem file does not match the schema; ``pointer`` is a JSON pointer."""

    kind = "schema_error"

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


class DivisionError(InputError, ArithmeticError):
    kind = "division_error"


class MathError(ResinterpError):
    kind = "math_error"


class NotZeroDimensionalError(MathError):
    kind = "not_zero_dimensional"


class EmptyVarietyError(MathError):
    kind = "empty_variety"


class NodeNotAZeroError(MathError):
    kind = "node_not_a_zero"


class NonInvertibleError(MathError, ZeroDivisionError):
    kind = "non_invertible"


class IllPosedFunctionalError(MathError):
    kind = "ill_posed_functional"


class InvariantViolation(ResinterpError, AssertionError):
    """An internal identity failed; indicates a bug, never bad input."""

    kind = "invariant_violation"
