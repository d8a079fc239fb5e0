"""Exception types shared across the package."""


class FinalgError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(FinalgError):
    """Malformed signature, or an operation used against the wrong signature."""


class SignatureMismatchError(FinalgError):
    """Two algebras were combined but their signatures differ."""


class TableError(FinalgError):
    """An operation table has the wrong shape or an out-of-range entry."""


class UnboundVariableError(FinalgError):
    """A term or formula was evaluated with a free variable missing from the environment."""


class NotAHomomorphismError(FinalgError):
    """A map between algebras fails the homomorphism condition."""

    def __init__(self, message, op=None, args=None):
        super().__init__(message)
        self.op = op
        self.args = args


class NotACongruenceError(FinalgError):
    """A partition is not compatible with the operations of its algebra."""


class SizeCapExceededError(FinalgError):
    """An exhaustive enumeration was requested above the configured size cap."""


class DegenerateConstantsError(FinalgError):
    """The designated zero and one tuples coincide, so center analysis is refused."""


class DPViolationError(FinalgError):
    """A complementary factor pair fails to determine a unique central tuple (or vice versa)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BooleanStructureError(FinalgError):
    """The center operations fail to produce unique solutions or break Boolean laws."""


class PairNotRelatedError(FinalgError):
    """A certificate was requested for a pair outside the generated congruence."""


class CertificateError(FinalgError):
    """A chain certificate is malformed (bad arity, bad slot, or bad indices)."""


class SheafError(FinalgError):
    """A presheaf fails a sheaf-side precondition (functoriality, cover shape, gluing)."""


class PrincipalityError(FinalgError):
    """A factor congruence is not the principal congruence the sheaf construction needs."""


class LatticeError(FinalgError):
    """Meet/join tables do not describe a bounded distributive lattice."""


class ParseError(FinalgError):
    """Syntax error in a term, formula, or input file."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class FormulaShapeError(FinalgError):
    """A formula does not have the free-variable shape an operation requires."""
