"""Exception hierarchy.  Each class carries the stable diagnostic code the CLI prints."""


class CadError(Exception):
    code = "E_INTERNAL"


class InvalidInput(CadError, ValueError):
    code = "E_INVALID"


class ZeroPolynomial(InvalidInput):
    code = "E_ZERO_POLY"


class EmptyInput(InvalidInput):
    code = "E_EMPTY_INPUT"


class UnknownVariable(InvalidInput):
    code = "E_UNKNOWN_VAR"


class ParseError(InvalidInput):
    code = "E_PARSE"


class NotDivisible(CadError, ArithmeticError):
    code = "E_NOT_DIVISIBLE"


class DuplicateInput(CadError):
    code = "E_DUP_INPUT"


class SchemaError(CadError, ValueError):
    code = "E_SCHEMA"


class DimensionMismatch(InvalidInput):
    code = "E_DIMENSION"


class StaleCell(CadError, LookupError):
    code = "E_STALE_CELL"
