"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI's JSON
error reports.
"""


class TateError(Exception):
    code = "error"


class ConductorTooSmall(TateError):
    code = "conductor_too_small"


class SizeOverflow(TateError):
    code = "size_overflow"


class ZeroDivisorInverse(TateError):
    code = "zero_divisor_inverse"


class BadOrder(TateError):
    code = "bad_order"


class DivisionByZeroPoly(TateError):
    code = "division_by_zero_poly"


class PoleAtPoint(TateError):
    code = "pole_at_point"


class ZeroDilation(TateError):
    code = "zero_dilation"


class NotMultiplicative(TateError):
    code = "not_multiplicative"


class ZeroArgument(TateError):
    code = "zero_argument"


class FormalLambda(TateError):
    code = "formal_lambda"


class SupportContainsZero(TateError):
    code = "support_contains_zero"


class UnramifiedCharacter(TateError):
    code = "unramified_character"


class PreconditionViolated(TateError):
    code = "precondition_violated"


class NotSchwartz(TateError):
    code = "not_schwartz"


class BadParameter(TateError):
    code = "bad_parameter"


class DenominatorDivisibleByP(TateError):
    code = "denominator_divisible_by_p"


class PrecisionInconclusive(TateError):
    code = "precision_inconclusive"


class ParseError(TateError):
    code = "parse"
