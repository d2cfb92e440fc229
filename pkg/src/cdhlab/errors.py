class CdhError(Exception):
    exit_code = 2


class InputError(CdhError, ValueError):
    """Malformed input: bad JSON, bad graph, violated precondition."""

    exit_code = 2


class FieldError(InputError):
    pass


class HypothesisError(InputError):
    """A theorem/lemma hypothesis does not hold for the given input."""


class NotSymmetricError(InputError):
    pass


class CapExceeded(CdhError, RuntimeError):
    exit_code = 3


class VerificationError(CdhError, AssertionError):
    """An oracle disagreed with a computed result."""

    exit_code = 1


class InternalConsistencyError(VerificationError):
    pass
