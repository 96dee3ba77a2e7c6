"""Exception hierarchy shared by every module of the package."""


class CausalError(Exception):
    """Base class for all errors raised by actualcause."""


class ModelError(CausalError):
    """A query referenced a model in a way the model does not support."""


class InvalidModelError(ModelError):
    """Raised when an operation needs a valid model and validation found problems."""

    def __init__(self, findings):
        self.findings = list(findings)
        lines = "; ".join(str(f) for f in self.findings[:5])
        more = "" if len(self.findings) <= 5 else f" (+{len(self.findings) - 5} more)"
        super().__init__(f"invalid model: {lines}{more}")


class SignatureError(CausalError):
    """A variable or value is not part of the model's signature."""


class ParseError(CausalError):
    """Parse failure with a 1-based line and column."""

    def __init__(self, message, line=1, column=1, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class WitnessError(CausalError):
    """A witness is not well formed for the candidate it is checked against."""


class SearchLimitExceeded(CausalError):
    """The witness search space is larger than the configured guard."""

    def __init__(self, size, guard):
        self.size = size
        self.guard = guard
        super().__init__(f"search space of {size} (W, w', x') triples exceeds guard {guard}")


class OracleRefusal(CausalError):
    """The brute-force oracle declines instances beyond its hard ceiling."""


class RankingError(CausalError):
    """A ranking function is malformed."""


class SingletonViolation(CausalError):
    """Verification mode found an actual cause with more than one conjunct."""

    def __init__(self, causes):
        self.causes = list(causes)
        shown = ", ".join(" & ".join(f"{k}={v}" for k, v in c.items()) for c in self.causes[:3])
        super().__init__(f"multi-conjunct actual cause(s) found: {shown}")
