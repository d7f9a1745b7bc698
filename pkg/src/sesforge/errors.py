"""Exception types shared across the package."""

from __future__ import annotations


class SesforgeError(Exception):
    """Base class for all errors raised by this package."""


class TermError(SesforgeError):
    """A term violates its well-formedness rules (bad IRI, bad literal)."""


class ParseError(SesforgeError):
    """Syntax error in an input document.

    ``line`` is 1-based when the source is textual, 0 when unknown.
    """

    def __init__(self, message: str, line: int = 0):
        self.line = line
        if line:
            super().__init__(f"line {line}: {message}")
        else:
            super().__init__(message)


class UnknownPrefixError(ParseError):
    """A curie used a prefix that is not registered."""

    def __init__(self, prefix: str, line: int = 0):
        self.prefix = prefix
        super().__init__(f"unknown prefix '{prefix}'", line)


class UnsupportedConstructError(ParseError):
    """The document uses an RDF/XML construct outside the supported subset."""

    def __init__(self, construct: str, line: int = 0):
        self.construct = construct
        super().__init__(f"unsupported construct: {construct}", line)


class SlugCollisionError(SesforgeError):
    """Two distinct node labels map to the same IRI local name."""


class NotSesCaseError(SesforgeError):
    """The ingested graph carries no recognizable SES template role."""

    def __init__(self, detail: str = ""):
        msg = "not an SES case graph"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnknownFrameworkError(SesforgeError):
    """Requested framework id has no seed table."""


class RegistryError(SesforgeError):
    """Registry-level failure: duplicate ids, unknown roots, bad layout."""


class ValidationRejectedError(RegistryError):
    """A mutation was rejected because it would break SES-core conformance."""

    def __init__(self, findings):
        self.findings = list(findings)
        lines = "; ".join(str(f) for f in self.findings[:5])
        super().__init__(f"validation failed with {len(self.findings)} finding(s): {lines}")


class QuerySyntaxError(SesforgeError):
    """Malformed basic-graph-pattern query text."""
