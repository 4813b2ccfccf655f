class GraphFormatError(ValueError):
    """Malformed graph6 / edge-list / digraph text."""


class UnsupportedEncodingError(GraphFormatError):
    pass


class ResourceCapError(RuntimeError):
    """An exact computation would exceed its configured size cap."""


class HypothesisError(ValueError):
    """An input falls outside the graph class a procedure is valid for."""


class ExtractorContractError(RuntimeError):
    """An extractor returned an empty or undersized part."""


class OutOfScopeError(ValueError):
    """Request for a construction this package deliberately does not provide."""
