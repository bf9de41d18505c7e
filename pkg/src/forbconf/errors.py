"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid configuration data (shape, characters, multiplicity overflow)."""


class FormatError(ValueError):
    """A file in one of the text formats could not be parsed."""


class GuardExceeded(ValueError):
    """Input is outside the size range an exact routine is willing to handle."""


class MalformedEmbedding(ValueError):
    """Embedding is structurally invalid (non-injective or out of range)."""


class MalformedCertificate(ValueError):
    """Certificate is structurally invalid (bad assignment or ordering)."""


class GraphError(ValueError):
    """Graph input violates a precondition of the reduction."""


class IsolatedVertexError(GraphError):
    pass
