class ScenarioError(Exception):
    """Malformed scenario description."""


class PreconditionError(Exception):
    """An operation was called outside its precondition (caller error)."""


class RepresentationError(Exception):
    """The requested function leaves the step / periodic / log-periodic classes."""


class CodecError(Exception):
    """Bad JSON document for a scenario, warp or catalog."""
