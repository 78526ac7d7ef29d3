class ModelError(Exception):
    """Base class for everything this library raises on purpose."""


class MalformedModel(ModelError):
    """Input that cannot even be parsed into a model (bad JSON shape,
    unknown identifiers, duplicated ids, arcs touching nothing)."""


class UnknownIdentifier(MalformedModel):
    """A place, transition or event name that the model does not declare."""


class NotEnabled(ModelError):
    """A step was fired at a marking (or configuration) that does not enable it."""

    def __init__(self, step, at, reason=""):
        self.step = step
        self.at = at
        self.reason = reason
        msg = f"step {sorted(step)} not enabled at {sorted(at)}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class UnsafeMarking(ModelError):
    """Firing produced two tokens on one place; the net is not safe."""


class RepeatedFiring(ModelError):
    """A transition fired twice while single-fire semantics was requested."""


class BoundExceeded(ModelError):
    """State-space exploration hit the configured bound.  The caller gets an
    error rather than a silently truncated answer."""

    def __init__(self, bound, what="states"):
        self.bound = bound
        super().__init__(f"exploration exceeded the bound of {bound} {what}")


class NotApplicable(ModelError):
    """An operation was invoked on a model that fails the validator the
    operation relies on (e.g. configuration enumeration on a non-pACN)."""
