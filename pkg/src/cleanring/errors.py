"""Exception hierarchy shared by every layer of the package."""


class RingError(Exception):
    """Base class for all errors raised by cleanring."""


class RingSpecSyntaxError(RingError, ValueError):
    """A ring-spec string does not match the grammar."""

    def __init__(self, text: str, pos: int, expected: list[str]):
        self.text = text
        self.pos = pos
        self.expected = list(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(
            f"syntax error at position {pos}: expected {' or '.join(self.expected)}, found {found}"
        )


class OrderCapError(RingError):
    """A constructed ring would exceed the configured order cap."""

    def __init__(self, spec, order: int, cap: int):
        self.spec = spec
        self.order = order
        self.cap = cap
        super().__init__(f"ring {spec} has order {order}, which exceeds the cap {cap}")


class ElementLiteralError(RingError, ValueError):
    """An element literal is malformed or does not fit its ring."""


class RingMismatchError(RingError, TypeError):
    """Operands of a ring operation belong to different rings."""


class PreconditionError(RingError, ValueError):
    """A procedure was called on inputs outside its domain."""


class PostconditionError(RingError, AssertionError):
    """A self-checking construction produced an output that fails its own check.

    This is an internal error: it means the implementation is wrong, not the input.
    """


class BudgetExceededError(RingError):
    """A time or size budget ran out before the work completed."""
