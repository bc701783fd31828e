"""Shared exception types."""


class ParameterError(ValueError):
    """A caller-supplied parameter violates a documented precondition."""


class RlpDecodeError(ValueError):
    """Input is not a complete canonical RLP encoding.

    Carries the byte offset of the first violation.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
