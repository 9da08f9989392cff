class UccaSnacsError(Exception):
    """Base class for all errors raised by this package."""


class InventoryError(UccaSnacsError):
    pass


class PassageFormatError(UccaSnacsError):
    pass


class ConllulexParseError(UccaSnacsError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class AlignmentError(UccaSnacsError):
    def __init__(self, message: str, sentence_id: str | None = None, position: int | None = None):
        self.sentence_id = sentence_id
        self.position = position
        super().__init__(message)


class EvaluationError(UccaSnacsError):
    pass


class TransitionError(UccaSnacsError):
    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(f"transition {index}: {message}" if index is not None else message)
