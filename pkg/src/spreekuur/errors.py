"""Exception hierarchy shared across the toolkit."""


class SpreekuurError(Exception):
    """Base class for all toolkit errors."""


# --- transcript parsing ---

class EmptyTranscript(SpreekuurError):
    """No speaker-labeled line was found in the input."""


# --- metric preconditions ---

class TooFewTurns(SpreekuurError):
    """The dialogue has fewer turns than the metric requires."""


class NoSentences(SpreekuurError):
    """The dialogue contains no sentences."""


class EmptyTokenStream(SpreekuurError):
    """A token-level metric received zero tokens."""


class TextTooShort(SpreekuurError):
    """Token stream shorter than the requested window."""


class MissingRole(SpreekuurError):
    """A role-scoped metric found no turns for one of the roles."""


# --- stats ---

class EmptyInput(SpreekuurError):
    """An aggregate received an empty value list."""


class UndefinedAlpha(SpreekuurError):
    """Agreement coefficient undefined: no pairable items."""


class TooFewRaters(SpreekuurError):
    """Leave-one-out analysis needs at least three raters."""


class DegenerateInput(SpreekuurError):
    """Correlation undefined because an input vector is constant."""


# --- generation pipeline ---

class EmptySource(SpreekuurError):
    """Source text for chunking is empty."""


class SourceTooShort(SpreekuurError):
    """Source file cannot supply the requested example spans.

    Carries ``required_words``: the minimum word count that would fit.
    """

    def __init__(self, message: str, required_words: int = 0):
        super().__init__(message)
        self.required_words = required_words


class BudgetExceeded(SpreekuurError):
    """Generated text exceeded its configured token cap."""


class ContextOverflow(SpreekuurError):
    """Prompt bundle does not fit the model context budget even after shrinking."""


class ClientError(SpreekuurError):
    """LLM endpoint unreachable or failing after retries."""


class AuthError(ClientError):
    """Endpoint rejected the request credentials."""


class MalformedResponse(ClientError):
    """Endpoint reply did not have the expected shape."""


# --- ratings ingestion / reporting ---

class MalformedRow(SpreekuurError):
    """Ratings CSV row could not be parsed; carries the line number."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        base = super().__str__()
        return f"line {self.line}: {base}" if self.line else base


class OutOfRangeScore(MalformedRow):
    """Score outside the 0..5 rubric scale."""


class UnknownCategory(MalformedRow):
    """Category not in the rubric's accepted set."""


class NoOverlap(SpreekuurError):
    """Ratings and metric report share no dialogue ids."""
