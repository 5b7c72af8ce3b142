"""Exception hierarchy shared by every adlab module."""

from __future__ import annotations


class AdlabError(Exception):
    """Base class for all adlab errors."""


class NonCoprimeError(AdlabError, ValueError):
    def __init__(self, p: int, m: int):
        super().__init__(f"generator prime {p} is not coprime to modulus {m}")
        self.p = p
        self.m = m


class EmptyUniverseError(AdlabError):
    pass


class CapsError(AdlabError, ValueError):
    """A request falls outside the search caps it was issued under."""


class WindowExceedsCapsError(CapsError):
    pass


class SearchBudgetError(AdlabError):
    """A bounded search would exceed its work budget; nothing was decided."""


class PrimalityCutoffError(AdlabError, ValueError):
    pass


class InvalidCertificateError(AdlabError):
    pass


class ParseError(AdlabError):
    def __init__(self, message: str, position: str = ""):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position


class SchemaMismatchError(ParseError):
    pass
