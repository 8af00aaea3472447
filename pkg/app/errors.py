"""Hierarquia de exceções do projeto.

``BraidError`` cobre falhas de domínio e validação (saída 1 na CLI, HTTP 422);
``InputError`` cobre texto ou JSON malformado (saída 2 na CLI, HTTP 400).
"""


class BraidError(Exception):
    """Falha de domínio: genericidade, realizabilidade, adjacência, etc."""


class InputError(Exception):
    """Entrada que não pôde ser interpretada"""


class WordParseError(InputError):
    pass


class ProgramParseError(InputError):
    pass


class InvalidN(BraidError):
    pass


class BadTriple(BraidError):
    pass


class DimensionMismatch(BraidError):
    pass


class UnsupportedRank(BraidError):
    """Operação implementada apenas para k = 3"""


class InvalidMove(BraidError):
    pass


class GenericityError(BraidError):
    pass


class NotClosed(BraidError):
    pass


class InvalidProgram(BraidError):
    pass


class DegeneratePath(BraidError):
    pass


class ConstructionFailure(BraidError):
    pass


class NotRealisable(BraidError):
    pass


class AdjacencyViolation(BraidError):
    pass


class AmbiguousCentral(BraidError):
    pass


class UnsupportedN(BraidError):
    pass
