""" Exceptions raised by latin_trades.  Everything derives from LatinError so callers can catch one type. """
from typing import Sequence


class LatinError(Exception):
    """ Base class for errors about (partial) Latin squares, trades and the structures built from them """


class MalformedGrid(LatinError):
    """ The grid is not square, or is empty """


class SymbolOutOfRange(LatinError):
    """ A cell holds a symbol outside N(n) """

    def __init__(self, row: int, col: int, symbol: int, n: int):
        super().__init__(f'Symbol {symbol} at cell ({row}, {col}) is outside 0..{n - 1}')
        self.row = row
        self.col = col
        self.symbol = symbol


class DuplicateInRow(LatinError):

    def __init__(self, row: int, symbol: int):
        super().__init__(f'Symbol {symbol} occurs more than once in row {row}')
        self.row = row
        self.symbol = symbol


class DuplicateInColumn(LatinError):

    def __init__(self, col: int, symbol: int):
        super().__init__(f'Symbol {symbol} occurs more than once in column {col}')
        self.col = col
        self.symbol = symbol


class DuplicateCell(LatinError):
    """ A partial Latin square lists the same cell twice """

    def __init__(self, row: int, col: int):
        super().__init__(f'Cell ({row}, {col}) is filled more than once')
        self.row = row
        self.col = col


class OrderMismatch(LatinError):

    def __init__(self, first: int, second: int):
        super().__init__(f'Orders differ: {first} vs {second}')
        self.first = first
        self.second = second


class IdenticalSquares(LatinError):
    """ Two squares are equal, so their difference is not a trade """


class TradeNotContained(LatinError):
    """ The trade part of a LatinTrade is not a subset of the square it is applied to """


class NotContained(LatinError):
    """ A candidate defining set is not a subset of the reference square """


class InvalidTrade(LatinError):
    """ A (trade, mate) pair fails one or more Latin trade invariants """

    def __init__(self, failed: Sequence[str]):
        super().__init__(f'Not a Latin trade; failed checks: {", ".join(failed)}')
        self.failed = tuple(failed)


class SameRow(LatinError):
    """ A row cycle needs two distinct rows """


class OrderTooSmall(LatinError):

    def __init__(self, n: int, minimum: int = 2):
        super().__init__(f'Order {n} is too small; need at least {minimum}')
        self.n = n
        self.minimum = minimum


class OrderTooLarge(LatinError):

    def __init__(self, n: int, maximum: int):
        super().__init__(f'Order {n} is beyond the cap of {maximum} for this search')
        self.n = n
        self.maximum = maximum


class BadSymbols(LatinError):
    """ Digraph symbols a, b must be distinct members of N(n) """


class MalformedAssociatedSquare(LatinError):
    """ A partial Latin square does not have the shape of an edge's associated square """


class NotACycle(LatinError):
    """ A list of edges does not form a directed cycle of the digraph """


class PathTooShort(LatinError):
    """ The crossing search needs both green paths to have at least 3 vertices """


class FormatError(LatinError):
    """ A square, partial square or trade file could not be parsed """


class BadConfig(LatinError):
    """ Finder or generator settings out of range """
