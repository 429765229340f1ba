""" Squares shared by the tests.  L1 and L2 are two Latin squares of order 7 at distance 18; L1 minus L2 is the trade of the
directed cycle 0 -> 1 -> 3 -> 6 -> 0 of G(L1, 1, 2, f) (green, black, black, green) for any f >= 4. """
from typing import List, Tuple

from latin_trades.latin_core import LatinSquare, LatinTrade, as_trade

L1_ROWS = [
    [1, 2, 0, 6, 3, 4, 5],
    [6, 1, 5, 4, 0, 2, 3],
    [0, 5, 4, 2, 1, 3, 6],
    [3, 4, 2, 1, 5, 6, 0],
    [4, 3, 1, 5, 6, 0, 2],
    [2, 6, 3, 0, 4, 5, 1],
    [5, 0, 6, 3, 2, 1, 4],
]

L2_ROWS = [
    [2, 1, 0, 6, 3, 4, 5],
    [6, 5, 4, 1, 0, 2, 3],
    [0, 2, 5, 4, 1, 3, 6],
    [3, 4, 2, 5, 6, 0, 1],
    [4, 3, 1, 2, 5, 6, 0],
    [1, 6, 3, 0, 4, 5, 2],
    [5, 0, 6, 3, 2, 1, 4],
]

# (row, col, symbol in L1) on the 18 cells where L1 and L2 differ
EXAMPLE_TRADE_TRIPLES = [
    (0, 0, 1), (0, 1, 2),
    (1, 1, 1), (1, 2, 5), (1, 3, 4),
    (2, 1, 5), (2, 2, 4), (2, 3, 2),
    (3, 3, 1), (3, 4, 5), (3, 5, 6), (3, 6, 0),
    (4, 3, 5), (4, 4, 6), (4, 5, 0), (4, 6, 2),
    (5, 0, 2), (5, 6, 1),
]


def l1() -> LatinSquare:
    return LatinSquare(L1_ROWS)


def l2() -> LatinSquare:
    return LatinSquare(L2_ROWS)


def example_trade() -> LatinTrade:
    return as_trade(l1(), l2())


def scan_intercalates(square: LatinSquare) -> List[Tuple[int, int, int, int]]:
    """ (r1, r2, c1, c2) of every 2 x 2 subsquare, by checking all row and column pairs """
    n = square.n
    rows = square.rows
    return [(r1, r2, c1, c2) for r1 in range(n) for r2 in range(r1 + 1, n) for c1 in range(n) for c2 in range(c1 + 1, n)
            if rows[r1][c1] == rows[r2][c2] and rows[r1][c2] == rows[r2][c1]]
