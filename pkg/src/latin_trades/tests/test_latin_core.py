import numpy as np
from pytest import raises

from latin_trades.errors import (DuplicateCell, DuplicateInColumn, DuplicateInRow, IdenticalSquares, InvalidTrade, LatinError, MalformedGrid,
                                 OrderMismatch, OrderTooSmall, SameRow, SymbolOutOfRange, TradeNotContained)
from latin_trades.generators import back_circulant, random_square
from latin_trades.latin_core import (LatinSquare, LatinTrade, PartialLatinSquare, apply_trade, as_trade, difference, hamming_distance, intercalates,
                                     is_partial_latin, min_row_cycle_trade, row_cycle, trade_invariant_checks, validate_square, walk_zigzag)
from latin_trades.tests.fixtures import EXAMPLE_TRADE_TRIPLES, L1_ROWS, example_trade, l1, l2, scan_intercalates


def test_validate_square():
    square = validate_square([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert square.n == 3
    assert square.symbol(1, 2) == 0
    assert square.column_lookup[1][0] == 2
    assert square == back_circulant(3)
    assert validate_square(np.array(L1_ROWS)) == l1()

    with raises(DuplicateInRow) as err:
        validate_square([[0, 0], [1, 1]])
    assert err.value.row == 0 and err.value.symbol == 0
    with raises(DuplicateInColumn) as err:
        validate_square([[0, 1], [0, 1]])
    assert err.value.col == 0
    with raises(SymbolOutOfRange):
        validate_square([[0, 2], [1, 0]])
    with raises(SymbolOutOfRange):
        validate_square([[-1, 0], [0, 1]])
    with raises(MalformedGrid):
        validate_square([[0, 1, 2], [1, 2, 0]])
    with raises(MalformedGrid):
        validate_square([])
    with raises(MalformedGrid):
        validate_square([[0.5, 1], [1, 0]])

    # Every validation error can be caught as a LatinError
    with raises(LatinError):
        validate_square([[1, 1], [0, 0]])


def test_square_is_read_only():
    square = l1()
    with raises(ValueError):
        square.cells[0, 0] = 3


def test_partial_latin_square():
    partial = PartialLatinSquare(3, [(2, 1, 0), (0, 0, 1)])
    assert partial.triples == ((0, 0, 1), (2, 1, 0))
    assert len(partial) == 2
    assert (2, 1, 0) in partial and (2, 1, 1) not in partial
    assert partial.symbol_at(0, 0) == 1 and partial.symbol_at(1, 1) is None
    assert partial.rows_used() == [0, 2] and partial.columns_used() == [0, 1]
    assert partial == PartialLatinSquare(3, [(0, 0, 1), (2, 1, 0)])
    assert PartialLatinSquare.empty(3).isdisjoint(partial)

    with raises(DuplicateCell):
        PartialLatinSquare(3, [(0, 0, 1), (0, 0, 2)])
    with raises(DuplicateInRow):
        PartialLatinSquare(3, [(0, 0, 1), (0, 2, 1)])
    with raises(DuplicateInColumn):
        PartialLatinSquare(3, [(0, 0, 1), (2, 0, 1)])
    with raises(SymbolOutOfRange):
        PartialLatinSquare(3, [(0, 0, 3)])
    with raises(MalformedGrid):
        PartialLatinSquare(3, [(3, 0, 0)])
    with raises(LatinError):
        partial.union(PartialLatinSquare(3, [(0, 0, 2)]))
    assert not is_partial_latin(3, [(0, 0, 1), (0, 1, 1)])
    assert is_partial_latin(3, [])


def test_hamming_distance_and_difference():
    assert hamming_distance(l1(), l2()) == 18
    assert hamming_distance(l2(), l1()) == 18
    assert hamming_distance(l1(), l1()) == 0
    assert difference(l1(), l2()).triples == tuple(EXAMPLE_TRADE_TRIPLES)
    with raises(OrderMismatch):
        hamming_distance(l1(), back_circulant(3))


def test_example_trade():
    trade = example_trade()
    assert trade.size == 18
    assert trade.trade.triples == tuple(EXAMPLE_TRADE_TRIPLES)
    assert trade.mate.cells == trade.trade.cells
    assert apply_trade(l1(), trade) == l2()
    assert apply_trade(l2(), trade.swapped()) == l1()
    assert all(trade_invariant_checks(7, trade.trade.triples, trade.mate.triples).values())
    with raises(TradeNotContained):
        apply_trade(l2(), trade)
    with raises(IdenticalSquares):
        as_trade(l1(), l1())


def test_invalid_trades():
    intercalate = PartialLatinSquare(2, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
    with raises(InvalidTrade) as err:
        LatinTrade(intercalate, intercalate)
    assert 'disjoint' in err.value.failed
    with raises(InvalidTrade) as err:
        LatinTrade(PartialLatinSquare.empty(3), PartialLatinSquare.empty(3))
    assert err.value.failed == ('nonempty',)
    with raises(InvalidTrade) as err:
        LatinTrade.from_cells(3, [(0, 0, 0, 1), (0, 1, 1, 2)])
    assert 'row_balanced' in err.value.failed
    with raises(OrderMismatch):
        LatinTrade(PartialLatinSquare.empty(2), PartialLatinSquare.empty(3))

    checks = trade_invariant_checks(3, [(0, 0, 0), (0, 1, 1)], [(0, 0, 1), (0, 2, 0)])
    assert not checks['same_cells'] and checks['trade_is_partial_latin'] and checks['mate_is_partial_latin']


def test_intercalate_trade():
    trade = LatinTrade.from_cells(2, [(0, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 1)])
    assert trade.size == 4
    assert apply_trade(back_circulant(2), trade) == LatinSquare([[1, 0], [0, 1]])
    assert trade.as_cells() == [(0, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 1)]


def test_walk_zigzag():
    # Rows 1 and 2 of L1, from column 1: symbols 1 -> 5 -> 4 -> 2 -> ... until 1 comes back
    steps = list(walk_zigzag(l1(), 1, 2, 1))
    assert steps[:3] == [(1, 1, 5), (2, 5, 4), (3, 4, 2)]
    assert steps[-1][2] == 1
    assert len({c for c, _, _ in steps}) == len(steps)


def test_row_cycle():
    square = back_circulant(3)
    trade = row_cycle(square, 0, 1, 0)
    assert trade.size == 6
    assert square.contains(trade.trade)
    swapped_rows = apply_trade(square, trade)
    assert swapped_rows.rows == (square.rows[1], square.rows[0], square.rows[2])

    # Rows 0 and 2 of B_4 carry two intercalates
    assert row_cycle(back_circulant(4), 0, 2, 0).size == 4
    with raises(SameRow):
        row_cycle(square, 1, 1, 0)
    with raises(LatinError):
        row_cycle(square, 0, 3, 0)


def test_min_row_cycle_trade():
    assert min_row_cycle_trade(back_circulant(2)).size == 4
    assert min_row_cycle_trade(back_circulant(3)).size == 6
    assert min_row_cycle_trade(back_circulant(4)).size == 4
    assert min_row_cycle_trade(back_circulant(7)).size == 14
    for seed in range(5):
        square = random_square(9, seed=seed)
        trade = min_row_cycle_trade(square)
        assert trade.size <= 18 and square.contains(trade.trade)
    with raises(OrderTooSmall):
        min_row_cycle_trade(back_circulant(1))


def test_intercalates():
    for square in [back_circulant(2), back_circulant(4), back_circulant(6), l1(), random_square(8, seed=3)]:
        found = intercalates(square)
        expected = scan_intercalates(square)
        assert len(found) == len(expected)
        for trade, (r1, r2, c1, c2) in zip(found, expected):
            assert trade.size == 4
            assert trade.trade.cells == {(r1, c1), (r1, c2), (r2, c1), (r2, c2)}
            assert square.contains(trade.trade)
    for n in (3, 5, 7, 9):
        assert intercalates(back_circulant(n)) == []


if __name__ == '__main__':
    test_validate_square()
    test_square_is_read_only()
    test_partial_latin_square()
    test_hamming_distance_and_difference()
    test_example_trade()
    test_invalid_trades()
    test_intercalate_trade()
    test_walk_zigzag()
    test_row_cycle()
    test_min_row_cycle_trade()
    test_intercalates()
