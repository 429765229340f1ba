""" Latin squares, partial Latin squares and Latin trades, with the basic operations on them.

Symbols, rows and columns are always 0-based integers in N(n) = {0, ..., n-1}.  A partial Latin square is a set of
(row, col, symbol) triples; a Latin trade is a pair (T, T') of partial Latin squares on the same cells that are disjoint
and row and column balanced, so that swapping T for T' inside a Latin square gives another Latin square.
"""
from collections import Counter, OrderedDict
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import numpy as np
from attr import attrib, attrs

from latin_trades.errors import (DuplicateCell, DuplicateInColumn, DuplicateInRow, IdenticalSquares, InvalidTrade, LatinError, MalformedGrid,
                                 OrderMismatch, OrderTooSmall, SameRow, SymbolOutOfRange, TradeNotContained)

Triple = Tuple[int, int, int]
TradeCell = Tuple[int, int, int, int]  # (row, col, trade symbol, mate symbol)


def _as_grid(candidate: Any) -> np.ndarray:
    """ Convert a nested sequence or array into a read-only square integer array, raising MalformedGrid otherwise """
    try:
        grid = np.array(candidate)
    except ValueError as err:  # Ragged nested lists
        raise MalformedGrid(f'Grid is not rectangular: {err}')
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] == 0:
        raise MalformedGrid(f'Expected a non-empty n x n grid, got shape {grid.shape}')
    if grid.dtype.kind not in 'iu':
        raise MalformedGrid(f'Expected integer entries, got dtype {grid.dtype}')
    grid = grid.astype(np.int64)
    grid.flags.writeable = False
    return grid


def _check_latin(grid: np.ndarray) -> None:
    """ Raise the first violation of the Latin property found, checking ranges, then rows, then columns """
    n = grid.shape[0]
    out_of_range = np.argwhere((grid < 0) | (grid >= n))
    if len(out_of_range) > 0:
        r, c = (int(i) for i in out_of_range[0])
        raise SymbolOutOfRange(r, c, int(grid[r, c]), n)
    expected = np.arange(n)
    if not np.array_equal(np.sort(grid, axis=1), np.broadcast_to(expected, (n, n))):
        for r in range(n):
            seen = set()
            for s in grid[r].tolist():
                if s in seen:
                    raise DuplicateInRow(r, s)
                seen.add(s)
    if not np.array_equal(np.sort(grid, axis=0), np.broadcast_to(expected[:, None], (n, n))):
        for c in range(n):
            seen = set()
            for s in grid[:, c].tolist():
                if s in seen:
                    raise DuplicateInColumn(c, s)
                seen.add(s)


@attrs(frozen=True, eq=False, repr=False)
class LatinSquare:
    """ A fully filled n x n array over N(n) in which each symbol occurs once per row and once per column.

    The grid is validated on construction and stored as a read-only numpy array.  Python tuples of the rows and of the
    inverse map (row, symbol) -> column are kept alongside for fast scalar access in the search loops.
    """

    cells: np.ndarray = attrib(converter=_as_grid)
    rows: Tuple[Tuple[int, ...], ...] = attrib(init=False)
    column_lookup: Tuple[Tuple[int, ...], ...] = attrib(init=False)
    column_of: np.ndarray = attrib(init=False)

    def __attrs_post_init__(self):
        _check_latin(self.cells)
        n = self.n
        column_of = np.empty((n, n), dtype=np.int64)
        column_of[np.arange(n)[:, None], self.cells] = np.arange(n)[None, :]
        column_of.flags.writeable = False
        object.__setattr__(self, 'column_of', column_of)
        object.__setattr__(self, 'rows', tuple(tuple(row) for row in self.cells.tolist()))
        object.__setattr__(self, 'column_lookup', tuple(tuple(row) for row in column_of.tolist()))

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def symbol(self, row: int, col: int) -> int:
        return self.rows[row][col]

    def triples(self) -> Iterator[Triple]:
        """ Iterate the (row, col, symbol) triples in row-major order """
        for r, row in enumerate(self.rows):
            for c, s in enumerate(row):
                yield r, c, s

    def contains(self, triples: Iterable[Triple]) -> bool:
        """ Whether every given triple appears in this square """
        return all(0 <= r < self.n and 0 <= c < self.n and self.rows[r][c] == s for r, c, s in triples)

    def as_partial(self) -> 'PartialLatinSquare':
        return PartialLatinSquare(self.n, self.triples())

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f'LatinSquare({[list(row) for row in self.rows]})'


def _canonical_triples(triples: Iterable[Sequence[int]]) -> Tuple[Triple, ...]:
    return tuple(sorted((int(r), int(c), int(s)) for r, c, s in triples))


@attrs(frozen=True)
class PartialLatinSquare:
    """ A set of (row, col, symbol) triples of order n, with at most one symbol per cell and each symbol at most once per
    row and per column.  Triples are kept sorted by (row, col) so that equality and hashing are structural. """

    n: int = attrib()
    triples: Tuple[Triple, ...] = attrib(converter=_canonical_triples)
    _by_cell: Dict[Tuple[int, int], int] = attrib(init=False, eq=False, repr=False)

    def __attrs_post_init__(self):
        if self.n < 1:
            raise MalformedGrid(f'Order must be positive, got {self.n}')
        by_cell: Dict[Tuple[int, int], int] = {}
        row_symbols = set()
        col_symbols = set()
        for r, c, s in self.triples:
            if not (0 <= r < self.n and 0 <= c < self.n):
                raise MalformedGrid(f'Cell ({r}, {c}) is outside a grid of order {self.n}')
            if not 0 <= s < self.n:
                raise SymbolOutOfRange(r, c, s, self.n)
            if (r, c) in by_cell:
                raise DuplicateCell(r, c)
            if (r, s) in row_symbols:
                raise DuplicateInRow(r, s)
            if (c, s) in col_symbols:
                raise DuplicateInColumn(c, s)
            by_cell[r, c] = s
            row_symbols.add((r, s))
            col_symbols.add((c, s))
        object.__setattr__(self, '_by_cell', by_cell)

    @classmethod
    def empty(cls, n: int) -> 'PartialLatinSquare':
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, triple) -> bool:
        r, c, s = triple
        return self._by_cell.get((r, c)) == s

    @property
    def cells(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self._by_cell)

    def symbol_at(self, row: int, col: int):
        """ The symbol in the cell, or None if the cell is empty """
        return self._by_cell.get((row, col))

    def rows_used(self) -> List[int]:
        return sorted({r for r, _, _ in self.triples})

    def columns_used(self) -> List[int]:
        return sorted({c for _, c, _ in self.triples})

    def isdisjoint(self, other: 'PartialLatinSquare') -> bool:
        return all(t not in other for t in self.triples)

    def union(self, *others: 'PartialLatinSquare') -> 'PartialLatinSquare':
        """ Union of triple sets.  Raises a LatinError if the result is not a partial Latin square """
        triples = set(self.triples)
        for other in others:
            if other.n != self.n:
                raise OrderMismatch(self.n, other.n)
            triples.update(other.triples)
        return PartialLatinSquare(self.n, triples)


def is_partial_latin(n: int, triples: Iterable[Sequence[int]]) -> bool:
    try:
        PartialLatinSquare(n, triples)
    except LatinError:
        return False
    return True


def trade_invariant_checks(n: int, trade_triples: Iterable[Triple], mate_triples: Iterable[Triple]) -> Dict[str, bool]:
    """ Evaluate every Latin trade invariant on raw triples, without raising.
    :param n: The order
    :param trade_triples: The triples of T
    :param mate_triples: The triples of T'
    :return: An ordered mapping from check name to whether it passed
    """
    trade_triples = list(trade_triples)
    mate_triples = list(mate_triples)
    trade_cells = {(r, c): s for r, c, s in trade_triples}
    mate_cells = {(r, c): s for r, c, s in mate_triples}
    same_cells = set(trade_cells) == set(mate_cells) and len(trade_cells) == len(trade_triples) and len(mate_cells) == len(mate_triples)

    def balanced(axis: int) -> bool:
        return Counter((t[axis], t[2]) for t in trade_triples) == Counter((t[axis], t[2]) for t in mate_triples)

    return OrderedDict([
        ('nonempty', len(trade_triples) > 0),
        ('trade_is_partial_latin', is_partial_latin(n, trade_triples)),
        ('mate_is_partial_latin', is_partial_latin(n, mate_triples)),
        ('same_cells', same_cells),
        ('disjoint', all(mate_cells.get(cell) != s for cell, s in trade_cells.items())),
        ('row_balanced', balanced(0)),
        ('column_balanced', balanced(1)),
    ])


@attrs(frozen=True)
class LatinTrade:
    """ A Latin trade T (``trade``) together with a disjoint mate T' (``mate``).  All invariants are checked on
    construction and an InvalidTrade listing the failed checks is raised if any fails. """

    trade: PartialLatinSquare = attrib()
    mate: PartialLatinSquare = attrib()

    def __attrs_post_init__(self):
        if self.trade.n != self.mate.n:
            raise OrderMismatch(self.trade.n, self.mate.n)
        checks = trade_invariant_checks(self.trade.n, self.trade.triples, self.mate.triples)
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise InvalidTrade(failed)

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[TradeCell]) -> 'LatinTrade':
        """ Build a trade from (row, col, trade symbol, mate symbol) cells """
        cells = list(cells)
        return cls(PartialLatinSquare(n, ((r, c, s) for r, c, s, _ in cells)), PartialLatinSquare(n, ((r, c, t) for r, c, _, t in cells)))

    @property
    def n(self) -> int:
        return self.trade.n

    @property
    def size(self) -> int:
        return len(self.trade)

    def as_cells(self) -> List[TradeCell]:
        """ The trade as (row, col, trade symbol, mate symbol) sorted by (row, col) """
        return [(r, c, s, self.mate.symbol_at(r, c)) for r, c, s in self.trade.triples]

    def swapped(self) -> 'LatinTrade':
        """ The trade with T and T' exchanged; applying both in turn returns the original square """
        return LatinTrade(self.mate, self.trade)

    def sort_key(self) -> Tuple[int, Tuple[TradeCell, ...]]:
        """ Order trades by size, then lexicographically by cells """
        return self.size, tuple(self.as_cells())


def validate_square(candidate: Any) -> LatinSquare:
    """ Validate an n x n grid of integers as a Latin square over N(n).
    :param candidate: A nested sequence or 2-D array
    :return: The validated LatinSquare
    """
    return LatinSquare(candidate)


def _check_same_order(square: LatinSquare, other: LatinSquare) -> None:
    if square.n != other.n:
        raise OrderMismatch(square.n, other.n)


def hamming_distance(square: LatinSquare, other: LatinSquare) -> int:
    """ The number of cells in which two Latin squares of the same order differ """
    _check_same_order(square, other)
    return int(np.count_nonzero(square.cells != other.cells))


def difference(square: LatinSquare, other: LatinSquare) -> PartialLatinSquare:
    """ The triples of ``square`` on the cells where it disagrees with ``other`` (L minus M) """
    _check_same_order(square, other)
    rows, cols = np.nonzero(square.cells != other.cells)
    return PartialLatinSquare(square.n, ((r, c, square.rows[r][c]) for r, c in zip(rows.tolist(), cols.tolist())))


def as_trade(square: LatinSquare, other: LatinSquare) -> LatinTrade:
    """ The Latin trade L minus M with disjoint mate M minus L """
    _check_same_order(square, other)
    if square == other:
        raise IdenticalSquares('The squares are equal, so they do not define a trade')
    return LatinTrade(difference(square, other), difference(other, square))


def apply_trade(square: LatinSquare, trade: LatinTrade) -> LatinSquare:
    """ Replace the trade part of ``trade`` inside ``square`` by its mate.
    :param square: A Latin square containing trade.trade
    :param trade: The trade to apply
    :return: The resulting Latin square, at distance trade.size from square
    """
    if trade.n != square.n:
        raise OrderMismatch(square.n, trade.n)
    if not square.contains(trade.trade):
        raise TradeNotContained(f'The trade is not contained in the square: {[t for t in trade.trade if not square.contains([t])]}')
    grid = square.cells.copy()
    for r, c, s in trade.mate:
        grid[r, c] = s
    result = LatinSquare(grid)
    assert hamming_distance(square, result) == trade.size, 'A trade must change exactly its own cells'
    return result


def walk_zigzag(square: LatinSquare, row: int, other_row: int, column: int) -> Iterator[Tuple[int, int, int]]:
    """ Walk the zig-zag between two rows starting from a column.

    With c_0 = column and e_0 the symbol of (row, c_0), e_{i+1} is the symbol of (other_row, c_i) and c_{i+1} is the column
    holding e_{i+1} in ``row``.  Yields (c_i, e_i, e_{i+1}) for i = 0, 1, ..., K-1 where K is the first index with e_K = e_0.
    """
    rows = square.rows
    lookup = square.column_lookup[row]
    start = rows[row][column]
    col, symbol = column, start
    while True:
        following = rows[other_row][col]
        yield col, symbol, following
        if following == start:
            return
        col, symbol = lookup[following], following


def _check_rows(square: LatinSquare, *rows: int) -> None:
    for r in rows:
        if not 0 <= r < square.n:
            raise LatinError(f'Row or column index {r} is outside 0..{square.n - 1}')


def row_cycle(square: LatinSquare, row: int, other_row: int, column: int) -> LatinTrade:
    """ The row cycle trade P_K(row, other_row, column) of size 2K, whose mate swaps the two rows in each triple """
    if row == other_row:
        raise SameRow(f'A row cycle needs two distinct rows, got {row} twice')
    _check_rows(square, row, other_row, column)
    steps = list(walk_zigzag(square, row, other_row, column))
    assert 2 <= len(steps) <= square.n, f'Zig-zag length {len(steps)} outside 2..{square.n}'
    trade = PartialLatinSquare(square.n, [t for c, e, e_next in steps for t in ((row, c, e), (other_row, c, e_next))])
    mate = PartialLatinSquare(square.n, [t for c, e, e_next in steps for t in ((other_row, c, e), (row, c, e_next))])
    return LatinTrade(trade, mate)


def min_row_cycle_trade(square: LatinSquare) -> LatinTrade:
    """ The smallest row cycle trade over all (row, other_row, column), ties going to the lexicographically first.
    Every Latin square of order n >= 2 has one of size at most 2n. """
    n = square.n
    if n < 2:
        raise OrderTooSmall(n)
    best = None
    for r in range(n):
        for r2 in range(r + 1, n):
            visited = set()
            for c in range(n):
                if c in visited:
                    continue
                cols = [col for col, _, _ in walk_zigzag(square, r, r2, c)]
                visited.update(cols)
                if best is None or len(cols) < best[0]:
                    best = (len(cols), r, r2, c)
                    if best[0] == 2:
                        return row_cycle(square, r, r2, c)
    assert best is not None
    _, r, r2, c = best
    return row_cycle(square, r, r2, c)


def intercalates(square: LatinSquare) -> List[LatinTrade]:
    """ All 2 x 2 subsquares on two symbols, each as a trade whose mate swaps the two symbols.  Sorted by
    (row1, row2, col1, col2). """
    n = square.n
    cells = square.cells
    positions = np.arange(n)
    found = []
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            # c2 holds in row r1 the symbol that row r2 has in column c1
            partner = square.column_of[r1, cells[r2]]
            matches = (cells[r2, partner] == cells[r1]) & (positions < partner)
            for c1 in np.flatnonzero(matches).tolist():
                c2 = int(partner[c1])
                x, y = square.rows[r1][c1], square.rows[r1][c2]
                found.append(LatinTrade.from_cells(n, [(r1, c1, x, y), (r1, c2, y, x), (r2, c1, y, x), (r2, c2, x, y)]))
    return found
