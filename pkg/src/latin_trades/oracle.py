""" Brute-force ground truth for small orders: every Latin square, the true smallest trade, completion counts and smallest
defining sets.  All searches are deterministic and capped in the order they accept. """
import logging
from itertools import islice, permutations
from typing import FrozenSet, Iterator, List, Optional, Set, Tuple

from attr import attrib, attrs
from more_itertools import ilen

from latin_trades.errors import BadConfig, NotContained, OrderMismatch, OrderTooLarge, OrderTooSmall
from latin_trades.latin_core import LatinSquare, LatinTrade, PartialLatinSquare, as_trade, row_cycle, walk_zigzag

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_ORDER = 5
BNB_MAX_ORDER = 8

Grid = Tuple[Tuple[int, ...], ...]
Cell = Tuple[int, int]


def _popcount(mask: int) -> int:
    return bin(mask).count('1')


def _check_order(n: int, maximum: int, minimum: int = 1) -> None:
    if n > maximum:
        raise OrderTooLarge(n, maximum)
    if n < minimum:
        raise OrderTooSmall(n, minimum)


def _permutation_codes(n: int) -> List[Tuple[Tuple[int, ...], int]]:
    """ Every permutation of N(n) in lexicographic order, with a bitmask holding bit c * n + symbol for each column c """
    return [(p, sum(1 << (c * n + s) for c, s in enumerate(p))) for p in permutations(range(n))]


def latin_grids(n: int) -> Iterator[Grid]:
    """ Every Latin square of order n as a tuple of rows, in lexicographic row-major order, built row by row from the
    permutations still compatible with the rows above """
    _check_order(n, EXHAUSTIVE_MAX_ORDER)
    codes = _permutation_codes(n)

    def extend(rows: List[Tuple[int, ...]], candidates: List[Tuple[Tuple[int, ...], int]]) -> Iterator[Grid]:
        if len(rows) == n:
            yield tuple(rows)
            return
        for perm, code in candidates:
            rows.append(perm)
            yield from extend(rows, [(p, c) for p, c in candidates if c & code == 0])
            rows.pop()

    yield from extend([], codes)


def enumerate_squares(n: int) -> Iterator[LatinSquare]:
    """ Every Latin square of order n <= 5, each once, in lexicographic row-major order """
    for grid in latin_grids(n):
        yield LatinSquare(grid)


def min_trade_exhaustive(square: LatinSquare) -> Tuple[int, LatinTrade]:
    """ The smallest Latin trade in a square of order at most 5, found by comparing against every other square.
    :param square: The Latin square L
    :return: min |L - M| over Latin squares M != L, and the trade L - M of the first M (lexicographically) reaching it
    """
    n = square.n
    _check_order(n, EXHAUSTIVE_MAX_ORDER, minimum=2)
    target = square.rows
    codes = _permutation_codes(n)
    mismatch = [[sum(x != y for x, y in zip(perm, target[r])) for perm, _ in codes] for r in range(n)]
    best_grid: Optional[Grid] = None
    best_size = n * n + 1

    def extend(rows: List[Tuple[int, ...]], candidates: List[int], used: int, distance: int) -> None:
        nonlocal best_grid, best_size
        r = len(rows)
        if r == n:
            if 0 < distance < best_size:
                best_size, best_grid = distance, tuple(rows)
            return
        for i in candidates:
            step = distance + mismatch[r][i]
            if step >= best_size:
                continue
            perm, code = codes[i]
            rows.append(perm)
            extend(rows, [j for j in candidates if codes[j][1] & (used | code) == 0], used | code, step)
            rows.pop()

    extend([], list(range(len(codes))), 0, 0)
    logger.debug(f'Exhaustive minimum trade size {best_size} for n={n}')
    return best_size, as_trade(square, LatinSquare(best_grid))


class _TradeSearch:
    """ Depth-first search for a trade of at most ``budget`` cells.

    Cells are visited in row-major order; each is either kept or changed to another symbol (ascending).  For every row and
    column the symbols removed and the symbols placed so far are bitmasks; a trade is complete when they agree everywhere.
    A symbol placed but not yet removed, or removed but not yet placed, needs another changed cell in that row (column),
    which bounds the cells still needed from below.
    """

    def __init__(self, square: LatinSquare, budget: int):
        self.n = square.n
        self.rows = square.rows
        self.column_of = square.column_lookup
        row_of = [[0] * self.n for _ in range(self.n)]
        for r, c, s in square.triples():
            row_of[c][s] = r
        self.row_of = row_of  # [col][symbol] -> row
        self.budget = budget
        self.row_removed = [0] * self.n
        self.row_placed = [0] * self.n
        self.col_removed = [0] * self.n
        self.col_placed = [0] * self.n
        self.changed: List[Tuple[int, int, int, int]] = []

    def _still_needed(self) -> int:
        def deficit(removed: List[int], placed: List[int]) -> int:
            return sum(max(_popcount(p & ~q), _popcount(q & ~p)) for p, q in zip(removed, placed))
        return max(deficit(self.row_removed, self.row_placed), deficit(self.col_removed, self.col_placed))

    def _closes(self, r: int, c: int) -> bool:
        """ Whether the row (at its last column) and the column (in the last row) just finished are balanced """
        if c == self.n - 1 and self.row_removed[r] != self.row_placed[r]:
            return False
        if r == self.n - 1 and self.col_removed[c] != self.col_placed[c]:
            return False
        return True

    def run(self, position: int = 0) -> bool:
        n = self.n
        if position == n * n:
            return len(self.changed) > 0
        if self._still_needed() > self.budget - len(self.changed):
            return False
        r, c = divmod(position, n)
        x = self.rows[r][c]
        bit_x = 1 << x
        if not (self.row_placed[r] | self.col_placed[c]) & bit_x and self._closes(r, c) and self.run(position + 1):
            return True
        if len(self.changed) == self.budget:
            return False
        for s in range(n):
            bit_s = 1 << s
            if s == x or (self.row_placed[r] | self.col_placed[c]) & bit_s:
                continue
            # The cell holding s in this row (column) must be one that is, or can still be, changed
            if self.column_of[r][s] < c and not self.row_removed[r] & bit_s:
                continue
            if self.row_of[c][s] < r and not self.col_removed[c] & bit_s:
                continue
            self.row_removed[r] |= bit_x
            self.col_removed[c] |= bit_x
            self.row_placed[r] |= bit_s
            self.col_placed[c] |= bit_s
            self.changed.append((r, c, x, s))
            if self._closes(r, c) and self.run(position + 1):
                return True
            self.changed.pop()
            self.row_removed[r] &= ~bit_x
            self.col_removed[c] &= ~bit_x
            self.row_placed[r] &= ~bit_s
            self.col_placed[c] &= ~bit_s
        return False


def min_trade_bnb(square: LatinSquare, size_cap: Optional[int] = None) -> Optional[Tuple[int, LatinTrade]]:
    """ The smallest Latin trade of size at most ``size_cap`` in a square of order at most 8, by iterative deepening.
    :param square: The Latin square L
    :param size_cap: Largest size to look for, at most 2n (the default)
    :return: (size, trade) of a smallest trade, or None if every trade is larger than size_cap
    """
    n = square.n
    _check_order(n, BNB_MAX_ORDER, minimum=2)
    size_cap = 2 * n if size_cap is None else size_cap
    if not 1 <= size_cap <= 2 * n:
        raise BadConfig(f'size_cap must be in 1..{2 * n}, got {size_cap}')
    for budget in range(4, size_cap + 1):
        search = _TradeSearch(square, budget)
        logger.debug(f'Branch and bound: looking for a trade of at most {budget} cells')
        if search.run():
            trade = LatinTrade.from_cells(n, search.changed)
            assert square.contains(trade.trade), 'Changed cells hold the symbols of the square'
            return trade.size, trade
    return None


def _free_symbols(used: int, n: int) -> List[int]:
    return [s for s in range(n) if not used & (1 << s)]


def iter_completions(partial: PartialLatinSquare, prefer: Optional[LatinSquare] = None) -> Iterator[Grid]:
    """ Every Latin square containing ``partial``, filling the cell with fewest candidates first (ties by position).
    :param partial: The partial Latin square to complete
    :param prefer: If given, its symbol is tried first in every cell, so that it comes out first and the completions after
        it stay close to it.  Otherwise symbols are tried in ascending order.
    """
    n = partial.n
    grid = [[-1] * n for _ in range(n)]
    row_used = [0] * n
    col_used = [0] * n
    for r, c, s in partial:
        grid[r][c] = s
        row_used[r] |= 1 << s
        col_used[c] |= 1 << s
    empty: Set[Cell] = {(r, c) for r in range(n) for c in range(n) if grid[r][c] < 0}

    def fill() -> Iterator[Grid]:
        if not empty:
            yield tuple(tuple(row) for row in grid)
            return
        cell = min(empty, key=lambda rc: (_popcount(~(row_used[rc[0]] | col_used[rc[1]]) & ((1 << n) - 1)), rc))
        r, c = cell
        candidates = _free_symbols(row_used[r] | col_used[c], n)
        if not candidates:
            return
        if prefer is not None and prefer.rows[r][c] in candidates:
            candidates.remove(prefer.rows[r][c])
            candidates.insert(0, prefer.rows[r][c])
        empty.discard(cell)
        for s in candidates:
            grid[r][c] = s
            row_used[r] |= 1 << s
            col_used[c] |= 1 << s
            yield from fill()
            row_used[r] &= ~(1 << s)
            col_used[c] &= ~(1 << s)
        grid[r][c] = -1
        empty.add(cell)

    yield from fill()


def count_completions(partial: PartialLatinSquare, cap: int = 2) -> int:
    """ The number of Latin squares of order n containing ``partial``, counting no further than ``cap`` """
    if cap < 1:
        raise BadConfig(f'cap must be positive, got {cap}')
    return ilen(islice(iter_completions(partial), cap))


@attrs(frozen=True)
class DefiningSetReport:
    """ Whether a partial square D inside L completes uniquely.
    :param candidate: D
    :param completions: The number of completions of D, counted up to 2
    :param is_defining: True when L is the only completion
    :param witness: A completion other than L, when there is one
    """
    candidate: PartialLatinSquare = attrib()
    completions: int = attrib()
    is_defining: bool = attrib()
    witness: Optional[LatinSquare] = attrib(default=None)

    def witness_trade(self, square: LatinSquare) -> Optional[LatinTrade]:
        """ The trade L - witness, which misses the candidate entirely """
        return None if self.witness is None else as_trade(square, self.witness)


def is_defining_set(square: LatinSquare, partial: PartialLatinSquare) -> DefiningSetReport:
    """ Check whether ``partial`` is a defining set of ``square``.
    :param square: The Latin square L
    :param partial: A partial Latin square D contained in L
    :return: The report, with a second completion as witness when D is not defining
    """
    if partial.n != square.n:
        raise OrderMismatch(square.n, partial.n)
    if not square.contains(partial):
        raise NotContained(f'Entries not in the square: {[t for t in partial if not square.contains([t])]}')
    found = [LatinSquare(grid) for grid in islice(iter_completions(partial, prefer=square), 2)]
    assert found, 'A partial square taken from a Latin square completes at least to that square'
    assert found[0] == square, 'Trying the symbols of L first completes to L first'
    if len(found) == 1:
        return DefiningSetReport(partial, 1, True)
    witness = found[1]
    assert as_trade(square, witness).trade.isdisjoint(partial), 'A trade between two completions misses the defining entries'
    return DefiningSetReport(partial, 2, False, witness)


def _transposed(square: LatinSquare) -> LatinSquare:
    return LatinSquare(square.cells.T)


def _row_cycle_cells(square: LatinSquare, transpose: bool) -> List[FrozenSet[Cell]]:
    source = _transposed(square) if transpose else square
    found = set()
    for r in range(source.n):
        for r2 in range(r + 1, source.n):
            seen: Set[int] = set()
            for c in range(source.n):
                if c in seen:
                    continue
                seen.update(col for col, _, _ in walk_zigzag(source, r, r2, c))
                cells = row_cycle(source, r, r2, c).trade.cells
                found.add(frozenset((cc, rr) for rr, cc in cells) if transpose else cells)
    return sorted(found, key=lambda cells: (len(cells), sorted(cells)))


class _HittingSearch:
    """ Look for a defining set of at most k cells among the sets hitting every known trade of L.  Each candidate that hits
    all known trades but completes twice contributes the trade between L and the other completion. """

    def __init__(self, square: LatinSquare, trades: List[FrozenSet[Cell]]):
        self.square = square
        self.trades = trades
        self.checks = 0

    def _packing_bound(self, chosen: Set[Cell], forbidden: Set[Cell]) -> Optional[int]:
        """ Size of a greedy packing of pairwise disjoint unhit trades, or None if some unhit trade has no allowed cell """
        taken: Set[Cell] = set()
        count = 0
        for trade in self.trades:
            if trade & chosen:
                continue
            allowed = trade - forbidden
            if not allowed:
                return None
            if not allowed & taken:
                taken |= allowed
                count += 1
        return count

    def search(self, chosen: Set[Cell], forbidden: Set[Cell], k: int) -> Optional[Set[Cell]]:
        bound = self._packing_bound(chosen, forbidden)
        if bound is None or len(chosen) + bound > k:
            return None
        unhit = [trade - forbidden for trade in self.trades if not trade & chosen]
        if not unhit:
            self.checks += 1
            partial = PartialLatinSquare(self.square.n, ((r, c, self.square.rows[r][c]) for r, c in chosen))
            report = is_defining_set(self.square, partial)
            if report.is_defining:
                return set(chosen)
            self.trades.append(report.witness_trade(self.square).trade.cells)
            return self.search(chosen, forbidden, k)
        branch = sorted(min(unhit, key=lambda cells: (len(cells), sorted(cells))))
        excluded: Set[Cell] = set()
        for cell in branch:
            found = self.search(chosen | {cell}, forbidden | excluded, k)
            if found is not None:
                return found
            excluded.add(cell)
        return None


def smallest_defining_set(square: LatinSquare) -> Tuple[int, PartialLatinSquare]:
    """ A smallest defining set of a Latin square of order at most 5.

    Every defining set meets every trade of L, so the search only considers sets hitting all known trades, seeded with the
    row and column cycles, and sizes k = 0, 1, 2, ... in turn.
    :param square: The Latin square L
    :return: The size and a defining set of that size
    """
    n = square.n
    _check_order(n, EXHAUSTIVE_MAX_ORDER)
    if n == 1:
        return 0, PartialLatinSquare.empty(1)
    trades = _row_cycle_cells(square, transpose=False) + _row_cycle_cells(square, transpose=True)
    search = _HittingSearch(square, trades)
    for k in range(n * n + 1):
        found = search.search(set(), set(), k)
        logger.debug(f'Defining sets of size {k}: {"found" if found else "none"} after {search.checks} completion checks, '
                     f'{len(search.trades)} known trades')
        if found is not None:
            return k, PartialLatinSquare(n, ((r, c, square.rows[r][c]) for r, c in sorted(found)))
    raise AssertionError('The whole square is a defining set')
