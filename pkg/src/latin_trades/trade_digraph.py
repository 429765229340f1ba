""" The coloured digraph G(L, a, b, f) on the columns of a Latin square, and the trades carried by its directed cycles.

Every edge carries an associated partial Latin square contained in L:
- green c -> c' for each row r with (r, c, a) and (r, c', b) in L; associated {(r, c, a), (r, c', b)}.
- black c_0 -> c_{k-1} whenever the zig-zag between rows r and r' started at (r, c_0, a) reaches e_k = b with 2 <= k <= f and
  k < K; associated P_k(r, r', c_0).  (k = 1 would be a loop at c_0.)
- blue c1 -> c4 for each green c1 -> c2, black c3 -> c2 and green c3 -> c4; associated is the union of the three squares.
Replacing each associated square around a directed cycle by its mate gives a Latin trade, provided the squares are pairwise
disjoint.
"""
from collections import Counter, OrderedDict, deque
from enum import Enum, IntEnum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from attr import attrib, attrs
from more_itertools import pairwise

from latin_trades.errors import BadSymbols, LatinError, MalformedAssociatedSquare, NotACycle, OrderTooSmall
from latin_trades.latin_core import LatinSquare, LatinTrade, PartialLatinSquare, row_cycle, walk_zigzag


class EdgeColour(IntEnum):
    GREEN = 0
    BLACK = 1
    BLUE = 2

    def __str__(self):
        return self.name.lower()


@attrs(frozen=True, auto_attribs=True)
class BlackEdgeOrigin:
    """ The tuple (r, r', c_0, k) a black edge was made from; its associated square is P_k(r, r', c_0) """
    row: int
    other_row: int
    start_column: int
    steps: int

    def describe(self) -> str:
        return f"r={self.row} r'={self.other_row} c0={self.start_column} k={self.steps}"


@attrs(frozen=True, cache_hash=True)
class ColouredEdge:
    colour: EdgeColour = attrib()
    source: int = attrib()
    target: int = attrib()
    associated: PartialLatinSquare = attrib()
    row: Optional[int] = attrib(default=None)  # Green edges: the row holding a and b
    origin: Optional[BlackEdgeOrigin] = attrib(default=None)  # Black edges
    parts: Tuple['ColouredEdge', ...] = attrib(default=())  # Blue edges: (green into c2, black c3 -> c2, green out of c3)

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    @property
    def black_origin(self) -> Optional[BlackEdgeOrigin]:
        """ The origin of the black square inside a black or blue edge, None for green edges """
        if self.colour is EdgeColour.BLUE:
            return self.parts[1].origin if self.parts else None
        return self.origin

    def sort_key(self) -> tuple:
        origin = self.black_origin
        return (int(self.colour), self.source, self.target, -1 if self.row is None else self.row,
                () if origin is None else (origin.row, origin.other_row, origin.start_column, origin.steps))

    def describe(self) -> str:
        text = f'{str(self.colour)} {self.source} {self.target}'
        if self.row is not None:
            text += f' r={self.row}'
        if self.black_origin is not None:
            text += ' ' + self.black_origin.describe()
        return text


def _sorted_edges(edges) -> Tuple[ColouredEdge, ...]:
    return tuple(sorted(edges, key=ColouredEdge.sort_key))


@attrs(frozen=True)
class ColouredDigraph:
    """ The digraph G(L, a, b, f): vertices are the columns 0..n-1 of L, edges are kept sorted by (colour, source, target).
    Parallel black and blue edges are all kept. """

    n: int = attrib()
    a: int = attrib()
    b: int = attrib()
    f: int = attrib()
    edges: Tuple[ColouredEdge, ...] = attrib(converter=_sorted_edges)
    _out: Dict[int, List[ColouredEdge]] = attrib(init=False, eq=False, repr=False)
    _in: Dict[int, List[ColouredEdge]] = attrib(init=False, eq=False, repr=False)
    _blue_over: Dict[ColouredEdge, ColouredEdge] = attrib(init=False, eq=False, repr=False)

    def __attrs_post_init__(self):
        out_edges: Dict[int, List[ColouredEdge]] = {v: [] for v in range(self.n)}
        in_edges: Dict[int, List[ColouredEdge]] = {v: [] for v in range(self.n)}
        for edge in self.edges:
            out_edges[edge.source].append(edge)
            in_edges[edge.target].append(edge)
        object.__setattr__(self, '_out', out_edges)
        object.__setattr__(self, '_in', in_edges)
        object.__setattr__(self, '_blue_over', {e.parts[1]: e for e in self.edges if e.colour is EdgeColour.BLUE and e.parts})

    def edges_of(self, colour: EdgeColour) -> List[ColouredEdge]:
        return [e for e in self.edges if e.colour is colour]

    def out_edges(self, vertex: int) -> List[ColouredEdge]:
        return self._out[vertex]

    def in_edges(self, vertex: int) -> List[ColouredEdge]:
        return self._in[vertex]

    def edges_between(self, source: int, target: int) -> List[ColouredEdge]:
        return [e for e in self._out[source] if e.target == target]

    def blue_over(self, black_edge: ColouredEdge) -> Optional[ColouredEdge]:
        """ The blue edge built around a black edge, if both of its green neighbours survived """
        return self._blue_over.get(black_edge)

    def green_out(self, vertex: int) -> Optional[ColouredEdge]:
        return next((e for e in self._out[vertex] if e.colour is EdgeColour.GREEN), None)

    def green_in(self, vertex: int) -> Optional[ColouredEdge]:
        return next((e for e in self._in[vertex] if e.colour is EdgeColour.GREEN), None)

    def has_green_two_factor(self) -> bool:
        """ Whether every vertex has green in-degree and out-degree exactly 1 """
        for v in range(self.n):
            if sum(e.colour is EdgeColour.GREEN for e in self._out[v]) != 1 or sum(e.colour is EdgeColour.GREEN for e in self._in[v]) != 1:
                return False
        return True

    def is_simple(self) -> bool:
        """ Whether the green and black edges have no loops and no two of them share (source, target) """
        ends = [(e.source, e.target) for e in self.edges if e.colour is not EdgeColour.BLUE]
        return all(s != t for s, t in ends) and len(set(ends)) == len(ends)

    def dump(self) -> str:
        """ One line per edge: ``<colour> <from> <to> [r=.. r'=.. c0=.. k=..]``, sorted by (colour, from, to) """
        return ''.join(e.describe() + '\n' for e in self.edges)


def _check_symbols(n: int, a: int, b: int) -> None:
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise BadSymbols(f'Need two distinct symbols in 0..{n - 1}, got a={a}, b={b}')


def green_edges(square: LatinSquare, a: int, b: int) -> List[ColouredEdge]:
    n = square.n
    return [ColouredEdge(EdgeColour.GREEN, square.column_lookup[r][a], square.column_lookup[r][b],
                         PartialLatinSquare(n, [(r, square.column_lookup[r][a], a), (r, square.column_lookup[r][b], b)]), row=r)
            for r in range(n)]


def black_edges(square: LatinSquare, a: int, b: int, f: int) -> List[ColouredEdge]:
    """ Walk every zig-zag from a cell holding a, for at most f steps, and add an edge for each time b is reached """
    n = square.n
    edges = []
    for r in range(n):
        start = square.column_lookup[r][a]
        for r2 in range(n):
            if r2 == r:
                continue
            walked = []
            for i, (c, e, e_next) in enumerate(walk_zigzag(square, r, r2, start)):
                if i >= f:
                    break
                walked.append((c, e, e_next))
                k = i + 1
                if e_next == b:
                    if k >= 2:
                        associated = PartialLatinSquare(n, [t for cj, ej, ej1 in walked for t in ((r, cj, ej), (r2, cj, ej1))])
                        edges.append(ColouredEdge(EdgeColour.BLACK, start, c, associated, origin=BlackEdgeOrigin(r, r2, start, k)))
                    break  # b occurs once in row r, so once per zig-zag
    return edges


def blue_edges(green: List[ColouredEdge], black: List[ColouredEdge]) -> List[ColouredEdge]:
    """ One blue edge c1 -> c4 for each black edge c3 -> c2 whose two green neighbours (c1 -> c2, c3 -> c4) are present """
    green_into = {e.target: e for e in green}
    green_from = {e.source: e for e in green}
    edges = []
    for black_edge in black:
        into, out = green_into.get(black_edge.target), green_from.get(black_edge.source)
        if into is None or out is None:
            continue
        associated = into.associated.union(black_edge.associated, out.associated)
        edges.append(ColouredEdge(EdgeColour.BLUE, into.source, out.target, associated, parts=(into, black_edge, out)))
    return edges


def build_digraph(square: LatinSquare, a: int, b: int, f: int, forbidden: Optional[PartialLatinSquare] = None) -> ColouredDigraph:
    """ Build G(L, a, b, f).
    :param square: The Latin square L
    :param a: First symbol
    :param b: Second symbol, distinct from a
    :param f: Longest zig-zag walked for black edges
    :param forbidden: Optionally, a partial square D; edges whose associated square meets D are left out
    :return: The coloured digraph
    """
    _check_symbols(square.n, a, b)
    if f < 1:
        raise LatinError(f'f must be positive, got {f}')

    def allowed(edge: ColouredEdge) -> bool:
        return forbidden is None or edge.associated.isdisjoint(forbidden)

    green = [e for e in green_edges(square, a, b) if allowed(e)]
    black = [e for e in black_edges(square, a, b, f) if allowed(e)]
    blue = [e for e in blue_edges(green, black) if allowed(e)]
    return ColouredDigraph(square.n, a, b, f, green + black + blue)


def black_edge_counts(square: LatinSquare, f: int) -> np.ndarray:
    """ Number of black edges of G(L, a, b, f) for every ordered pair, as an n x n array indexed [a, b].

    All zig-zags are walked at once: for a fixed row r the state is an (n-1) x n array of current columns indexed by
    (other row, start column).
    """
    n = square.n
    counts = np.zeros((n, n), dtype=np.int64)
    if n < 2 or f < 2:
        return counts
    cells = square.cells
    for r in range(n):
        others = np.array([r2 for r2 in range(n) if r2 != r])[:, None]
        start_symbols = np.broadcast_to(cells[r], (n - 1, n))
        cols = np.broadcast_to(np.arange(n), (n - 1, n))
        alive = np.ones((n - 1, n), dtype=bool)
        for k in range(1, f + 1):
            reached = cells[others, cols]
            alive &= reached != start_symbols
            if not alive.any():
                break
            if k >= 2:
                np.add.at(counts, (start_symbols[alive], reached[alive]), 1)
            cols = square.column_of[r][reached]
    return counts


def black_edge_total(square: LatinSquare, f: int) -> int:
    """ Total number of black edges over the n(n-1) digraphs G(L, a, b, f) """
    if f < 1:
        raise LatinError(f'f must be positive, got {f}')
    return int(black_edge_counts(square, f).sum())


@attrs(frozen=True, auto_attribs=True)
class SymbolPairCount:
    a: int
    b: int
    black_edges: int


def best_symbol_pairs(square: LatinSquare, f: int) -> List[SymbolPairCount]:
    """ All ordered symbol pairs, by descending number of black edges and then by (a, b) """
    if square.n < 2:
        raise OrderTooSmall(square.n)
    counts = black_edge_counts(square, f)
    pairs = [SymbolPairCount(a, b, int(counts[a, b])) for a in range(square.n) for b in range(square.n) if a != b]
    return sorted(pairs, key=lambda p: (-p.black_edges, p.a, p.b))


def _columns(partial: PartialLatinSquare) -> Dict[int, List[Tuple[int, int]]]:
    columns: Dict[int, List[Tuple[int, int]]] = {}
    for r, c, s in partial:
        columns.setdefault(c, []).append((r, s))
    return columns


def mate_of(partial: PartialLatinSquare, colour: EdgeColour, a: int, b: int) -> PartialLatinSquare:
    """ The mate P' of the square associated with an edge of the given colour.
    - green: swap a and b.
    - black: swap the two rows, then swap a and b.
    - blue: swap the two symbols of each two-symbol column, and swap a with b in single-symbol columns.
    """
    swap = {a: b, b: a}
    rows = partial.rows_used()
    if colour is EdgeColour.GREEN:
        if len(partial) != 2 or len(rows) != 1 or {s for _, _, s in partial} != {a, b}:
            raise MalformedAssociatedSquare(f'A green square holds a and b in one row, got {partial.triples}')
        return PartialLatinSquare(partial.n, ((r, c, swap[s]) for r, c, s in partial))

    columns = _columns(partial)
    if len(rows) != 2:
        raise MalformedAssociatedSquare(f'{colour} squares span exactly two rows, got rows {rows}')
    if colour is EdgeColour.BLACK:
        if any(len(entries) != 2 for entries in columns.values()):
            raise MalformedAssociatedSquare(f'Every column of a black square holds two symbols: {partial.triples}')
        other = {rows[0]: rows[1], rows[1]: rows[0]}
        return PartialLatinSquare(partial.n, ((other[r], c, swap.get(s, s)) for r, c, s in partial))
    if colour is EdgeColour.BLUE:
        triples = []
        for c, entries in columns.items():
            if len(entries) == 2:
                (r1, s1), (r2, s2) = entries
                triples += [(r1, c, s2), (r2, c, s1)]
            elif entries[0][1] in swap:
                r, s = entries[0]
                triples.append((r, c, swap[s]))
            else:
                raise MalformedAssociatedSquare(f'Single-symbol column {c} of a blue square must hold a or b, got {entries[0][1]}')
        return PartialLatinSquare(partial.n, triples)
    raise MalformedAssociatedSquare(f'Unknown colour {colour}')


def mate_balance_checks(partial: PartialLatinSquare, mate: PartialLatinSquare, a: int, b: int, first_column: int, final_column: int
                        ) -> Dict[str, bool]:
    """ Check a mate against its partial square: same cells, disjoint, row balanced, and column balanced once a (in P) and b (in P') are removed from
    the first column and b (in P) and a (in P') from the final column. """
    def column_counts(p: PartialLatinSquare, first_symbol: int, final_symbol: int) -> Dict[Tuple[int, int], int]:
        counts = Counter((c, s) for _, c, s in p)
        counts.subtract([(first_column, first_symbol), (final_column, final_symbol)])
        return {key: count for key, count in counts.items() if count != 0}

    trade_columns = column_counts(partial, a, b)
    mate_columns = column_counts(mate, b, a)
    return OrderedDict([
        ('same_cells', partial.cells == mate.cells),
        ('disjoint', partial.isdisjoint(mate)),
        ('row_balanced', Counter((r, s) for r, _, s in partial) == Counter((r, s) for r, _, s in mate)),
        ('column_balanced_adjusted', trade_columns == mate_columns and all(count > 0 for count in trade_columns.values())),
    ])


def edge_mate(graph: ColouredDigraph, edge: ColouredEdge) -> PartialLatinSquare:
    return mate_of(edge.associated, edge.colour, graph.a, graph.b)


@attrs(frozen=True)
class DirectedCycle:
    """ Cyclically ordered edges v_0 -> v_1 -> ... -> v_{m-1} -> v_0 with distinct v_i; loops and 2-circuits are cycles too """

    edges: Tuple[ColouredEdge, ...] = attrib(converter=tuple)

    def __attrs_post_init__(self):
        if len(self.edges) == 0:
            raise NotACycle('A cycle needs at least one edge')
        for e1, e2 in pairwise(self.edges + self.edges[:1]):
            if e1.target != e2.source:
                raise NotACycle(f'Edge {e1.describe()} does not lead into {e2.describe()}')
        if len(set(self.vertices)) != len(self.edges):
            raise NotACycle(f'Vertices repeat along {self.vertices}')

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(e.source for e in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def count(self, colour: EdgeColour) -> int:
        return sum(e.colour is colour for e in self.edges)

    @property
    def colour_counts(self) -> Tuple[int, int, int]:
        """ (g, bk, y): the numbers of green, black and blue edges """
        return self.count(EdgeColour.GREEN), self.count(EdgeColour.BLACK), self.count(EdgeColour.BLUE)

    def describe(self) -> str:
        return '->'.join(str(v) for v in self.vertices + self.vertices[:1]) + ' (' + ','.join(str(e.colour) for e in self.edges) + ')'


def size_bound(green: int, black: int, blue: int, f: int) -> int:
    """ Largest trade a cycle with these colour counts can give when its squares are disjoint: 2g + 2bk f + 2y (f + 1) """
    assert min(green, black, blue) >= 0, 'Counts are nonnegative'
    return 2 * green + 2 * black * f + 2 * blue * (f + 1)


def cycle_through(graph: ColouredDigraph, vertices: List[int]) -> DirectedCycle:
    """ The cycle visiting ``vertices`` in order, taking the first edge in (colour, ...) order between consecutive vertices """
    edges = []
    for u, v in pairwise(list(vertices) + list(vertices[:1])):
        between = graph.edges_between(u, v)
        if not between:
            raise NotACycle(f'No edge from {u} to {v}')
        edges.append(between[0])
    return DirectedCycle(edges)


def shortest_cycle(graph: ColouredDigraph) -> Optional[DirectedCycle]:
    """ A minimum-length directed cycle over all colours, or None if the digraph is acyclic.

    Among cycles of minimum length the vertex sequence started from its smallest vertex is lexicographically smallest: a
    breadth-first search from each start s over vertices greater than s, expanding neighbours in ascending order, finds the
    smallest such sequence through s.
    """
    loops = [e for e in graph.edges if e.is_loop]
    if loops:
        return DirectedCycle([min(loops, key=lambda e: (e.source,) + e.sort_key())])
    successors = {v: sorted({e.target for e in graph.out_edges(v)}) for v in range(graph.n)}
    best: Optional[List[int]] = None
    for start in range(graph.n):
        if best is not None and len(best) == 2:
            break
        parent: Dict[int, Optional[int]] = {start: None}
        depth = {start: 0}
        queue = deque([start])
        closing = None
        while queue and closing is None:
            v = queue.popleft()
            if best is not None and depth[v] + 1 >= len(best):
                break
            for w in successors[v]:
                if w == start:
                    closing = v
                    break
                if w > start and w not in parent:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
        if closing is not None:
            path = [closing]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            best = path[::-1]
    return None if best is None else cycle_through(graph, best)


def green_cycles(graph: ColouredDigraph) -> List[Tuple[int, ...]]:
    """ The green cycles of the digraph, each listed from its smallest vertex, in order of that vertex """
    seen = set()
    cycles = []
    for start in range(graph.n):
        if start in seen:
            continue
        walk = [start]
        edge = graph.green_out(start)
        while edge is not None and edge.target not in seen and edge.target != start and edge.target not in walk:
            walk.append(edge.target)
            edge = graph.green_out(edge.target)
        seen.update(walk)
        if edge is not None and edge.target == start:
            cycles.append(tuple(walk))
    return cycles


class OverlapKind(Enum):
    SAME_ROW_PAIR = 'same_row_pair'  # Two black/blue squares on one row pair; their rows hold a row cycle trade
    SHORTER_CYCLE = 'shorter_cycle'  # An edge between cycle vertices closes a shorter cycle
    UNRESOLVED = 'unresolved'


@attrs(frozen=True)
class OverlapReport:
    """ Why the squares around a cycle could not be combined, and what to try instead """
    kind: OverlapKind = attrib()
    first: Optional[ColouredEdge] = attrib()
    second: Optional[ColouredEdge] = attrib()
    trade: Optional[LatinTrade] = attrib(default=None)
    shorter_cycle: Optional[DirectedCycle] = attrib(default=None)


def shortcut_cycle(graph: ColouredDigraph, cycle: DirectedCycle) -> Optional[DirectedCycle]:
    """ The shortest cycle made of an edge u -> v between two vertices of ``cycle`` and the part of ``cycle`` from v to u,
    if it is shorter than ``cycle`` """
    position = {v: i for i, v in enumerate(cycle.vertices)}
    m = len(cycle)
    best = None
    for edge in graph.edges:
        if edge.source not in position or edge.target not in position or edge in cycle.edges:
            continue
        i, j = position[edge.source], position[edge.target]
        length = (i - j) % m + 1
        if length < m and (best is None or length < best[0]):
            best = (length, [cycle.edges[(j + step) % m] for step in range(length - 1)] + [edge])
    return None if best is None else DirectedCycle(best[1])


def assemble_trade(square: LatinSquare, graph: ColouredDigraph, cycle: DirectedCycle) -> Union[LatinTrade, OverlapReport]:
    """ Combine the associated squares around a cycle into a Latin trade.
    :param square: The Latin square the digraph was built from
    :param graph: The digraph
    :param cycle: A directed cycle of the digraph
    :return: The trade (union of associated squares, mate = union of their mates) when the squares are pairwise disjoint,
        otherwise an OverlapReport: a row cycle trade when two overlapping black/blue squares share their row pair, or a
        shorter cycle to try next.
    """
    edge_set = set(graph.edges)
    missing = [e.describe() for e in cycle.edges if e not in edge_set]
    if missing:
        raise NotACycle(f'Edges not in the digraph: {missing}')

    for i, first in enumerate(cycle.edges):
        for second in cycle.edges[i + 1:]:
            if first.associated.isdisjoint(second.associated):
                continue
            o1, o2 = first.black_origin, second.black_origin
            if o1 is not None and o2 is not None and {o1.row, o1.other_row} == {o2.row, o2.other_row}:
                trade = row_cycle(square, o1.row, o1.other_row, o1.start_column)
                return OverlapReport(OverlapKind.SAME_ROW_PAIR, first, second, trade=trade)
            shorter = shortcut_cycle(graph, cycle)
            kind = OverlapKind.UNRESOLVED if shorter is None else OverlapKind.SHORTER_CYCLE
            return OverlapReport(kind, first, second, shorter_cycle=shorter)

    try:
        trade_part = PartialLatinSquare.empty(square.n).union(*(e.associated for e in cycle.edges))
        mate_part = PartialLatinSquare.empty(square.n).union(*(edge_mate(graph, e) for e in cycle.edges))
        trade = LatinTrade(trade_part, mate_part)
    except LatinError:
        return OverlapReport(OverlapKind.UNRESOLVED, None, None)
    assert square.contains(trade.trade), 'Associated squares are taken from the square'
    assert trade.size <= size_bound(*cycle.colour_counts, graph.f), f'Trade of size {trade.size} exceeds the bound for {cycle.describe()}'
    return trade


def remark_digraph(m: int) -> ColouredDigraph:
    """ An acyclic digraph on n = m^2 vertices with m * C(m, 2) black edges: green paths [km, ..., km + m - 1] for k < m and
    black edges i -> j whenever m divides j - i and i < j.  No associated squares; a structural fixture only. """
    if m < 2:
        raise OrderTooSmall(m)
    n = m * m
    nothing = PartialLatinSquare.empty(n)
    green = [ColouredEdge(EdgeColour.GREEN, i, i + 1, nothing) for k in range(m) for i in range(k * m, (k + 1) * m - 1)]
    black = [ColouredEdge(EdgeColour.BLACK, i, j, nothing) for i in range(n) for j in range(i + m, n, m)]
    return ColouredDigraph(n, 0, 1, m, green + black)
