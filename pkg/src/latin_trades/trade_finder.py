""" Finding a Latin trade of size at most 8 sqrt(n) inside a Latin square.

The certified route cuts the green 2-factor of G(L, a, b, f) into short paths, looks for black edges that close short
cycles inside one path or cross between two paths, and turns the resulting directed cycle into a trade.  Row cycles give
the 2n fallback.
"""
import logging
import math
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from attr import attrib, attrs
from more_itertools import chunked, first

from latin_trades.errors import BadConfig, OrderTooSmall, PathTooShort
from latin_trades.latin_core import LatinSquare, LatinTrade, intercalates, min_row_cycle_trade
from latin_trades.trade_digraph import (ColouredDigraph, ColouredEdge, DirectedCycle, EdgeColour, OverlapKind, assemble_trade, best_symbol_pairs,
                                        build_digraph, cycle_through, green_cycles, shortest_cycle)

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]
Segment = Tuple[int, int]


class Strategy(Enum):
    PROOF = 'proof'
    GREEDY = 'greedy'
    EXHAUSTIVE_PAIRS = 'exhaustive-pairs'


@attrs(frozen=True, auto_attribs=True)
class FinderConfig:
    """ Settings of the trade search.
    :param b_const: Bound coefficient, the target being 2 b sqrt(n)
    :param k_const: Green paths are cut to at most floor(k sqrt(n)) vertices
    :param d_const: f(n) = ceil(d sqrt(n)) + 1
    :param f: Use this f instead of f(n)
    :param strategy: proof, greedy or exhaustive-pairs
    :param pair: Only search the digraph of this symbol pair (a, b)
    :param max_pairs: How many of the best symbol pairs the greedy and proof strategies try
    """
    b_const: float = 4.0
    k_const: float = 4 / 3
    d_const: float = 19 / 6
    f: Optional[int] = None
    strategy: Strategy = Strategy.GREEDY
    pair: Optional[Tuple[int, int]] = None
    max_pairs: int = 8

    def __attrs_post_init__(self):
        if min(self.b_const, self.k_const, self.d_const) <= 0:
            raise BadConfig(f'Constants must be positive, got b={self.b_const}, k={self.k_const}, d={self.d_const}')
        if self.f is not None and self.f < 1:
            raise BadConfig(f'f must be positive, got {self.f}')
        if self.max_pairs < 1:
            raise BadConfig(f'max_pairs must be positive, got {self.max_pairs}')
        if self.pair is not None and (len(self.pair) != 2 or self.pair[0] == self.pair[1]):
            raise BadConfig(f'A symbol pair needs two distinct symbols, got {self.pair}')

    @property
    def uses_default_constants(self) -> bool:
        return all(math.isclose(x, y) for x, y in [(self.b_const, 4.0), (self.k_const, 4 / 3), (self.d_const, 19 / 6)])

    def check_constants(self) -> bool:
        """ Whether b = k + d - 1/2, the relation the size argument relies on """
        return math.isclose(self.b_const, self.k_const + self.d_const - 0.5)

    def f_for(self, n: int) -> int:
        return self.f if self.f is not None else math.ceil(self.d_const * math.sqrt(n)) + 1

    def max_path_length(self, n: int) -> int:
        return max(1, math.floor(self.k_const * math.sqrt(n)))

    def target_size(self, n: int) -> int:
        """ min(2n, ceil(2 b sqrt(n))), which is min(2n, ceil(8 sqrt(n))) for the default b """
        return min(2 * n, math.ceil(2 * self.b_const * math.sqrt(n)))

    def crossing_bound(self, n: int) -> float:
        """ Largest trade a crossing cycle between two cut paths can give: 2 sqrt(n) (k + d - 1) + 4 """
        return 2 * math.sqrt(n) * (self.k_const + self.d_const - 1) + 4


@attrs(frozen=True)
class GreenPathPartition:
    """ Green paths cut from the green cycles, each with at most ``max_len`` vertices """
    paths: Tuple[Path, ...] = attrib(converter=lambda paths: tuple(tuple(p) for p in paths))
    max_len: int = attrib()

    def __attrs_post_init__(self):
        assert all(1 <= len(p) <= self.max_len for p in self.paths), f'Path longer than {self.max_len} in {self.paths}'

    def position_of(self) -> Dict[int, Tuple[int, int]]:
        """ Map each vertex to (path index, position in that path) """
        return {v: (i, j) for i, path in enumerate(self.paths) for j, v in enumerate(path)}


def partition_green(graph: ColouredDigraph, max_len: int) -> GreenPathPartition:
    """ Cut every green cycle, starting from its smallest vertex, into consecutive paths of at most ``max_len`` vertices.
    Only the last path of a cycle can be shorter than ``max_len``. """
    if max_len < 1:
        raise BadConfig(f'max_len must be positive, got {max_len}')
    return GreenPathPartition([chunk for cycle in green_cycles(graph) for chunk in chunked(cycle, max_len)], max_len)


def segments_cross(first_segment: Segment, second_segment: Segment) -> bool:
    """ Whether two segments between paths P and Q cross with at least two positions between their ends on both paths """
    (s1, t1), (s2, t2) = first_segment, second_segment
    return (s1 - s2) * (t1 - t2) < 0 and abs(s1 - s2) >= 2 and abs(t1 - t2) >= 2


def find_crossing_pair(segments: Sequence[Segment]) -> Optional[Tuple[int, int]]:
    """ Indices (i, j), i < j, of the first pair of crossing segments, or None if no two segments cross """
    return first(((i, j) for i, j in combinations(range(len(segments)), 2) if segments_cross(segments[i], segments[j])), None)


@lru_cache(maxsize=None)
def max_crossing_free(p: int, q: int) -> int:
    """ Size of the largest set of grid points (s, t), s < p, t < q, no two of which cross; an exact maximum independent set
    search over the crossing graph of the p x q grid """
    points = [(s, t) for s in range(p) for t in range(q)]
    neighbours = [sum(1 << j for j, other in enumerate(points) if segments_cross(point, other)) for point in points]

    @lru_cache(maxsize=None)
    def largest(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        if neighbours[v] & rest == 0:
            return 1 + largest(rest)
        return max(largest(rest), 1 + largest(rest & ~neighbours[v]))

    return largest((1 << len(points)) - 1)


def _green_run(graph: ColouredDigraph, path: Path, start: int, stop: int) -> List[ColouredEdge]:
    """ The green edges along ``path`` from position start to position stop """
    return [graph.green_out(path[i]) for i in range(start, stop)]


def _path_edges(graph: ColouredDigraph, first_path: Path, second_path: Path) -> List[Tuple[Segment, ColouredEdge]]:
    position_p = {v: i for i, v in enumerate(first_path)}
    position_q = {v: j for j, v in enumerate(second_path)}
    between = []
    for edge in graph.edges_of(EdgeColour.BLACK):
        if edge.source in position_p and edge.target in position_q:
            between.append(((position_p[edge.source], position_q[edge.target]), edge))
        elif edge.source in position_q and edge.target in position_p:
            between.append(((position_p[edge.target], position_q[edge.source]), edge))
    return between


def _canonical(cycle: DirectedCycle) -> Tuple[int, ...]:
    vertices = cycle.vertices
    i = vertices.index(min(vertices))
    return vertices[i:] + vertices[:i]


def find_crossing_cycle(graph: ColouredDigraph, first_path: Path, second_path: Path) -> Optional[DirectedCycle]:
    """ A directed cycle through two disjoint green paths P and Q using two crossing black edges, or a blue edge in place of
    each black edge pointing the wrong way.
    :param graph: The digraph holding both paths
    :param first_path: P, with at least 3 vertices
    :param second_path: Q, with at least 3 vertices
    :return: The shortest such cycle (ties by vertex sequence), or None if no two black edges between P and Q cross
    """
    if len(first_path) < 3 or len(second_path) < 3:
        raise PathTooShort(f'Paths need at least 3 vertices, got {len(first_path)} and {len(second_path)}')
    between = _path_edges(graph, first_path, second_path)
    p_set = set(first_path)
    best = None
    for (seg1, edge1), (seg2, edge2) in combinations(between, 2):
        if not segments_cross(seg1, seg2):
            continue
        # A has the smaller position on P and the larger on Q
        (i, top), upper_edge, (bottom_p, j), lower_edge = ((seg1, edge1, seg2, edge2) if seg1[0] < seg2[0] else (seg2, edge2, seg1, edge1))
        if upper_edge.source not in p_set:
            closing, p_start, q_stop = upper_edge, i, top
        else:
            closing, p_start, q_stop = graph.blue_over(upper_edge), i + 1, top - 1
        if lower_edge.source in p_set:
            crossing, p_stop, q_start = lower_edge, bottom_p, j
        else:
            crossing, p_stop, q_start = graph.blue_over(lower_edge), bottom_p - 1, j + 1
        if closing is None or crossing is None:
            continue
        edges = (_green_run(graph, first_path, p_start, p_stop) + [crossing] + _green_run(graph, second_path, q_start, q_stop) + [closing])
        cycle = DirectedCycle(edges)
        assert cycle.count(EdgeColour.BLACK) + cycle.count(EdgeColour.BLUE) <= 2, 'A crossing cycle has at most two non-green edges'
        if best is None or (len(cycle), _canonical(cycle)) < (len(best), _canonical(best)):
            best = cycle
    return best


def chord_cycles(graph: ColouredDigraph, partition: GreenPathPartition) -> Iterator[DirectedCycle]:
    """ Cycles closed by a black edge with both ends on one path: directly for a backward edge, through its blue edge for a
    forward one """
    position = partition.position_of()
    for edge in graph.edges_of(EdgeColour.BLACK):
        if edge.source not in position or edge.target not in position:
            continue
        (path_s, i), (path_t, j) = position[edge.source], position[edge.target]
        if path_s != path_t:
            continue
        path = partition.paths[path_s]
        if j < i:
            yield DirectedCycle(_green_run(graph, path, j, i) + [edge])
        elif j >= i + 2:
            blue = graph.blue_over(edge)
            if blue is not None:
                yield DirectedCycle(_green_run(graph, path, i + 1, j - 1) + [blue])


def crossing_cycles(graph: ColouredDigraph, partition: GreenPathPartition) -> Iterator[DirectedCycle]:
    """ Crossing cycles for every pair of paths with at least 3 vertices each and more than 2(p + q - 2) distinct black edge
    segments between them, where a crossing pair must exist """
    long_paths = [path for path in partition.paths if len(path) >= 3]
    for first_path, second_path in combinations(long_paths, 2):
        segments = {segment for segment, _ in _path_edges(graph, first_path, second_path)}
        if len(segments) <= 2 * (len(first_path) + len(second_path) - 2):
            continue
        cycle = find_crossing_cycle(graph, first_path, second_path)
        assert cycle is not None, f'{len(segments)} segments between paths of {len(first_path)} and {len(second_path)} vertices must cross'
        yield cycle


class TradeSource(Enum):
    INTERCALATE = 'intercalate'
    ROW_CYCLE = 'row_cycle'
    SYMBOL_CYCLE = 'symbol_cycle'
    PATH_CHORD = 'path_chord'
    CROSSING = 'crossing'
    SHORTEST_CYCLE = 'shortest_cycle'
    OVERLAP_ROW_CYCLE = 'overlap_row_cycle'


@attrs(frozen=True, auto_attribs=True)
class TradeSearchResult:
    trade: LatinTrade
    source: TradeSource
    pair: Optional[Tuple[int, int]] = None
    cycle: Optional[DirectedCycle] = None

    @property
    def size(self) -> int:
        return self.trade.size


def trade_from_cycle(square: LatinSquare, graph: ColouredDigraph, cycle: DirectedCycle, source: TradeSource) -> Optional[TradeSearchResult]:
    """ Assemble the trade of a cycle, following overlap reports to a row cycle or to shorter cycles """
    pair = (graph.a, graph.b)
    while True:
        outcome = assemble_trade(square, graph, cycle)
        if isinstance(outcome, LatinTrade):
            return TradeSearchResult(outcome, source, pair, cycle)
        logger.debug(f'Overlap on {cycle.describe()}: {outcome.kind.value}')
        if outcome.kind is OverlapKind.SAME_ROW_PAIR:
            return TradeSearchResult(outcome.trade, TradeSource.OVERLAP_ROW_CYCLE, pair, cycle)
        if outcome.kind is OverlapKind.UNRESOLVED:
            return None
        cycle = outcome.shorter_cycle


def _better(candidate: Optional[TradeSearchResult], best: Optional[TradeSearchResult]) -> bool:
    return candidate is not None and (best is None or candidate.trade.sort_key() < best.trade.sort_key())


class _Search:
    """ Keeps the best trade found so far across the search stages """

    def __init__(self, square: LatinSquare, cfg: FinderConfig):
        self.square = square
        self.cfg = cfg
        self.n = square.n
        self.f = cfg.f_for(square.n)
        self.target = cfg.target_size(square.n)
        self.best: Optional[TradeSearchResult] = None

    @property
    def done(self) -> bool:
        return self.best is not None and self.best.size <= 4

    @property
    def on_target(self) -> bool:
        return self.best is not None and self.best.size <= self.target

    def offer(self, candidate: Optional[TradeSearchResult]) -> None:
        if _better(candidate, self.best):
            logger.debug(f'New best trade of size {candidate.size} from {candidate.source.value} (pair {candidate.pair})')
            self.best = candidate

    def intercalate(self) -> None:
        found = intercalates(self.square)
        if found:
            self.offer(TradeSearchResult(found[0], TradeSource.INTERCALATE))

    def row_cycle(self) -> None:
        self.offer(TradeSearchResult(min_row_cycle_trade(self.square), TradeSource.ROW_CYCLE))

    def pairs(self, limit: Optional[int]) -> List[Tuple[int, int]]:
        if self.cfg.pair is not None:
            return [tuple(self.cfg.pair)]
        ranked = best_symbol_pairs(self.square, self.f)
        return [(p.a, p.b) for p in ranked[:limit]]

    def digraph(self, pair: Tuple[int, int]) -> ColouredDigraph:
        graph = build_digraph(self.square, pair[0], pair[1], self.f)
        logger.debug(f'Digraph for pair {pair}: {len(graph.edges_of(EdgeColour.BLACK))} black edges, f={self.f}')
        return graph

    def shortest(self, graph: ColouredDigraph) -> None:
        cycle = shortest_cycle(graph)
        if cycle is not None:
            logger.debug(f'Shortest cycle {cycle.describe()}')
            self.offer(trade_from_cycle(self.square, graph, cycle, TradeSource.SHORTEST_CYCLE))

    def certified(self, graph: ColouredDigraph) -> None:
        """ Symbol cycles, path chords and crossing cycles of one digraph, then its shortest cycle """
        for vertices in green_cycles(graph):
            self.offer(trade_from_cycle(self.square, graph, cycle_through(graph, list(vertices)), TradeSource.SYMBOL_CYCLE))
        partition = partition_green(graph, self.cfg.max_path_length(self.n))
        for cycle in chord_cycles(graph, partition):
            self.offer(trade_from_cycle(self.square, graph, cycle, TradeSource.PATH_CHORD))
        for cycle in crossing_cycles(graph, partition):
            result = trade_from_cycle(self.square, graph, cycle, TradeSource.CROSSING)
            if result is not None and result.size <= self.cfg.crossing_bound(self.n):
                self.offer(result)
        self.shortest(graph)


def _proof(search: _Search) -> None:
    search.row_cycle()
    if search.n < 16:  # 2n < 8 sqrt(n)
        return
    for pair in search.pairs(search.cfg.max_pairs):
        if search.on_target:
            return
        search.certified(search.digraph(pair))


def _greedy(search: _Search) -> None:
    search.intercalate()
    if search.done:
        return
    search.row_cycle()
    for pair in search.pairs(search.cfg.max_pairs):
        if search.done:
            return
        search.shortest(search.digraph(pair))
    if not search.on_target:
        logger.debug(f'Greedy search stopped at {search.best.size} > {search.target}; running the certified search')
        _proof(search)


def _exhaustive_pairs(search: _Search) -> None:
    search.intercalate()
    search.row_cycle()
    for pair in search.pairs(None):
        if search.done:
            return
        graph = search.digraph(pair)
        for vertices in green_cycles(graph):
            search.offer(trade_from_cycle(search.square, graph, cycle_through(graph, list(vertices)), TradeSource.SYMBOL_CYCLE))
        search.shortest(graph)


def _single_pair(search: _Search) -> None:
    search.row_cycle()
    a, b = search.cfg.pair
    if not (0 <= a < search.n and 0 <= b < search.n):
        raise BadConfig(f'Pair {search.cfg.pair} is outside 0..{search.n - 1}')
    graph = search.digraph((a, b))
    if search.cfg.strategy is Strategy.GREEDY:
        search.shortest(graph)
    else:
        search.certified(graph)


_STRATEGIES = {Strategy.PROOF: _proof, Strategy.GREEDY: _greedy, Strategy.EXHAUSTIVE_PAIRS: _exhaustive_pairs}


def search_small_trade(square: LatinSquare, cfg: FinderConfig = FinderConfig()) -> TradeSearchResult:
    """ Search a Latin square for a small trade.
    :param square: A Latin square of order n >= 2
    :param cfg: Search settings
    :return: The smallest trade found, with the stage that found it.  A trade above cfg.target_size(n) is still returned
        (with a logged warning), so compare its size with the target when the bound matters.
    """
    if square.n < 2:
        raise OrderTooSmall(square.n)
    search = _Search(square, cfg)
    if cfg.pair is not None:
        _single_pair(search)
    else:
        _STRATEGIES[cfg.strategy](search)
    result = search.best
    assert result is not None, 'The row cycle stage always produces a trade'
    assert square.contains(result.trade.trade), 'Trades are taken from the square'
    if result.size > search.target:
        logger.warning(f'Trade of size {result.size} found for n={square.n}, above the bound {search.target}')
    return result


def find_small_trade(square: LatinSquare, cfg: FinderConfig = FinderConfig()) -> LatinTrade:
    """ A Latin trade inside ``square`` of size at most min(2n, ceil(8 sqrt(n))) """
    return search_small_trade(square, cfg).trade

