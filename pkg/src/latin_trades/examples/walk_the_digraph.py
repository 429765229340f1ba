from typing import Optional

from latin_trades.command_line import Command
from latin_trades.formats import format_trade_text, read_square_file
from latin_trades.generators import random_square
from latin_trades.latin_core import LatinTrade
from latin_trades.trade_digraph import assemble_trade, build_digraph, green_cycles, shortest_cycle


def walk_the_digraph(square: Optional[str] = None, a: int = 1, b: int = 2, f: int = 4, seed: int = 0):
    """ Print the coloured digraph of a square for symbols a, b and the trade of its shortest cycle
    :param square: File holding a Latin square, by default a random square of order 7
    :param a: First symbol
    :param b: Second symbol
    :param f: Zig-zag cutoff
    :param seed: Seed of the random square
    """
    latin = random_square(7, seed=seed) if square is None else read_square_file(square)
    graph = build_digraph(latin, a, b, f)
    print(graph.dump(), end='')
    print(f'green cycles: {green_cycles(graph)}')
    cycle = shortest_cycle(graph)
    if cycle is None:
        print('The digraph is acyclic')
        return
    print(f'shortest cycle: {cycle.describe()}')
    result = assemble_trade(latin, graph, cycle)
    if isinstance(result, LatinTrade):
        print(format_trade_text(result), end='')
        print(f'size={result.size}')
    else:
        print(f'The squares around the cycle overlap: {result.kind.value}')


if __name__ == '__main__':
    Command(walk_the_digraph).call_from_command_line()
