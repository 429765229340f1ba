import math
from typing import Sequence

from latin_trades.command_line import Command
from latin_trades.generators import random_square
from latin_trades.oracle import BNB_MAX_ORDER, min_trade_bnb
from latin_trades.trade_finder import FinderConfig, Strategy, search_small_trade


def compare_strategies(orders: Sequence[int] = (6, 8, 16, 25), seed: int = 0):
    """ Run every search strategy on one random square per order, next to the true minimum where it can be computed
    :param orders: Comma separated orders
    :param seed: Seed of the random squares
    """
    for n in orders:
        square = random_square(n, seed=seed, burn_in=n * n)
        sizes = {strategy.value: search_small_trade(square, FinderConfig(strategy=strategy)).size for strategy in Strategy}
        found = min_trade_bnb(square) if n <= BNB_MAX_ORDER else None
        true_min = '?' if found is None else found[0]
        print(f'n={n} ' + ' '.join(f'{name}={size}' for name, size in sizes.items()) + f' min={true_min} 8sqrt(n)={math.ceil(8 * math.sqrt(n))}')


if __name__ == '__main__':
    Command(compare_strategies).call_from_command_line()
