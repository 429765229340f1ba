""" The latin-trades command.

    latin-trades find-trade square.txt --strategy proof --json
    latin-trades verify square.txt trade.json
    latin-trades distance first.txt second.txt
    latin-trades oracle {min-trade, defining-check, scs} ...
    latin-trades gen {back-circulant, random} ...
    latin-trades stats --orders 16,25 --samples 5 --seed 1

Exit codes: 0 success, 1 a check came out false, 2 the command could not run.
"""
import csv
import logging
import math
import sys
from statistics import mean
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from latin_trades.command_line import CommandLineError, CommandSwitch
from latin_trades.errors import LatinError, OrderTooLarge
from latin_trades.formats import (format_partial_square, format_square, format_trade_json, format_trade_text, parse_partial_square, parse_trade_cells,
                                  read_square_file)
from latin_trades.generators import GeneratorKind, GeneratorSpec
from latin_trades.latin_core import LatinTrade, hamming_distance, intercalates, trade_invariant_checks
from latin_trades.oracle import BNB_MAX_ORDER, EXHAUSTIVE_MAX_ORDER, is_defining_set, min_trade_bnb, min_trade_exhaustive, smallest_defining_set
from latin_trades.trade_finder import FinderConfig, Strategy, search_small_trade
from latin_trades.utils.files import read_text, write_text

logger = logging.getLogger(__name__)

CSV_HEADER = ('order', 'sample', 'found_size', 'intercalates', 'bound_8sqrt', 'bound_2n')


def _set_verbose(verbose: bool) -> None:
    logging.getLogger('latin_trades').setLevel(logging.DEBUG if verbose else logging.NOTSET)


def _print_trade(trade: LatinTrade, as_json: bool) -> None:
    print(format_trade_json(trade) if as_json else format_trade_text(trade), end='\n' if as_json else '')


def find_trade(square: str, strategy: Strategy = Strategy.GREEDY, pair: Optional[Tuple[int, int]] = None, f: Optional[int] = None, b_const: float = 4.0,
               k_const: float = 4 / 3, d_const: float = 19 / 6, max_pairs: int = 8, json: bool = False, output: Optional[str] = None,
               verbose: bool = False) -> int:
    """ Find a small Latin trade in a square
    :param square: File holding the Latin square
    :param strategy: proof, greedy or exhaustive-pairs
    :param pair: Only search the digraph of symbols a b
    :param f: Zig-zag cutoff, by default ceil(d sqrt(n)) + 1
    :param b_const: Bound coefficient
    :param k_const: Path length coefficient
    :param d_const: Cutoff coefficient
    :param max_pairs: Symbol pairs tried by the greedy and proof strategies
    :param json: Print the trade in the structured format (the size line then goes to standard error)
    :param output: Also write the structured trade to this file
    :param verbose: Log the search stages
    """
    _set_verbose(verbose)
    latin = read_square_file(square)
    if latin.n < 2:
        raise CommandLineError('no trade exists for n<2')
    cfg = FinderConfig(b_const=b_const, k_const=k_const, d_const=d_const, f=f, strategy=strategy, pair=pair, max_pairs=max_pairs)
    if not cfg.check_constants():
        logger.warning(f'b={b_const} differs from k + d - 1/2 = {k_const + d_const - 0.5}; the size guarantee does not apply')
    result = search_small_trade(latin, cfg)
    checks = trade_invariant_checks(latin.n, result.trade.trade.triples, result.trade.mate.triples)
    if not latin.contains(result.trade.trade) or not all(checks.values()):
        print(f'Internal error: the trade found does not verify: {checks}', file=sys.stderr)
        return 1
    _print_trade(result.trade, json)
    summary = f'size={result.size} bound={cfg.target_size(latin.n)}'
    print(summary, file=sys.stderr if json else sys.stdout)
    logger.debug(f'Trade found by {result.source.value}')
    if output is not None:
        write_text(output, format_trade_json(result.trade) + '\n')
    return 0


def verify(square: str, trade: str) -> int:
    """ Check that a trade lies in a square and satisfies every Latin trade invariant
    :param square: File holding the Latin square
    :param trade: File holding the trade in the structured format
    """
    latin = read_square_file(square)
    n, cells = parse_trade_cells(read_text(trade))
    checks: Dict[str, bool] = {'same_order': n == latin.n}
    checks.update(trade_invariant_checks(n, [(r, c, s) for r, c, s, _ in cells], [(r, c, t) for r, c, _, t in cells]))
    checks['contained'] = n == latin.n and latin.contains((r, c, s) for r, c, s, _ in cells)
    for name, ok in checks.items():
        print(f'{name}: {"ok" if ok else "FAILED"}')
    return 0 if all(checks.values()) else 1


def distance(first: str, second: str) -> int:
    """ Print the Hamming distance between two Latin squares
    :param first: File holding the first square
    :param second: File holding the second square
    """
    print(hamming_distance(read_square_file(first), read_square_file(second)))
    return 0


def oracle_min_trade(square: str, json: bool = False) -> int:
    """ The true smallest trade of a square: exhaustive for n <= 5, branch and bound for n <= 8
    :param square: File holding the Latin square
    :param json: Print the trade in the structured format
    """
    latin = read_square_file(square)
    if latin.n > BNB_MAX_ORDER:
        raise OrderTooLarge(latin.n, BNB_MAX_ORDER)
    if latin.n < 2:
        raise CommandLineError('no trade exists for n<2')
    found = min_trade_exhaustive(latin) if latin.n <= EXHAUSTIVE_MAX_ORDER else min_trade_bnb(latin)
    assert found is not None, 'Row cycles bound the smallest trade by 2n'
    size, trade = found
    _print_trade(trade, json)
    print(f'min_trade n={latin.n} size={size}')
    return 0


def oracle_defining_check(square: str, partial: str) -> int:
    """ Whether a partial square (with '.' for empty cells) completes uniquely to the square
    :param square: File holding the Latin square
    :param partial: File holding the candidate defining set
    """
    latin = read_square_file(square)
    if latin.n > BNB_MAX_ORDER:
        raise OrderTooLarge(latin.n, BNB_MAX_ORDER)
    report = is_defining_set(latin, parse_partial_square(read_text(partial)))
    if report.is_defining:
        print(f'completions=1 defining size={len(report.candidate)}')
        return 0
    print(format_square(report.witness, comment='another completion'), end='')
    print(f'completions>=2 size={len(report.candidate)}')
    return 1


def oracle_scs(square: str) -> int:
    """ A smallest defining set of a square of order at most 5
    :param square: File holding the Latin square
    """
    size, defining = smallest_defining_set(read_square_file(square))
    print(format_partial_square(defining), end='')
    print(f'scs={size}')
    return 0


def _emit_square(spec: GeneratorSpec, output: Optional[str]) -> int:
    text = format_square(spec.generate(), comment=spec.metadata())
    if output is not None:
        write_text(output, text)
    else:
        print(text, end='')
    return 0


def gen_back_circulant(n: int, output: Optional[str] = None) -> int:
    """ Print B_n, with (i + j) mod n in cell (i, j)
    :param n: Order
    :param output: Write the square to this file instead
    """
    return _emit_square(GeneratorSpec(GeneratorKind.BACK_CIRCULANT, n), output)


def gen_random(n: int, seed: int = 0, burn_in: Optional[int] = None, output: Optional[str] = None) -> int:
    """ Print a random Latin square from the Jacobson-Matthews chain
    :param n: Order
    :param seed: Seed of the PCG64 generator
    :param burn_in: Chain moves, n^3 by default
    :param output: Write the square to this file instead
    """
    return _emit_square(GeneratorSpec(GeneratorKind.RANDOM, n, seed=seed, burn_in=burn_in), output)


def sample_seed(seed: int, order: int, sample: int) -> int:
    """ The generator seed of one stats sample, derived from the run seed so that samples are independent of each other """
    return int(np.random.SeedSequence([seed, order, sample]).generate_state(1)[0])


def stats(orders: Sequence[int] = (16,), samples: int = 5, seed: int = 0, burn_in: Optional[int] = None, strategy: Strategy = Strategy.GREEDY,
          verbose: bool = False) -> int:
    """ Sample random squares and report the size of the trade found in each, as CSV
    :param orders: Comma separated orders, e.g. 16,25,36
    :param samples: Squares per order
    :param seed: Run seed
    :param burn_in: Chain moves per square, n^2 by default: shorter than the n^3 of gen random so sweeps up to n = 100 stay quick
    :param strategy: proof, greedy or exhaustive-pairs
    :param verbose: Log the search stages
    """
    _set_verbose(verbose)
    if samples < 0 or any(n < 2 for n in orders):
        raise CommandLineError('stats needs samples >= 0 and orders >= 2')
    writer = csv.writer(sys.stdout, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    cfg = FinderConfig(strategy=strategy)
    sizes: Dict[int, List[int]] = {}
    for n in orders:
        for i in range(samples):
            spec = GeneratorSpec(GeneratorKind.RANDOM, n, seed=sample_seed(seed, n, i), burn_in=n * n if burn_in is None else burn_in)
            square = spec.generate()
            size = search_small_trade(square, cfg).size
            sizes.setdefault(n, []).append(size)
            writer.writerow((n, i, size, len(intercalates(square)), math.ceil(8 * math.sqrt(n)), 2 * n))
    for n, found in sizes.items():
        print(f'order={n} samples={len(found)} min={min(found)} mean={mean(found):.2f}', file=sys.stderr)
    return 0


COMMANDS = CommandSwitch({
    'find-trade': find_trade,
    'verify': verify,
    'distance': distance,
    'oracle': CommandSwitch({'min-trade': oracle_min_trade, 'defining-check': oracle_defining_check, 'scs': oracle_scs}),
    'gen': CommandSwitch({'back-circulant': gen_back_circulant, 'random': gen_random}),
    'stats': stats,
})


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ Run one command and return its exit code """
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')
    try:
        return COMMANDS.call_from_command_line(sys.argv[1:] if argv is None else list(argv))
    except (CommandLineError, LatinError, OSError) as err:
        print(f'error: {err}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
