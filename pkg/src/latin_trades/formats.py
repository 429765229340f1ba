""" Reading and writing squares, partial squares and trades.

Square text format: an optional first line ``n=<order>``, then n lines of n whitespace-separated integers.  Lines starting
with ``#`` are comments (generators put their metadata there).  Partial squares use the same layout with ``.`` for an
empty cell.  Trades use the structured format
    {"n": order, "cells": [{"row": r, "col": c, "from": s, "to": s2}, ...]}
with cells sorted by (row, col), ``from`` the trade symbol and ``to`` the mate symbol.
"""
import json
from typing import List, Optional, Tuple

from latin_trades.errors import FormatError, LatinError
from latin_trades.latin_core import LatinSquare, LatinTrade, PartialLatinSquare, TradeCell
from latin_trades.utils.files import read_text

EMPTY_CELL = '.'


def _content_lines(text: str) -> Tuple[Optional[int], List[List[str]]]:
    """ Split text into rows of tokens, dropping blank and comment lines and reading the optional n= header """
    declared = None
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        if stripped.startswith('n=') and declared is None and not rows:
            try:
                declared = int(stripped[2:])
            except ValueError:
                raise FormatError(f'Bad order line "{stripped}"')
            continue
        rows.append(stripped.split())
    if declared is not None and declared != len(rows):
        raise FormatError(f'Header declares n={declared} but {len(rows)} rows follow')
    return declared, rows


def _parse_token(token: str, allow_empty: bool) -> Optional[int]:
    if allow_empty and token == EMPTY_CELL:
        return None
    try:
        return int(token)
    except ValueError:
        raise FormatError(f'Expected an integer{" or " + EMPTY_CELL if allow_empty else ""}, got "{token}"')


def parse_square(text: str) -> LatinSquare:
    """ Parse the square text format into a validated LatinSquare """
    _, rows = _content_lines(text)
    if not rows:
        raise FormatError('No rows found')
    return LatinSquare([[_parse_token(t, allow_empty=False) for t in row] for row in rows])


def parse_partial_square(text: str) -> PartialLatinSquare:
    """ Parse an n x n grid with '.' for empty cells into a PartialLatinSquare """
    _, rows = _content_lines(text)
    n = len(rows)
    if n == 0:
        raise FormatError('No rows found')
    if any(len(row) != n for row in rows):
        raise FormatError(f'Expected {n} entries in each of {n} rows')
    triples = [(r, c, s) for r, row in enumerate(rows) for c, s in enumerate(_parse_token(t, allow_empty=True) for t in row) if s is not None]
    return PartialLatinSquare(n, triples)


def format_square(square: LatinSquare, comment: Optional[str] = None) -> str:
    """ Render a square in the text format, optionally preceded by a ``# comment`` line """
    lines = [f'# {comment}'] if comment is not None else []
    lines.append(f'n={square.n}')
    lines.extend(' '.join(str(s) for s in row) for row in square.rows)
    return '\n'.join(lines) + '\n'


def format_partial_square(partial: PartialLatinSquare) -> str:
    width = len(str(partial.n - 1))
    lines = [f'n={partial.n}']
    for r in range(partial.n):
        entries = (partial.symbol_at(r, c) for c in range(partial.n))
        lines.append(' '.join((EMPTY_CELL if s is None else str(s)).rjust(width) for s in entries))
    return '\n'.join(lines) + '\n'


def trade_to_dict(trade: LatinTrade) -> dict:
    return {'n': trade.n, 'cells': [{'row': r, 'col': c, 'from': s, 'to': t} for r, c, s, t in trade.as_cells()]}


def format_trade_json(trade: LatinTrade) -> str:
    return json.dumps(trade_to_dict(trade))


def parse_trade_cells(text: str) -> Tuple[int, List[TradeCell]]:
    """ Parse the structured trade format without checking trade invariants, so that a verifier can report on them.
    :param text: JSON text
    :return: The order and the list of (row, col, from, to) cells
    """
    try:
        obj = json.loads(text)
        n = int(obj['n'])
        cells = [(int(cell['row']), int(cell['col']), int(cell['from']), int(cell['to'])) for cell in obj['cells']]
    except (ValueError, KeyError, TypeError) as err:
        raise FormatError(f'Not a trade object: {err}')
    if n < 1:
        raise FormatError(f'Trade order must be positive, got {n}')
    return n, cells


def parse_trade(text: str) -> LatinTrade:
    """ Parse the structured trade format into a validated LatinTrade """
    n, cells = parse_trade_cells(text)
    try:
        return LatinTrade.from_cells(n, cells)
    except LatinError as err:
        raise FormatError(f'Trade does not validate: {err}')


def format_trade_text(trade: LatinTrade) -> str:
    """ Render a trade as an n x n grid of ``from/to`` tokens, with '.' for cells outside the trade """
    by_cell = {(r, c): f'{s}/{t}' for r, c, s, t in trade.as_cells()}
    width = max(len(token) for token in by_cell.values())
    lines = []
    for r in range(trade.n):
        lines.append(' '.join(by_cell.get((r, c), EMPTY_CELL).rjust(width) for c in range(trade.n)).rstrip())
    return '\n'.join(lines) + '\n'


def read_square_file(path: str) -> LatinSquare:
    return parse_square(read_text(path))