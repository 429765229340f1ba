import json
import os

from latin_trades.cli import CSV_HEADER, main, sample_seed
from latin_trades.formats import format_square, format_trade_json, parse_square, parse_trade
from latin_trades.generators import back_circulant
from latin_trades.tests.fixtures import example_trade, l1, l2
from latin_trades.utils.capture_output import capture_value_and_output
from latin_trades.utils.files import write_text
from latin_trades.utils.temp_files import hold_tempdir, hold_text_file


def run(*argv):
    """ Run the command line and return (exit code, standard output, standard error) """
    return capture_value_and_output(lambda: main(list(argv)), still_print=False)


def test_gen():
    code, out, _ = run('gen', 'back-circulant', '3')
    assert code == 0
    assert out == '# kind=back_circulant n=3\nn=3\n0 1 2\n1 2 0\n2 0 1\n'

    code, _, err = run('gen', 'back-circulant', '0')
    assert code == 2 and err.startswith('error:')

    code, out, _ = run('gen', 'random', '9', '--seed', '42')
    assert code == 0
    assert out.splitlines()[0] == '# kind=random n=9 seed=42 burn_in=729 rng=PCG64'
    assert parse_square(out).n == 9
    assert run('gen', 'random', '9', '--seed', '42')[1] == out

    with hold_tempdir() as fdir:
        path = os.path.join(fdir, 'squares', 'b4.txt')
        code, out, _ = run('gen', 'back-circulant', '4', '--output', path)
        assert code == 0 and out == ''
        with open(path) as f:
            assert parse_square(f.read()) == back_circulant(4)


def test_distance():
    with hold_tempdir() as fdir:
        first = write_text(os.path.join(fdir, 'l1.txt'), format_square(l1()))
        second = write_text(os.path.join(fdir, 'l2.txt'), format_square(l2()))
        small = write_text(os.path.join(fdir, 'b3.txt'), format_square(back_circulant(3)))
        assert run('distance', first, second)[:2] == (0, '18\n')
        assert run('distance', first, first)[:2] == (0, '0\n')
        code, _, err = run('distance', first, small)
        assert code == 2 and 'error:' in err
        assert run('distance', first, os.path.join(fdir, 'missing.txt'))[0] == 2


def test_verify():
    with hold_tempdir() as fdir:
        first = write_text(os.path.join(fdir, 'l1.txt'), format_square(l1()))
        second = write_text(os.path.join(fdir, 'l2.txt'), format_square(l2()))
        trade = write_text(os.path.join(fdir, 'trade.json'), format_trade_json(example_trade()))
        empty = write_text(os.path.join(fdir, 'empty.json'), '{"n": 7, "cells": []}')

        code, out, _ = run('verify', first, trade)
        assert code == 0
        assert 'contained: ok' in out.splitlines() and 'FAILED' not in out

        code, out, _ = run('verify', second, trade)
        assert code == 1 and 'contained: FAILED' in out.splitlines()

        code, out, _ = run('verify', first, empty)
        assert code == 1 and 'nonempty: FAILED' in out.splitlines()


def test_find_trade():
    with hold_tempdir() as fdir:
        square = write_text(os.path.join(fdir, 'l1.txt'), format_square(l1()))
        code, out, _ = run('find-trade', square)
        assert code == 0
        lines = out.splitlines()
        assert lines[-1].startswith('size=') and lines[-1].endswith('bound=14')
        assert int(lines[-1].split()[0][len('size='):]) <= 14

        output = os.path.join(fdir, 'found', 'trade.json')
        code, out, err = run('find-trade', square, '--json', '--output', output, '--strategy', 'exhaustive-pairs')
        assert code == 0
        found = parse_trade(out)
        assert 'bound=14' in err
        with open(output) as f:
            assert json.loads(f.read()) == json.loads(out)
        assert l1().contains(found.trade)
        assert run('verify', square, output)[0] == 0

        code, out, _ = run('find-trade', square, '--pair', '1', '2', '--strategy', 'proof', '--verbose')
        assert code == 0 and out.splitlines()[-1].startswith('size=')

        assert run('find-trade', square, '--strategy', 'fast')[0] == 2
        assert run('find-trade', square, '--pair', '1', '9')[0] == 2

    with hold_text_file('n=1\n0\n') as path:
        code, _, err = run('find-trade', path)
        assert code == 2 and 'no trade exists for n<2' in err


def test_oracle():
    with hold_text_file(format_square(back_circulant(3))) as path:
        code, out, _ = run('oracle', 'min-trade', path)
        assert code == 0 and out.splitlines()[-1] == 'min_trade n=3 size=6'

    with hold_text_file(format_square(back_circulant(9))) as path:
        code, _, err = run('oracle', 'min-trade', path)
        assert code == 2 and 'error:' in err

    with hold_text_file(format_square(back_circulant(4))) as path:
        code, out, _ = run('oracle', 'scs', path)
        assert code == 0 and out.splitlines()[-1] == 'scs=4'

    with hold_tempdir() as fdir:
        square = write_text(os.path.join(fdir, 'b3.txt'), format_square(back_circulant(3)))
        nothing = write_text(os.path.join(fdir, 'nothing.txt'), 'n=3\n. . .\n. . .\n. . .\n')
        everything = write_text(os.path.join(fdir, 'everything.txt'), format_square(back_circulant(3)))
        code, out, _ = run('oracle', 'defining-check', square, nothing)
        assert code == 1 and out.splitlines()[-1] == 'completions>=2 size=0'
        code, out, _ = run('oracle', 'defining-check', square, everything)
        assert code == 0 and out == 'completions=1 defining size=9\n'


def test_stats():
    code, out, err = run('stats', '--orders', '6', '--samples', '0')
    assert code == 0 and out == ','.join(CSV_HEADER) + '\n' and err == ''

    code, out, err = run('stats', '--orders', '6,7', '--samples', '2', '--seed', '1')
    assert code == 0
    rows = [line.split(',') for line in out.splitlines()[1:]]
    assert [row[:2] for row in rows] == [['6', '0'], ['6', '1'], ['7', '0'], ['7', '1']]
    assert all(int(row[2]) <= int(row[5]) for row in rows)
    assert 'order=6 samples=2' in err
    assert run('stats', '--orders', '6,7', '--samples', '2', '--seed', '1')[1] == out
    # Squares are sampled with n^2 chain moves unless --burn-in says otherwise
    assert run('stats', '--orders', '6', '--samples', '2', '--seed', '1', '--burn-in', '36')[1] == ''.join(out.splitlines(True)[:3])

    assert sample_seed(1, 6, 0) == sample_seed(1, 6, 0) != sample_seed(1, 6, 1)
    assert run('stats', '--orders', '1')[0] == 2


def test_unknown_command():
    code, _, err = run('shuffle')
    assert code == 2 and 'error:' in err
    assert run()[0] == 2


if __name__ == '__main__':
    test_gen()
    test_distance()
    test_verify()
    test_find_trade()
    test_oracle()
    test_stats()
    test_unknown_command()
