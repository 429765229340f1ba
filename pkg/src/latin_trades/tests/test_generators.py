from itertools import islice

from pytest import raises

from latin_trades.errors import BadConfig, OrderTooSmall
from latin_trades.formats import format_square
from latin_trades.generators import GeneratorKind, GeneratorSpec, LatinSquareChain, back_circulant, direct_product, perturb, random_square
from latin_trades.latin_core import hamming_distance, intercalates
from latin_trades.oracle import enumerate_squares
from latin_trades.tests.fixtures import example_trade, l1, l2
from latin_trades.utils.temp_files import hold_text_file


def test_back_circulant():
    assert back_circulant(3).rows == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    assert back_circulant(1).rows == ((0,),)
    square = back_circulant(12)
    assert all(square.symbol(i, j) == (i + j) % 12 for i in range(12) for j in range(12))
    with raises(OrderTooSmall):
        back_circulant(0)


def test_direct_product():
    klein = direct_product(back_circulant(2), back_circulant(2))
    assert klein.rows == ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    assert len(intercalates(klein)) == 12
    product = direct_product(back_circulant(3), back_circulant(2))
    assert product.n == 6
    assert product != back_circulant(6)


def test_random_square_is_deterministic():
    first = random_square(9, seed=42)
    assert first == random_square(9, seed=42)
    assert first != random_square(9, seed=43)
    assert first != back_circulant(9)
    assert random_square(9, seed=42, burn_in=0) == back_circulant(9)
    assert random_square(5, seed=1, burn_in=10).n == 5
    with raises(OrderTooSmall):
        random_square(1)
    with raises(BadConfig):
        random_square(5, burn_in=-1)


def test_chain_reaches_every_square_of_order_three():
    chain = LatinSquareChain(back_circulant(3), seed=7)
    seen = set(islice(chain.proper_states(), 2000))
    assert seen == set(enumerate_squares(3))


def test_chain_reaches_every_square_of_order_four():
    everything = set(enumerate_squares(4))
    assert len(everything) == 576
    for seed in (0, 1):
        chain = LatinSquareChain(back_circulant(4), seed=seed)
        assert set(islice(chain.proper_states(), 60000)) == everything


def test_chain_states():
    chain = LatinSquareChain(back_circulant(6), seed=3)
    assert chain.is_proper
    for _ in range(200):
        chain.step()
        cube = chain.cube
        # Every line of the cube sums to 1
        assert (cube.sum(axis=0) == 1).all() and (cube.sum(axis=1) == 1).all() and (cube.sum(axis=2) == 1).all()
        if chain.is_proper:
            assert cube.min() == 0
            chain.square()
        else:
            assert cube.min() == -1 and (cube == -1).sum() == 1
    assert chain.moves == 200


def test_perturb():
    assert perturb(l1(), example_trade()) == l2()
    assert hamming_distance(perturb(l2(), example_trade().swapped()), l2()) == 18


def test_generator_spec():
    spec = GeneratorSpec(GeneratorKind.RANDOM, 9, seed=42)
    assert spec.metadata() == 'kind=random n=9 seed=42 burn_in=729 rng=PCG64'
    assert spec.generate() == random_square(9, seed=42)
    assert GeneratorSpec(GeneratorKind.RANDOM, 9, seed=42, burn_in=81).metadata() == 'kind=random n=9 seed=42 burn_in=81 rng=PCG64'

    spec = GeneratorSpec(GeneratorKind.BACK_CIRCULANT, 3)
    assert spec.metadata() == 'kind=back_circulant n=3'
    assert spec.generate() == back_circulant(3)

    with hold_text_file(format_square(l1())) as path:
        assert GeneratorSpec(GeneratorKind.FROM_FILE, 7, path=path).generate() == l1()
        with raises(BadConfig):
            GeneratorSpec(GeneratorKind.FROM_FILE, 5, path=path).generate()
    with raises(BadConfig):
        GeneratorSpec(GeneratorKind.FROM_FILE, 7)
    with raises(BadConfig):
        GeneratorSpec(GeneratorKind.BACK_CIRCULANT, 0)


if __name__ == '__main__':
    test_back_circulant()
    test_direct_product()
    test_random_square_is_deterministic()
    test_chain_reaches_every_square_of_order_three()
    test_chain_reaches_every_square_of_order_four()
    test_chain_states()
    test_perturb()
    test_generator_spec()
