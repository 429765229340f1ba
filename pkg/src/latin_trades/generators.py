""" Latin squares to search: back circulants, group tables, random squares from the Jacobson-Matthews chain, and squares
perturbed by a trade. """
import logging
from enum import Enum
from typing import Iterator, Optional, Tuple

import numpy as np
from attr import attrib, attrs

from latin_trades.errors import BadConfig, OrderTooSmall
from latin_trades.formats import read_square_file
from latin_trades.latin_core import LatinSquare, LatinTrade, apply_trade

logger = logging.getLogger(__name__)

RNG_NAME = 'PCG64'


def back_circulant(n: int) -> LatinSquare:
    """ B_n, the square with (i + j) mod n in cell (i, j) """
    if n < 1:
        raise OrderTooSmall(n, 1)
    index = np.arange(n)
    return LatinSquare((index[:, None] + index[None, :]) % n)


def direct_product(first: LatinSquare, second: LatinSquare) -> LatinSquare:
    """ The direct product of two squares, of order n1 * n2: cell (i1 n2 + i2, j1 n2 + j2) holds s1 n2 + s2.  The product of
    two copies of B_2 is the table of the Klein four-group. """
    m = second.n
    return LatinSquare(np.kron(first.cells, np.ones((m, m), dtype=np.int64)) * m + np.tile(second.cells, (first.n, first.n)))


class LatinSquareChain:
    """ The Jacobson-Matthews Markov chain on n x n x n incidence cubes with entries in {-1, 0, 1}.

    A proper state is the cube of a Latin square.  An improper state has a single -1 entry, and each line through it holds
    two 1s.  A move adds +1/-1 on the eight corners of a sub-cube spanned by the chosen cell and one 1 on each line through
    it; it lands in an improper state exactly when the far corner was already 0.
    """

    def __init__(self, start: LatinSquare, seed: int):
        n = start.n
        self.n = n
        self.rng = np.random.Generator(np.random.PCG64(seed))
        self.cube = np.zeros((n, n, n), dtype=np.int8)
        rows, cols = np.indices((n, n))
        self.cube[rows, cols, start.cells] = 1
        self.improper: Optional[Tuple[int, int, int]] = None
        self.moves = 0

    @property
    def is_proper(self) -> bool:
        return self.improper is None

    def _pick(self, candidates: np.ndarray) -> int:
        return int(candidates[0] if len(candidates) == 1 else self.rng.choice(candidates))

    def step(self) -> None:
        cube = self.cube
        n = self.n
        if self.improper is None:
            while True:
                r, c, s = (int(i) for i in self.rng.integers(0, n, size=3))
                if cube[r, c, s] == 0:
                    break
        else:
            r, c, s = self.improper
        r1 = self._pick(np.flatnonzero(cube[:, c, s] == 1))
        c1 = self._pick(np.flatnonzero(cube[r, :, s] == 1))
        s1 = self._pick(np.flatnonzero(cube[r, c, :] == 1))
        for (i, j, k), delta in [((r, c, s), 1), ((r, c1, s1), 1), ((r1, c, s1), 1), ((r1, c1, s), 1),
                                 ((r, c, s1), -1), ((r, c1, s), -1), ((r1, c, s), -1), ((r1, c1, s1), -1)]:
            cube[i, j, k] += delta
        self.improper = (r1, c1, s1) if cube[r1, c1, s1] < 0 else None
        self.moves += 1

    def square(self) -> LatinSquare:
        assert self.is_proper, 'Only proper states are Latin squares'
        return LatinSquare(np.argmax(self.cube, axis=2))

    def proper_states(self) -> Iterator[LatinSquare]:
        """ Run the chain forever, yielding the square at every proper state reached """
        while True:
            self.step()
            if self.is_proper:
                yield self.square()


def random_square(n: int, seed: int = 0, burn_in: Optional[int] = None) -> LatinSquare:
    """ A random Latin square from the Jacobson-Matthews chain started at B_n.
    :param n: Order, at least 2
    :param seed: Seed of the PCG64 generator; equal arguments give equal squares
    :param burn_in: Number of moves, n^3 by default.  Moves continue past it until the state is proper
    :return: The square
    """
    if n < 2:
        raise OrderTooSmall(n)
    burn_in = n ** 3 if burn_in is None else burn_in
    if burn_in < 0:
        raise BadConfig(f'burn_in must be nonnegative, got {burn_in}')
    chain = LatinSquareChain(back_circulant(n), seed)
    while chain.moves < burn_in or not chain.is_proper:
        chain.step()
    logger.debug(f'Random square of order {n} after {chain.moves} moves (seed {seed})')
    return chain.square()


def perturb(square: LatinSquare, trade: LatinTrade) -> LatinSquare:
    """ The square obtained by applying a trade """
    return apply_trade(square, trade)


class GeneratorKind(Enum):
    BACK_CIRCULANT = 'back_circulant'
    RANDOM = 'random'
    FROM_FILE = 'from_file'


@attrs(frozen=True)
class GeneratorSpec:
    """ Everything needed to rebuild a test square """
    kind: GeneratorKind = attrib()
    n: int = attrib()
    seed: int = attrib(default=0)
    burn_in: Optional[int] = attrib(default=None)
    path: Optional[str] = attrib(default=None)

    def __attrs_post_init__(self):
        if self.n < 1:
            raise BadConfig(f'Order must be positive, got {self.n}')
        if self.kind is GeneratorKind.FROM_FILE and self.path is None:
            raise BadConfig('A from_file generator needs a path')

    @property
    def effective_burn_in(self) -> int:
        return self.n ** 3 if self.burn_in is None else self.burn_in

    def metadata(self) -> str:
        """ The comment line written above a generated square """
        if self.kind is GeneratorKind.RANDOM:
            return f'kind={self.kind.value} n={self.n} seed={self.seed} burn_in={self.effective_burn_in} rng={RNG_NAME}'
        if self.kind is GeneratorKind.FROM_FILE:
            return f'kind={self.kind.value} n={self.n} path={self.path}'
        return f'kind={self.kind.value} n={self.n}'

    def generate(self) -> LatinSquare:
        if self.kind is GeneratorKind.BACK_CIRCULANT:
            return back_circulant(self.n)
        if self.kind is GeneratorKind.RANDOM:
            return random_square(self.n, self.seed, self.effective_burn_in)
        square = read_square_file(self.path)
        if square.n != self.n:
            raise BadConfig(f'{self.path} holds a square of order {square.n}, expected {self.n}')
        return square
