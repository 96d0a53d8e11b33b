"""Shared helpers for the test suite: random objects and exact validators."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

import pytest

from skewbisub import (
    Alpha,
    ChainDecomposition,
    FractionalPoint,
    Labeling,
    NEG,
    POS,
    ZERO,
    all_labelings,
    less,
    numeric,
)

#: The alpha grid the acceptance suite sweeps.
ALPHA_GRID = (
    Alpha(Fraction(1, 4)),
    Alpha(Fraction(1, 2)),
    Alpha(Fraction(3, 4)),
    Alpha(Fraction(1)),
)


def random_grid_point(
    n: int, alpha: Alpha, rng: random.Random, denominator: int = 1024
) -> FractionalPoint:
    lo = -(alpha.value.numerator * denominator // alpha.value.denominator)
    return FractionalPoint(
        tuple(Fraction(rng.randint(lo, denominator), denominator) for _ in range(n)),
        alpha,
    )


def random_chain_distribution(
    n: int, rng: random.Random
) -> Tuple[List[Labeling], List[Fraction]]:
    """A random strictly decreasing chain with positive rational weights summing to 1.

    Atoms are sign-pattern prefixes of a random leave order under random
    fixed signs, outermost first; the all-Zero atom (size 0) can only be
    last.
    """
    signs = [rng.choice((NEG, POS)) for _ in range(n)]
    leave_order = list(range(n))
    rng.shuffle(leave_order)
    length = rng.randint(1, n + 1)
    sizes = sorted(rng.sample(range(n + 1), length), reverse=True)
    chain = []
    for size in sizes:
        labels = [ZERO] * n
        for j in leave_order[:size]:
            labels[j] = signs[j]
        chain.append(tuple(labels))
    raw = [rng.randint(1, 100) for _ in chain]
    total = sum(raw)
    weights = [Fraction(r, total) for r in raw]
    return chain, weights


def compose_marginals(
    chain: List[Labeling], weights: List[Fraction], alpha: Alpha
) -> FractionalPoint:
    n = len(chain[0])
    coords = [Fraction(0)] * n
    for u, w in zip(chain, weights):
        for j, value in enumerate(numeric(u, alpha)):
            coords[j] += w * value
    return FractionalPoint(tuple(coords), alpha)


def assert_valid_decomposition(x: FractionalPoint, cd: ChainDecomposition) -> None:
    """All defining invariants, checked with exact rational equality."""
    n = len(x.coords)
    atoms = cd.atoms
    assert 1 <= len(atoms) <= n + 1
    weights = [w for _, w in atoms]
    assert all(w > 0 for w in weights)
    assert sum(weights) == 1
    support = [u for u, _ in atoms]
    for outer, inner in zip(support, support[1:]):
        assert less(inner, outer), (support, "not strictly decreasing")
    zero = (ZERO,) * n
    for u in support[:-1]:
        assert u != zero, "all-Zero atom not last"
    values = {NEG: -x.alpha.value, ZERO: Fraction(0), POS: Fraction(1)}
    marginals = [Fraction(0)] * n
    for u, w in atoms:
        for j, label in enumerate(u):
            if label is not ZERO:
                marginals[j] += w * values[label]
    assert tuple(marginals) == x.coords


@pytest.fixture(scope="session")
def alpha_half() -> Alpha:
    return Alpha(Fraction(1, 2))
