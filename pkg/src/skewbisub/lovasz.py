"""Chain decomposition, the piecewise-linear extension, and its subgradients.

Every point x of the box [-alpha, 1]^n is the mean of exactly one
probability distribution on D^n whose support is totally ordered (a chain).
The construction is a greedy sign-pattern recursion: peel off the current
sign pattern of the residual with the largest weight that keeps all residual
signs intact, and repeat; the leftover mass lands on the all-Zero vector.

The extension of an oracle f is the expectation of f under that chain
distribution.  It agrees with f on the 3^n vertices, is piecewise linear,
and is convex exactly when f is skew bisubmodular; on the convex case its
minimum over the box equals the discrete minimum, which is what the
minimizer exploits.

All arithmetic here is exact rational: the decomposition's defining
properties (marginals, weights summing to one, uniqueness) are equalities,
and tolerances would only mask bugs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .functions import ValueOracle
from .lattice import (
    Alpha,
    ArityMismatchError,
    Label,
    Labeling,
    NEG,
    POS,
    ZERO,
    format_labeling,
)
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class FractionalPoint:
    """An exact rational point of the box [-alpha, 1]^n."""

    coords: Tuple[Fraction, ...]
    alpha: Alpha

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if not self.coords:
            raise ValueError("a point needs at least one coordinate")
        lo = -self.alpha.value
        for j, c in enumerate(self.coords):
            if c < lo or c > 1:
                raise ValueError(
                    f"coordinate {j} = {c} outside the box [{lo}, 1]"
                )

    @classmethod
    def parse(cls, text: str, alpha: Alpha) -> "FractionalPoint":
        """Parse a comma-separated rational vector such as "3/5,-1/5"."""
        parts = text.split(",")
        coords = tuple(
            parse_rational(part.strip(), where=f"coordinate {j}")
            for j, part in enumerate(parts)
        )
        return cls(coords, alpha)

    @classmethod
    def zero(cls, n: int, alpha: Alpha) -> "FractionalPoint":
        return cls((Fraction(0),) * n, alpha)

    def __str__(self) -> str:
        return ",".join(format_rational(c) for c in self.coords)


def midpoint(x: FractionalPoint, y: FractionalPoint) -> FractionalPoint:
    """Exact midpoint of two box points (the box is convex, so it stays inside)."""
    if x.alpha != y.alpha:
        raise ValueError("points carry different skew parameters")
    if len(x.coords) != len(y.coords):
        raise ArityMismatchError(f"arity mismatch: {len(x.coords)} vs {len(y.coords)}")
    half = Fraction(1, 2)
    return FractionalPoint(
        tuple((a + b) * half for a, b in zip(x.coords, y.coords)), x.alpha
    )


@dataclass(frozen=True)
class ChainDecomposition:
    """The unique chain-supported distribution with a given mean.

    Atoms are (label vector, weight) pairs in chain order, outermost
    (largest) first; weights are positive and sum to one; the all-Zero
    vector can only be the last atom.
    """

    atoms: Tuple[Tuple[Labeling, Fraction], ...]

    def support(self) -> Tuple[Labeling, ...]:
        return tuple(u for u, _ in self.atoms)

    def to_json(self) -> dict:
        return {
            "atoms": [
                {"u": format_labeling(u), "w": format_rational(w)} for u, w in self.atoms
            ]
        }


def decompose(x: FractionalPoint) -> ChainDecomposition:
    """Run the greedy sign-pattern recursion at x.

    Each round reads off the sign pattern u of the residual, gives it weight
    min over { -r_j/alpha : r_j < 0 } and { r_j : r_j > 0 }, and subtracts
    weight * u from the residual; at least one coordinate reaches zero per
    round, so at most n rounds precede the final all-Zero atom, which
    absorbs the remaining probability mass.

    Signs never flip, so the recursion runs on the normalized magnitudes
    (r_j for positive coordinates, -r_j/alpha for negative ones): every
    round subtracts the common minimum from the still-positive magnitudes.
    This is the same recursion expressed in the residual's natural scale,
    with one division per negative coordinate overall.
    """
    alpha = x.alpha.value
    signs: List[Label] = []
    magnitudes: List[Fraction] = []
    for c in x.coords:
        if c < 0:
            signs.append(NEG)
            magnitudes.append(-c / alpha)
        elif c > 0:
            signs.append(POS)
            magnitudes.append(c)
        else:
            signs.append(ZERO)
            magnitudes.append(Fraction(0))
    atoms: List[Tuple[Labeling, Fraction]] = []
    spent = Fraction(0)
    n = len(signs)
    while True:
        live = [j for j in range(n) if magnitudes[j]]
        if not live:
            leftover = 1 - spent
            if leftover:
                atoms.append(((ZERO,) * n, leftover))
            break
        weight = min(magnitudes[j] for j in live)
        u = tuple(signs[j] if magnitudes[j] else ZERO for j in range(n))
        atoms.append((u, weight))
        spent += weight
        for j in live:
            magnitudes[j] -= weight
    return ChainDecomposition(tuple(atoms))


def _check_oracle_point(f: ValueOracle, x: FractionalPoint) -> None:
    if f.arity != len(x.coords):
        raise ArityMismatchError(
            f"oracle arity {f.arity} != point dimension {len(x.coords)}"
        )
    if f.alpha != x.alpha:
        raise ValueError(
            f"oracle alpha {f.alpha} != point alpha {x.alpha}"
        )


def extension_value(f: ValueOracle, x: FractionalPoint) -> Fraction:
    """Expectation of f under the chain distribution at x (at most n+1 oracle calls)."""
    _check_oracle_point(f, x)
    return sum(
        (w * f.evaluate(u) for u, w in decompose(x).atoms), start=Fraction(0)
    )


def _refinement_order(x: FractionalPoint) -> Tuple[List[int], List[Fraction], List[Label]]:
    """Sorted coordinate order underlying the maximal-chain refinement.

    Normalized magnitudes m_j (= x_j for x_j >= 0, -x_j/alpha otherwise) are
    what the recursion decrements uniformly; coordinates leave the support
    in increasing-m order.  Ties, including all the zero coordinates, are
    split deterministically: the smaller index flips to Zero at the
    outermore position.  Zero coordinates take the Pos side.
    """
    alpha = x.alpha.value
    magnitudes: List[Fraction] = []
    sides: List[Label] = []
    for c in x.coords:
        if c < 0:
            magnitudes.append(-c / alpha)
            sides.append(NEG)
        else:
            magnitudes.append(Fraction(c))
            sides.append(POS)
    # order[0] is the innermost survivor: largest magnitude, largest index
    # among ties (so that among tied coordinates the smallest index leaves
    # the support first, i.e. outermost).
    order = sorted(range(len(magnitudes)), key=lambda j: (-magnitudes[j], -j))
    return order, magnitudes, sides


def subgradient(f: ValueOracle, x: FractionalPoint) -> Tuple[Fraction, ...]:
    """A subgradient of the extension at x, for skew-bisubmodular f.

    Built from the telescoping values of f along one maximal chain through
    x's decomposition: coordinate j's entry is the f-difference across the
    chain step where j flips from its sign to Zero, rescaled by the
    derivative of its normalized magnitude (1 on the Pos side, -1/alpha on
    the Neg side).  On the linear cell containing x this is the exact
    gradient; convexity of the extension makes it a global subgradient.
    For a non-skew-bisubmodular f the vector is still returned but carries
    no subgradient guarantee.
    """
    _check_oracle_point(f, x)
    n = len(x.coords)
    alpha = x.alpha.value
    order, _, sides = _refinement_order(x)
    gradient: List[Fraction] = [Fraction(0)] * n
    current: List[Label] = [ZERO] * n
    previous_value = f.evaluate(tuple(current))
    for j in order:
        current[j] = sides[j]
        value = f.evaluate(tuple(current))
        step = value - previous_value
        gradient[j] = step if x.coords[j] >= 0 else -step / alpha
        previous_value = value
    return tuple(gradient)


def chain_support_points(x: FractionalPoint) -> Tuple[Labeling, ...]:
    """The decomposition's support, computed by sorting instead of recursion.

    The recursion's atoms are exactly the sign-pattern prefixes at each
    distinct positive normalized magnitude, plus the all-Zero vector when
    the magnitudes do not already exhaust the probability mass.  Must agree
    with decompose(x).support() identically; the minimizer leans on this
    cheaper path in its inner loop.
    """
    order, magnitudes, sides = _refinement_order(x)
    n = len(order)
    current: List[Label] = [ZERO] * n
    prefixes: List[Labeling] = []
    for t, j in enumerate(order):
        if not magnitudes[j]:
            break
        current[j] = sides[j]
        nxt = order[t + 1] if t + 1 < n else None
        if nxt is None or magnitudes[nxt] != magnitudes[j]:
            prefixes.append(tuple(current))
    prefixes.reverse()  # outermost first, matching chain order
    support: List[Labeling] = list(prefixes)
    if max(magnitudes) < 1:
        support.append((ZERO,) * n)
    return tuple(support)
