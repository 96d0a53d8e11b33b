"""Value oracles over the signed three-element domain.

A function is only ever accessed through :class:`ValueOracle`: an arity, a
skew parameter, and an `evaluate` method returning exact rationals.  Two
concrete representations are provided (a complete explicit table, and a sum
of low-arity table terms), plus the skew-bisubmodularity checker, a
rejection-sampling instance generator, and the JSON instance format used by
the CLI.

Oracle-call accounting: `evaluate` bumps `call_count` by exactly one per
call.  The counter is a plain attribute with no locking; either confine an
oracle to one thread or only trust the count after all evaluation has
quiesced.
"""

from __future__ import annotations

import abc
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .lattice import (
    Alpha,
    ArityMismatchError,
    Label,
    Labeling,
    POS,
    ZERO,
    all_labelings,
    format_labeling,
    join,
    meet0,
    parse_labeling,
)
from .rationals import format_rational, parse_rational

#: Enumeration guard: operations that touch all 3^n points refuse to run
#: past this many, so a fat-fingered arity fails loudly instead of hanging.
DEFAULT_ENUM_CAP = 3**8


class CapExceededError(ValueError):
    """An exhaustive operation was asked to enumerate more points than its cap."""


class GenerationBudgetError(RuntimeError):
    """Rejection sampling exhausted its draw budget without an accepted table."""


class InstanceFormatError(ValueError):
    """A JSON instance document is malformed; the message names the bad key."""


class ValueOracle(abc.ABC):
    """Contract for functions D^n -> Q accessed through value queries."""

    def __init__(self, arity: int, alpha: Alpha):
        if arity < 1:
            raise ValueError(f"arity must be >= 1, got {arity}")
        self._arity = arity
        self._alpha = alpha
        self._call_count = 0

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def alpha(self) -> Alpha:
        return self._alpha

    @property
    def call_count(self) -> int:
        """Number of `evaluate` calls made so far."""
        return self._call_count

    def evaluate(self, labeling: Labeling) -> Fraction:
        """Query the function value at one point; counts one oracle call."""
        if len(labeling) != self._arity:
            raise ArityMismatchError(
                f"labeling has length {len(labeling)}, oracle arity is {self._arity}"
            )
        self._call_count += 1
        return self._value(labeling)

    @abc.abstractmethod
    def _value(self, labeling: Labeling) -> Fraction:
        raise NotImplementedError


def _normalize_table(
    arity: int, values: Mapping[object, object], where: str = "values"
) -> Dict[Labeling, Fraction]:
    table: Dict[Labeling, Fraction] = {}
    for key, raw in values.items():
        if isinstance(key, str):
            labeling = parse_labeling(key)
        elif isinstance(key, tuple) and all(isinstance(l, Label) for l in key):
            labeling = key
        else:
            raise InstanceFormatError(f"{where}: bad labeling key {key!r}")
        if len(labeling) != arity:
            raise InstanceFormatError(
                f"{where}: key {format_labeling(labeling)!r} has length "
                f"{len(labeling)}, expected {arity}"
            )
        if labeling in table:
            raise InstanceFormatError(
                f"{where}: duplicate key {format_labeling(labeling)!r}"
            )
        if isinstance(raw, Fraction):
            table[labeling] = raw
        else:
            table[labeling] = parse_rational(
                raw, where=f"{where}[{format_labeling(labeling)!r}]"
            )
    if len(table) != 3**arity:
        for labeling in all_labelings(arity):
            if labeling not in table:
                raise InstanceFormatError(
                    f"{where}: missing value for labeling {format_labeling(labeling)!r}"
                )
    return table


class TableFunction(ValueOracle):
    """An explicit function given by its complete 3^n value table.

    Keys may be label tuples or '-','0','+' strings; values anything
    `parse_rational` accepts, or Fractions.
    """

    def __init__(self, arity: int, alpha: Alpha, values: Mapping[object, object]):
        super().__init__(arity, alpha)
        self._table = _normalize_table(arity, values)

    def __getitem__(self, labeling: Labeling) -> Fraction:
        """Direct table read; does not count as an oracle call."""
        return self._table[labeling]

    def _value(self, labeling: Labeling) -> Fraction:
        return self._table[labeling]


class Term(NamedTuple):
    """One low-arity summand: a table applied to a subset of the coordinates."""

    scope: Tuple[int, ...]
    table: TableFunction


class SumFunction(ValueOracle):
    """A function given as a sum of low-arity table terms over scopes.

    Each term contributes its table evaluated on the restriction of the
    input to the term's scope.  This is how large-arity test instances stay
    cheap to evaluate and provably skew bisubmodular (the property is closed
    under coordinate lifting and addition).
    """

    def __init__(self, arity: int, alpha: Alpha, terms: Sequence[Term]):
        super().__init__(arity, alpha)
        if not terms:
            raise ValueError("a sum function needs at least one term")
        for pos, term in enumerate(terms):
            if len(set(term.scope)) != len(term.scope):
                raise ValueError(f"term {pos}: scope {term.scope} has repeated indices")
            if any(i < 0 or i >= arity for i in term.scope):
                raise ValueError(
                    f"term {pos}: scope {term.scope} out of range for arity {arity}"
                )
            if term.table.arity != len(term.scope):
                raise ValueError(
                    f"term {pos}: table arity {term.table.arity} != scope size {len(term.scope)}"
                )
            if term.table.alpha != alpha:
                raise ValueError(f"term {pos}: table alpha differs from instance alpha")
        self._terms = tuple(terms)

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    def _value(self, labeling: Labeling) -> Fraction:
        total = Fraction(0)
        for scope, table in self._terms:
            total += table[tuple(labeling[i] for i in scope)]
        return total


@dataclass(frozen=True)
class ViolationWitness:
    """A pair at which the skew-bisubmodularity inequality fails (lhs > rhs)."""

    a: Labeling
    b: Labeling
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {
            "a": format_labeling(self.a),
            "b": format_labeling(self.b),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def check_alpha_bisubmodular(
    f: ValueOracle, cap: int = DEFAULT_ENUM_CAP
) -> Optional[ViolationWitness]:
    """Exhaustively test f(a meet b) + alpha f(a join0 b) + (1-alpha) f(a join1 b) <= f(a) + f(b).

    Returns None when the inequality holds at all ordered pairs, else the
    lexicographically first violating pair (under '-' < '0' < '+').
    """
    n = f.arity
    if 3**n > cap:
        raise CapExceededError(f"3^{n} points exceed the enumeration cap {cap}")
    labelings = list(all_labelings(n))
    values = {a: f.evaluate(a) for a in labelings}
    al = f.alpha.value
    om = 1 - al
    for a in labelings:
        fa = values[a]
        for b in labelings:
            lhs = values[meet0(a, b)] + al * values[join(a, b, ZERO)] + om * values[join(a, b, POS)]
            rhs = fa + values[b]
            if lhs > rhs:
                return ViolationWitness(a, b, lhs, rhs)
    return None


def expand_to_table(f: ValueOracle, cap: int = DEFAULT_ENUM_CAP) -> TableFunction:
    """Materialize any oracle into an explicit complete table."""
    if 3**f.arity > cap:
        raise CapExceededError(f"3^{f.arity} points exceed the enumeration cap {cap}")
    values = {a: f.evaluate(a) for a in all_labelings(f.arity)}
    return TableFunction(f.arity, f.alpha, values)


def _fast_integer_accept(
    int_values: List[int],
    meets: List[List[int]],
    joins0: List[List[int]],
    joins1: List[List[int]],
    p: int,
    q: int,
) -> bool:
    # Same inequality scaled by q (alpha = p/q), over plain ints: the
    # generator's hot rejection path.  Accepted tables are re-confirmed by
    # check_alpha_bisubmodular before use.
    qp = q - p
    for i, fa in enumerate(int_values):
        mi = meets[i]
        j0 = joins0[i]
        j1 = joins1[i]
        for j, fb in enumerate(int_values):
            if q * int_values[mi[j]] + p * int_values[j0[j]] + qp * int_values[j1[j]] > q * (fa + fb):
                return False
    return True


def _pair_op_indices(arity: int):
    labelings = list(all_labelings(arity))
    index = {a: i for i, a in enumerate(labelings)}
    meets = [[index[meet0(a, b)] for b in labelings] for a in labelings]
    joins0 = [[index[join(a, b, ZERO)] for b in labelings] for a in labelings]
    joins1 = [[index[join(a, b, POS)] for b in labelings] for a in labelings]
    return labelings, meets, joins0, joins1


_PAIR_OPS_CACHE: Dict[int, tuple] = {}


def generate_instance(
    n: int,
    alpha: Alpha,
    num_terms: int,
    max_scope: int,
    seed: int,
    value_range: Tuple[int, int] = (-10, 10),
    max_rejections: int = 10000,
) -> SumFunction:
    """Draw a random skew-bisubmodular sum-of-terms instance, deterministically.

    Each term's scope is drawn uniformly without replacement, its size
    uniform in {1, ..., max_scope}; integer value tables are drawn uniformly
    over `value_range` and rejection-sampled until the checker accepts.
    """
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    if num_terms < 1:
        raise ValueError(f"num_terms must be >= 1, got {num_terms}")
    if max_scope not in (1, 2):
        raise ValueError(f"max_scope must be 1 or 2, got {max_scope}")
    lo, hi = value_range
    if lo > hi:
        raise ValueError(f"empty value range {value_range}")
    rng = random.Random(seed)
    p = alpha.value.numerator
    q = alpha.value.denominator
    terms: List[Term] = []
    for pos in range(num_terms):
        k = rng.randint(1, min(max_scope, n))
        scope = tuple(sorted(rng.sample(range(n), k)))
        if k not in _PAIR_OPS_CACHE:
            _PAIR_OPS_CACHE[k] = _pair_op_indices(k)
        labelings, meets, joins0, joins1 = _PAIR_OPS_CACHE[k]
        for _ in range(max_rejections):
            int_values = [rng.randint(lo, hi) for _ in labelings]
            if not _fast_integer_accept(int_values, meets, joins0, joins1, p, q):
                continue
            table = TableFunction(
                k, alpha, {u: Fraction(v) for u, v in zip(labelings, int_values)}
            )
            witness = check_alpha_bisubmodular(table)
            if witness is not None:  # pragma: no cover - guards the fast path
                raise AssertionError(
                    f"integer pre-check accepted a violating table: {witness.to_json()}"
                )
            terms.append(Term(scope, table))
            break
        else:
            raise GenerationBudgetError(
                f"term {pos}: no accepted table within {max_rejections} draws"
            )
    return SumFunction(n, alpha, terms)


# ---------------------------------------------------------------------------
# JSON instance format
# ---------------------------------------------------------------------------


def _require_key(obj: Mapping, key: str) -> object:
    if key not in obj:
        raise InstanceFormatError(f"missing key {key!r}")
    return obj[key]


def instance_from_json(obj: object) -> ValueOracle:
    """Parse a table-form or sum-form JSON document into an oracle."""
    if not isinstance(obj, Mapping):
        raise InstanceFormatError("instance document must be a JSON object")
    fmt = _require_key(obj, "format")
    raw_n = _require_key(obj, "n")
    if not isinstance(raw_n, int) or isinstance(raw_n, bool) or raw_n < 1:
        raise InstanceFormatError(f"'n' must be a positive integer, got {raw_n!r}")
    n = raw_n
    try:
        alpha = Alpha.parse(_require_key(obj, "alpha"))
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None
    if fmt == "table":
        values = _require_key(obj, "values")
        if not isinstance(values, Mapping):
            raise InstanceFormatError("'values' must be an object")
        try:
            return TableFunction(n, alpha, values)
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from None
    if fmt == "sum":
        raw_terms = _require_key(obj, "terms")
        if not isinstance(raw_terms, list) or not raw_terms:
            raise InstanceFormatError("'terms' must be a non-empty array")
        terms = []
        for pos, raw_term in enumerate(raw_terms):
            if not isinstance(raw_term, Mapping):
                raise InstanceFormatError(f"terms[{pos}] must be an object")
            raw_scope = _require_key(raw_term, "scope")
            if (
                not isinstance(raw_scope, list)
                or not raw_scope
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in raw_scope)
            ):
                raise InstanceFormatError(
                    f"terms[{pos}].scope must be a non-empty array of integers"
                )
            for i in raw_scope:
                if i < 0 or i >= n:
                    raise InstanceFormatError(
                        f"terms[{pos}].scope index {i} out of range for n={n}"
                    )
            if len(set(raw_scope)) != len(raw_scope):
                raise InstanceFormatError(f"terms[{pos}].scope has repeated indices")
            values = _require_key(raw_term, "values")
            if not isinstance(values, Mapping):
                raise InstanceFormatError(f"terms[{pos}].values must be an object")
            try:
                table = TableFunction(len(raw_scope), alpha, values)
            except ValueError as exc:
                raise InstanceFormatError(f"terms[{pos}]: {exc}") from None
            terms.append(Term(tuple(raw_scope), table))
        try:
            return SumFunction(n, alpha, terms)
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from None
    raise InstanceFormatError(f"unknown format {fmt!r} (expected 'table' or 'sum')")


def instance_to_json(f: ValueOracle) -> dict:
    """Serialize an oracle to the canonical JSON form (keys in lex order)."""
    if isinstance(f, TableFunction):
        return {
            "format": "table",
            "n": f.arity,
            "alpha": str(f.alpha),
            "values": {
                format_labeling(a): format_rational(f[a]) for a in all_labelings(f.arity)
            },
        }
    if isinstance(f, SumFunction):
        return {
            "format": "sum",
            "n": f.arity,
            "alpha": str(f.alpha),
            "terms": [
                {
                    "scope": list(term.scope),
                    "values": {
                        format_labeling(u): format_rational(term.table[u])
                        for u in all_labelings(term.table.arity)
                    },
                }
                for term in f.terms
            ],
        }
    raise TypeError(f"cannot serialize oracle of type {type(f).__name__}")
