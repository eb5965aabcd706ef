"""
Exact-summation oracle for local events on Z^d.

A ray from a site runs until the first occupied site; its gap g (unoccupied
sites skipped) has mass p q^g. Gaps 0..K are enumerated one by one and
everything beyond K is lumped into a single FAR state of mass q^(K+1). When
the event does not depend on how far FAR is, that mass is summed exactly;
otherwise it goes into the tail bound. Endpoint choices (one-choice model)
or segment coins (independent model) are enumerated exhaustively.
"""

import itertools
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from seglat.analytic.local import Number, _exact
from seglat.core.exceptions import ModelError, ParameterError
from seglat.lattice.sites import check_probability
from seglat.montecarlo.models import LocalEvent, LocalEventSpec

FAR = None
Gaps = Tuple[Optional[int], ...]


class OracleResult(NamedTuple):
    """Lower value and the mass of undecided configurations above it."""

    value: Number
    tail_bound: Number


def _mark_expectation(
    n: int, marks: Sequence[Tuple[object, Number]], predicate: Callable[..., bool]
) -> Number:
    """E[predicate] over n independent marks drawn from `marks`."""
    total: Number = 0
    for combo in itertools.product(marks, repeat=n):
        weight: Number = 1
        for _, w in combo:
            weight *= w
        if predicate(*(value for value, _ in combo)):
            total += weight
    return total


def _gap_sum(
    n_rays: int, p: Number, K: int, conditional: Callable[[Gaps], Optional[Number]]
) -> OracleResult:
    """Sum of mass x conditional probability over all gap states of n rays."""
    q = 1 - p
    states: List[Tuple[Optional[int], Number]] = [(g, p * q**g) for g in range(K + 1)]
    states.append((FAR, q ** (K + 1)))
    value: Number = 0
    tail: Number = 0
    for combo in itertools.product(states, repeat=n_rays):
        weight: Number = 1
        for _, w in combo:
            weight *= w
        if weight == 0:
            continue
        c = conditional(tuple(g for g, _ in combo))
        if c is None:
            tail += weight
        else:
            value += weight * c
    return OracleResult(value, tail)


def _constant(c: Number) -> Callable[[Gaps], Number]:
    return lambda gaps: c


def _product(results: Sequence[OracleResult]) -> OracleResult:
    low: Number = 1
    high: Number = 1
    for r in results:
        low *= r.value
        high *= r.value + r.tail_bound
    return OracleResult(low, high - low)


def _complement(r: OracleResult) -> OracleResult:
    return OracleResult(1 - r.value - r.tail_bound, r.tail_bound)


def _mix(p: Number, occupied: OracleResult, empty: OracleResult) -> OracleResult:
    q = 1 - p
    return OracleResult(
        p * occupied.value + q * empty.value,
        p * occupied.tail_bound + q * empty.tail_bound,
    )


def truncated_sum_oracle(
    event: LocalEventSpec,
    d: int,
    p: Number,
    lam: Optional[Number] = None,
    K: int = 60,
) -> OracleResult:
    """
    Probability of a local event at the origin of Z^d.

    lam=None selects the one-choice model, otherwise the independent model
    with segment colour probability lam. Events are taken along e_0 (and
    e_1 for the perpendicular pair); tail_bound is at most rays * q^K.
    """
    if K < 1:
        raise ParameterError("Cutoff K must be >= 1", field="K", value=K)
    if d < 2:
        raise ParameterError("Dimension must be >= 2", field="d", value=d)
    check_probability(p, "p", allow_zero=False)
    p = _exact(p)

    if lam is None:
        marks: List[Tuple[object, Number]] = [(i, Fraction(1, 2 * d)) for i in range(2 * d)]
    else:
        check_probability(lam, "lambda", allow_zero=True)
        lam = _exact(lam)
        marks = [(True, lam), (False, 1 - lam)]
    one_choice = lam is None

    def axis_blue(axis: int) -> OracleResult:
        """Segment through an unoccupied origin along `axis` is blue."""
        if one_choice:
            c = _mark_expectation(2, marks, lambda left, right: left == 2 * axis or right == 2 * axis + 1)
        else:
            c = _mark_expectation(1, marks, lambda coin: coin)
        return _gap_sum(2, p, K, _constant(c))

    kind = event.kind
    if kind == LocalEvent.EDGE_BLUE:
        # rays west from o (inclusive) and east from e_0 (inclusive)
        return axis_blue(0)

    if kind == LocalEvent.VERTEX_BLUE:
        if one_choice:
            # an occupied origin always declares some incident segment green
            occupied = OracleResult(_mark_expectation(1, marks, lambda own: True), 0)
        else:
            misses = [
                _complement(
                    _gap_sum(2, p, K, _constant(_mark_expectation(2, marks, lambda a, b: a or b)))
                )
                for _ in range(d)
            ]
            occupied = _complement(_product(misses))
        empty = _complement(_product([_complement(axis_blue(axis)) for axis in range(d)]))
        return _mix(p, occupied, empty)

    if kind == LocalEvent.PAIR_COLLINEAR:
        if one_choice:
            both = _mark_expectation(
                3, marks, lambda left, own, right: (left == 0 or own == 1) and (own == 0 or right == 1)
            )
        else:
            both = _mark_expectation(2, marks, lambda a, b: a and b)
        occupied = _gap_sum(2, p, K, _constant(both))
        return _mix(p, occupied, axis_blue(0))

    if kind == LocalEvent.PAIR_PERP:
        if one_choice:
            both = _mark_expectation(
                3, marks, lambda own, east, north: (own == 0 or east == 1) and (own == 2 or north == 3)
            )
        else:
            both = _mark_expectation(2, marks, lambda a, b: a and b)
        occupied = _gap_sum(2, p, K, _constant(both))
        return _mix(p, occupied, _product([axis_blue(0), axis_blue(1)]))

    if kind == LocalEvent.PAIR_COLLINEAR_DISTANCE:
        if one_choice:
            raise ModelError("Distance pairs are summed for the independent model", model="one-choice", event=str(event))
        k = event.k
        shared = _mark_expectation(1, marks, lambda coin: coin)
        separate = _mark_expectation(2, marks, lambda a, b: a and b)

        def conditional(gaps: Gaps) -> Optional[Number]:
            # ray east from site 1 (inclusive): both edges share a segment iff its gap >= k
            gap = gaps[0]
            if gap is FAR:
                return shared if K + 1 >= k else None
            return shared if gap >= k else separate

        return _gap_sum(1, p, K, conditional)

    raise ModelError("Unknown local event", event=str(event))
