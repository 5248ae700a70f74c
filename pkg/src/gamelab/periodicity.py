"""Eventual periodicity of subtraction compounds, with finite-state certificates.

For a subtraction set S compounded with a single-heap ruleset whose
P-positions repeat with period k, the outcome at heap n is a function of the
previous max(S) outcomes and n mod k.  That recursion walks a finite state
space, so the first repeated lookback state proves the whole stream periodic
forever; the same argument certifies Grundy streams with the larger value
alphabet.  Minimal (preperiod, period) are then recovered by re-verification
against the certified cycle, since a raw repetition need not be tight.

Split-heap Grundy sequences (a move may split a heap in two) look back over
the whole prefix, so they get a separate certifier: once values agree with
their shift by p on [n0, 2*n0 + p + max_take), every later heap's split
options land their larger part inside the verified zone and induction closes
the loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Callable, Iterable, Iterator, Sequence

from . import core
from .core import Convention, Outcome, Ruleset, mex
from .heaps import subtraction


class HorizonExceeded(Exception):
    """The computed horizon ended before a period could be certified."""


@dataclass(frozen=True)
class PeriodCertificate:
    """Minimal eventual period of a stream, plus the object that proves it.

    `state` and `state_indices` carry the repeated lookback state for
    state-machine certificates (the raw stride `state_indices[1] -
    state_indices[0]` is a multiple of `period` but need not equal it, and
    need not be a multiple of the scan modulus either once minimized).
    Split-heap certificates leave them None; `checked_to` is the last index
    that participated in verification either way.
    """

    preperiod: int
    period: int
    state: tuple | None = None
    state_indices: tuple[int, int] | None = None
    checked_to: int = 0

    def to_dict(self) -> dict:
        return {"preperiod": self.preperiod, "period": self.period}


def _validated_moves(s: Iterable[int]) -> tuple[int, ...]:
    moves = tuple(sorted(set(s)))
    if not moves or moves[0] < 1:
        raise ValueError(f"subtraction set must be non-empty and positive, got {moves}")
    return moves


# -- streams ----------------------------------------------------------------


def outcome_stream(
    s1: Iterable[int], r2: Ruleset, convention: Convention = Convention.NORMAL
) -> Iterator[Outcome]:
    """Outcomes of Subtraction(s1) compounded with r2, at heaps 0, 1, 2, ...

    Position n is P exactly when the button answer (r2 at heap n, same
    convention) is N and every subtraction move lands on an N heap.  Both
    conventions share that recursion because the button keeps every
    pre-button position non-terminal.
    """
    moves = _validated_moves(s1)
    solver = core.solver_for(r2)
    seq: list[Outcome] = []
    for n in count():
        if solver.outcome((n,), convention) is Outcome.P or any(
            seq[n - v] is Outcome.P for v in moves if v <= n
        ):
            val = Outcome.N
        else:
            val = Outcome.P
        seq.append(val)
        yield val


def outcome_sequence(
    s1: Iterable[int],
    r2: Ruleset,
    length: int,
    convention: Convention = Convention.NORMAL,
) -> list[Outcome]:
    stream = outcome_stream(s1, r2, convention)
    return [next(stream) for _ in range(length)]


def grundy_stream(s1: Iterable[int], r2: Ruleset) -> Iterator[int]:
    """Grundy values of the compound at heaps 0, 1, 2, ...: the mex of the
    subtraction options' values together with r2's value at the same heap."""
    moves = _validated_moves(s1)
    solver = core.solver_for(r2)
    seq: list[int] = []
    for n in count():
        reachable = [seq[n - v] for v in moves if v <= n]
        reachable.append(solver.grundy((n,)))
        val = mex(reachable)
        seq.append(val)
        yield val


def grundy_sequence(s1: Iterable[int], r2: Ruleset, length: int) -> list[int]:
    stream = grundy_stream(s1, r2)
    return [next(stream) for _ in range(length)]


def ruleset_outcome_stream(
    r: Ruleset, convention: Convention = Convention.NORMAL
) -> Iterator[Outcome]:
    """Outcomes of a plain single-heap ruleset at heaps 0, 1, 2, ..."""
    solver = core.solver_for(r)
    for n in count():
        yield solver.outcome((n,), convention)


# -- certificates -------------------------------------------------------------


def certified_period(
    stream: Iterable,
    window: int,
    modulus: int,
    state_bound: int,
    start: int = 0,
) -> PeriodCertificate:
    """Certified minimal (preperiod, period) of a finite-state stream.

    Assumes element n (for n >= start) is a function of the state
    (elements n-window .. n-1, n mod modulus).  Scans states from index
    start + window; by pigeonhole a repeat must appear within `state_bound`
    + 1 probes (the size of the state space), else the assumption is broken
    and :class:`HorizonExceeded` is raised.  The repeat proves the stream
    periodic forever from the first repeated index minus the window;
    minimality is then recovered by checking divisors of the raw stride
    against one full certified cycle and walking the start of periodicity
    backwards.
    """
    if window < 0 or modulus < 1 or state_bound < 1 or start < 0:
        raise ValueError("window >= 0, modulus >= 1, state_bound >= 1, start >= 0")
    values: list = []
    it = iter(stream)

    def need(upto: int) -> None:
        while len(values) <= upto:
            try:
                values.append(next(it))
            except StopIteration:
                raise HorizonExceeded(
                    f"stream ended at {len(values)} elements, needed {upto + 1}"
                ) from None

    seen: dict = {}
    first = second = -1
    state = None
    base = start + window
    for n in range(base, base + state_bound + 2):
        need(n - 1)
        probe = (tuple(values[n - window : n]), n % modulus)
        if probe in seen:
            first, second, state = seen[probe], n, probe
            break
        seen[probe] = n
    else:
        raise HorizonExceeded(
            f"no repeated state within the bound of {state_bound} states; "
            "window/modulus do not match the stream's recursion"
        )

    raw_period = second - first
    cycle_start = first - window  # >= start; periodic from here on, certified
    period = raw_period
    for d in range(1, raw_period + 1):
        if raw_period % d:
            continue
        need(cycle_start + raw_period + d - 1)
        if all(
            values[m + d] == values[m]
            for m in range(cycle_start, cycle_start + raw_period)
        ):
            period = d
            break
    preperiod = cycle_start
    while preperiod > 0 and values[preperiod - 1] == values[preperiod - 1 + period]:
        preperiod -= 1
    return PeriodCertificate(
        preperiod=preperiod,
        period=period,
        state=state,
        state_indices=(first, second),
        checked_to=len(values) - 1,
    )


def certified_split_period(values: Sequence, max_take: int) -> PeriodCertificate:
    """Certified minimal (preperiod, period) of a split-heap Grundy sequence.

    A candidate (n0, p) read off the horizon is eternal once values[n] ==
    values[n + p] holds for n0 <= n < 2*n0 + p + max_take: any heap past that
    range splits, under every move, into parts whose larger side is already
    inside the verified zone, so the option value sets of n and n + p match
    and induction extends the agreement.  Candidates are tried in ascending
    p (with the tightest n0 the horizon supports), which yields the minimal
    eventual period because a smaller true period would certify first.
    """
    if max_take < 1:
        raise ValueError(f"max_take must be >= 1, got {max_take}")
    horizon = len(values)
    for p in range(1, horizon):
        n0 = 0
        for n in range(horizon - p - 1, -1, -1):
            if values[n] != values[n + p]:
                n0 = n + 1
                break
        if 2 * n0 + 2 * p + max_take <= horizon:
            return PeriodCertificate(
                preperiod=n0, period=p, checked_to=horizon - 1
            )
    raise HorizonExceeded(
        f"horizon of {horizon} values is too short to certify any period"
    )


# -- interval compounds -------------------------------------------------------


def predicted_period(k1: int, k2: int) -> int:
    """Closed-form outcome period of Subtraction({1..k1}) then Subtraction({1..k2}).

    (k1+1)*a + 1 for the least a with (k1+1)*a = -1 mod (k2+1); such an a
    exists iff k1+1 and k2+1 are coprime, and otherwise the period is k1+1.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError(f"need k1, k2 >= 1, got ({k1}, {k2})")
    p1, p2 = k1 + 1, k2 + 1
    for a in range(1, p2 + 1):
        if (p1 * a) % p2 == p2 - 1:
            return p1 * a + 1
    return p1


def interval_compound_certificate(
    k1: int, k2: int, convention: Convention = Convention.NORMAL
) -> PeriodCertificate:
    """Certified outcome periodicity of the {1..k1} then {1..k2} compound."""
    if k1 < 1 or k2 < 1:
        raise ValueError(f"need k1, k2 >= 1, got ({k1}, {k2})")
    stream = outcome_stream(range(1, k1 + 1), subtraction(range(1, k2 + 1)), convention)
    return certified_period(
        stream, window=k1, modulus=k2 + 1, state_bound=(k2 + 1) * 2**k1
    )


def compound_certificates(
    s1: Iterable[int], s2: Iterable[int], convention: Convention = Convention.NORMAL
) -> dict:
    """Outcome and Grundy certificates for Subtraction(s1) then Subtraction(s2).

    The second game's own outcome stream is certified first (window max(s2),
    no modulus); its period becomes the modulus of the compound scan and its
    preperiod shifts the scan start, which keeps the state recursion sound
    when the second game is not purely periodic.
    """
    moves1 = _validated_moves(s1)
    moves2 = _validated_moves(s2)
    r2 = subtraction(moves2)
    m2 = moves2[-1]
    r2_cert = certified_period(
        ruleset_outcome_stream(r2, convention),
        window=m2,
        modulus=1,
        state_bound=2**m2,
    )
    window = moves1[-1]
    k = r2_cert.period
    out_cert = certified_period(
        outcome_stream(moves1, r2, convention),
        window=window,
        modulus=k,
        state_bound=k * 2**window,
        start=r2_cert.preperiod,
    )
    result = {"r2": r2_cert, "outcome": out_cert}
    if convention is Convention.NORMAL:
        r2_vals = certified_period(
            _ruleset_grundy_stream(r2), window=m2, modulus=1,
            state_bound=(m2 + 1) ** m2 + 1,
        )
        kv = r2_vals.period
        result["r2_values"] = r2_vals
        result["values"] = certified_period(
            grundy_stream(moves1, r2),
            window=window,
            modulus=kv,
            state_bound=kv * (len(moves1) + 2) ** window,
            start=r2_vals.preperiod,
        )
    return result


def _ruleset_grundy_stream(r: Ruleset) -> Iterator[int]:
    solver = core.solver_for(r)
    for n in count():
        yield solver.grundy((n,))
