"""Memoized outcome and Grundy evaluation for finite impartial games.

A game here is a :class:`Ruleset`: a deterministic function from positions to
the finite list of positions reachable in one move.  Positions can be any
hashable values; the option graph must be acyclic and every play must be
finite.  Outcomes follow the usual two conventions: under normal play the
player who cannot move loses, under misere play that player wins.
"""

from __future__ import annotations

import enum
import os
import weakref
from functools import reduce
from operator import xor
from typing import Callable, Hashable, Iterable

Position = Hashable

MEMO_CAP_ENV = "GAMELAB_MEMO_CAP"
DEFAULT_MEMO_CAP = 100_000_000

GRUNDY_VALUE_BITS = 32


class Outcome(enum.Enum):
    """Who wins with best play: P = previous player, N = next player."""

    P = "P"
    N = "N"

    def __str__(self) -> str:
        return self.value


class Convention(enum.Enum):
    NORMAL = "normal"
    MISERE = "misere"

    def __str__(self) -> str:
        return self.value


class MemoLimitExceeded(Exception):
    """A solver's memo tables would outgrow their configured entry cap."""


def memo_cap_from_env() -> int:
    """Entry cap for new solvers: GAMELAB_MEMO_CAP or the default."""
    raw = os.environ.get(MEMO_CAP_ENV)
    if raw is None:
        return DEFAULT_MEMO_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MEMO_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError(f"{MEMO_CAP_ENV} must be positive, got {cap}")
    return cap


def mex(values: Iterable[int]) -> int:
    """Least non-negative integer not occurring in `values`."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def sum_grundy(values: Iterable[int]) -> int:
    """Grundy value of a disjunctive sum given the component values (xor)."""
    return reduce(xor, values, 0)


class Ruleset:
    """A finite acyclic impartial ruleset.

    `options` maps a position to every position reachable in one move, as a
    list in a deterministic order without duplicates.  `canonical`, when
    given, maps a position to a fixed representative of its symmetry class
    (e.g. the sorted heap tuple for heap-symmetric games); solvers memoize on
    canonical representatives and never reorder anything themselves.
    """

    __slots__ = ("name", "_options", "canonical", "__weakref__")

    def __init__(
        self,
        name: str,
        options: Callable[[Position], list],
        canonical: Callable[[Position], Position] | None = None,
    ):
        self.name = name
        self._options = options
        self.canonical = canonical

    def options(self, position: Position) -> list:
        return self._options(position)

    def __repr__(self) -> str:
        return f"Ruleset({self.name!r})"


class Solver:
    """Memoized outcome/Grundy evaluation for one ruleset.

    Keeps one outcome table per convention plus a Grundy table, all keyed by
    canonical position.  The tables together hold at most `memo_cap` entries;
    exceeding the cap raises :class:`MemoLimitExceeded`.  Entries are
    idempotent, so concurrent insertion from threads sharing a solver is
    harmless (the cap check is approximate under such sharing).

    Recursion is run on an explicit stack, so option chains far deeper than
    the interpreter's recursion limit are fine.
    """

    def __init__(self, ruleset: Ruleset, memo_cap: int | None = None):
        self.ruleset = ruleset
        self.memo_cap = memo_cap_from_env() if memo_cap is None else memo_cap
        self._outcome_memo: dict[Convention, dict] = {
            Convention.NORMAL: {},
            Convention.MISERE: {},
        }
        self._grundy_memo: dict = {}

    # -- bookkeeping ------------------------------------------------------

    def entry_count(self) -> int:
        return len(self._grundy_memo) + sum(
            len(t) for t in self._outcome_memo.values()
        )

    def cache_stats(self) -> dict:
        return {"entries": self.entry_count(), "cap": self.memo_cap}

    def table(self, convention: Convention | None = None) -> dict:
        """Live memo dict: the Grundy table, or an outcome table per convention.

        Exposed for persistence; preloaded entries must come from the same
        ruleset or the results are garbage.
        """
        if convention is None:
            return self._grundy_memo
        return self._outcome_memo[convention]

    def _guard_cap(self) -> None:
        if self.entry_count() >= self.memo_cap:
            raise MemoLimitExceeded(
                f"{self.ruleset.name}: memo tables hit the cap of "
                f"{self.memo_cap} entries (set {MEMO_CAP_ENV} to raise it)"
            )

    # -- evaluation -------------------------------------------------------

    def outcome(self, position: Position, convention: Convention = Convention.NORMAL) -> Outcome:
        canon = self.ruleset.canonical
        memo = self._outcome_memo[convention]
        root = canon(position) if canon else position
        hit = memo.get(root)
        if hit is not None:
            return hit
        options = self.ruleset.options
        terminal = Outcome.P if convention is Convention.NORMAL else Outcome.N
        cap_step = 0
        # Frame layout: [position, canonical option list or None, next index].
        stack = [[root, None, 0]]
        on_path = {root}
        while stack:
            frame = stack[-1]
            pos, opts, i = frame
            if opts is None:
                if pos in memo:
                    stack.pop()
                    on_path.discard(pos)
                    continue
                if canon:
                    opts = [canon(o) for o in options(pos)]
                else:
                    opts = list(options(pos))
                frame[1] = opts
            verdict = None
            child = None
            while i < len(opts):
                val = memo.get(opts[i])
                if val is None:
                    child = opts[i]
                    break
                if val is Outcome.P:
                    verdict = Outcome.N
                    break
                i += 1
            frame[2] = i
            if child is not None:
                if child in on_path:
                    raise ValueError(
                        f"{self.ruleset.name}: cyclic options through {child!r}"
                    )
                on_path.add(child)
                stack.append([child, None, 0])
                continue
            if verdict is None:
                verdict = Outcome.P if opts else terminal
            cap_step += 1
            if cap_step >= 1024:
                cap_step = 0
                self._guard_cap()
            memo[pos] = verdict
            stack.pop()
            on_path.discard(pos)
        self._guard_cap()
        return memo[root]

    def grundy(self, position: Position) -> int:
        canon = self.ruleset.canonical
        memo = self._grundy_memo
        root = canon(position) if canon else position
        hit = memo.get(root)
        if hit is not None:
            return hit
        options = self.ruleset.options
        cap_step = 0
        stack = [[root, None, 0]]
        on_path = {root}
        while stack:
            frame = stack[-1]
            pos, opts, i = frame
            if opts is None:
                if pos in memo:
                    stack.pop()
                    on_path.discard(pos)
                    continue
                if canon:
                    opts = [canon(o) for o in options(pos)]
                else:
                    opts = list(options(pos))
                frame[1] = opts
            child = None
            while i < len(opts):
                if opts[i] not in memo:
                    child = opts[i]
                    break
                i += 1
            frame[2] = i
            if child is not None:
                if child in on_path:
                    raise ValueError(
                        f"{self.ruleset.name}: cyclic options through {child!r}"
                    )
                on_path.add(child)
                stack.append([child, None, 0])
                continue
            value = mex([memo[o] for o in opts])
            assert value < (1 << GRUNDY_VALUE_BITS), "Grundy value exceeds design cap"
            cap_step += 1
            if cap_step >= 1024:
                cap_step = 0
                self._guard_cap()
            memo[pos] = value
            stack.pop()
            on_path.discard(pos)
        self._guard_cap()
        return memo[root]


# -- shared per-ruleset solvers -------------------------------------------

_SOLVERS: "weakref.WeakKeyDictionary[Ruleset, Solver]" = weakref.WeakKeyDictionary()


def solver_for(ruleset: Ruleset) -> Solver:
    """The shared memoizing solver for a ruleset instance."""
    solver = _SOLVERS.get(ruleset)
    if solver is None:
        solver = _SOLVERS[ruleset] = Solver(ruleset)
    return solver


def outcome(ruleset: Ruleset, position: Position, convention: Convention = Convention.NORMAL) -> Outcome:
    return solver_for(ruleset).outcome(position, convention)


def grundy(ruleset: Ruleset, position: Position) -> int:
    return solver_for(ruleset).grundy(position)


def sum_rulesets(r1: Ruleset, r2: Ruleset, name: str | None = None) -> Ruleset:
    """Disjunctive sum: positions are pairs, a move changes exactly one side."""

    def options(position):
        a, b = position
        opts = [(x, b) for x in r1.options(a)]
        opts += [(a, y) for y in r2.options(b)]
        return opts

    c1, c2 = r1.canonical, r2.canonical
    canonical = None
    if c1 or c2:

        def canonical(position):
            a, b = position
            return (c1(a) if c1 else a, c2(b) if c2 else b)

    return Ruleset(name or f"{r1.name}+{r2.name}", options, canonical)
