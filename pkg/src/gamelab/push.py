"""The push-the-button combinator and its solved two-heap compounds.

A compound position is an inner position tagged with a phase.  Before the
button is pushed, moves come from the first ruleset and pushing the button is
always available as an extra move (it changes nothing but the phase); after
the push, moves come from the second ruleset.

The four compounds built from Nim, Wythoff's game and the Euclid variant all
have closed-form P-position tests, implemented here in exact integer
arithmetic.  The Nim-then-Euclid compound additionally gets its two
alternative descriptions: a mex/ceil recurrence producing the pair table, and
a classification of single values by the shape of their Zeckendorf word.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import NamedTuple

from .arith import (
    ceil_phi,
    floor_phi,
    is_wythoff_pair,
    zeckendorf,
    zeckendorf_decode,
)
from .core import Outcome, Position, Ruleset
from .heaps import (
    EUCLID,
    NIM,
    WYTHOFF,
    _check_heaps,
    is_euclid_misere_p,
    is_nim_misere_p,
)


class Phase(enum.Enum):
    BEFORE = "before"
    AFTER = "after"

    def __str__(self) -> str:
        return self.value


class PushPosition(NamedTuple):
    phase: Phase
    inner: Position


def push_options(r1: Ruleset, r2: Ruleset, position: PushPosition) -> list[PushPosition]:
    """Moves of the compound at `position` (see module docstring)."""
    phase, g = position
    if phase is Phase.BEFORE:
        # Button child first: its subtree is the bare second game, far
        # smaller than the pre-button tree, so it is the cheapest N-witness.
        opts = [PushPosition(Phase.AFTER, g)]
        opts += [PushPosition(Phase.BEFORE, h) for h in r1.options(g)]
        return opts
    if phase is Phase.AFTER:
        return [PushPosition(Phase.AFTER, h) for h in r2.options(g)]
    raise ValueError(f"bad phase in {position!r}")


@lru_cache(maxsize=None)
def push_ruleset(r1: Ruleset, r2: Ruleset) -> Ruleset:
    """The compound as a ruleset over :class:`PushPosition`."""
    canonical = None
    if r1.canonical is not None and r1.canonical is r2.canonical:
        inner = r1.canonical

        def canonical(p: PushPosition) -> PushPosition:
            return PushPosition(p.phase, inner(p.inner))

    def options(p: PushPosition) -> list[PushPosition]:
        return push_options(r1, r2, p)

    return Ruleset(f"push({r1.name},{r2.name})", options, canonical)


COMPOUNDS = {
    "nim-euclid": (NIM, EUCLID),
    "nim-wythoff": (NIM, WYTHOFF),
    "euclid-nim": (EUCLID, NIM),
    "wythoff-nim": (WYTHOFF, NIM),
}


def compound_ruleset(name: str) -> Ruleset:
    try:
        r1, r2 = COMPOUNDS[name]
    except KeyError:
        raise ValueError(f"unknown compound {name!r}") from None
    return push_ruleset(r1, r2)


# -- Nim-then-Euclid: three equivalent descriptions -------------------------
#
# The P-pairs are the Beatty pairs with one family of exceptions toggled:
# whenever two consecutive members of u_k = fib(k+1) - 1 form a pair, that
# pair flips membership (the even-index pairs are Beatty pairs and leave the
# set; the odd-index pairs are not and join it).


def _is_alternating(word: str) -> bool:
    """'' or '10' repeated: the Zeckendorf shape of fib(2m+2) - 1."""
    return len(word) % 2 == 0 and all(
        c == ("1" if i % 2 == 0 else "0") for i, c in enumerate(word)
    )


def _is_alternating_then_one(word: str) -> bool:
    """'10' repeated then '1': the Zeckendorf shape of fib(2m+3) - 1."""
    return len(word) % 2 == 1 and all(
        c == ("1" if i % 2 == 0 else "0") for i, c in enumerate(word)
    )


def _fib_minus_one_index(x: int) -> int | None:
    """k with x == fib(k+1) - 1, read off the Zeckendorf shape, else None.

    Both alternating shapes have k = len(word) + 1.  x = 0 is doubly a member
    (fib(1) - 1 and fib(2) - 1); this returns 1 and the pair test below owns
    the k = 0 reading.
    """
    word = zeckendorf(x)
    if _is_alternating(word) or _is_alternating_then_one(word):
        return len(word) + 1
    return None


def _is_consecutive_fib_minus_one_pair(x: int, y: int) -> bool:
    """True iff (x, y) == (fib(k+1) - 1, fib(k+2) - 1) for some k >= 0, x <= y."""
    ix = _fib_minus_one_index(x)
    iy = _fib_minus_one_index(y)
    if ix is None or iy is None:
        return False
    if ix + 1 == iy:
        return True
    return x == 0 and iy == 1  # (0, 0), reading the first zero at index 0


def is_nim_euclid_p(x: int, y: int) -> bool:
    """Nim then Euclid: P iff Beatty-pair membership, toggled on the
    consecutive fib-minus-one pairs."""
    if x > y:
        x, y = y, x
    return is_wythoff_pair(x, y) != _is_consecutive_fib_minus_one_pair(x, y)


def nim_euclid_pairs(count: int) -> list[tuple[int, int]]:
    """First `count` P-pairs of Nim-then-Euclid by the recurrence: starting
    from (0, 1), the next lower entry is the least value not used by any
    earlier pair and its partner is ceil(lower * phi)."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    candidate = 0
    a, b = 0, 1
    while len(pairs) < count:
        pairs.append((a, b))
        used.add(a)
        used.add(b)
        while candidate in used:
            candidate += 1
        a = candidate
        b = ceil_phi(a)
    return pairs


def nim_euclid_pairs_below(limit: int) -> list[tuple[int, int]]:
    """All recurrence pairs with both coordinates <= limit, in order."""
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    candidate = 0
    a, b = 0, 1
    while a <= limit and b <= limit:
        pairs.append((a, b))
        used.add(a)
        used.add(b)
        while candidate in used:
            candidate += 1
        a = candidate
        b = ceil_phi(a)
    return pairs


class FibClassification(NamedTuple):
    is_lower: bool
    partner: int


def nim_euclid_fib_classify(x: int) -> FibClassification:
    """Which column of the P-pair table x sits in, with its partner.

    Lower entries are the values whose Zeckendorf word either is alternating
    ('10' repeated, possibly empty) or ends in an even number of zeros without
    being an alternating word plus '1'.  An alternating word's partner appends
    '1', any other lower word's partner appends '0', and an upper word's
    partner drops its last digit.
    """
    word = zeckendorf(x)
    if _is_alternating(word):
        return FibClassification(True, zeckendorf_decode(word + "1"))
    trailing = len(word) - len(word.rstrip("0"))
    if trailing % 2 == 0 and not _is_alternating_then_one(word):
        return FibClassification(True, zeckendorf_decode(word + "0"))
    return FibClassification(False, zeckendorf_decode(word[:-1]))


# -- the other three compounds ----------------------------------------------


def is_nim_wythoff_p(x: int, y: int) -> bool:
    """Nim then Wythoff: the misere-Nim kernel {(0,1)} + {(k,k): k >= 2}."""
    return is_nim_misere_p((x, y))


def is_euclid_nim_p(x: int, y: int) -> bool:
    """Euclid then Nim: misere-Euclid P-positions, extended to zero pairs.

    With one empty heap the variant's only line is the escape to (0, 0), whose
    button answer is a losing Nim position, so (0, i) with i >= 1 is P and
    (0, 0) is N.
    """
    if x > y:
        x, y = y, x
    if x == 0:
        return y >= 1
    return is_euclid_misere_p((x, y))


def is_wythoff_nim_p(x: int, y: int) -> bool:
    """Wythoff then Nim: both coordinates of a positive-index Beatty pair, each
    lowered by one."""
    if x > y:
        x, y = y, x
    n = y - x
    return n >= 1 and x + 1 == floor_phi(n)


COMPOUND_ORACLES = {
    "nim-euclid": is_nim_euclid_p,
    "nim-wythoff": is_nim_wythoff_p,
    "euclid-nim": is_euclid_nim_p,
    "wythoff-nim": is_wythoff_nim_p,
}


def push_p_oracle(compound: str, position: tuple) -> Outcome:
    """Closed-form outcome of a named compound at BEFORE-phase pair `position`."""
    try:
        test = COMPOUND_ORACLES[compound]
    except KeyError:
        raise ValueError(f"unknown compound {compound!r}") from None
    a, b = _check_heaps(position, arity=2)
    return Outcome.P if test(a, b) else Outcome.N
