"""Heap rulesets: Nim, Wythoff's game, a Euclid variant, Zeruclid, subtraction.

Positions are tuples of non-negative heap sizes.  Every option function
returns a duplicate-free list in a deterministic order; all the rulesets here
are symmetric under permuting heaps, so their solvers memoize on the sorted
tuple.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from math import gcd
from operator import xor
from typing import Iterable

from .arith import consecutive_fib_index, is_wythoff_pair, ratio_below_phi
from .core import Outcome, Ruleset


def _check_heaps(position, arity: int | None = None) -> tuple:
    if not isinstance(position, tuple):
        raise ValueError(f"heap position must be a tuple, got {position!r}")
    if arity is not None and len(position) != arity:
        raise ValueError(f"expected {arity} heaps, got {position!r}")
    for h in position:
        if not isinstance(h, int) or isinstance(h, bool) or h < 0:
            raise ValueError(f"heap sizes must be non-negative ints, got {position!r}")
    return position


def _sorted_tuple(position: tuple) -> tuple:
    return tuple(sorted(position))


def nim_options(position: tuple) -> list[tuple]:
    """Take any positive number of tokens from one heap."""
    _check_heaps(position)
    opts = []
    for j, h in enumerate(position):
        head, tail = position[:j], position[j + 1 :]
        for new in range(h):
            opts.append(head + (new,) + tail)
    return opts


def wythoff_options(position: tuple) -> list[tuple]:
    """Nim moves on two heaps, plus taking the same positive amount from both."""
    a, b = _check_heaps(position, arity=2)
    opts = [(x, b) for x in range(a)]
    opts += [(a, y) for y in range(b)]
    opts += [(a - k, b - k) for k in range(1, min(a, b) + 1)]
    return opts


def euclid_options(position: tuple) -> list[tuple]:
    """Remove a positive multiple of the smaller heap from the larger, staying >= 1.

    Equal positive heaps and (0, 0) are terminal; a pair with exactly one
    empty heap has the single escape move to (0, 0).
    """
    a, b = _check_heaps(position, arity=2)
    if a == 0 or b == 0:
        return [] if a == b else [(0, 0)]
    if a == b:
        return []
    if a < b:
        return [(a, b - k * a) for k in range(1, (b - 1) // a + 1)]
    return [(a - k * b, b) for k in range(1, (a - 1) // b + 1)]


def zeruclid_options(position: tuple) -> list[tuple]:
    """Remove a positive multiple of the smallest non-zero heap from any heap,
    keeping every heap non-negative.  All heaps empty is terminal."""
    _check_heaps(position)
    nonzero = [h for h in position if h]
    if not nonzero:
        return []
    m = min(nonzero)
    opts = []
    for j, h in enumerate(position):
        head, tail = position[:j], position[j + 1 :]
        for k in range(1, h // m + 1):
            opts.append(head + (h - k * m,) + tail)
    return opts


def subtraction(values: Iterable[int]) -> Ruleset:
    """Single-heap subtraction game: remove v tokens for any v in `values`."""
    vals = tuple(sorted(set(values)))
    if not vals or vals[0] < 1:
        raise ValueError(f"subtraction set must be non-empty and positive, got {vals}")
    return _subtraction_cached(vals)


@lru_cache(maxsize=None)
def _subtraction_cached(vals: tuple[int, ...]) -> Ruleset:
    def options(position):
        (n,) = _check_heaps(position, arity=1)
        return [(n - v,) for v in vals if v <= n]

    name = "subtraction({})".format(",".join(map(str, vals)))
    return Ruleset(name, options)


NIM = Ruleset("nim", nim_options, canonical=_sorted_tuple)
WYTHOFF = Ruleset("wythoff", wythoff_options, canonical=_sorted_tuple)
EUCLID = Ruleset("euclid", euclid_options, canonical=_sorted_tuple)
ZERUCLID = Ruleset("zeruclid", zeruclid_options, canonical=_sorted_tuple)

RULESETS = {
    "nim": NIM,
    "wythoff": WYTHOFF,
    "euclid": EUCLID,
    "zeruclid": ZERUCLID,
}


# -- closed-form P-position tests ------------------------------------------


def is_nim_p(position: tuple) -> bool:
    """Normal-play Nim: P iff the xor of the heaps is zero."""
    _check_heaps(position)
    return reduce(xor, position, 0) == 0


def is_nim_misere_p(position: tuple) -> bool:
    """Misere Nim: play normal Nim until only heaps of one remain, then flip
    parity — P iff some heap exceeds 1 and the xor is 0, or the count of
    one-token heaps is odd."""
    _check_heaps(position)
    if any(h > 1 for h in position):
        return reduce(xor, position, 0) == 0
    return sum(position) % 2 == 1


def is_wythoff_p(position: tuple) -> bool:
    """Wythoff's game: P iff the sorted pair is a Beatty pair."""
    a, b = _check_heaps(position, arity=2)
    return is_wythoff_pair(a, b)


def is_euclid_p(position: tuple) -> bool:
    """Euclid under normal play: P iff the larger/smaller ratio is below phi.

    Defined on positive pairs only; pairs with a zero heap are search
    territory for the variant, not this closed form.
    """
    a, b = _check_heaps(position, arity=2)
    if a == 0 or b == 0:
        raise ValueError(f"Euclid oracle needs positive heaps, got {position!r}")
    return ratio_below_phi(min(a, b), max(a, b))


def is_euclid_misere_p(position: tuple) -> bool:
    """Euclid under misere play.

    Reduce the pair by its gcd.  If it is a pair of consecutive Fibonacci
    numbers (fib(k), fib(k+1)), the position is P exactly for even k (the
    convergents above phi); otherwise P iff the ratio is below phi.
    """
    a, b = _check_heaps(position, arity=2)
    if a == 0 or b == 0:
        raise ValueError(f"Euclid oracle needs positive heaps, got {position!r}")
    if a > b:
        a, b = b, a
    g = gcd(a, b)
    k = consecutive_fib_index(a // g, b // g)
    if k is not None:
        return k % 2 == 0
    return ratio_below_phi(a, b)


BASE_ORACLES = {
    "nim-normal": is_nim_p,
    "nim-misere": is_nim_misere_p,
    "wythoff": is_wythoff_p,
    "euclid-normal": is_euclid_p,
    "euclid-misere": is_euclid_misere_p,
}


def base_p_oracle(mode: str, position: tuple) -> Outcome:
    """Closed-form outcome for a named two-heap game; see BASE_ORACLES keys."""
    try:
        test = BASE_ORACLES[mode]
    except KeyError:
        raise ValueError(f"unknown oracle mode {mode!r}") from None
    return Outcome.P if test(position) else Outcome.N
