#!/usr/bin/env python3
"""
Recipe Replay
Scripted linkage chains out of ω^a_{−i}: chains that end strictly lower in m-order,
chains that shift a, and the reductions onto ω-shapes. Every step is re-checked as it
is generated and a failure names the exact claim that broke.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from affine_even import check_prime
from certificates import Certificate, reverse_certificate, verify_certificate
from errors import ClaimFailed, HypothesisViolated, PreconditionViolated, WeightError
from jantzen import even_irreducible, f0_member, fast_f0_screen_reason
from linkage_moves import ODD_UP_2E, ODD_UP_PAIR, Move, apply_move, odd_target
from weights import (ParityWeight, Weight, d_interval, dominance_leq, is_dominant,
                     m_precedes, omega, omega_shape, require_dominant)

logger = logging.getLogger(__name__)

PROP5_2_EVEN = "prop5_2_even"
PROP5_2_ODD = "prop5_2_odd"
LEM5_3 = "lem5_3"
LEM5_4 = "lem5_4"
PROP6_1_ODD = "prop6_1_odd"
PROP6_1_EVEN = "prop6_1_even"
PROP6_2_ODD = "prop6_2_odd"
PROP6_2_EVEN = "prop6_2_even"
PROP6_3_ODD = "prop6_3_odd"
PROP6_3_EVEN = "prop6_3_even"
LEM7_2_N_EVEN = "lem7_2_n_even"
LEM7_2_N_ODD = "lem7_2_n_odd"
LEM7_2_P_LT_N_ODD = "lem7_2_p_lt_n_odd"
LEM7_2_P_LT_N_EVEN = "lem7_2_p_lt_n_even"
PROP3_4_REDUCTION = "prop3_4_reduction"
PROP3_3_GREEDY = "prop3_3_greedy"

# what the end of a chain is checked against
NON_MINIMALITY = "non_minimality"
SHIFT = "shift"
REDUCTION = "reduction"

SHIFT_RECIPES = (LEM7_2_N_EVEN, LEM7_2_N_ODD, LEM7_2_P_LT_N_ODD, LEM7_2_P_LT_N_EVEN)


class ChainBuilder:
    """Applies recipe steps one at a time, checking every claim where it is made"""

    def __init__(self, recipe: str, start: ParityWeight, p: int, strict: bool = False,
                 quiet: bool = False):
        self.recipe = recipe
        self.p = p
        self.strict = strict
        self.quiet = quiet
        self.start = start
        self.current = start
        self.steps: List[Move] = []
        self.justifications: List[dict] = []
        self.mismatches: List[str] = []

    @property
    def weight(self) -> Weight:
        return self.current.weight

    def certificate(self) -> Certificate:
        return Certificate(self.p, self.start, list(self.steps), self.current)

    def fail(self, claim: str):
        raise ClaimFailed(self.recipe, len(self.steps), claim, self.certificate())

    def step(self, move: Move) -> None:
        try:
            target = apply_move(self.current, move, self.p, self.strict)
        except PreconditionViolated as e:
            self.fail(f"{move} applies at {self.weight} ({e})")
        self._advance(move, target)

    def try_step(self, move: Move) -> bool:
        """Take the step if every precondition holds; report whether it was taken"""
        try:
            target = apply_move(self.current, move, self.p, self.strict)
        except PreconditionViolated:
            return False
        self._advance(move, target)
        return True

    def _advance(self, move: Move, target: ParityWeight) -> None:
        if move.is_odd:
            lower = self.weight if move.kind in (ODD_UP_2E, ODD_UP_PAIR) else target.weight
            self._justify(lower)
        logger.debug(f"{self.recipe}: {self.current} -> {target} by {move}")
        self.steps.append(move)
        self.current = target

    def _justify(self, lower: Weight) -> None:
        verdict, rule = fast_f0_screen_reason(lower, self.p)
        if verdict is None:
            rule = "jantzen"
        elif verdict != even_irreducible(lower, self.p).irreducible:
            self.fail(f"shape rule {rule} agrees with the Jantzen criterion at {lower}")
        self.justifications.append({"step": len(self.steps), "lower": lower.to_json(), "rule": rule})

    def up_2e(self, j: int, times: int = 1) -> None:
        for _ in range(times):
            self.step(Move.up_2e(j))

    def down_2e(self, j: int, times: int = 1) -> None:
        for _ in range(times):
            self.step(Move.down_2e(j))

    def up_pair(self, *indices: int) -> None:
        for i in indices:
            self.step(Move.up_pair(i))

    def down_pair(self, *indices: int) -> None:
        for i in indices:
            self.step(Move.down_pair(i))

    def claim_d(self, k: int, l: int, value: int) -> None:
        try:
            actual = d_interval(self.weight, k, l)
        except WeightError as e:
            self.fail(f"d_{{{k},{l}}} = {value} at {self.weight} ({e})")
        if actual != value:
            self.fail(f"d_{{{k},{l}}} = {value} at {self.weight} (found {actual})")

    def reflect(self, i: int, j: int, k: int, d: Optional[int] = None) -> None:
        if d is not None:
            self.claim_d(i, j, d)
        self.step(Move.reflect(i, j, k))

    def walk(self, target: Weight) -> None:
        """Expand an elided run of odd moves ending at `target`"""
        path = _walk_moves(self.weight, target, self.p, self.strict)
        if path is None:
            self.fail(f"an eligible dominant run of odd moves leads from {self.weight} to {target}")
        for move in path:
            self.step(move)

    def note_display(self, printed: Sequence[int], label: str) -> None:
        """Compare the reached weight with the displayed one; a mismatch is never fatal"""
        if tuple(printed) != self.weight.entries:
            message = (f"{self.recipe}: displayed {label} ({','.join(str(v) for v in printed)}) "
                       f"differs from the computed {self.weight}")
            if self.quiet:
                logger.debug(message)
            else:
                logger.warning(message)
            self.mismatches.append(message)

    def claim_below_start(self) -> None:
        if not m_precedes(self.weight, self.start.weight):
            self.fail(f"{self.weight} ≺ {self.start.weight} in m-order")

    def claim_strictly_dominated(self) -> None:
        if self.weight == self.start.weight or not dominance_leq(self.weight, self.start.weight):
            self.fail(f"{self.weight} ⊲ {self.start.weight}")

    def claim_weight(self, expected: Weight, label: str) -> None:
        if self.weight != expected:
            self.fail(f"{label} is {expected} (reached {self.weight})")


def _walk_moves(source: Weight, target: Weight, p: int, strict: bool) -> Optional[List[Move]]:
    """First depth-first order of 2ε and pair increments from `source` to `target`
    whose every weight is dominant and whose every lower weight is eligible"""
    if source.n != target.n:
        return None
    gaps = [t - s for s, t in zip(source.entries, target.entries)]
    rising = all(g >= 0 for g in gaps)
    if not rising and not all(g <= 0 for g in gaps):
        return None
    dead = set()

    def candidates(weight: Weight) -> Iterator[Move]:
        remaining = [abs(t - v) for v, t in zip(weight.entries, target.entries)]
        for q in range(1, weight.n + 1):
            if remaining[q - 1] >= 2:
                yield Move.up_2e(q) if rising else Move.down_2e(q)
            if (q < weight.n and remaining[q - 1] >= 1 and remaining[q] >= 1
                    and weight.entry(q) == weight.entry(q + 1)):
                yield Move.up_pair(q) if rising else Move.down_pair(q)

    def search(weight: Weight) -> Optional[List[Move]]:
        if weight == target:
            return []
        if weight in dead:
            return None
        for move in candidates(weight):
            following = odd_target(weight, move)
            lower = weight if rising else following
            if is_dominant(following) and f0_member(lower, p, strict):
                rest = search(following)
                if rest is not None:
                    return [move] + rest
        dead.add(weight)
        return None

    return search(source)


def _iota(a: int, i: int, n: int, head: Optional[int] = None) -> Weight:
    """(head)(a+1)a^{n−i}(a−1)…(a−i+2), head defaulting to a+2"""
    top = a + 2 if head is None else head
    return Weight(tuple([top, a + 1] + [a] * (n - i) + [a - k for k in range(1, i - 1)]))


def _greedy_start(a: int, i: int, n: int) -> Weight:
    """(a, a−1, …, a−i+1, (a−i)^{n−i})"""
    return Weight(tuple([a - k for k in range(i)] + [a - i] * (n - i)))


def _close_with_head_reflection(chain: ChainBuilder, p: int) -> None:
    """Raise entries 3..p−1 by pair moves, then reflect in ε_1 − ε_p"""
    chain.up_pair(*range(3, p - 1, 2))
    chain.reflect(1, p, 1, d=p + 1)


def _block_endgame(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    if i == 2:
        _close_with_head_reflection(chain, p)
        return
    lifts = (n_bar - i + 2) // 2
    chain.up_pair(*range(3, 3 + 2 * lifts, 2))
    chain.reflect(n_bar - i + 4, n - i + 3, n_under, d=n_under * p + 1)


def _lem7_2_finish(chain: ChainBuilder, n: int) -> None:
    """(a+1)a^{n−1} up to (a+1)^{n−1}a for n even, (a+1)^n for n odd"""
    last = n - 1 if n % 2 == 0 else n
    chain.up_pair(*range(2, last, 2))


# ----------------------------------------------------------------- hypotheses

def _below_p(i: int, n: int, p: int) -> Optional[str]:
    if p < n:
        return "p ≥ n"
    if not 2 <= i <= (p - 1) // 2:
        return "2 ≤ i ≤ (p−1)/2"
    return None


def _above_p(i: int, n: int, p: int) -> Optional[str]:
    if p > n:
        return "p ≤ n"
    if not 2 <= i <= (p - 1) // 2:
        return "2 ≤ i ≤ (p−1)/2"
    return None


def _hyp_prop5_2(parity: int):
    def check(a: int, i: int, n: int, p: int) -> Optional[str]:
        failed = _below_p(i, n, p)
        if failed:
            return failed
        if i > p - n + 1:
            return "i ≤ p−n+1"
        if (n - i) % 2 != parity:
            return "n−i even" if parity == 0 else "n−i odd"
        if parity == 0 and n - i < 2:
            return "n−i ≥ 2"
        return None
    return check


def _hyp_lem5_3(a: int, i: int, n: int, p: int) -> Optional[str]:
    failed = _below_p(i, n, p)
    if failed:
        return failed
    t = i - p + n
    if t < 2 or t % 2:
        return "t = i−p+n is even and at least 2"
    return None


def _hyp_lem5_4(a: int, i: int, n: int, p: int) -> Optional[str]:
    failed = _below_p(i, n, p)
    if failed:
        return failed
    t = i - p + n
    if t < 3 or t % 2 == 0:
        return "t = i−p+n is odd and at least 3"
    if n - i < 4:
        return "n−i ≥ 4"
    return None


def _hyp_prop6_1(parity: int):
    def check(a: int, i: int, n: int, p: int) -> Optional[str]:
        failed = _above_p(i, n, p)
        if failed:
            return failed
        n_bar = n % p
        if not i + 1 <= n_bar <= p - i + 1:
            return "i+1 ≤ n mod p ≤ p−i+1"
        if (n_bar - i) % 2 != parity:
            return "(n mod p)−i even" if parity == 0 else "(n mod p)−i odd"
        if parity == 0 and n_bar > p - i - 1:
            return "n mod p ≤ p−i−1 (the head reflection at n mod p = p−i+1 is not dominant)"
        return None
    return check


def _hyp_prop6_2(parity: int):
    def check(a: int, i: int, n: int, p: int) -> Optional[str]:
        failed = _above_p(i, n, p)
        if failed:
            return failed
        n_bar = n % p
        if n_bar < p - i + 2:
            return "n mod p ≥ p−i+2"
        if (n_bar - i) % 2 != parity:
            return "(n mod p)−i even" if parity == 0 else "(n mod p)−i odd"
        return None
    return check


def _hyp_prop6_3(parity: int):
    def check(a: int, i: int, n: int, p: int) -> Optional[str]:
        failed = _above_p(i, n, p)
        if failed:
            return failed
        n_bar = n % p
        if n_bar > i:
            return "n mod p ≤ i"
        if (i - n_bar) % 2 != parity:
            return "i−(n mod p) even" if parity == 0 else "i−(n mod p) odd"
        return None
    return check


def _hyp_lem7_2_n_even(a: int, i: int, n: int, p: int) -> Optional[str]:
    if n % 2:
        return "n even"
    if i not in (0, 1):
        return "i ∈ {0, 1}"
    if i == 1 and p < n:
        return "p > n when i = 1"
    return None


def _hyp_lem7_2_n_odd(a: int, i: int, n: int, p: int) -> Optional[str]:
    if n % 2 == 0:
        return "n odd"
    if i not in (0, 1):
        return "i ∈ {0, 1}"
    if i == 0 and p <= n:
        return "p > n when i = 0"
    return None


def _hyp_lem7_2_p_lt_n(parity: int):
    def check(a: int, i: int, n: int, p: int) -> Optional[str]:
        if i != 1:
            return "i = 1"
        if parity == 1 and p >= n:
            return "p < n"
        if parity == 0 and p > n:
            return "p ≤ n"
        if (n % p) % 2 != parity:
            return "n mod p odd" if parity else "n mod p even"
        return None
    return check


def _hyp_prop3_4(a: int, i: int, n: int, p: int) -> Optional[str]:
    if p > 2 * n - 1:
        return "p ≤ 2n−1"
    j = (p + 1) // 2
    if not j <= i <= n:
        return "(p+1)/2 ≤ i ≤ n"
    if n - j < 1:
        return "n−(p+1)/2 ≥ 1"
    return None


def _hyp_prop3_3(a: int, i: int, n: int, p: int) -> Optional[str]:
    if not 1 <= i <= n - 2:
        return "1 ≤ i ≤ n−2"
    if d_interval(_greedy_start(a, i, n), 1, n) > p:
        return "d_{1,n} ≤ p at the start"
    return None


# ----------------------------------------------------------------- generators

def _prop5_2_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    for k in range(1, (n - i) // 2 + 1):
        chain.up_pair(2 * k - 1)
        if k == 1 and n + i - 1 == p:
            chain.claim_d(1, n, p + 1)
            chain.claim_d(2, n, p)
    chain.note_display([a + 1] * (n - i) + [a - k for k in range(1, i + 1)], "head-raised weight")
    for k in range(1, i + 1):
        chain.up_2e(n - i + k)


def _prop5_2_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    lifts = (p - n - i + 2) // 2
    chain.up_2e(1, lifts)
    chain.reflect(1, n, 1, d=p + 1)
    chain.up_pair(n - 1)
    chain.down_2e(1, lifts - 1)


def _lem5_3(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    s = (i - p + n) // 2
    chain.up_pair(1)
    chain.reflect(2, n - s + 1, 1, d=p + 1)
    if s == 1:
        chain.up_pair(n - 1)
        return
    for q in range(n - s + 2, n + 1):
        chain.up_2e(q)


def _lem5_4(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    s = (i - p + n - 1) // 2
    chain.up_2e(1)
    chain.claim_d(1, n - s - 1, p)
    chain.up_pair(2)
    chain.reflect(3, n - s + 1, 1, d=p + 1)
    chain.up_pair(n - s)
    chain.walk(_iota(a, i, n))
    chain.up_pair(*range(3, n - i + 2, 2))


def _prop6_1_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    lifts = (p - i - n_bar + 2) // 2
    chain.up_2e(1, lifts)
    chain.reflect(1, n, n_under + 1, d=(n_under + 1) * p + 1)
    chain.up_pair(n - 1)
    chain.down_2e(1, lifts - 1)


def _prop6_1_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    lifts = (p - i - n_bar + 1) // 2
    chain.up_pair(1)
    chain.up_2e(1, lifts)
    chain.reflect(1, n, n_under + 1, d=(n_under + 1) * p + 1)
    chain.up_pair(n - 1)
    chain.walk(_iota(a, i, n, head=a + 2 * lifts))
    chain.down_2e(1, lifts - 1)
    _block_endgame(chain, a, i, n, p)


def _prop6_2_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    r = (i - p + n_bar) // 2
    chain.up_2e(1)
    chain.reflect(1, n - r, n_under + 1, d=(n_under + 1) * p + 1)
    chain.up_pair(n - r - 1)
    for q in range(n - r + 1, n + 1):
        chain.up_2e(q)


def _prop6_2_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    r = (i - p + n_bar + 1) // 2
    chain.up_pair(1)
    chain.up_2e(1)
    chain.reflect(1, n - r, n_under + 1, d=(n_under + 1) * p + 1)
    chain.up_pair(n - r - 1)
    for q in range(n - r + 1, n + 1):
        chain.up_2e(q)
    chain.walk(_iota(a, i, n))
    _block_endgame(chain, a, i, n, p)


def _prop6_3_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    r = (i + n_bar - 2) // 2
    chain.up_pair(1)
    chain.reflect(2, n - r, n_under, d=n_under * p + 1)
    if r == 0:
        chain.up_pair(n - 1)
        return
    for q in range(n - r + 1, n + 1):
        chain.up_2e(q)


def _prop6_3_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    r = (i + n_bar - 1) // 2
    chain.up_pair(1, 1)
    chain.reflect(2, n - r, n_under, d=n_under * p + 1)
    chain.walk(_iota(a, i, n))
    if n - i + 2 >= p:
        _close_with_head_reflection(chain, p)
    else:
        chain.up_pair(*range(3, 3 + 2 * ((p + n_bar - i) // 2), 2))


def _lem7_2_n_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    if i == 0:
        chain.up_pair(*range(1, n, 2))
        return
    lifts = (p - n + 1) // 2
    chain.up_2e(1, lifts)
    chain.reflect(1, n, 1, d=p + 1)
    chain.down_2e(1, lifts - 1)
    _lem7_2_finish(chain, n)


def _lem7_2_n_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    if i == 1:
        chain.down_pair(*range(n - 2, 0, -2))
        return
    for q in range(1, n + 1):
        chain.up_2e(q)


def _lem7_2_p_lt_n_odd(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    r = (n_bar + 1) // 2
    chain.up_pair(*range(1, 2 * r, 2))
    chain.reflect(2 * r, n, n_under, d=n_under * p + 1)
    chain.down_pair(*range(2 * r - 2, 1, -2))
    _lem7_2_finish(chain, n)


def _lem7_2_p_lt_n_even(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    n_under, n_bar = divmod(n, p)
    lifts = (p + 1 - n_bar) // 2
    chain.up_2e(1, lifts)
    chain.reflect(1, n, n_under + 1, d=(n_under + 1) * p + 1)
    chain.down_2e(1, lifts - 1)
    _lem7_2_finish(chain, n)


def _prop3_4_display(a: int, i: int, j: int, n: int) -> Optional[List[int]]:
    """a^{n−i}(a−1)…(a−i+j+1)(a−i+j−1)^2(a−i+j−2)…(a−i+2)(a−i+1)^2, read literally.

    Only formed for 3 ≤ j ≤ i; below that the runs collapse and the display has no fixed length.
    """
    if not 3 <= j <= i:
        return None
    return ([a] * (n - i) + list(range(a - 1, a - i + j, -1)) + [a - i + j - 1] * 2
            + list(range(a - i + j - 2, a - i + 1, -1)) + [a - i + 1] * 2)


def _prop3_4_reduction(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    j = (p + 1) // 2
    chain.reflect(n - j, n, 1, d=p + 1)
    chain.claim_strictly_dominated()
    printed = _prop3_4_display(a, i, j, n)
    if printed is not None:
        # at j = i the display has n+1 entries and is always flagged
        chain.note_display(printed, "reduced weight")


def _greedy(chain: ChainBuilder) -> None:
    """Take the first dominant move at an index ≥ 2 until none is left"""
    while True:
        n = chain.weight.n
        moves = []
        for q in range(2, n + 1):
            moves.append(Move.up_2e(q))
            if q < n:
                moves.append(Move.up_pair(q))
        if not any(chain.try_step(move) for move in moves):
            return


def _prop3_3_greedy(chain: ChainBuilder, a: int, i: int, n: int, p: int) -> None:
    _greedy(chain)
    if omega_shape(chain.weight) is None:
        chain.fail(f"the greedy descent stops at an ω-shape ({chain.weight})")


@dataclass(frozen=True)
class Recipe:
    """A scripted chain: where it may run, where it starts and what it does"""
    id: str
    family: str
    hypotheses: Callable[[int, int, int, int], Optional[str]]
    generator: Callable[[ChainBuilder, int, int, int, int], None]
    source: Callable[[int, int, int], Weight] = omega


RECIPES: Dict[str, Recipe] = {recipe.id: recipe for recipe in (
    Recipe(PROP5_2_EVEN, NON_MINIMALITY, _hyp_prop5_2(0), _prop5_2_even),
    Recipe(PROP5_2_ODD, NON_MINIMALITY, _hyp_prop5_2(1), _prop5_2_odd),
    Recipe(LEM5_3, NON_MINIMALITY, _hyp_lem5_3, _lem5_3),
    Recipe(LEM5_4, NON_MINIMALITY, _hyp_lem5_4, _lem5_4),
    Recipe(PROP6_1_ODD, NON_MINIMALITY, _hyp_prop6_1(1), _prop6_1_odd),
    Recipe(PROP6_1_EVEN, NON_MINIMALITY, _hyp_prop6_1(0), _prop6_1_even),
    Recipe(PROP6_2_ODD, NON_MINIMALITY, _hyp_prop6_2(1), _prop6_2_odd),
    Recipe(PROP6_2_EVEN, NON_MINIMALITY, _hyp_prop6_2(0), _prop6_2_even),
    Recipe(PROP6_3_ODD, NON_MINIMALITY, _hyp_prop6_3(1), _prop6_3_odd),
    Recipe(PROP6_3_EVEN, NON_MINIMALITY, _hyp_prop6_3(0), _prop6_3_even),
    Recipe(LEM7_2_N_EVEN, SHIFT, _hyp_lem7_2_n_even, _lem7_2_n_even),
    Recipe(LEM7_2_N_ODD, SHIFT, _hyp_lem7_2_n_odd, _lem7_2_n_odd),
    Recipe(LEM7_2_P_LT_N_ODD, SHIFT, _hyp_lem7_2_p_lt_n(1), _lem7_2_p_lt_n_odd),
    Recipe(LEM7_2_P_LT_N_EVEN, SHIFT, _hyp_lem7_2_p_lt_n(0), _lem7_2_p_lt_n_even),
    Recipe(PROP3_4_REDUCTION, REDUCTION, _hyp_prop3_4, _prop3_4_reduction),
    Recipe(PROP3_3_GREEDY, NON_MINIMALITY, _hyp_prop3_3, _prop3_3_greedy, _greedy_start),
)}


def _lookup(recipe_id: str) -> Recipe:
    recipe = RECIPES.get(recipe_id)
    if recipe is None:
        raise WeightError(f"unknown recipe {recipe_id!r}; known: {', '.join(RECIPES)}")
    return recipe


def recipe_hypotheses(recipe_id: str, a: int, i: int, n: int, p: int) -> Optional[str]:
    """The first failing hypothesis clause, or None when the recipe applies"""
    recipe = _lookup(recipe_id)
    check_prime(p)
    if n < 2:
        return "n ≥ 2"
    if not 0 <= i <= n:
        return "0 ≤ i ≤ n"
    return recipe.hypotheses(a, i, n, p)


def shift_target(recipe_id: str, a: int, i: int, n: int) -> Weight:
    """Where an a-shifting chain out of ω^a_{−i} ends"""
    if recipe_id == LEM7_2_N_EVEN:
        return omega(a + 1, i, n)
    if recipe_id == LEM7_2_N_ODD:
        return omega(a - 1, 0, n) if i == 1 else omega(a + 2, 0, n)
    if recipe_id in (LEM7_2_P_LT_N_ODD, LEM7_2_P_LT_N_EVEN):
        return omega(a + 1, 1 if n % 2 == 0 else 0, n)
    raise WeightError(f"{recipe_id} does not shift a")


@dataclass
class RecipeRun:
    """A generated chain with the rule that justified each odd step"""
    recipe: str
    a: int
    i: int
    n: int
    p: int
    certificate: Certificate
    justifications: List[dict] = field(default_factory=list)
    mismatches: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"recipe": self.recipe, "a": self.a, "i": self.i, "n": self.n, "p": self.p,
                "certificate": self.certificate.to_json(),
                "justifications": self.justifications,
                "display_mismatches": self.mismatches}


def replay_recipe(recipe_id: str, a: int, i: int, n: int, p: int,
                  parity: int = 0, strict: bool = False, quiet: bool = False) -> RecipeRun:
    """
    Generate a recipe's chain for (a, i, n, p). `quiet` logs display mismatches at debug level.

    Raises:
        HypothesisViolated: the parameters are outside the recipe's hypotheses
        ClaimFailed: a step or claimed property did not hold; carries the partial chain
    """
    recipe = _lookup(recipe_id)
    clause = recipe_hypotheses(recipe_id, a, i, n, p)
    if clause is not None:
        raise HypothesisViolated(recipe_id, clause)

    start = ParityWeight(recipe.source(a, i, n), parity)
    chain = ChainBuilder(recipe_id, start, p, strict, quiet)
    recipe.generator(chain, a, i, n, p)
    if recipe.family == NON_MINIMALITY:
        chain.claim_below_start()
    elif recipe.family == SHIFT:
        chain.claim_weight(shift_target(recipe_id, a, i, n), "the shifted weight")

    logger.debug(f"{recipe_id} at a={a}, i={i}, n={n}, p={p}: {len(chain.steps)} steps "
                 f"to {chain.current}")
    return RecipeRun(recipe_id, a, i, n, p, chain.certificate(),
                     chain.justifications, chain.mismatches)


def run_recipe(recipe_id: str, a: int, i: int, n: int, p: int,
               parity: int = 0, strict: bool = False, quiet: bool = False) -> Certificate:
    return replay_recipe(recipe_id, a, i, n, p, parity, strict, quiet).certificate


def greedy_descent(pw: ParityWeight, p: int, strict: bool = False) -> Certificate:
    """Odd up moves at indices ≥ 2, first dominant one each time, until none applies"""
    require_dominant(pw.weight)
    chain = ChainBuilder("greedy_descent", pw, p, strict)
    _greedy(chain)
    return chain.certificate()


@lru_cache(maxsize=4096)
def recipe_macros(pw: ParityWeight, p: int,
                  strict: bool = False) -> Tuple[Tuple[ParityWeight, Tuple[Move, ...], str], ...]:
    """
    Scripted chains leaving an ω^a_{−i}-shaped label: every applicable recipe, plus
    the a-shifting chains that end here, run backwards.

    Returns:
        (end label, steps, recipe id) triples; recipes whose claims fail are skipped
    """
    shape = omega_shape(pw.weight)
    if shape is None:
        return ()
    a, i = shape
    n = pw.weight.n
    found = []
    for recipe in RECIPES.values():
        if recipe.source is not omega or recipe_hypotheses(recipe.id, a, i, n, p) is not None:
            continue
        try:
            certificate = run_recipe(recipe.id, a, i, n, p, pw.parity, strict, quiet=True)
        except ClaimFailed as e:
            logger.warning(f"Skipping {recipe.id} from {pw}: {e}")
            continue
        found.append((certificate.end, tuple(certificate.steps), recipe.id))

    for source_a in (a - 2, a - 1, a + 1):
        for source_i in (0, 1):
            for recipe_id in SHIFT_RECIPES:
                if recipe_hypotheses(recipe_id, source_a, source_i, n, p) is not None:
                    continue
                if shift_target(recipe_id, source_a, source_i, n) != pw.weight:
                    continue
                try:
                    forward = run_recipe(recipe_id, source_a, source_i, n, p, 0, strict, quiet=True)
                    if forward.end.parity != pw.parity:
                        forward = run_recipe(recipe_id, source_a, source_i, n, p, 1, strict,
                                             quiet=True)
                    backward = reverse_certificate(forward, strict)
                except (ClaimFailed, PreconditionViolated) as e:
                    logger.warning(f"Skipping reversed {recipe_id} into {pw}: {e}")
                    continue
                found.append((backward.end, tuple(backward.steps), f"{recipe_id}:reversed"))
    return tuple(item for item in found if item[0] != pw)


@dataclass
class RecipeGrid:
    """Parameter ranges swept by verify_all_recipes; i runs over 0..n"""
    a_values: Sequence[int]
    n_values: Sequence[int]
    primes: Sequence[int]

    def __post_init__(self):
        for p in self.primes:
            check_prime(p)

    @classmethod
    def acceptance(cls) -> "RecipeGrid":
        return cls(range(-2, 3), range(2, 8), (3, 5, 7))

    def cases(self) -> Iterator[Tuple[int, int, int, int]]:
        for p in self.primes:
            for n in self.n_values:
                if n < 2:
                    continue
                for a in self.a_values:
                    for i in range(n + 1):
                        yield a, i, n, p


@dataclass
class RecipeOutcome:
    recipe: str
    a: int
    i: int
    n: int
    p: int
    succeeded: bool
    claim: Optional[str] = None
    certificate: Optional[Certificate] = None
    mismatches: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        row = {"recipe": self.recipe, "a": self.a, "i": self.i, "n": self.n, "p": self.p,
               "status": "succeeded" if self.succeeded else "failed"}
        if self.claim is not None:
            row["claim"] = self.claim
        if self.certificate is not None:
            row["certificate"] = self.certificate.to_json()
        if self.mismatches:
            row["display_mismatches"] = self.mismatches
        return row


@dataclass
class RecipeReport:
    outcomes: List[RecipeOutcome] = field(default_factory=list)

    def counts(self) -> Dict[str, Dict[str, int]]:
        table: Dict[str, Dict[str, int]] = {}
        for outcome in self.outcomes:
            row = table.setdefault(outcome.recipe, {"applicable": 0, "succeeded": 0, "failed": 0})
            row["applicable"] += 1
            row["succeeded" if outcome.succeeded else "failed"] += 1
        return table

    @property
    def failures(self) -> List[RecipeOutcome]:
        return [outcome for outcome in self.outcomes if not outcome.succeeded]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"counts": self.counts(), "rows": [outcome.to_json() for outcome in self.outcomes]}


def verify_all_recipes(grid: RecipeGrid, strict: bool = False,
                       recipe_ids: Optional[Sequence[str]] = None) -> RecipeReport:
    """Run every applicable recipe on the grid and verify what it emits; failures are rows"""
    chosen = [_lookup(recipe_id) for recipe_id in (recipe_ids or list(RECIPES))]
    report = RecipeReport()
    for a, i, n, p in grid.cases():
        for recipe in chosen:
            if recipe_hypotheses(recipe.id, a, i, n, p) is not None:
                continue
            try:
                run = replay_recipe(recipe.id, a, i, n, p, 0, strict)
            except ClaimFailed as e:
                logger.error(f"{e}")
                report.outcomes.append(RecipeOutcome(recipe.id, a, i, n, p, False,
                                                     claim=e.claim, certificate=e.partial))
                continue
            verdict = verify_certificate(run.certificate, strict)
            report.outcomes.append(RecipeOutcome(
                recipe.id, a, i, n, p, verdict.ok,
                claim=None if verdict.ok else f"step {verdict.failing_step}: {verdict.reason}",
                certificate=run.certificate, mismatches=run.mismatches))
    for recipe_id, row in report.counts().items():
        logger.info(f"{recipe_id}: {row['applicable']} applicable, {row['succeeded']} succeeded, "
                    f"{row['failed']} failed")
    return report


def demo_recipe_replay():
    """Replay the worked examples"""
    print("📜 Recipe Replay Demo")
    print("=" * 50)
    for recipe_id, a, i, n, p in ((PROP5_2_EVEN, 0, 2, 4, 7), (LEM7_2_N_EVEN, 0, 1, 4, 5),
                                  (PROP3_4_REDUCTION, 4, 4, 5, 5)):
        certificate = run_recipe(recipe_id, a, i, n, p)
        trail = " -> ".join(str(pw.weight) for pw in certificate.trail())
        print(f"{recipe_id}: {trail}")


if __name__ == "__main__":
    demo_recipe_replay()
