#!/usr/bin/env python3
"""
Weight Core
Exact integer weights of P(n), their orders, and the four-way sector classification
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import WeightError

logger = logging.getLogger(__name__)

INT64_MAX = 2 ** 63 - 1


class Order(Enum):
    """Result of an m-order comparison"""
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True, order=True)
class Weight:
    """Integer vector (λ_1, …, λ_n) with n ≥ 2"""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) < 2:
            raise WeightError(f"rank must be at least 2, got {len(entries)}")
        for value in entries:
            if isinstance(value, bool) or not isinstance(value, int):
                raise WeightError(f"weight entries must be integers, got {value!r}")
            if abs(value) > INT64_MAX:
                raise WeightError(f"entry {value} leaves the checked 64-bit range")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "Weight":
        return cls(tuple(entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, index: int) -> int:
        """Entry λ_index, 1-based"""
        _check_index(self, index)
        return self.entries[index - 1]

    def bumped(self, changes: Iterable[Tuple[int, int]]) -> "Weight":
        """Copy with `amount` added to entry `index` (1-based) for each pair"""
        values = list(self.entries)
        for index, amount in changes:
            _check_index(self, index)
            values[index - 1] += amount
        return Weight(tuple(values))

    def to_json(self) -> List[int]:
        return list(self.entries)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Weight":
        if not isinstance(data, (list, tuple)):
            raise WeightError(f"a weight is a JSON array of integers, got {data!r}")
        return cls(tuple(data))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.entries) + ")"


class Sector(Enum):
    """Block invariant (degree parity, shifted vector parity)"""
    F00 = (0, 0)
    F01 = (0, 1)
    F10 = (1, 0)
    F11 = (1, 1)

    @property
    def degree_parity(self) -> int:
        return self.value[0]

    @property
    def shifted_vector_parity(self) -> int:
        return self.value[1]


@dataclass(frozen=True, order=True)
class ParityWeight:
    """A weight together with the parity ε of its highest weight vector"""
    weight: Weight
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise WeightError(f"parity must be 0 or 1, got {self.parity!r}")

    def flipped(self, weight: Weight) -> "ParityWeight":
        return ParityWeight(weight, 1 - self.parity)

    def to_json(self) -> dict:
        return {"weight": self.weight.to_json(), "parity": self.parity}

    @classmethod
    def from_json(cls, data: dict) -> "ParityWeight":
        try:
            return cls(Weight.from_json(data["weight"]), int(data["parity"]))
        except (KeyError, TypeError, ValueError) as e:
            raise WeightError(f"malformed parity weight {data!r}: {e}")

    def __str__(self) -> str:
        return f"{self.weight}|{self.parity}"


def _check_index(weight: Weight, index: int) -> None:
    if not 1 <= index <= weight.n:
        raise WeightError(f"index {index} out of range 1..{weight.n}")


def _check_rank(first: Weight, second: Weight) -> None:
    if first.n != second.n:
        raise WeightError(f"rank mismatch: {first.n} vs {second.n}")


def is_dominant(weight: Weight) -> bool:
    values = weight.entries
    return all(values[k] >= values[k + 1] for k in range(len(values) - 1))


def require_dominant(weight: Weight) -> None:
    if not is_dominant(weight):
        raise WeightError(f"{weight} is not dominant")


def degree(weight: Weight) -> int:
    return sum(weight.entries)


def d_interval(weight: Weight, k: int, l: int) -> int:
    """d_{k,l}(λ) = λ_k − λ_l + (l − k) for 1 ≤ k ≤ l ≤ n"""
    if not 1 <= k <= l <= weight.n:
        raise WeightError(f"need 1 ≤ k ≤ l ≤ {weight.n}, got k={k}, l={l}")
    return weight.entries[k - 1] - weight.entries[l - 1] + (l - k)


def m_vector(weight: Weight) -> Tuple[int, ...]:
    """(λ_1−λ_n, λ_1−λ_{n−1}, …, λ_1−λ_2), most significant first"""
    head = weight.entries[0]
    return tuple(head - value for value in reversed(weight.entries[1:]))


def m_compare(first: Weight, second: Weight) -> Order:
    _check_rank(first, second)
    left, right = m_vector(first), m_vector(second)
    if left < right:
        return Order.LESS
    if left > right:
        return Order.GREATER
    return Order.EQUAL


def m_precedes(first: Weight, second: Weight) -> bool:
    """Strict m-order: m(first) ≺ m(second)"""
    return m_compare(first, second) is Order.LESS


def dominance_leq(mu: Weight, lam: Weight) -> bool:
    """μ ⊴ λ: every partial sum of μ is at most that of λ and the totals agree"""
    _check_rank(mu, lam)
    left = right = 0
    for a, b in zip(mu.entries, lam.entries):
        left += a
        right += b
        if left > right:
            return False
    return left == right


def omega(a: int, i: int, n: int) -> Weight:
    """ω^a_{−i} = (a, …, a, a−1, a−2, …, a−i) with n−i leading a's"""
    if n < 2:
        raise WeightError(f"rank must be at least 2, got {n}")
    if not 0 <= i <= n:
        raise WeightError(f"i must lie in 0..{n}, got {i}")
    return Weight(tuple([a] * (n - i) + [a - k for k in range(1, i + 1)]))


def canonicalize_omega(a: int, i: int, n: int) -> Tuple[int, int]:
    """Rewrite (a, n) as (a−1, n−1): ω^a_{−n} has no plateau at a"""
    if i == n:
        return a - 1, n - 1
    return a, i


def omega_shape(weight: Weight) -> Optional[Tuple[int, int]]:
    """Return (a, i) with weight = ω^a_{−i} and i < n, or None"""
    values = weight.entries
    n = len(values)
    a = values[0]
    plateau = 1
    while plateau < n and values[plateau] == a:
        plateau += 1
    for offset, value in enumerate(values[plateau:], start=1):
        if value != a - offset:
            return None
    return a, n - plateau


def negate(weight: Weight) -> Weight:
    """−λ reversed, which takes dominant weights to dominant weights"""
    return Weight(tuple(-v for v in reversed(weight.entries)))


def anti_dominant(weight: Weight) -> Weight:
    """The weakly increasing rearrangement"""
    return Weight(tuple(sorted(weight.entries)))


def shift(weight: Weight, amount: int) -> Weight:
    return Weight(tuple(v + amount for v in weight.entries))


def sector(pw: ParityWeight) -> Sector:
    total = degree(pw.weight)
    if total % 2 == 0:
        return Sector((0, (pw.parity - total // 2) % 2))
    return Sector((1, (pw.parity - (total - 1) // 2) % 2))


def dominant_weights_in_box(n: int, lo: int, hi: int) -> List[Weight]:
    """Every dominant weight with lo ≤ λ_n and λ_1 ≤ hi, in lexicographic order"""
    if lo > hi:
        return []
    found: List[Weight] = []

    def extend(prefix: List[int], ceiling: int) -> None:
        if len(prefix) == n:
            found.append(Weight(tuple(prefix)))
            return
        for value in range(lo, ceiling + 1):
            prefix.append(value)
            extend(prefix, value)
            prefix.pop()

    extend([], hi)
    found.sort()
    return found


def demo_weights():
    """Show the basic weight arithmetic"""
    print("🔢 Weight Core Demo")
    print("=" * 50)
    lam = Weight.of(2, 1, 0)
    print(f"λ = {lam}: dominant={is_dominant(lam)}, degree={degree(lam)}, m={m_vector(lam)}")
    print(f"ω^0_(-1) for n=3: {omega(0, 1, 3)}")
    for pw in (ParityWeight(omega(0, 0, 3), 0), ParityWeight(omega(0, 1, 3), 1)):
        print(f"sector{pw} = {sector(pw).name}")


if __name__ == "__main__":
    demo_weights()
