#!/usr/bin/env python3
"""
Affine Even Linkage
Defect, dot-action reflections s_{ε_i−ε_j,kp} and Donkin's even-linkage criterion for GL(n)
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from errors import WeightError
from weights import Weight, d_interval, is_dominant, require_dominant

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Reflection:
    """s_{β,kp} for β = ε_i − ε_j, i < j"""
    i: int
    j: int
    k: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise WeightError(f"reflection needs 1 ≤ i < j, got i={self.i}, j={self.j}")

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k}

    @classmethod
    def from_json(cls, data: dict) -> "Reflection":
        try:
            return cls(int(data["i"]), int(data["j"]), int(data["k"]))
        except (KeyError, TypeError, ValueError) as e:
            raise WeightError(f"malformed reflection {data!r}: {e}")


def check_prime(p: int) -> None:
    """Only odd primes are meaningful here"""
    if p < 3 or p % 2 == 0 or any(p % q == 0 for q in range(3, int(p ** 0.5) + 1, 2)):
        raise WeightError(f"p must be an odd prime, got {p}")


def defect(weight: Weight, p: int) -> int:
    """Largest d with λ_i − λ_{i+1} ≡ −1 (mod p^d) for 1 ≤ i ≤ n−1"""
    gaps = [weight.entries[k] - weight.entries[k + 1] + 1 for k in range(weight.n - 1)]
    d = 0
    modulus = p
    # all-zero shifted gaps are divisible by every power
    bound = max(abs(g) for g in gaps)
    while all(g % modulus == 0 for g in gaps):
        d += 1
        if modulus > bound:
            raise WeightError(f"defect of {weight} is unbounded at p={p}")
        modulus *= p
    return d


def dot_reflect(weight: Weight, reflection: Reflection, p: int) -> Weight:
    """λ − (d_{i,j}(λ) − kp)(ε_i − ε_j)"""
    if reflection.j > weight.n:
        raise WeightError(f"reflection index j={reflection.j} exceeds rank {weight.n}")
    shift = d_interval(weight, reflection.i, reflection.j) - reflection.k * p
    return weight.bumped([(reflection.i, -shift), (reflection.j, shift)])


def residues(weight: Weight, modulus: int) -> List[int]:
    return sorted((value - index) % modulus for index, value in enumerate(weight.entries, start=1))


def even_linked(lam: Weight, mu: Weight, p: int) -> bool:
    """Donkin: equal defect d and equal multisets {λ_i − i mod p^{d+1}}"""
    if lam.n != mu.n:
        raise WeightError(f"rank mismatch: {lam.n} vs {mu.n}")
    d = defect(lam, p)
    if defect(mu, p) != d:
        return False
    modulus = p ** (d + 1)
    return residues(lam, modulus) == residues(mu, modulus)


def default_cap(weight: Weight, p: int) -> int:
    return d_interval(weight, 1, weight.n) + 2 * p


def even_neighbors(weight: Weight, p: int,
                   excursion_cap: Optional[int] = None) -> List[Tuple[Weight, Reflection]]:
    """Dominant, Donkin-linked images under reflections with |d_{i,j}(λ) − kp| ≤ cap, sorted by target"""
    require_dominant(weight)
    cap = default_cap(weight, p) if excursion_cap is None else excursion_cap
    found = {}
    n = weight.n
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            d = d_interval(weight, i, j)
            # |d − kp| ≤ cap  ⇔  (d − cap)/p ≤ k ≤ (d + cap)/p
            for k in range(-((cap - d) // p), (d + cap) // p + 1):
                if d == k * p:
                    continue
                image = dot_reflect(weight, Reflection(i, j, k), p)
                if is_dominant(image) and image not in found and even_linked(weight, image, p):
                    found[image] = Reflection(i, j, k)
    return sorted(found.items())


def demo_affine_even():
    """Show the even-linkage helpers"""
    print("🪞 Affine Even Linkage Demo")
    print("=" * 50)
    lam = Weight.of(2, 0, 0, -1)
    image = dot_reflect(lam, Reflection(1, 4, 1), 5)
    print(f"s_(ε1−ε4,5)•{lam} = {image}, even linked: {even_linked(lam, image, 5)}")
    print(f"defect((2,0), 3) = {defect(Weight.of(2, 0), 3)}")
    for target, reflection in even_neighbors(Weight.of(3, 0), 3, 3):
        print(f"  {target} via {reflection.to_json()}")


if __name__ == "__main__":
    demo_affine_even()
