#!/usr/bin/env python3
"""
Linkage Moves
Atomic linkage steps between simple labels: even reflections, Donkin jumps and the
odd up/down moves, with bookkeeping of the highest-vector parity
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from affine_even import Reflection, dot_reflect, even_linked, even_neighbors
from errors import NotEligible, PreconditionViolated, WeightError
from jantzen import even_irreducible, f0_member
from weights import ParityWeight, Weight, is_dominant, require_dominant

logger = logging.getLogger(__name__)

EVEN_REFLECTION = "even_reflection"
DONKIN_JUMP = "donkin_jump"
ODD_UP_2E = "odd_up_2e"
ODD_UP_PAIR = "odd_up_pair"
ODD_DOWN_2E = "odd_down_2e"
ODD_DOWN_PAIR = "odd_down_pair"

ODD_KINDS = (ODD_UP_2E, ODD_UP_PAIR, ODD_DOWN_2E, ODD_DOWN_PAIR)
MOVE_KINDS = (EVEN_REFLECTION, DONKIN_JUMP) + ODD_KINDS

_MIRRORS = {ODD_UP_2E: ODD_DOWN_2E, ODD_DOWN_2E: ODD_UP_2E,
            ODD_UP_PAIR: ODD_DOWN_PAIR, ODD_DOWN_PAIR: ODD_UP_PAIR}


@dataclass(frozen=True)
class Move:
    """One linkage step; `index` is j for the 2ε moves and i for the pair moves"""
    kind: str
    index: Optional[int] = None
    reflection: Optional[Reflection] = None
    target: Optional[Weight] = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise WeightError(f"unknown move kind {self.kind!r}")
        if self.kind in ODD_KINDS and (self.index is None or self.index < 1):
            raise WeightError(f"{self.kind} needs a positive index")
        if self.kind == EVEN_REFLECTION and self.reflection is None:
            raise WeightError("even_reflection needs a reflection")
        if self.kind == DONKIN_JUMP and self.target is None:
            raise WeightError("donkin_jump needs a target weight")

    @classmethod
    def reflect(cls, i: int, j: int, k: int) -> "Move":
        return cls(EVEN_REFLECTION, reflection=Reflection(i, j, k))

    @classmethod
    def jump(cls, target: Weight) -> "Move":
        return cls(DONKIN_JUMP, target=target)

    @classmethod
    def up_2e(cls, j: int) -> "Move":
        return cls(ODD_UP_2E, index=j)

    @classmethod
    def up_pair(cls, i: int) -> "Move":
        return cls(ODD_UP_PAIR, index=i)

    @classmethod
    def down_2e(cls, j: int) -> "Move":
        return cls(ODD_DOWN_2E, index=j)

    @classmethod
    def down_pair(cls, i: int) -> "Move":
        return cls(ODD_DOWN_PAIR, index=i)

    @property
    def is_odd(self) -> bool:
        return self.kind in ODD_KINDS

    def to_json(self) -> dict:
        if self.kind == EVEN_REFLECTION:
            return {"kind": self.kind, **self.reflection.to_json()}
        if self.kind == DONKIN_JUMP:
            return {"kind": self.kind, "target": self.target.to_json()}
        key = "j" if self.kind in (ODD_UP_2E, ODD_DOWN_2E) else "i"
        return {"kind": self.kind, key: self.index}

    @classmethod
    def from_json(cls, data: dict) -> "Move":
        try:
            kind = data["kind"]
            if kind == EVEN_REFLECTION:
                return cls(kind, reflection=Reflection.from_json(data))
            if kind == DONKIN_JUMP:
                return cls(kind, target=Weight.from_json(data["target"]))
            if kind in (ODD_UP_2E, ODD_DOWN_2E):
                return cls(kind, index=int(data["j"]))
            if kind in (ODD_UP_PAIR, ODD_DOWN_PAIR):
                return cls(kind, index=int(data["i"]))
        except (KeyError, TypeError, ValueError) as e:
            raise WeightError(f"malformed move {data!r}: {e}")
        raise WeightError(f"unknown move kind in {data!r}")

    def __str__(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.to_json().items())


def odd_target(weight: Weight, move: Move) -> Weight:
    """Arithmetic of an odd move, without any checks beyond the index range"""
    n = weight.n
    if move.kind in (ODD_UP_2E, ODD_DOWN_2E):
        if move.index > n:
            raise PreconditionViolated("adjacency", f"index {move.index} exceeds rank {n}")
        sign = 1 if move.kind == ODD_UP_2E else -1
        return weight.bumped([(move.index, 2 * sign)])
    if move.index >= n:
        raise PreconditionViolated("adjacency", f"pair ({move.index},{move.index + 1}) exceeds rank {n}")
    sign = 1 if move.kind == ODD_UP_PAIR else -1
    return weight.bumped([(move.index, sign), (move.index + 1, sign)])


def odd_up_moves(weight: Weight, p: int, strict: bool = False) -> List[Tuple[Weight, Move]]:
    """λ + 2ε_j and λ + ε_i + ε_{i+1} (λ_i = λ_{i+1}) that stay dominant"""
    require_dominant(weight)
    if not f0_member(weight, p, strict):
        raise NotEligible(weight, p, even_irreducible(weight, p).failing_pairs)
    found = []
    for j in range(1, weight.n + 1):
        target = weight.bumped([(j, 2)])
        if is_dominant(target):
            found.append((target, Move.up_2e(j)))
    for i in range(1, weight.n):
        if weight.entry(i) == weight.entry(i + 1):
            target = weight.bumped([(i, 1), (i + 1, 1)])
            if is_dominant(target):
                found.append((target, Move.up_pair(i)))
    return sorted(found, key=lambda item: item[0])


def odd_down_moves(weight: Weight, p: int, strict: bool = False) -> List[Tuple[Weight, Move]]:
    """Lower weights μ − 2ε_j and μ − ε_i − ε_{i+1} that are dominant and eligible"""
    require_dominant(weight)
    found = []
    for j in range(1, weight.n + 1):
        target = weight.bumped([(j, -2)])
        if is_dominant(target) and f0_member(target, p, strict):
            found.append((target, Move.down_2e(j)))
    for i in range(1, weight.n):
        target = weight.bumped([(i, -1), (i + 1, -1)])
        if (target.entry(i) == target.entry(i + 1) and is_dominant(target)
                and f0_member(target, p, strict)):
            found.append((target, Move.down_pair(i)))
    return sorted(found, key=lambda item: item[0])


def neighbors(pw: ParityWeight, p: int, excursion_cap: Optional[int] = None,
              strict: bool = False) -> List[Tuple[ParityWeight, Move]]:
    """Even moves keep ε, odd moves flip it; even first, then odd, each by target"""
    weight = pw.weight
    found: Dict[ParityWeight, Move] = {}
    for target, reflection in even_neighbors(weight, p, excursion_cap):
        found.setdefault(ParityWeight(target, pw.parity), Move(EVEN_REFLECTION, reflection=reflection))
    odd: List[Tuple[Weight, Move]] = []
    if f0_member(weight, p, strict):
        odd.extend(odd_up_moves(weight, p, strict))
    else:
        logger.debug(f"{weight} is not eligible at p={p}; only down and even moves")
    odd.extend(odd_down_moves(weight, p, strict))
    for target, move in sorted(odd, key=lambda item: item[0]):
        found.setdefault(pw.flipped(target), move)
    return list(found.items())


def apply_move(pw: ParityWeight, move: Move, p: int, strict: bool = False,
               fresh: bool = False) -> ParityWeight:
    """Apply one step after checking every precondition from scratch"""
    source = pw.weight
    if not is_dominant(source):
        raise PreconditionViolated("dominance", f"source {source} is not dominant")

    if move.kind == EVEN_REFLECTION:
        if move.reflection.j > source.n:
            raise PreconditionViolated("rank", f"reflection {move.reflection.to_json()} exceeds rank {source.n}")
        target = dot_reflect(source, move.reflection, p)
        if not is_dominant(target):
            raise PreconditionViolated("dominance", f"{target} is not dominant")
        # images of positive-defect weights can leave the block
        if not even_linked(source, target, p):
            raise PreconditionViolated("donkin", f"{source} and {target} are not even linked at p={p}")
        return ParityWeight(target, pw.parity)

    if move.kind == DONKIN_JUMP:
        target = move.target
        if target.n != source.n:
            raise PreconditionViolated("rank", f"jump target {target} has rank {target.n}")
        if not is_dominant(target):
            raise PreconditionViolated("dominance", f"{target} is not dominant")
        if not even_linked(source, target, p):
            raise PreconditionViolated("donkin", f"{source} and {target} are not even linked at p={p}")
        return ParityWeight(target, pw.parity)

    target = odd_target(source, move)
    if move.kind in (ODD_UP_PAIR, ODD_DOWN_PAIR):
        low = source if move.kind == ODD_UP_PAIR else target
        if low.entry(move.index) != low.entry(move.index + 1):
            raise PreconditionViolated(
                "equal_entries", f"entries {move.index},{move.index + 1} of {low} differ")
    if not is_dominant(target):
        raise PreconditionViolated("dominance", f"{target} is not dominant")
    lower = source if move.kind in (ODD_UP_2E, ODD_UP_PAIR) else target
    if not f0_member(lower, p, strict, fresh):
        raise PreconditionViolated(
            "eligibility", f"lower weight {lower} is not eligible at p={p} (NotEligible)")
    return pw.flipped(target)


def mirror_move(move: Move) -> Move:
    """Inverse of an odd move at the weight it produced"""
    if not move.is_odd:
        raise WeightError(f"{move.kind} has no mirror; reflections are involutions")
    return Move(_MIRRORS[move.kind], index=move.index)


def reverse_steps(start: ParityWeight, steps: List[Move], p: int,
                  strict: bool = False) -> Tuple[ParityWeight, List[Move]]:
    """Replay `steps` from `start` and return (end, steps leading from end back to start)"""
    trail = [start]
    for move in steps:
        trail.append(apply_move(trail[-1], move, p, strict))
    backwards = []
    for position in range(len(steps) - 1, -1, -1):
        move = steps[position]
        if move.kind == EVEN_REFLECTION:
            backwards.append(move)
        elif move.kind == DONKIN_JUMP:
            backwards.append(Move.jump(trail[position].weight))
        else:
            backwards.append(mirror_move(move))
    return trail[-1], backwards


def demo_linkage_moves():
    """List the neighbours of a small label"""
    print("🔗 Linkage Moves Demo")
    print("=" * 50)
    start = ParityWeight(Weight.of(0, 0), 0)
    for target, move in neighbors(start, 3, 2):
        print(f"  {start} -> {target} by {move}")


if __name__ == "__main__":
    demo_linkage_moves()
