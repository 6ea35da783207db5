#!/usr/bin/env python3
"""
Jantzen Criterion
Irreducibility of the even induced module via the (*_{u,v}) index-chain condition,
sufficient-condition screens for common weight shapes, and good-filtration factors
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from affine_even import defect
from errors import WeightError
from weights import Weight, d_interval, is_dominant, require_dominant

logger = logging.getLogger(__name__)

# (p, entries) -> irreducible
_MEMO: Dict[Tuple[int, Tuple[int, ...]], bool] = {}
_CACHE: Optional["VerdictCache"] = None


@dataclass(frozen=True)
class CpbDecomposition:
    """d = c·p^s + b·p^(s+1) with 0 < c < p"""
    c: int
    s: int
    b: int

    def value(self, p: int) -> int:
        return self.c * p ** self.s + self.b * p ** (self.s + 1)


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    failing_pairs: List[Tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"irreducible": self.irreducible,
                "failing_pairs": [[u, v] for u, v in self.failing_pairs]}


def decompose_cpb(d: int, p: int) -> CpbDecomposition:
    if d <= 0:
        raise WeightError(f"decompose_cpb needs d ≥ 1, got {d}")
    s = 0
    rest = d
    while rest % p == 0:
        rest //= p
        s += 1
    c = rest % p
    return CpbDecomposition(c=c, s=s, b=rest // p)


def star_condition(weight: Weight, p: int, u: int, v: int) -> bool:
    """Condition (*_{u,v}), decided by exhaustive search over index chains"""
    if not 1 <= u < v <= weight.n:
        raise WeightError(f"need 1 ≤ u < v ≤ {weight.n}, got u={u}, v={v}")
    cpb = decompose_cpb(d_interval(weight, u, v), p)
    if cpb.b == 0:
        return True
    step = p ** (cpb.s + 1)
    for middle in combinations(range(u + 1, v), cpb.b):
        chain = (u,) + middle + (v,)
        links = [d_interval(weight, chain[r], chain[r + 1]) == step for r in range(cpb.b + 1)]
        # all but the last link, or all but the first
        if all(links[:-1]) or all(links[1:]):
            return True
    return False


def even_irreducible(weight: Weight, p: int) -> IrreducibilityVerdict:
    require_dominant(weight)
    failing = [(u, v)
               for u in range(1, weight.n)
               for v in range(u + 1, weight.n + 1)
               if not star_condition(weight, p, u, v)]
    return IrreducibilityVerdict(irreducible=not failing, failing_pairs=failing)


def _all_pairs_hold(weight: Weight, p: int, first_rows: int) -> bool:
    """(*_{u,v}) for every u < first_rows"""
    return all(star_condition(weight, p, u, v)
               for u in range(1, first_rows)
               for v in range(u + 1, weight.n + 1))


def fast_f0_screen_reason(weight: Weight, p: int) -> Tuple[Optional[bool], Optional[str]]:
    """
    Decide irreducibility from the shape of the weight when a known sufficient
    condition applies.

    Returns:
        (verdict, rule name), or (None, None) when no rule matches. A verdict always
        equals even_irreducible(weight, p).irreducible.
    """
    require_dominant(weight)
    values = weight.entries
    n = weight.n

    if d_interval(weight, 1, n) <= p:
        return True, "lowest_alcove"

    gaps = [values[k] - values[k + 1] for k in range(n - 1)]
    if sorted(gaps)[-1] == 1 and sum(gaps) == 1:
        return True, "single_unit_gap"

    for i in range(0, min((p - 1) // 2, n - 2) + 1):
        a = values[n - i - 1]
        if values[-1] < a - i:
            continue
        start = n - i
        while start > 1 and values[start - 2] == a:
            start -= 1
        if start == 1:
            return True, "plateau_short_tail"
        if start == 2 and values[0] == a + 1 and all(
                d_interval(weight, 1, v) % p != 1 for v in range(n - i + 1, n + 1)):
            return True, "raised_head"
        if n - i - start >= 1:
            # pairs starting inside the plateau hold by the short-tail rule
            return _all_pairs_hold(weight, p, start), "plateau_locality"
    return None, None


def fast_f0_screen(weight: Weight, p: int) -> Optional[bool]:
    return fast_f0_screen_reason(weight, p)[0]


def is_irreducible(weight: Weight, p: int) -> bool:
    """Memoized boolean form of even_irreducible"""
    key = (p, weight.entries)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached
    verdict = fast_f0_screen(weight, p)
    if verdict is None:
        verdict = _all_pairs_hold(weight, p, weight.n)
    _MEMO[key] = verdict
    if _CACHE is not None:
        _CACHE.record(p, weight, verdict)
    return verdict


def f0_member(weight: Weight, p: int, strict: bool = False, fresh: bool = False) -> bool:
    """Eligibility for odd moves: Jantzen only, or defect 0 as well when strict.

    `fresh` bypasses the memo and the shape screens.
    """
    require_dominant(weight)
    if strict and defect(weight, p) != 0:
        return False
    if fresh:
        return even_irreducible(weight, p).irreducible
    return is_irreducible(weight, p)


def good_filtration_factors(weight: Weight) -> List[Weight]:
    """Dominant λ + ε_i + ε_j for i < j"""
    require_dominant(weight)
    factors = []
    for i in range(1, weight.n):
        for j in range(i + 1, weight.n + 1):
            candidate = weight.bumped([(i, 1), (j, 1)])
            if is_dominant(candidate):
                factors.append(candidate)
    return sorted(factors)


class VerdictCache:
    """JSON-lines store of irreducibility verdicts keyed by (p, λ)"""

    def __init__(self, path):
        self.path = Path(path)
        self.pending: List[dict] = []

    def load(self) -> int:
        """Prime the in-process memo from the file; returns the record count"""
        if not self.path.exists():
            logger.info(f"Verdict cache {self.path} does not exist yet")
            return 0
        count = 0
        with open(self.path, 'r', encoding='utf-8') as f:
            for number, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    key = (int(record["p"]), tuple(int(v) for v in record["lambda"]))
                    _MEMO[key] = bool(record["irreducible"])
                    count += 1
                except (ValueError, KeyError, TypeError) as e:
                    logger.warning(f"Skipping bad cache line {number} in {self.path}: {e}")
        logger.info(f"Loaded {count} verdicts from {self.path}")
        return count

    def record(self, p: int, weight: Weight, irreducible: bool) -> None:
        self.pending.append({"p": p, "lambda": list(weight.entries), "irreducible": irreducible})

    def flush(self) -> int:
        if not self.pending:
            return 0
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, 'a', encoding='utf-8') as f:
            for record in self.pending:
                f.write(json.dumps(record, separators=(",", ":")) + "\n")
        written = len(self.pending)
        self.pending = []
        logger.info(f"Appended {written} verdicts to {self.path}")
        return written


def attach_cache(cache: Optional[VerdictCache]) -> None:
    """Route new verdicts to `cache` (None detaches)"""
    global _CACHE
    _CACHE = cache
    if cache is not None:
        cache.load()


def clear_memo() -> None:
    _MEMO.clear()


def demo_jantzen():
    """Show verdicts for a few small weights"""
    print("🧮 Jantzen Criterion Demo")
    print("=" * 50)
    for entries, p in (((3, 0), 3), ((2, 0, 0), 3), ((0, 0, -1, -2), 5), ((5, 2, 0), 3)):
        weight = Weight(entries)
        verdict = even_irreducible(weight, p)
        screen = fast_f0_screen_reason(weight, p)
        print(f"{weight} at p={p}: {verdict.to_json()} screen={screen}")


if __name__ == "__main__":
    demo_jantzen()
