#!/usr/bin/env python3
"""
Block Engine
Certified reduction of a simple label to its block representative, the bounded-box
block census, and union-find components of the restricted move graph
"""

import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from affine_even import check_prime
from certificates import (Certificate, CertificateVerdict, concat, m_descent_audit,
                          reverse_certificate, verify_certificate)
from errors import BudgetExhausted, WeightError
from linkage_moves import Move, neighbors
from recipe_replay import recipe_macros
from weights import (ParityWeight, Sector, Weight, degree, dominant_weights_in_box,
                     m_vector, omega, require_dominant, sector)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000

__all__ = ["Certificate", "CertificateVerdict", "verify_certificate", "concat",
           "reverse_certificate", "m_descent_audit", "SearchBox", "canonical_representative",
           "reduce", "CensusRow", "CensusReport", "block_census", "UnionFind",
           "census_graph", "components_in_box"]


@dataclass(frozen=True)
class SearchBox:
    """Weights with bottom ≤ λ_n and λ_1 ≤ top"""
    bottom: int
    top: int

    @classmethod
    def around(cls, lo: int, hi: int, n: int, p: int, margin_top: Optional[int] = None,
               margin_bottom: Optional[int] = None) -> "SearchBox":
        """Inflate a census box by 2p+n above and p below unless margins are given"""
        above = 2 * p + n if margin_top is None else margin_top
        below = p if margin_bottom is None else margin_bottom
        return cls(lo - below, hi + above)

    def contains(self, weight: Weight) -> bool:
        return self.bottom <= weight.entries[-1] and weight.entries[0] <= self.top


def canonical_representative(pw: ParityWeight) -> ParityWeight:
    """(0^n, ε) for even degree, (0^{n−1}(−1), ε) for odd, with ε fixed by the sector"""
    n = pw.weight.n
    base = omega(0, 0, n) if degree(pw.weight) % 2 == 0 else omega(0, 1, n)
    wanted = sector(pw)
    for parity in (0, 1):
        candidate = ParityWeight(base, parity)
        if sector(candidate) is wanted:
            return candidate
    raise WeightError(f"no representative shares the sector of {pw}")


def _priority(pw: ParityWeight) -> tuple:
    weight = pw.weight
    return (m_vector(weight), abs(weight.entries[0]), abs(degree(weight)), weight.entries, pw.parity)


def _path(parents: Dict[ParityWeight, Tuple[Optional[ParityWeight], Tuple[Move, ...]]],
          node: ParityWeight) -> List[Move]:
    pieces = []
    while True:
        previous, moves = parents[node]
        if previous is None:
            break
        pieces.append(moves)
        node = previous
    steps: List[Move] = []
    for moves in reversed(pieces):
        steps.extend(moves)
    return steps


def _remember(known: Dict[ParityWeight, Tuple[Tuple[Move, ...], int]],
              certificate: Certificate) -> None:
    """Every label on a certified chain reaches the same end by the chain's suffix"""
    steps = tuple(certificate.steps)
    for offset, label in enumerate(certificate.trail()):
        known.setdefault(label, (steps, offset))


def reduce(pw: ParityWeight, p: int, budget: int = DEFAULT_BUDGET,
           excursion_cap: Optional[int] = None, strict: bool = False,
           box: Optional[SearchBox] = None,
           known: Optional[Dict[ParityWeight, Tuple[Tuple[Move, ...], int]]] = None,
           use_recipes: bool = True) -> Certificate:
    """
    Certified chain from `pw` to the representative of its sector.

    Best-first search on (m-vector, |λ_1|, |degree|, λ, ε); ω-shaped labels also get
    the scripted chains of recipe_replay as single edges. `known` maps labels already
    certified in this census to the suffix that finishes them and is extended here.

    Raises:
        BudgetExhausted: more than `budget` labels were expanded (or the box ran dry);
            this is not a claim that no chain exists
    """
    require_dominant(pw.weight)
    check_prime(p)
    target = canonical_representative(pw)
    if box is None:
        lo = min(pw.weight.entries[-1], -1)
        hi = max(pw.weight.entries[0], 0)
        box = SearchBox.around(lo, hi, pw.weight.n, p)

    def finish(node: ParityWeight, parents) -> Certificate:
        steps = _path(parents, node)
        if node != target:
            suffix, offset = known[node]
            steps.extend(suffix[offset:])
        certificate = Certificate(p, pw, steps, target)
        if known is not None:
            _remember(known, certificate)
        return certificate

    def reached(node: ParityWeight) -> bool:
        return node == target or (known is not None and node in known)

    parents: Dict[ParityWeight, Tuple[Optional[ParityWeight], Tuple[Move, ...]]] = {pw: (None, ())}
    if reached(pw):
        return finish(pw, parents)

    frontier = [(_priority(pw), pw)]
    expanded = 0
    while frontier:
        _, node = heapq.heappop(frontier)
        expanded += 1
        if expanded > budget:
            raise BudgetExhausted(pw, expanded - 1, budget)

        edges = [(following, (move,)) for following, move in neighbors(node, p, excursion_cap, strict)]
        if use_recipes:
            edges.extend((end, steps) for end, steps, _ in recipe_macros(node, p, strict))
        for following, moves in edges:
            if following in parents or not box.contains(following.weight):
                continue
            parents[following] = (node, moves)
            if reached(following):
                logger.debug(f"reduce {pw}: reached {following} after {expanded} expansions")
                return finish(following, parents)
            heapq.heappush(frontier, (_priority(following), following))

    raise BudgetExhausted(pw, expanded, budget)


@dataclass
class CensusRow:
    key: ParityWeight
    certificate: Certificate
    verdict: CertificateVerdict

    @property
    def representative(self) -> ParityWeight:
        return self.certificate.end

    def to_json(self) -> dict:
        return {"key": self.key.to_json(),
                "sector": sector(self.key).name,
                "representative": self.representative.to_json(),
                "verified": self.verdict.to_json(),
                "certificate": self.certificate.to_json()}


@dataclass
class CensusReport:
    """Reduction of every label in a box, with the four-representative assertions"""
    p: int
    n: int
    box: Tuple[int, int]
    rows: Dict[ParityWeight, CensusRow] = field(default_factory=dict)

    @property
    def representative_set(self) -> List[ParityWeight]:
        return sorted({row.representative for row in self.rows.values()})

    def problems(self) -> List[str]:
        found = []
        representatives = self.representative_set
        if len(representatives) != 4:
            found.append(f"expected 4 representatives, found {len(representatives)}")
        for key, row in self.rows.items():
            if not row.verdict.ok:
                found.append(f"certificate for {key} fails at step {row.verdict.failing_step}: "
                             f"{row.verdict.reason}")
            if sector(key) is not sector(row.representative):
                found.append(f"{key} ({sector(key).name}) reduced to {row.representative} "
                             f"({sector(row.representative).name})")
            elif row.representative != canonical_representative(key):
                found.append(f"{key} reduced to {row.representative}, not its sector's representative")
        return found

    @property
    def assertions_hold(self) -> bool:
        return not self.problems()

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "box": list(self.box),
                "rows": [self.rows[key].to_json() for key in sorted(self.rows)],
                "representative_set": [pw.to_json() for pw in self.representative_set],
                "assertions_hold": self.assertions_hold,
                "problems": self.problems()}


def block_census(n: int, p: int, box: Tuple[int, int] = (-2, 2), budget: int = DEFAULT_BUDGET,
                 excursion_cap: Optional[int] = None, strict: bool = False,
                 margins: Tuple[Optional[int], Optional[int]] = (None, None),
                 use_recipes: bool = True) -> CensusReport:
    """
    Reduce every dominant λ with lo ≤ λ_n, λ_1 ≤ hi, for both parities.

    Raises:
        WeightError: the box does not contain 0, or n < 2
        BudgetExhausted: a row ran out of budget (carries that row's label)
    """
    lo, hi = box
    if not lo <= 0 <= hi:
        raise WeightError(f"census box must satisfy lo ≤ 0 ≤ hi, got ({lo},{hi})")
    if n < 2:
        raise WeightError(f"rank must be at least 2, got {n}")
    check_prime(p)

    search_box = SearchBox.around(lo, hi, n, p, *margins)
    known: Dict[ParityWeight, Tuple[Tuple[Move, ...], int]] = {}
    report = CensusReport(p, n, (lo, hi))
    for weight in dominant_weights_in_box(n, lo, hi):
        for parity in (0, 1):
            key = ParityWeight(weight, parity)
            certificate = reduce(key, p, budget, excursion_cap, strict, search_box, known, use_recipes)
            verdict = verify_certificate(certificate, strict)
            if not verdict.ok:
                logger.error(f"Certificate for {key} does not verify: {verdict.reason}")
            report.rows[key] = CensusRow(key, certificate, verdict)
    logger.info(f"Census p={p}, n={n}, box=({lo},{hi}): {len(report.rows)} rows, "
                f"{len(report.representative_set)} representatives")
    return report


class UnionFind:
    """Union-find over 0..size−1 with path compression"""

    def __init__(self, size: int):
        self.parents = list(range(size))
        self.num_components = size

    def find_parent(self, elem: int) -> int:
        root = elem
        while root != self.parents[root]:
            root = self.parents[root]
        # point the whole path at the root
        while elem != root:
            self.parents[elem], elem = root, self.parents[elem]
        return root

    def union(self, a: int, b: int) -> None:
        first, second = self.find_parent(a), self.find_parent(b)
        if first == second:
            return
        self.parents[second] = first
        self.num_components -= 1

    def retrieve_components(self) -> List[List[int]]:
        components: Dict[int, List[int]] = {}
        for elem in range(len(self.parents)):
            components.setdefault(self.find_parent(elem), []).append(elem)
        return list(components.values())


def census_graph(n: int, p: int, box: Tuple[int, int], excursion_cap: Optional[int] = None,
                 strict: bool = False) -> Tuple[List[ParityWeight], List[Tuple[ParityWeight, ParityWeight, str]]]:
    """Labels in the box and the move edges between them (each undirected edge once)"""
    lo, hi = box
    nodes = [ParityWeight(weight, parity)
             for weight in dominant_weights_in_box(n, lo, hi) for parity in (0, 1)]
    inside = set(nodes)
    edges = []
    seen = set()
    for node in nodes:
        for following, move in neighbors(node, p, excursion_cap, strict):
            if following not in inside:
                continue
            pair = (min(node, following), max(node, following))
            if pair in seen:
                continue
            seen.add(pair)
            edges.append((node, following, move.kind))
    return nodes, edges


def components_in_box(n: int, p: int, box: Tuple[int, int], excursion_cap: Optional[int] = None,
                      strict: bool = False) -> List[List[ParityWeight]]:
    """
    Connected components of the move graph restricted to the box.

    These can be finer than the true blocks: chains that leave the box are not seen.
    """
    nodes, edges = census_graph(n, p, box, excursion_cap, strict)
    index = {node: position for position, node in enumerate(nodes)}
    groups = UnionFind(len(nodes))
    for source, following, _ in edges:
        groups.union(index[source], index[following])
    components = [sorted(nodes[k] for k in members) for members in groups.retrieve_components()]
    return sorted(components)


def sectors_present(labels: Sequence[ParityWeight]) -> List[Sector]:
    return sorted({sector(label) for label in labels}, key=lambda s: s.value)


def demo_block_engine():
    """Reduce a few labels and run a tiny census"""
    print("🧱 Block Engine Demo")
    print("=" * 50)
    for entries, parity in (((1, 1), 0), ((2, 0), 0), ((0, -1), 1)):
        certificate = reduce(ParityWeight(Weight(entries), parity), 3)
        print(f"{certificate.start} -> {certificate.end} in {len(certificate.steps)} steps")
    report = block_census(2, 3, (-2, 2))
    print(f"census p=3, n=2: {[str(pw) for pw in report.representative_set]} "
          f"assertions hold: {report.assertions_hold}")


if __name__ == "__main__":
    demo_block_engine()
