#!/usr/bin/env python3
"""
Graph Export
Graphviz DOT rendering of the move graph restricted to a census box
"""

import logging
from typing import Iterable, List, Tuple

from weights import ParityWeight, Sector, sector

logger = logging.getLogger(__name__)

SECTOR_COLORS = {
    Sector.F00: "#1f77b4",
    Sector.F01: "#ff7f0e",
    Sector.F10: "#2ca02c",
    Sector.F11: "#d62728",
}


def to_dot(nodes: Iterable[ParityWeight],
           edges: Iterable[Tuple[ParityWeight, ParityWeight, str]],
           name: str = "linkage") -> str:
    """Undirected DOT graph: nodes "λ|ε" filled by sector, edges labelled by move kind"""
    lines: List[str] = [f'graph "{name}" {{', '  node [style=filled, fontname="monospace"];']
    for node in nodes:
        color = SECTOR_COLORS[sector(node)]
        lines.append(f'  "{node}" [fillcolor="{color}", tooltip="{sector(node).name}"];')
    for source, target, kind in edges:
        lines.append(f'  "{source}" -- "{target}" [label="{kind}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(path: str, nodes, edges, name: str = "linkage") -> str:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(to_dot(nodes, edges, name))
    logger.info(f"Wrote DOT graph to {path}")
    return path
