# Copyright (c) 2025-2026 Johnnie
#
# This software is released under the MIT License.
# https://opensource.org/licenses/MIT
#
# This file is part of the amm-verify library
#
# amm_verify/render.py

"""Text formats behind the command-line subcommands."""

from __future__ import annotations

import csv
import io
import logging
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .classes import CongruenceClass, children, enumerate_nkm, nu_constancy
from .errors import ValidationError

logger = logging.getLogger("amm_verify.render")


def parity_rows(rows: int) -> np.ndarray:
    """``S(n, k) mod 2`` for ``0 <= k <= n < rows``; zero above the diagonal."""
    if rows < 1:
        raise ValidationError("rows", rows, expected="integer >= 1")
    grid = np.zeros((rows, rows), dtype=np.uint8)
    odd_k = (np.arange(rows) & 1).astype(np.uint8)
    row = np.zeros(rows, dtype=np.uint8)
    row[0] = 1
    grid[0] = row
    for n in range(1, rows):
        shifted = np.concatenate(([0], row[:-1])).astype(np.uint8)
        row = (odd_k & row) ^ shifted
        grid[n] = row
    return grid


def pbm(grid: np.ndarray) -> str:
    """ASCII portable bitmap (P1) of a 0/1 grid, one text line per row."""
    height, width = grid.shape
    lines = ["P1", f"{width} {height}"]
    lines.extend(" ".join(str(int(b)) for b in row) for row in grid)
    return "\n".join(lines) + "\n"


def table_csv(counts: Dict[int, List[int]]) -> str:
    m_max = max((len(v) for v in counts.values()), default=0)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["k"] + [f"m{m}" for m in range(1, m_max + 1)])
    for k in sorted(counts):
        writer.writerow([k] + counts[k])
    return buffer.getvalue()


def table_markdown(counts: Dict[int, List[int]]) -> str:
    m_max = max((len(v) for v in counts.values()), default=0)
    header = ["k"] + [f"m={m}" for m in range(1, m_max + 1)]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "---|" * len(header),
    ]
    for k in sorted(counts):
        cells = [str(k)] + [str(c) for c in counts[k]]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


class TreeNode(BaseModel):
    id: str
    n: int
    m: int
    nonconstant: bool
    value: Optional[int] = None


class TreeEdge(BaseModel):
    parent: str
    child: str


class BranchingTree(BaseModel):
    k: int
    max_level: int
    nodes: List[TreeNode] = Field(default_factory=list)
    edges: List[TreeEdge] = Field(default_factory=list)


def _node_id(n: int, m: int) -> str:
    return f"n{n}_m{m}"


def build_tree(
    k: int, max_level: int, threads: Optional[int] = None
) -> BranchingTree:
    """Non-constant classes for levels ``1..max_level`` and their children.

    Constant children of a non-constant class appear as leaves. Every
    child of a window representative at level ``m`` is itself a window
    representative at level ``m + 1``.
    """
    if max_level < 1:
        raise ValidationError("max_level", max_level, expected="integer >= 1")
    tree = BranchingTree(k=k, max_level=max_level)
    levels = {m: enumerate_nkm(k, m, threads) for m in range(1, max_level + 1)}

    for m in range(1, max_level + 1):
        for n in levels[m]:
            tree.nodes.append(
                TreeNode(id=_node_id(n, m), n=n, m=m, nonconstant=True)
            )
        if m == max_level:
            break
        for n in levels[m]:
            for child in children(CongruenceClass(n, m)):
                tree.edges.append(
                    TreeEdge(
                        parent=_node_id(n, m),
                        child=_node_id(child.n, child.m),
                    )
                )
                verdict = nu_constancy(child, k)
                if verdict.constant:
                    tree.nodes.append(
                        TreeNode(
                            id=_node_id(child.n, child.m),
                            n=child.n,
                            m=child.m,
                            nonconstant=False,
                            value=verdict.value,
                        )
                    )
    return tree


def tree_dot(tree: BranchingTree) -> str:
    lines = [f"digraph amm_k{tree.k} {{", "  rankdir=TB;"]
    for node in tree.nodes:
        label = f"{node.n} mod 2^{node.m}"
        if node.nonconstant:
            attrs = f'label="{label}", shape=box, style=bold'
        else:
            attrs = f'label="{label}\\nnu={node.value}", shape=ellipse'
        lines.append(f"  {node.id} [{attrs}];")
    for edge in tree.edges:
        lines.append(f"  {edge.parent} -> {edge.child};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_json(tree: BranchingTree) -> str:
    return tree.model_dump_json(indent=2, exclude_none=True) + "\n"


__all__ = [
    "parity_rows",
    "pbm",
    "table_csv",
    "table_markdown",
    "TreeNode",
    "TreeEdge",
    "BranchingTree",
    "build_tree",
    "tree_dot",
    "tree_json",
]
