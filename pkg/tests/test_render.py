"""Tests for the text formatters."""

import json
import re

import numpy as np
import pytest

from amm_verify.classes import enumerate_nkm
from amm_verify.errors import ValidationError
from amm_verify.render import (build_tree, parity_rows, pbm, table_csv,
                               table_markdown, tree_dot, tree_json)
from amm_verify.stirling import stirling_exact


class TestParity:
    def test_two_rows(self):
        assert pbm(parity_rows(2)) == "P1\n2 2\n1 0\n0 1\n"

    def test_matches_exact(self):
        grid = parity_rows(40)
        for n in range(40):
            for k in range(40):
                assert grid[n, k] == stirling_exact(n, k) % 2

    def test_upper_triangle_is_zero(self):
        grid = parity_rows(16)
        assert not np.triu(grid, 1).any()

    def test_rows_must_be_positive(self):
        with pytest.raises(ValidationError):
            parity_rows(0)


class TestTables:
    def test_csv(self):
        text = table_csv({5: [2, 2, 2], 6: [2, 2, 2]})
        assert text == "k,m1,m2,m3\n5,2,2,2\n6,2,2,2\n"

    def test_markdown(self):
        lines = table_markdown({13: [2, 4, 5]}).splitlines()
        assert lines[0] == "| k | m=1 | m=2 | m=3 |"
        assert lines[2] == "| 13 | 2 | 4 | 5 |"


class TestTree:
    def test_node_count(self):
        k, depth = 5, 4
        tree = build_tree(k, depth)
        nonconstant = sum(len(enumerate_nkm(k, m)) for m in range(1, depth + 1))
        boundary = [n for n in tree.nodes if not n.nonconstant]
        assert len(tree.nodes) == nonconstant + len(boundary)
        assert all(n.value is not None for n in boundary)

    def test_every_edge_targets_a_node(self):
        tree = build_tree(7, 4)
        ids = {n.id for n in tree.nodes}
        assert all(e.parent in ids and e.child in ids for e in tree.edges)
        # each non-constant class at levels 1..3 has exactly two children
        parents = [n for n in tree.nodes if n.nonconstant and n.m < 4]
        assert len(tree.edges) == 2 * len(parents)

    def test_dot_shape(self):
        text = tree_dot(build_tree(5, 3))
        assert text.startswith("digraph amm_k5 {")
        assert text.rstrip().endswith("}")
        assert 'label="7 mod 2^3", shape=box' in text
        for line in text.splitlines()[2:-1]:
            assert re.fullmatch(r"  \w+ (\[.*\]|-> \w+);", line)

    def test_json(self):
        data = json.loads(tree_json(build_tree(5, 2)))
        assert data["k"] == 5
        assert {(n["n"], n["m"]) for n in data["nodes"] if n["nonconstant"]} == {
            (5, 1), (6, 1), (7, 2), (8, 2),
        }
