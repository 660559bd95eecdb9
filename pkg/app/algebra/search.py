"""Individualization-refinement search for automorphisms and isomorphisms.

Partitions are ordered lists of cells.  Refinement is equivariant: it only
looks at cell positions and neighbor counts, never at vertex ids, so an
isomorphism maps the refined partition of one graph onto the refined
partition of the other cell by cell.  Ties are broken by the smallest
vertex id.
"""
from __future__ import annotations

import logging
from collections import defaultdict, deque
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

Adjacency = Sequence[Sequence[int]]
Cells = list[list[int]]


def _cell_index(cells: Cells, n: int) -> list[int]:
    cell_of = [0] * n
    for idx, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = idx
    return cell_of


def refine(adjacency: Adjacency, cells: Cells, splitters: Optional[Cells] = None) -> Cells:
    """Coarsest equitable refinement of `cells`."""
    cells = [list(c) for c in cells]
    n = len(adjacency)
    queue = deque(cells if splitters is None else splitters)
    cell_of = _cell_index(cells, n)
    while queue and len(cells) < n:
        splitter = queue.popleft()
        counts: dict[int, int] = defaultdict(int)
        for v in splitter:
            for u in adjacency[v]:
                counts[u] += 1
        touched = {cell_of[u] for u in counts}
        new_cells = []
        split = False
        for idx, cell in enumerate(cells):
            if idx not in touched or len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[int, list[int]] = defaultdict(list)
            for v in cell:
                groups[counts.get(v, 0)].append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            split = True
            for key in sorted(groups):
                fragment = groups[key]
                new_cells.append(fragment)
                queue.append(fragment)
        if split:
            cells = new_cells
            cell_of = _cell_index(cells, n)
    return cells


def individualize(adjacency: Adjacency, cells: Cells, v: int) -> Cells:
    """Split `v` off into its own cell (placed first) and refine."""
    result = []
    for cell in cells:
        if v in cell and len(cell) > 1:
            result.append([v])
            result.append([u for u in cell if u != v])
        else:
            result.append(cell)
    return refine(adjacency, result, splitters=[[v]])


def signature(adjacency: Adjacency, cells: Cells) -> tuple:
    """Quotient matrix of an equitable partition; equal for corresponding partitions."""
    cell_of = _cell_index(cells, len(adjacency))
    rows = []
    for cell in cells:
        counts: dict[int, int] = defaultdict(int)
        for u in adjacency[cell[0]]:
            counts[cell_of[u]] += 1
        rows.append((len(cell), tuple(sorted(counts.items()))))
    return tuple(rows)


def first_open_cell(cells: Cells) -> int:
    for idx, cell in enumerate(cells):
        if len(cell) > 1:
            return idx
    return -1


def _leaf_mapping(left: Cells, right: Cells, n: int) -> list[int]:
    mapping = [0] * n
    for lc, rc in zip(left, right):
        mapping[lc[0]] = rc[0]
    return mapping


def preserves_edges(adj_a: Adjacency, adj_b_sets: Sequence[set[int]], mapping: Sequence[int]) -> bool:
    for u, nbrs in enumerate(adj_a):
        image = adj_b_sets[mapping[u]]
        for v in nbrs:
            if mapping[v] not in image:
                return False
    return True


def find_mapping(
    adj_a: Adjacency,
    adj_b: Adjacency,
    left: Cells,
    right: Cells,
) -> Optional[tuple[int, ...]]:
    """Depth-first search for an isomorphism carrying `left` onto `right`.

    Both partitions must be equitable.  Returns the first mapping found in
    the order of smallest candidate ids, or None when none exists.
    """
    n = len(adj_a)
    if len(adj_b) != n:
        return None
    if signature(adj_a, left) != signature(adj_b, right):
        return None
    b_sets = [set(nbrs) for nbrs in adj_b]
    stack: list[list] = []
    while True:
        if len(left) == n:
            mapping = _leaf_mapping(left, right, n)
            if preserves_edges(adj_a, b_sets, mapping):
                return tuple(mapping)
        else:
            idx = first_open_cell(left)
            x = min(left[idx])
            child = individualize(adj_a, left, x)
            stack.append([child, signature(adj_a, child), right, sorted(right[idx]), 0])
        while stack:
            frame = stack[-1]
            child, child_sig, parent_right, candidates, pos = frame
            if pos >= len(candidates):
                stack.pop()
                continue
            frame[4] = pos + 1
            right_child = individualize(adj_b, parent_right, candidates[pos])
            if signature(adj_b, right_child) == child_sig:
                left, right = child, right_child
                break
        else:
            return None


def _orbit(x: int, generators: Sequence[Sequence[int]]) -> set[int]:
    orbit = {x}
    frontier = [x]
    while frontier:
        v = frontier.pop()
        for g in generators:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def automorphism_chain(adjacency: Adjacency) -> tuple[list[tuple[int, ...]], int, list[int]]:
    """Generators, order and base of the automorphism group.

    At each level the first open cell is split at its smallest vertex x and
    every other candidate y of the cell is tried unless it already lies in
    the orbit of x under the generators found at this level.  The orbit
    lengths multiply to the group order.
    """
    n = len(adjacency)
    generators: list[tuple[int, ...]] = []
    order = 1
    base: list[int] = []
    if n == 0:
        return generators, order, base
    level = refine(adjacency, [list(range(n))])
    while len(level) < n:
        idx = first_open_cell(level)
        x = min(level[idx])
        left = individualize(adjacency, level, x)
        left_sig = signature(adjacency, left)
        level_gens: list[tuple[int, ...]] = []
        orbit = {x}
        for y in sorted(level[idx]):
            if y in orbit:
                continue
            right = individualize(adjacency, level, y)
            if signature(adjacency, right) != left_sig:
                continue
            mapping = find_mapping(adjacency, adjacency, left, right)
            if mapping is None:
                continue
            level_gens.append(mapping)
            orbit = _orbit(x, level_gens)
        logger.debug("base point %d: orbit %d, %d new generators", x, len(orbit), len(level_gens))
        order *= len(orbit)
        generators.extend(level_gens)
        base.append(x)
        level = left
    return generators, order, base
