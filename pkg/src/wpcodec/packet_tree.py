"""Wavelet-packet best tree grown top-down with the threshold-count cost."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CorruptTreeError, InvalidInputError
from .wavelets import FilterPair, QuadSplit, analyze2d, split_shape, synthesize2d

LABELS = "AHVD"


@dataclass
class CostConfig:
    threshold: float
    max_level: int

    def validate(self, shape) -> None:
        if not self.threshold >= 0:
            raise InvalidInputError("cost threshold must be >= 0")
        limit = max_level_for(shape)
        if not 1 <= self.max_level <= limit:
            raise InvalidInputError(
                f"max_level {self.max_level} outside [1, {limit}] for shape {tuple(shape)}")


def max_level_for(shape) -> int:
    smallest = min(shape)
    return int(math.floor(math.log2(smallest))) if smallest >= 1 else 0


@dataclass(eq=False)
class PacketNode:
    path: str
    shape: tuple
    block: np.ndarray | None = None
    children: list | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def walk(self):
        """Depth-first preorder, children in A, H, V, D order."""
        yield self
        if self.children is not None:
            for child in self.children:
                yield from child.walk()

    def leaves(self):
        return [n for n in self.walk() if n.is_leaf]


@dataclass(eq=False)
class PacketTree:
    root: PacketNode
    wavelet: object
    shape: tuple

    def leaves(self):
        return self.root.leaves()

    @property
    def depth(self) -> int:
        return max(len(n.path) for n in self.leaves())

    def depth_histogram(self) -> dict:
        return dict(sorted(Counter(len(n.path) for n in self.leaves()).items()))


def cost(block, threshold: float) -> int:
    """Number of coefficients whose magnitude strictly exceeds ``threshold``."""
    return int(np.count_nonzero(np.abs(np.asarray(block)) > threshold))


def build_best_tree(p, f: FilterPair, cfg: CostConfig) -> PacketTree:
    """Grow the packet tree top-down, keeping a split unless the four
    children together cost more than their parent.

    Ties keep the children.  Nodes at ``cfg.max_level`` and blocks with a
    side shorter than 2 are leaves.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2:
        raise InvalidInputError("expected a 2-D plane")
    cfg.validate(p.shape)
    t = cfg.threshold

    def grow(block, path, parent_cost):
        node = PacketNode(path, block.shape, block=block)
        if len(path) >= cfg.max_level or min(block.shape) < 2:
            return node
        q = analyze2d(block, f)
        child_costs = [cost(b, t) for b in q.bands()]
        if sum(child_costs) > parent_cost:
            return node
        node.block = None
        node.children = [grow(b, path + lab, c)
                         for lab, b, c in zip(LABELS, q.bands(), child_costs)]
        return node

    return PacketTree(grow(p, "", cost(p, t)), f.id, p.shape)


def flatten_leaves(t: PacketTree):
    return [(n.path, n.block) for n in t.leaves()]


def _check_shapes(node: PacketNode):
    for n in node.walk():
        if n.is_leaf:
            if n.block is None or np.shape(n.block) != tuple(n.shape):
                raise CorruptTreeError(f"leaf {n.path or '<root>'} has wrong block shape")
            continue
        if len(n.children) != 4:
            raise CorruptTreeError(f"node {n.path or '<root>'} needs 4 children")
        want = split_shape(n.shape)
        if min(n.shape) < 2 or any(c.shape != want for c in n.children):
            raise CorruptTreeError(f"children of {n.path or '<root>'} have wrong shape")


def reconstruct(t: PacketTree, f: FilterPair) -> np.ndarray:
    _check_shapes(t.root)

    def collapse(node):
        if node.is_leaf:
            return np.asarray(node.block, dtype=np.float64)
        bands = [collapse(c) for c in node.children]
        return synthesize2d(QuadSplit(*bands), f, node.shape)

    return collapse(t.root)


def skeleton_from_bits(bits, shape, max_level: int) -> tuple:
    """Rebuild a block-less tree from preorder split flags (1 = split).

    Returns ``(root, consumed)``.  ``shape`` fixes the node dimensions.
    """
    pos = 0

    def take(path, node_shape):
        nonlocal pos
        if pos >= len(bits):
            raise CorruptTreeError("topology ended before the tree was complete")
        flag = bits[pos]
        pos += 1
        node = PacketNode(path, tuple(node_shape))
        if flag:
            if len(path) >= max_level or min(node_shape) < 2:
                raise CorruptTreeError(f"node {path or '<root>'} cannot be split")
            sub = split_shape(node_shape)
            node.children = [take(path + lab, sub) for lab in LABELS]
        return node

    root = take("", shape)
    return root, pos


def attach_blocks(root: PacketNode, blocks) -> None:
    """Fill leaves of a skeleton with ``blocks`` in preorder."""
    leaves = root.leaves()
    if len(leaves) != len(blocks):
        raise CorruptTreeError(f"{len(blocks)} blocks for {len(leaves)} leaves")
    for node, block in zip(leaves, blocks):
        node.block = block
