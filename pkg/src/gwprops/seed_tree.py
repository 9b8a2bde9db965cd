"""Breadth-first seed encoding of Poisson Galton-Watson trees.

A rooted tree is generated from a sequence of offspring counts
(X_1, X_2, ...): node i gets X_i children, and nodes are numbered top to
bottom, left to right (breadth-first order).  The sequence is the *seed*
of the tree; a prefix (X_1, ..., X_k) pins down the first stage of the
exploration.

Conventions used throughout this package:

  * The root is node 1 and sits on level 0 (so the root is even-level).
  * A node *exists* once it has been generated as somebody's child (or is
    the root).  It is *known* when it also has an index <= k, so its own
    child count is available in the prefix.
  * The tree is complete with exactly n nodes iff n is the smallest index
    with X_1 + ... + X_n = n - 1 (total-progeny / ballot condition); at
    that point the breadth-first frontier is exhausted and any further
    seed entries are irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence


@dataclass(frozen=True)
class SeedPrefix:
    """The first k offspring counts (X_1, ..., X_k) of a seed."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) < 1:
            raise ValueError("seed prefix must contain at least one count")
        if any(c < 0 for c in counts):
            raise ValueError(f"offspring counts must be non-negative, got {counts}")

    @property
    def k(self) -> int:
        return len(self.counts)

    @classmethod
    def from_string(cls, text: str) -> "SeedPrefix":
        """Parse a comma-separated prefix such as "3,0,2,1,0,0,0"."""
        parts = [p.strip() for p in text.split(",") if p.strip() != ""]
        if not parts:
            raise ValueError(f"empty seed prefix: {text!r}")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad seed prefix {text!r}: {exc}") from None

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


@dataclass(frozen=True)
class TreeView:
    """Breadth-first reconstruction of the tree described by a seed prefix.

    parent and level cover every node generated during the reconstruction,
    including nodes whose index exceeds the prefix length (they exist, but
    their own child counts are unknown).  num_nodes_known counts the nodes
    that both exist and have their child count in the prefix.  Treat the
    mappings as read-only.
    """

    prefix_len: int
    num_nodes_known: int
    parent: dict[int, int] = field(repr=False)
    level: dict[int, int] = field(repr=False)
    complete_size: int | None

    @property
    def is_complete(self) -> bool:
        return self.complete_size is not None

    @property
    def num_generated(self) -> int:
        return len(self.level)


def _as_counts(seed) -> tuple[int, ...]:
    if isinstance(seed, SeedPrefix):
        return seed.counts
    return SeedPrefix(tuple(seed)).counts


def build_tree(seed: SeedPrefix | Sequence[int]) -> TreeView:
    """Reconstruct the labelled tree determined by a seed prefix.

    Walks nodes in breadth-first order for as long as they exist and their
    counts are in the prefix, assigning parents and levels to each child
    generated on the way.  Stops at the first index n where the ballot
    condition sum(X_1..X_n) = n - 1 holds (the tree is then complete with
    n nodes) or when the prefix runs out.
    """
    counts = _as_counts(seed)
    k = len(counts)
    parent: dict[int, int] = {}
    level: dict[int, int] = {1: 0}
    total = 1  # nodes generated so far, root included
    complete_size = None
    i = 1
    while i <= k and i <= total:
        x = counts[i - 1]
        child_level = level[i] + 1
        for child in range(total + 1, total + x + 1):
            parent[child] = i
            level[child] = child_level
        total += x
        if total == i:
            complete_size = i
            break
        i += 1
    return TreeView(
        prefix_len=k,
        num_nodes_known=min(k, total),
        parent=parent,
        level=level,
        complete_size=complete_size,
    )


def level_counts(tree: TreeView, level_filter: Callable[[int], bool]) -> int:
    """Number of known nodes whose level satisfies the filter.

    Counting runs over nodes 1..num_nodes_known, so a filter and its
    complement always sum to num_nodes_known.
    """
    return sum(
        1 for i in range(1, tree.num_nodes_known + 1) if level_filter(tree.level[i])
    )
