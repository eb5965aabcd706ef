"""Disjoint-set forest that tracks where each site sits relative to its root."""

from typing import List, Sequence, Tuple

Offset = Tuple[int, ...]


def _add(a: Offset, b: Offset) -> Offset:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Offset, b: Offset) -> Offset:
    return tuple(x - y for x, y in zip(a, b))


class DisplacementUnionFind:
    """
    Union-find over sites 0..n-1 with union by size and path compression.

    Every node stores the unwrapped lattice vector from its parent to itself,
    so find() also returns the vector from the root. Joining two sites of the
    same set along a step that disagrees with the stored vectors closes a
    cycle that winds around the torus; the axes where they disagree are
    recorded as wrap flags on the root.
    """

    def __init__(self, n: int, d: int) -> None:
        self._d = d
        self._zero: Offset = (0,) * d
        self._parents: List[int] = list(range(n))
        self._sizes: List[int] = [1] * n
        self._offsets: List[Offset] = [self._zero] * n
        self._wraps: List[List[bool]] = [[False] * d for _ in range(n)]

    def find(self, a: int) -> Tuple[int, Offset]:
        """Representative of `a` and the vector from it to `a`."""
        path = []
        node = a
        while self._parents[node] != node:
            path.append(node)
            node = self._parents[node]
        root = node

        # Compress path, accumulating offsets from the root downwards.
        offset = self._zero
        for ancestor in reversed(path):
            offset = _add(offset, self._offsets[ancestor])
            self._offsets[ancestor] = offset
            self._parents[ancestor] = root
        return root, self._offsets[a] if path else self._zero

    def union(self, a: int, b: int, step: Sequence[int]) -> None:
        """Merge the sets of `a` and `b`, where b sits at a + step on the lattice."""
        root_a, off_a = self.find(a)
        root_b, off_b = self.find(b)
        step = tuple(step)

        if root_a == root_b:
            mismatch = _sub(_add(off_a, step), off_b)
            flags = self._wraps[root_a]
            for axis, delta in enumerate(mismatch):
                if delta:
                    flags[axis] = True
            return

        # vector from root_a to root_b
        between = _sub(_add(off_a, step), off_b)
        if self._sizes[root_a] < self._sizes[root_b]:
            root_a, root_b = root_b, root_a
            between = tuple(-x for x in between)

        self._parents[root_b] = root_a
        self._offsets[root_b] = between
        self._sizes[root_a] += self._sizes[root_b]
        self._wraps[root_a] = [x or y for x, y in zip(self._wraps[root_a], self._wraps[root_b])]

    def size(self, a: int) -> int:
        return self._sizes[self.find(a)[0]]

    def wraps(self, a: int) -> List[bool]:
        return list(self._wraps[self.find(a)[0]])

    def is_singleton(self, a: int) -> bool:
        return self.size(a) == 1
