"""A red-black tree used as an ordered map (insert and lookup only)."""
from __future__ import annotations

from typing import Any, Iterator

BLACK = 0
RED = 1


class _Node:
    __slots__ = ("key", "value", "left", "right", "parent", "color")

    def __init__(self, key, value, nil, color=RED):
        self.key = key
        self.value = value
        self.left = nil
        self.right = nil
        self.parent = nil
        self.color = color


class RedBlackTree:
    """Ordered map with O(log n) insertion and membership.

    Keys must be mutually comparable with ``<``.  Deletion is not needed by
    the closure algorithm and is not provided.
    """

    def __init__(self):
        self.nil = _Node(None, None, None, BLACK)
        self.nil.left = self.nil.right = self.nil.parent = self.nil
        self.root = self.nil
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def _find(self, key) -> _Node:
        x = self.root
        while x is not self.nil:
            if key < x.key:
                x = x.left
            elif x.key < key:
                x = x.right
            else:
                return x
        return self.nil

    def __contains__(self, key) -> bool:
        return self._find(key) is not self.nil

    def get(self, key, default=None) -> Any:
        node = self._find(key)
        return default if node is self.nil else node.value

    def insert(self, key, value=None) -> bool:
        """Insert key; returns False (and leaves the tree alone) if present."""
        y = self.nil
        x = self.root
        while x is not self.nil:
            y = x
            if key < x.key:
                x = x.left
            elif x.key < key:
                x = x.right
            else:
                return False
        z = _Node(key, value, self.nil)
        z.parent = y
        if y is self.nil:
            self.root = z
        elif key < y.key:
            y.left = z
        else:
            y.right = z
        self._size += 1
        self._insert_fixup(z)
        return True

    def _rotate_left(self, x: _Node) -> None:
        y = x.right
        x.right = y.left
        if y.left is not self.nil:
            y.left.parent = x
        y.parent = x.parent
        if x.parent is self.nil:
            self.root = y
        elif x is x.parent.left:
            x.parent.left = y
        else:
            x.parent.right = y
        y.left = x
        x.parent = y

    def _rotate_right(self, x: _Node) -> None:
        y = x.left
        x.left = y.right
        if y.right is not self.nil:
            y.right.parent = x
        y.parent = x.parent
        if x.parent is self.nil:
            self.root = y
        elif x is x.parent.right:
            x.parent.right = y
        else:
            x.parent.left = y
        y.right = x
        x.parent = y

    def _insert_fixup(self, z: _Node) -> None:
        while z.parent.color == RED:
            gp = z.parent.parent
            if z.parent is gp.left:
                uncle = gp.right
                if uncle.color == RED:
                    z.parent.color = BLACK
                    uncle.color = BLACK
                    gp.color = RED
                    z = gp
                else:
                    if z is z.parent.right:
                        z = z.parent
                        self._rotate_left(z)
                    z.parent.color = BLACK
                    z.parent.parent.color = RED
                    self._rotate_right(z.parent.parent)
            else:
                uncle = gp.left
                if uncle.color == RED:
                    z.parent.color = BLACK
                    uncle.color = BLACK
                    gp.color = RED
                    z = gp
                else:
                    if z is z.parent.left:
                        z = z.parent
                        self._rotate_right(z)
                    z.parent.color = BLACK
                    z.parent.parent.color = RED
                    self._rotate_left(z.parent.parent)
        self.root.color = BLACK

    def items(self) -> Iterator[tuple[Any, Any]]:
        stack = []
        x = self.root
        while stack or x is not self.nil:
            while x is not self.nil:
                stack.append(x)
                x = x.left
            x = stack.pop()
            yield x.key, x.value
            x = x.right

    def __iter__(self) -> Iterator[Any]:
        for k, _ in self.items():
            yield k

    def values(self) -> Iterator[Any]:
        for _, v in self.items():
            yield v

    def check(self) -> int:
        """Validate the red-black invariants; returns the black height."""

        def walk(x, lo, hi) -> int:
            if x is self.nil:
                return 1
            assert (lo is None or lo < x.key) and (hi is None or x.key < hi), "order violated"
            if x.color == RED:
                assert x.left.color == BLACK and x.right.color == BLACK, "red node with red child"
            hl = walk(x.left, lo, x.key)
            hr = walk(x.right, x.key, hi)
            assert hl == hr, "black heights differ"
            return hl + (x.color == BLACK)

        assert self.root.color == BLACK
        return walk(self.root, None, None)
