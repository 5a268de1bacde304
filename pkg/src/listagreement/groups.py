"""Finite coefficient groups for cochains: symmetric groups S_l and the bit group F_2.

Permutations are stored as dense image tuples ``p`` with ``p[i]`` the image
of ``i`` (0-based), so composition is ``(p*q)[i] = p[q[i]]`` and everything
stays O(l).  F_2 elements are the ints 0 and 1 under xor.
"""

from __future__ import annotations

import itertools

from .errors import InvalidParams


class SymmetricGroup:
    """The symmetric group on [l] = {0, ..., l-1}."""

    def __init__(self, l: int):
        if l < 1:
            raise InvalidParams("symmetric group needs l >= 1")
        self.l = l
        self.identity = tuple(range(l))

    @property
    def label(self) -> str:
        return "S_%d" % self.l

    @property
    def order(self) -> int:
        n = 1
        for i in range(2, self.l + 1):
            n *= i
        return n

    def elements(self):
        return (tuple(p) for p in itertools.permutations(range(self.l)))

    def contains(self, x) -> bool:
        return isinstance(x, tuple) and sorted(x) == list(range(self.l))

    def mul(self, p, q):
        return tuple(p[q[i]] for i in range(self.l))

    def inv(self, p):
        out = [0] * self.l
        for i, pi in enumerate(p):
            out[pi] = i
        return tuple(out)

    def apply(self, p, i: int) -> int:
        """Left action of p on the sheet set [l]."""
        return p[i]

    def __eq__(self, other):
        return isinstance(other, SymmetricGroup) and other.l == self.l

    def __hash__(self):
        return hash(("S", self.l))

    def __repr__(self):
        return "SymmetricGroup(%d)" % self.l


class BitGroup:
    """F_2 = {0, 1} under xor."""

    identity = 0
    l = 2
    label = "F2"
    order = 2

    def elements(self):
        return iter((0, 1))

    def contains(self, x) -> bool:
        return x in (0, 1)

    def mul(self, a, b):
        return a ^ b

    def inv(self, a):
        return a

    def apply(self, a, i: int) -> int:
        return a ^ i

    def __eq__(self, other):
        return isinstance(other, BitGroup)

    def __hash__(self):
        return hash("F2")

    def __repr__(self):
        return "BitGroup()"


F2 = BitGroup()


def transposition(l: int, a: int, b: int):
    img = list(range(l))
    img[a], img[b] = img[b], img[a]
    return tuple(img)
