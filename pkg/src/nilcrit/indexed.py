"""Index-based multiplication view of an enumerated group.

Pair-enumeration loops (word value closures, coprime product scans, random
commutator closures) dominate the runtime of every check, and doing them on
raw image tuples wastes time re-hashing permutations.  This view numbers the
elements in canonical order and multiplies by table lookup; rows of the
multiplication table are built on demand so sparse access stays cheap.
"""

from __future__ import annotations

from typing import Iterable

from .errors import OrderCapExceeded
from .group import DEFAULT_ENUM_CAP, PermGroup
from .perm import Permutation


class IndexedGroup:
    """Canonical numbering of a group's elements with lazy multiplication rows."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_ENUM_CAP):
        elems = group.elements(cap)
        self.group = group
        self.elements: tuple[Permutation, ...] = elems
        self.size = len(elems)
        self.index: dict[Permutation, int] = {p: i for i, p in enumerate(elems)}
        self.order_of: list[int] = [p.order() for p in elems]
        self.inverse: list[int] = [self.index[p.inverse()] for p in elems]
        self._rows: list[list[int] | None] = [None] * self.size
        # the identity is the lexicographic minimum of any permutation set
        assert elems[0].is_identity()
        self.identity_index = 0

    def row(self, i: int) -> list[int]:
        r = self._rows[i]
        if r is None:
            a = self.elements[i]
            r = [self.index[a * b] for b in self.elements]
            self._rows[i] = r
        return r

    def mul(self, i: int, j: int) -> int:
        return self.row(i)[j]

    def conj(self, i: int, j: int) -> int:
        """index of elements[i] ^ elements[j]."""
        return self.mul(self.mul(self.inverse[j], i), j)

    def comm(self, i: int, j: int) -> int:
        """index of [elements[i], elements[j]]."""
        return self.mul(self.mul(self.mul(self.inverse[i], self.inverse[j]), i), j)

    def commutator_table(self) -> list[list[int]]:
        """Full table of [a, b] indices; forces all multiplication rows."""
        inv = self.inverse
        table = []
        for i in range(self.size):
            row_invi = self.row(inv[i])
            table.append([self.mul(self.mul(row_invi[inv[j]], i), j) for j in range(self.size)])
        return table

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        """Subgroup closure of the seed indices under multiplication."""
        seed_list = list(set(seed))
        seen = {self.identity_index, *seed_list}
        frontier = list(seen)
        while frontier and len(seen) < self.size:
            nxt = []
            for x in frontier:
                row = self.row(x)
                for s in seed_list:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) == self.size:
            return frozenset(range(self.size))
        return frozenset(seen)

    def commutator_closure(self, seed: Iterable[int]) -> frozenset[int]:
        """Close a set of indices under taking commutators of members."""
        inv = self.inverse
        row = self.row
        closed = set(seed)
        closed.add(self.identity_index)
        members = list(closed)
        frontier = list(closed)
        while frontier and len(closed) < self.size:
            fresh = []
            for x in frontier:
                row_invx = row(inv[x])
                for y in members:
                    # [x, y] and [y, x]
                    c1 = row(row(row_invx[inv[y]])[x])[y]
                    c2 = row(row(row(inv[y])[inv[x]])[y])[x]
                    if c1 not in closed:
                        closed.add(c1)
                        fresh.append(c1)
                    if c2 not in closed:
                        closed.add(c2)
                        fresh.append(c2)
                if len(closed) == self.size:
                    break
            members.extend(fresh)
            frontier = fresh
        return frozenset(closed)

    def perms(self, indices: Iterable[int]) -> list[Permutation]:
        return [self.elements[i] for i in indices]


def indexed_view(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> IndexedGroup:
    """Cached indexed view of G; raises OrderCapExceeded when G is too big."""
    n = G.order()
    if n > cap:
        raise OrderCapExceeded(n, cap)
    return G.memo(("indexed",), lambda: IndexedGroup(G, cap))
