"""Stabilizer chains (base and strong generating set) via Schreier-Sims.

The construction is fully deterministic: base points are always the smallest
moved point of the generator that forces them, and orbits are explored
breadth-first with generators in list order.  Order and membership tests read
off the chain, so neither is subject to the enumeration cap.
"""

from __future__ import annotations

from .perm import Permutation


class StabilizerChain:
    """Base, strong generators and transversals for a permutation group."""

    def __init__(self, degree: int, generators: list[Permutation]):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Permutation] = []
        # transversals[i] maps orbit point -> u with base[i]^u = point
        self.transversals: list[dict[int, Permutation]] = []
        self._identity = Permutation.identity(degree)
        dirty = False
        for g in generators:
            residue, level = self._sift(g, 0)
            if not (residue.is_identity() and level == len(self.base)):
                self._add_strong_generator(residue, level)
                dirty = True
        if dirty:
            self._close()

    # public queries

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, level = self._sift(g, 0)
        return level == len(self.base) and residue.is_identity()

    def elements(self) -> list[Permutation]:
        """All group elements, one per transversal-product decomposition."""
        out = [self._identity]
        for level in range(len(self.base) - 1, -1, -1):
            reps = list(self.transversals[level].values())
            out = [deep * u for deep in out for u in reps]
        return out

    # construction

    def _level_gens(self, level: int) -> list[Permutation]:
        pts = self.base[:level]
        return [g for g in self.strong if all(g.images[b] == b for b in pts)]

    def _sift(self, g: Permutation, start: int) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            x = g.images[self.base[i]]
            u = self.transversals[i].get(x)
            if u is None:
                return g, i
            g = g * u.inverse()
        return g, len(self.base)

    def _rebuild_transversal(self, level: int) -> None:
        b = self.base[level]
        gens = self._level_gens(level)
        trans = {b: self._identity}
        queue = [b]
        while queue:
            x = queue.pop(0)
            ux = trans[x]
            for s in gens:
                y = s.images[x]
                if y not in trans:
                    trans[y] = ux * s
                    queue.append(y)
        self.transversals[level] = trans

    def _add_strong_generator(self, g: Permutation, level: int) -> None:
        if level == len(self.base):
            b = min(g.moved_points())
            self.base.append(b)
            self.transversals.append({b: self._identity})
        self.strong.append(g)
        # orbits at this level and above may have grown
        for i in range(level + 1):
            self._rebuild_transversal(i)

    def _close(self) -> None:
        """Verify Schreier generators level by level, deepest first."""
        i = len(self.base) - 1
        while i >= 0:
            inserted_at = self._verify_level(i)
            if inserted_at is None:
                i -= 1
            else:
                i = min(inserted_at, len(self.base) - 1)
        # final pass: transversals consistent with the full strong set
        for level in range(len(self.base)):
            self._rebuild_transversal(level)

    def _verify_level(self, level: int) -> int | None:
        """Sift all Schreier generators of this level; returns insertion level on failure."""
        self._rebuild_transversal(level)
        gens = self._level_gens(level)
        trans = self.transversals[level]
        for x in sorted(trans):
            ux = trans[x]
            for s in gens:
                uy = trans[s.images[x]]
                schreier = ux * s * uy.inverse()
                if schreier.is_identity():
                    continue
                residue, lvl = self._sift(schreier, level + 1)
                if not (residue.is_identity() and lvl == len(self.base)):
                    self._add_strong_generator(residue, lvl)
                    return lvl
        return None
