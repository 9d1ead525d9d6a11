"""Permutation arithmetic on the points 1..n.

Products are read left to right: ``(a * b)`` means "apply ``a`` first, then
``b``", so ``x^(a*b) = b(a(x))``.  Conjugation is ``y^x = x^-1 * y * x`` and
the commutator is ``[a, b] = a^-1 * b^-1 * a * b``, which makes the identity
``y^x = y * [y, x]`` hold verbatim.  Points are 1-based in all I/O; the
internal image tuple is 0-based.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, InvalidPermutation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """An element of the symmetric group on {1..n}, stored as a 0-based image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        n = len(imgs)
        if n < 1:
            raise InvalidPermutation("degree must be at least 1")
        seen = [False] * n
        for x in imgs:
            if not isinstance(x, int) or x < 0 or x >= n or seen[x]:
                raise InvalidPermutation(f"images {imgs!r} are not a bijection of 0..{n - 1}")
            seen[x] = True
        self.images = imgs

    # construction helpers

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        """Build from a 1-based image array, the external descriptor form."""
        try:
            return cls(x - 1 for x in images)
        except InvalidPermutation:
            raise InvalidPermutation(f"images {list(images)!r} are not a bijection of 1..{len(images)}")

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from disjoint cycles of 1-based points."""
        imgs = list(range(degree))
        touched = set()
        for cycle in cycles:
            for p in cycle:
                if not 1 <= p <= degree:
                    raise InvalidPermutation(f"point {p} outside 1..{degree}")
                if p in touched:
                    raise InvalidPermutation(f"point {p} appears in two cycles")
                touched.add(p)
            for i, p in enumerate(cycle):
                imgs[p - 1] = cycle[(i + 1) % len(cycle)] - 1
        return cls(imgs)

    @classmethod
    def parse_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation like ``(1 2 3)(4 5)``; commas and spaces both separate points."""
        stripped = text.strip()
        if stripped in ("()", "e", "id"):
            return cls.identity(degree)
        cycles = []
        consumed = _CYCLE_RE.sub("", stripped).strip()
        if consumed:
            raise InvalidPermutation(f"unparsable cycle text {text!r}")
        for m in _CYCLE_RE.finditer(stripped):
            body = m.group(1).replace(",", " ").split()
            if body:
                cycles.append([int(tok) for tok in body])
        return cls.from_cycles(degree, cycles)

    # basic protocol

    @property
    def degree(self) -> int:
        return len(self.images)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __le__(self, other: Permutation) -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation.parse_cycles({self.cycle_string()!r}, {self.degree})"

    def __str__(self) -> str:
        return self.cycle_string()

    def __call__(self, point: int) -> int:
        """Apply to a 1-based point."""
        return self.images[point - 1] + 1

    # group arithmetic

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")
        b = other.images
        out = Permutation.__new__(Permutation)
        out.images = tuple(b[x] for x in self.images)
        return out

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        out = Permutation.__new__(Permutation)
        out.images = tuple(inv)
        return out

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, by: Permutation) -> Permutation:
        """Return self^by = by^-1 * self * by."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images))

    # cycle structure

    def cycles(self, with_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles as 1-based point tuples, each starting at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cur, cycle = start, []
            while not seen[cur]:
                seen[cur] = True
                cycle.append(cur + 1)
                cur = self.images[cur]
            if len(cycle) > 1 or with_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(with_fixed=True)))

    def moved_points(self) -> Iterator[int]:
        """0-based points not fixed by the permutation."""
        return (i for i, x in enumerate(self.images) if x != i)

    def one_based(self) -> list[int]:
        return [x + 1 for x in self.images]


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """[a, b] = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def element_order(a: Permutation) -> int:
    return a.order()
