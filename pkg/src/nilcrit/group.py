"""Permutation groups: membership, enumeration, closure and conjugacy machinery.

A :class:`PermGroup` is generators plus a lazily built stabilizer chain; the
chain answers order and membership questions with no cap, while anything that
scans elements (conjugacy classes, normalizers, quotients, ...) first
enumerates under an explicit cap.  Groups and element sets are immutable once
their caches are built, so sharing them across threads or checks is safe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator

from .chain import StabilizerChain
from .errors import DegreeMismatch, NotNormal, OrderCapExceeded
from .perm import Permutation

DEFAULT_ENUM_CAP = 200_000
DEFAULT_INDEX_CAP = 10_000


@dataclass(frozen=True)
class ElementSet:
    """A canonically ordered, duplicate-free set of same-degree permutations.

    The closure flags are tri-state: True/False once verified by scan, None
    while unknown.
    """

    degree: int
    elements: tuple[Permutation, ...]
    symmetric: bool | None = None
    conj_closed: bool | None = None
    comm_closed: bool | None = None

    @classmethod
    def from_iterable(cls, degree: int, elems: Iterable[Permutation], **flags) -> ElementSet:
        unique = sorted(set(elems))
        for e in unique:
            if e.degree != degree:
                raise DegreeMismatch(f"element of degree {e.degree} in a degree-{degree} set")
        return cls(degree, tuple(unique), **flags)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        lo, hi = 0, len(self.elements)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.elements[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.elements) and self.elements[lo] == p

    def intersection(self, other: Iterable[Permutation]) -> ElementSet:
        mine = set(self.elements)
        return ElementSet.from_iterable(self.degree, (p for p in other if p in mine))

    def with_flags(self, **flags) -> ElementSet:
        return replace(self, **flags)


class PermGroup:
    """A finite permutation group given by generators.

    The identity group is represented by the identity generator.  Caches
    (chain, element list, derived structural data) are built lazily and never
    mutated afterwards.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation], name: str | None = None):
        gens = tuple(generators)
        if not gens:
            gens = (Permutation.identity(degree),)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a degree-{degree} group")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain: StabilizerChain | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._cache: dict = {}

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"<PermGroup {label}, {len(self.generators)} generators>"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, list(self.generators))
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def contains(self, p: Permutation) -> bool:
        return p.degree == self.degree and self.chain().contains(p)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> tuple[Permutation, ...]:
        """All elements in canonical (lexicographic image) order."""
        n = self.order()
        if n > cap:
            raise OrderCapExceeded(n, cap)
        if self._elements is None:
            self._elements = tuple(sorted(self.chain().elements()))
        return self._elements

    def element_set(self, cap: int = DEFAULT_ENUM_CAP) -> ElementSet:
        return ElementSet(self.degree, self.elements(cap), symmetric=True,
                          comm_closed=True)

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly random element via independent transversal choices."""
        chain = self.chain()
        g = self.identity
        for level in range(len(chain.base) - 1, -1, -1):
            reps = list(chain.transversals[level].values())
            g = g * reps[rng.randrange(len(reps))]
        return g

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def equals(self, other: PermGroup) -> bool:
        """Same underlying set of permutations (not object identity)."""
        return (self.degree == other.degree
                and self.order() == other.order()
                and self.is_subgroup_of(other))

    def conjugated(self, by: Permutation) -> PermGroup:
        return PermGroup(self.degree, tuple(g.conjugate(by) for g in self.generators))

    def memo(self, key, compute: Callable):
        """Cache structural results on the group; results must be immutable."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def subgroup_generated(degree: int, gens: Iterable[Permutation]) -> PermGroup:
    """Smallest subgroup containing the given elements; empty input gives the trivial group.

    Long generator lists (value sets, element scans) are greedily reduced to
    a small generating subset before the chain is built.
    """
    useful = tuple(g for g in gens if not g.is_identity())
    if len(useful) > 12:
        reduced: list[Permutation] = []
        group = PermGroup(degree, ())
        for g in sorted(set(useful)):
            if not group.contains(g):
                reduced.append(g)
                group = PermGroup(degree, tuple(reduced))
        return group
    return PermGroup(degree, useful)


def group_from_elements(degree: int, elements: Iterable[Permutation]) -> PermGroup:
    """Build a group from its full (closed) element collection, with a reduced generating set."""
    elems = tuple(sorted(set(elements)))
    gens: list[Permutation] = []
    group = trivial_group(degree)
    for x in elems:
        if not group.contains(x):
            gens.append(x)
            group = PermGroup(degree, tuple(gens))
    if group.order() != len(elems):
        raise ValueError(f"element collection of size {len(elems)} is not closed "
                         f"(generates order {group.order()})")
    group._elements = elems
    return group



def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> list[ElementSet]:
    """Conjugacy classes as element sets, sorted by their minimal member."""

    def compute() -> tuple[ElementSet, ...]:
        elems = G.elements(cap)
        seen: set[Permutation] = set()
        classes = []
        for x in elems:
            if x in seen:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for g in G.generators:
                    z = y.conjugate(g)
                    if z not in orbit:
                        orbit.add(z)
                        frontier.append(z)
            seen |= orbit
            classes.append(ElementSet.from_iterable(G.degree, orbit, conj_closed=True))
        classes.sort(key=lambda c: c.elements[0].images)
        return tuple(classes)

    return list(G.memo(("classes",), compute))


def conjugation_closure(G: PermGroup, elems: Iterable[Permutation]) -> ElementSet:
    """Smallest G-conjugation-closed set (normal subset) containing the elements."""
    closed: set[Permutation] = set()
    frontier = [e for e in elems]
    closed.update(frontier)
    while frontier:
        y = frontier.pop()
        for g in G.generators:
            z = y.conjugate(g)
            if z not in closed:
                closed.add(z)
                frontier.append(z)
    return ElementSet.from_iterable(G.degree, closed, conj_closed=True)


def normal_closure(G: PermGroup, seed: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of G containing the seed elements."""
    gens = [s for s in seed if not s.is_identity()]
    for g in gens:
        if g.degree != G.degree:
            raise DegreeMismatch("seed degree differs from group degree")
    group = PermGroup(G.degree, tuple(gens))
    while True:
        fresh = []
        known = set(gens)
        for n in gens:
            for g in G.generators:
                c = n.conjugate(g)
                if c not in known and not group.contains(c):
                    known.add(c)
                    fresh.append(c)
        if not fresh:
            return group
        gens.extend(fresh)
        group = PermGroup(G.degree, tuple(gens))


def centralizer(G: PermGroup, a: Permutation, cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    if a.degree != G.degree:
        raise DegreeMismatch("element degree differs from group degree")
    members = [g for g in G.elements(cap) if a * g == g * a]
    return group_from_elements(G.degree, members)


def normalizer(G: PermGroup, H: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    if H.degree != G.degree:
        raise DegreeMismatch("subgroup degree differs from group degree")
    members = [g for g in G.elements(cap)
               if all(H.contains(h.conjugate(g)) for h in H.generators)]
    return group_from_elements(G.degree, members)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    if not N.is_subgroup_of(G):
        return False
    return all(N.contains(n.conjugate(g)) for n in N.generators for g in G.generators)


@dataclass
class CosetMap:
    """The action of a group on the right cosets of a normal subgroup.

    ``reps[i]`` is the canonical (lexicographically minimal) element of coset
    number i; calling the map sends a group element to the permutation it
    induces on coset numbers.
    """

    source: PermGroup
    kernel: PermGroup
    reps: tuple[Permutation, ...]
    _index: dict[Permutation, int] = field(repr=False, default_factory=dict)
    _kernel_elements: tuple[Permutation, ...] = field(repr=False, default=())

    def coset_key(self, g: Permutation) -> Permutation:
        return min(n * g for n in self._kernel_elements)

    def coset_index(self, g: Permutation) -> int:
        return self._index[self.coset_key(g)]

    def __call__(self, g: Permutation) -> Permutation:
        if g.degree != self.source.degree:
            raise DegreeMismatch("element degree differs from group degree")
        return Permutation(tuple(self.coset_index(r * g) for r in self.reps))


def quotient(G: PermGroup, N: PermGroup, index_cap: int = DEFAULT_INDEX_CAP,
             cap: int = DEFAULT_ENUM_CAP) -> tuple[PermGroup, CosetMap]:
    """Faithful action of G/N on the right cosets of N.

    N must be normal in G; the index must stay under index_cap since it
    becomes the degree of the quotient group.
    """
    if not N.is_subgroup_of(G):
        raise NotNormal("N is not a subgroup of G")
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    index = G.order() // N.order()
    if index > index_cap:
        raise OrderCapExceeded(index, index_cap, what="coset space")
    n_elems = N.elements(cap)
    kernel_set = tuple(n_elems)

    reps: list[Permutation] = []
    index_of: dict[Permutation, int] = {}

    def key(g: Permutation) -> Permutation:
        return min(n * g for n in kernel_set)

    start = key(G.identity)
    reps.append(start)
    index_of[start] = 0
    queue = [start]
    while queue:
        r = queue.pop(0)
        for g in G.generators:
            k = key(r * g)
            if k not in index_of:
                index_of[k] = len(reps)
                reps.append(k)
                queue.append(k)
    if len(reps) != index:
        raise RuntimeError(f"coset enumeration found {len(reps)} cosets, expected {index}")

    cmap = CosetMap(G, N, tuple(reps), index_of, kernel_set)
    Q = PermGroup(index, tuple(cmap(g) for g in G.generators),
                  name=f"{G.name}/{N.name}" if G.name and N.name else None)
    if Q.order() * N.order() != G.order():
        raise RuntimeError("quotient order mismatch: kernel of the coset action is not N")
    return Q, cmap


def product_set(left: Iterable[Permutation], right: Iterable[Permutation]) -> set[Permutation]:
    right = list(right)
    return {a * b for a in left for b in right}

