"""Iterated-commutator word values and commutator-closed generating sets.

The depth-k derived word takes 2^k arguments and nests commutators over the
two argument halves; its value set is computed level by level as pairwise
commutators of the previous level, which agrees with the literal tuple
evaluation because the argument blocks are independent.  A tuple brute-force
evaluator is kept purely as a testing oracle.

Also here: the tower construction that writes a soluble group as a product of
nilpotent system normalizers and extracts from it a commutator-closed
generating set of prime-power-order elements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    NotCommutatorClosed,
    NotGenerating,
    NotSoluble,
    OrderCapExceeded,
)
from .group import (
    DEFAULT_ENUM_CAP,
    ElementSet,
    PermGroup,
    product_set,
    subgroup_generated,
)
from .indexed import IndexedGroup, indexed_view
from .perm import Permutation, commutator
from .primes import is_prime_power, p_part
from .structure import (
    derived_subgroup,
    gamma_infinity,
    intersect_basis,
    is_soluble,
    lower_fitting_series,
    sylow_basis,
)

_TUPLE_BUDGET = 50_000_000


@dataclass(frozen=True)
class DeltaValueSet:
    """The set of depth-k word values of a group.

    kind is "delta" (derived word, 2^k arguments) or "gamma" (left-normed
    word, k arguments).  ``stabilized`` is set when the requested depth lies
    at or past the point where the level sets stop shrinking, in which case
    the stable set is returned rather than an error.
    """

    kind: str
    k: int
    values: ElementSet
    method: str
    stabilized: bool

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.values


def evaluate_delta(k: int, args: Sequence[Permutation]) -> Permutation:
    """Literal evaluation of the depth-k derived word on 2^k arguments."""
    if len(args) != 2 ** k:
        raise ValueError(f"depth {k} takes {2 ** k} arguments, got {len(args)}")
    if k == 0:
        return args[0]
    half = len(args) // 2
    return commutator(evaluate_delta(k - 1, args[:half]),
                      evaluate_delta(k - 1, args[half:]))


def evaluate_gamma(args: Sequence[Permutation]) -> Permutation:
    """Left-normed commutator [g1, g2, ..., gk]."""
    if not args:
        raise ValueError("the left-normed word takes at least one argument")
    acc = args[0]
    for g in args[1:]:
        acc = commutator(acc, g)
    return acc


def _value_levels(G: PermGroup, kind: str, upto: int, cap: int) -> tuple[list[frozenset[int]], int | None]:
    """Index-level value sets, computed incrementally and cached on the group.

    Returns (levels, stable_at).  levels[i] holds the values of depth i for
    "delta" and of depth i+1 for "gamma"; stable_at is the first index whose
    set equals its successor, or None while undetected.
    """
    iv = indexed_view(G, cap)
    state = G._cache.setdefault(("word_levels", kind),
                                {"levels": [frozenset(range(iv.size))], "stable_at": None})
    levels: list[frozenset[int]] = state["levels"]
    everything = range(iv.size)
    while state["stable_at"] is None and len(levels) <= upto:
        prev = levels[-1]
        if kind == "delta":
            nxt = frozenset(iv.comm(a, b) for a in prev for b in prev)
        else:
            nxt = frozenset(iv.comm(c, g) for c in prev for g in everything)
        if nxt == prev:
            state["stable_at"] = len(levels) - 1
            break
        levels.append(nxt)
    return levels, state["stable_at"]


def _level_at(levels: list[frozenset[int]], stable_at: int | None, i: int) -> tuple[frozenset[int], bool]:
    if i < len(levels):
        return levels[i], stable_at is not None and i >= stable_at
    return levels[-1], True


def _verified_element_set(G: PermGroup, iv: IndexedGroup, idxs: frozenset[int],
                          next_idxs: frozenset[int]) -> ElementSet:
    """Wrap value indices as an ElementSet with all three flags scan-verified."""
    symmetric = all(iv.inverse[i] in idxs for i in idxs)
    conj_closed = all(iv.conj(i, iv.index[g]) in idxs
                      for i in idxs for g in G.generators)
    comm_closed = next_idxs <= idxs
    return ElementSet.from_iterable(G.degree, iv.perms(idxs), symmetric=symmetric,
                                    conj_closed=conj_closed, comm_closed=comm_closed)


def delta_values(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP) -> DeltaValueSet:
    """Values of the depth-k derived word, by pairwise closure over the previous level."""
    if k < 0:
        raise ValueError("depth must be nonnegative")
    iv = indexed_view(G, cap)
    levels, stable_at = _value_levels(G, "delta", k + 1, cap)
    idxs, stabilized = _level_at(levels, stable_at, k)
    next_idxs, _ = _level_at(levels, stable_at, k + 1)
    return DeltaValueSet("delta", k, _verified_element_set(G, iv, idxs, next_idxs),
                         "full_closure", stabilized)


def gamma_values(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP) -> DeltaValueSet:
    """Values of the left-normed word of k arguments (depth k of the lower central chain)."""
    if k < 1:
        raise ValueError("the left-normed word is indexed from 1")
    iv = indexed_view(G, cap)
    levels, stable_at = _value_levels(G, "gamma", k, cap)
    idxs, stabilized = _level_at(levels, stable_at, k - 1)
    next_idxs, _ = _level_at(levels, stable_at, k)
    return DeltaValueSet("gamma", k, _verified_element_set(G, iv, idxs, next_idxs),
                         "full_closure", stabilized)


def delta_values_bruteforce(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP) -> DeltaValueSet:
    """Tuple-enumeration oracle: evaluates the word on every 2^k argument tuple.

    Exponential in |G|; intended for cross-checking delta_values on small
    groups only.
    """
    if k < 0:
        raise ValueError("depth must be nonnegative")
    iv = indexed_view(G, cap)
    n = iv.size
    if n ** (2 ** k) > _TUPLE_BUDGET:
        raise OrderCapExceeded(n ** (2 ** k), _TUPLE_BUDGET, what="argument tuple space")
    if k == 0:
        idxs = set(range(n))
    elif k == 1:
        ct = iv.commutator_table()
        idxs = {ct[a][b] for a in range(n) for b in range(n)}
    elif k == 2:
        ct = iv.commutator_table()
        rng = range(n)
        idxs = set()
        for a in rng:
            row_a = ct[a]
            for b in rng:
                left = ct[row_a[b]]
                for c in rng:
                    row_c = ct[c]
                    for d in rng:
                        idxs.add(left[row_c[d]])
    else:
        ct = iv.commutator_table()

        def word(tup: tuple[int, ...]) -> int:
            if len(tup) == 1:
                return tup[0]
            half = len(tup) // 2
            return ct[word(tup[:half])][word(tup[half:])]

        idxs = {word(t) for t in itertools.product(range(n), repeat=2 ** k)}
    values = ElementSet.from_iterable(G.degree, iv.perms(idxs))
    return DeltaValueSet("delta", k, values, "tuple_bruteforce", False)


def verbal_subgroup(values: DeltaValueSet) -> PermGroup:
    """Subgroup generated by a word value set."""
    return subgroup_generated(values.values.degree, values.values.elements)


def is_symmetric(X: Iterable[Permutation]) -> bool:
    elems = set(X)
    return all(x.inverse() in elems for x in elems)


def is_commutator_closed(X: Iterable[Permutation]) -> bool:
    elems = set(X)
    return all(commutator(a, b) in elems for a in elems for b in elems)


def commutator_closure(G: PermGroup, seed: Iterable[Permutation],
                       cap: int = DEFAULT_ENUM_CAP) -> ElementSet:
    """Close a subset of G under commutators of members (identity included)."""
    iv = indexed_view(G, cap)
    closed = iv.commutator_closure(iv.index[p] for p in seed)
    return ElementSet.from_iterable(G.degree, iv.perms(closed),
                                    comm_closed=True)


def random_commutator_closed_generating_set(G: PermGroup, rng: random.Random,
                                            cap: int = DEFAULT_ENUM_CAP) -> ElementSet:
    """A random generating set of G, closed under commutators.

    Draws uniform elements until they generate, then closes; the result both
    generates G and is commutator-closed, as the construction for the derived
    subgroup generation check requires.
    """
    iv = indexed_view(G, cap)
    picks: list[int] = []
    while True:
        picks.append(rng.randrange(iv.size))
        if len(iv.closure(picks)) == iv.size:
            break
    closed = iv.commutator_closure(picks)
    return ElementSet.from_iterable(G.degree, iv.perms(closed), comm_closed=True)


def derived_from_closed_set(G: PermGroup, X: ElementSet,
                            cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    """Derived subgroup from pair commutators of a commutator-closed generating set.

    Checks both preconditions, generates H from the commutators [x1, x2] with
    x1, x2 in X, and verifies H against the derived subgroup computed the
    ordinary way before returning it.
    """
    iv = indexed_view(G, cap)
    try:
        idxs = sorted(iv.index[x] for x in X)
    except KeyError:
        raise NotGenerating("input set is not contained in the group")
    if X.comm_closed is not True:
        # flags verified at construction are trusted; anything else gets the scan
        idx_set = frozenset(idxs)
        if any(iv.comm(a, b) not in idx_set for a in idxs for b in idxs):
            raise NotCommutatorClosed("input set is not closed under commutators")
    if len(iv.closure(idxs)) != iv.size:
        raise NotGenerating("input set does not generate the group")

    target = derived_subgroup(G)
    want = target.order()
    row, inv = iv.row, iv.inverse
    gens: list[Permutation] = []
    H = subgroup_generated(G.degree, ())
    # pair commutators always lie in the derived subgroup, so the enumeration
    # may stop as soon as the collected ones cover it
    for a in idxs:
        row_inva = row(inv[a])
        for b in idxs:
            c = row(row(row_inva[inv[b]])[a])[b]
            p = iv.elements[c]
            if not H.contains(p):
                gens.append(p)
                H = subgroup_generated(G.degree, tuple(gens))
        if H.order() == want:
            break
    if not H.equals(target):
        raise RuntimeError("pair commutators of a closed generating set missed "
                           "the derived subgroup; this is a bug")
    return H


@dataclass(frozen=True)
class GeneratorTower:
    """Product decomposition of a soluble group into nilpotent normalizers.

    ``chain`` is the descending tower K_1 = G, K_{i+1} = residual(K_i) down to
    (but excluding) the trivial group; ``normalizers`` holds the basis
    normalizer T_i of each K_i, taken with respect to the intersected Sylow
    basis.  ``level_sets`` are the prime-power-order elements of each T_i and
    ``generating_set`` their union: a commutator-closed generating set of G
    whose members all have prime power order.  ``depth_sets[i]`` is the set
    of members expressible as depth-i word values with arguments in the set.
    """

    group: PermGroup
    chain: tuple[PermGroup, ...]
    normalizers: tuple[PermGroup, ...]
    level_sets: tuple[ElementSet, ...]
    generating_set: ElementSet
    depth_sets: tuple[ElementSet, ...]
    seed: int

    @property
    def height(self) -> int:
        return len(self.chain)

    def chain_orders(self) -> tuple[int, ...]:
        return tuple(K.order() for K in self.chain)

    def normalizer_orders(self) -> tuple[int, ...]:
        return tuple(T.order() for T in self.normalizers)

    def prime_slice(self, depth: int, p: int) -> ElementSet:
        """Members of depth_sets[depth] whose order is a power of p."""
        return ElementSet.from_iterable(
            self.group.degree,
            (x for x in self.depth_sets[depth] if p_part(x.order(), p) == x.order()))


def generator_tower(G: PermGroup, seed: int = 0, cap: int = DEFAULT_ENUM_CAP,
                    max_depth: int = 12) -> GeneratorTower:
    """Build the normalizer tower and its prime-power generating set.

    Requires a soluble group.  All structural claims are re-verified on the
    concrete result before it is returned: the union generates, is
    commutator-closed, consists of prime-power-order elements, the normalizer
    product covers the whole group, and earlier normalizers normalize later
    ones.
    """
    if not is_soluble(G):
        raise NotSoluble("the tower construction requires a soluble group")

    def compute() -> GeneratorTower:
        fitting_chain = lower_fitting_series(G).terms
        chain = tuple(K for K in fitting_chain if K.order() > 1)
        basis = sylow_basis(G, seed=seed, cap=cap)

        normalizers = []
        level_sets = []
        for K in chain:
            bK = intersect_basis(basis, K, cap)
            T = bK.normalizer
            residual = gamma_infinity(K)
            covered = product_set(T.elements(cap), residual.elements(cap))
            if len(covered) != K.order():
                raise RuntimeError("normalizer failed to complement the residual in a tower level")
            normalizers.append(T)
            level_sets.append(ElementSet.from_iterable(
                G.degree, (x for x in T.elements(cap) if is_prime_power(x.order()))))

        union = set()
        for xs in level_sets:
            union.update(xs.elements)
        union.add(G.identity)
        X = ElementSet.from_iterable(G.degree, union)

        # re-verify every structural claim on the concrete sets
        if not is_commutator_closed(X):
            raise RuntimeError("tower union is not commutator-closed; this is a bug")
        if not all(is_prime_power(x.order()) for x in X):
            raise RuntimeError("tower union contains a non-prime-power element; this is a bug")
        span = subgroup_generated(G.degree, X.elements)
        if span.order() != G.order():
            raise RuntimeError("tower union does not generate the group; this is a bug")
        prod: set[Permutation] = {G.identity}
        for T in normalizers:
            prod = product_set(prod, T.elements(cap))
        if len(prod) != G.order():
            raise RuntimeError("normalizer product does not cover the group; this is a bug")
        for j, Tj in enumerate(normalizers):
            for Tk in normalizers[j:]:
                if not all(Tk.contains(a.conjugate(t))
                           for a in Tk.generators for t in Tj.generators):
                    raise RuntimeError("an earlier tower normalizer fails to normalize a "
                                       "later one; this is a bug")

        X = X.with_flags(comm_closed=True, symmetric=is_symmetric(X))
        depth_sets = [X]
        while len(depth_sets) < max_depth:
            prev = depth_sets[-1]
            nxt = {commutator(a, b) for a in prev for b in prev}
            depth_sets.append(ElementSet.from_iterable(G.degree, nxt))
            if len(nxt) == 1:
                break
        return GeneratorTower(G, chain, tuple(normalizers), tuple(level_sets),
                              X, tuple(depth_sets), seed)

    return G.memo(("generator_tower", seed), compute)
