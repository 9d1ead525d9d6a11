"""Machine checks of the supporting subgroup-generation and coprime-action facts.

Five checks, each a conditional verified extensionally on concrete groups:

* coset_intersection — for a normal subgroup N, a Sylow p-subgroup P and a
  normal subset X of p-elements: XN intersected with PN equals (X cap P)N.
* lifted_generation — if P-bar cap L-bar is generated by P-bar cap X-bar in
  G/N, then P cap L is generated by (P cap X) and (P cap N) in G.
* focal_generation — P cap G^(i) is generated by the depth-i word values
  lying in P (soluble G).
* fitting_membership — in a metanilpotent group, a p-element centralizing
  the p'-part of the Fitting subgroup lies in the Fitting subgroup.
* coprime_action — under the standing coprime-product hypothesis at depth k,
  a depth-k value x acts trivially on every x-invariant subgroup of coprime
  order; the proof's commutator gymnastics are replayed literally.

Inadmissible inputs raise HypothesisNotSatisfied (or a structural error);
holds=False is reserved for genuine counter-evidence, which for proven facts
means an implementation bug.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .errors import (
    HypothesisNotSatisfied,
    NotMetanilpotent,
    NotNormal,
    NotPElementSet,
    NotSoluble,
)
from .group import (
    DEFAULT_ENUM_CAP,
    ElementSet,
    PermGroup,
    conjugacy_classes,
    conjugation_closure,
    group_from_elements,
    is_normal,
    product_set,
    quotient,
    subgroup_generated,
)
from .perm import commutator
from .primes import p_part, prime_factors
from .criterion import coprime_product_criterion
from .structure import (
    derived_term,
    fitting_subgroup,
    is_metanilpotent,
    is_soluble,
    p_prime_core,
    sylow_subgroup,
    _check_prime_divisor,
)
from .words import delta_values


@dataclass
class LemmaReport:
    """Outcome of one lemma check on one concrete instance.

    ``elapsed_s`` is wall-clock and deliberately excluded from serialized run
    reports, which must be byte-identical across runs.
    """

    lemma_id: str
    group_id: str | None
    params: dict
    holds: bool
    witness: dict | None
    checked: int
    elapsed_s: float = field(default=0.0, compare=False)


def normal_subgroups(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> list[PermGroup]:
    """All normal subgroups, as joins of conjugacy-class closures.

    Every normal subgroup is the join of the closures of the classes it
    contains, so closing the class-closure list under pairwise joins finds
    them all.  Results are sorted by order, then by element list.
    """

    def compute() -> tuple[PermGroup, ...]:
        found: dict[frozenset, PermGroup] = {}

        def add(H: PermGroup) -> bool:
            key = frozenset(H.elements(cap))
            if key in found:
                return False
            found[key] = H
            return True

        from .group import trivial_group
        add(trivial_group(G.degree))
        for cls in conjugacy_classes(G, cap):
            add(subgroup_generated(G.degree, cls.elements))
        grew = True
        while grew:
            grew = False
            current = list(found.values())
            for i, A in enumerate(current):
                for B in current[i + 1:]:
                    if A.is_subgroup_of(B) or B.is_subgroup_of(A):
                        continue
                    if add(subgroup_generated(G.degree, A.generators + B.generators)):
                        grew = True
        out = sorted(found.values(),
                     key=lambda H: (H.order(), [p.images for p in H.elements(cap)]))
        return tuple(out)

    return list(G.memo(("normal_subgroups",), compute))


def _require_p_element_normal_set(G: PermGroup, X: ElementSet, p: int) -> None:
    for x in X:
        if p_part(x.order(), p) != x.order():
            raise NotPElementSet(f"{x} has order {x.order()}, not a power of {p}")
    for x in X:
        for g in G.generators:
            if x.conjugate(g) not in X:
                raise ValueError("X is not a normal (conjugation-closed) subset")


def p_power_value_closure(G: PermGroup, depth: int, p: int,
                          cap: int = DEFAULT_ENUM_CAP) -> ElementSet:
    """Conjugation closure of the p-power-order depth-i word values.

    This is the canonical X fed to the coset lemmas: value sets are already
    closed under conjugation, so this just slices out the p-elements and
    re-verifies closure.
    """
    values = delta_values(G, depth, cap)
    members = [x for x in values.values if p_part(x.order(), p) == x.order()]
    return conjugation_closure(G, members)


def check_coset_intersection(G: PermGroup, N: PermGroup, p: int, X: ElementSet,
                             cap: int = DEFAULT_ENUM_CAP) -> LemmaReport:
    """XN cap PN = (X cap P)N for a normal subset X of p-elements."""
    started = time.perf_counter()
    _check_prime_divisor(G, p)
    if not is_normal(G, N):
        raise NotNormal("N must be normal in G")
    _require_p_element_normal_set(G, X, p)

    P = sylow_subgroup(G, p, cap)
    n_elems = N.elements(cap)
    p_elems = P.elements(cap)
    xn = product_set(X, n_elems)
    pn = product_set(p_elems, n_elems)
    lhs = xn & pn
    x_cap_p = [x for x in X if P.contains(x)]
    rhs = product_set(x_cap_p, n_elems)

    holds = lhs == rhs
    witness = None
    if not holds:
        stray = min(lhs.symmetric_difference(rhs))
        witness = {"element": stray, "in_lhs": stray in lhs, "in_rhs": stray in rhs}
    return LemmaReport(
        "coset_intersection", G.name,
        {"p": p, "N_order": N.order(), "X_size": len(X)},
        holds, witness, checked=len(lhs) + len(rhs),
        elapsed_s=time.perf_counter() - started)


def check_lifted_generation(G: PermGroup, N: PermGroup, L: PermGroup, p: int,
                            X: ElementSet, cap: int = DEFAULT_ENUM_CAP) -> LemmaReport:
    """From generation in G/N, conclude P cap L = <P cap X, P cap N> in G.

    The quotient-side hypothesis is computed and checked first; instances
    failing it are inadmissible and raise HypothesisNotSatisfied rather than
    producing a verdict.
    """
    started = time.perf_counter()
    _check_prime_divisor(G, p)
    if not is_normal(G, N) or not is_normal(G, L):
        raise NotNormal("N and L must be normal in G")
    if not N.is_subgroup_of(L):
        raise NotNormal("N must be contained in L")
    _require_p_element_normal_set(G, X, p)

    P = sylow_subgroup(G, p, cap)
    Q, cmap = _memo_quotient(G, N, cap)
    p_bar = subgroup_generated(Q.degree, [cmap(g) for g in P.generators])
    l_bar = subgroup_generated(Q.degree, [cmap(g) for g in L.generators])
    x_bar = {cmap(x) for x in X}
    lhs_bar = set(p_bar.elements(cap)) & set(l_bar.elements(cap))
    gen_bar = set(p_bar.elements(cap)) & x_bar
    rhs_bar = set(subgroup_generated(Q.degree, gen_bar).elements(cap))
    if lhs_bar != rhs_bar:
        raise HypothesisNotSatisfied(
            "quotient-side generation P-bar cap L-bar = <P-bar cap X-bar> fails")

    p_elems = set(P.elements(cap))
    lhs = p_elems & set(L.elements(cap))
    seed = [x for x in X if x in p_elems]
    seed += [n for n in N.elements(cap) if n in p_elems]
    rhs_group = subgroup_generated(G.degree, seed)
    rhs = set(rhs_group.elements(cap))

    holds = lhs == rhs
    witness = None
    if not holds:
        stray = min(lhs.symmetric_difference(rhs))
        witness = {"element": stray, "in_lhs": stray in lhs, "in_rhs": stray in rhs}
    return LemmaReport(
        "lifted_generation", G.name,
        {"p": p, "N_order": N.order(), "L_order": L.order(), "X_size": len(X)},
        holds, witness, checked=len(lhs) + len(rhs),
        elapsed_s=time.perf_counter() - started)


def _memo_quotient(G: PermGroup, N: PermGroup, cap: int):
    key = ("quotient", frozenset(N.elements(cap)))
    return G.memo(key, lambda: quotient(G, N, cap=cap))


def check_focal_generation(G: PermGroup, depth: int, p: int,
                           cap: int = DEFAULT_ENUM_CAP) -> LemmaReport:
    """P cap G^(depth) is generated by the depth-k values lying in P."""
    started = time.perf_counter()
    if not is_soluble(G):
        raise NotSoluble("focal generation is checked on soluble groups")
    _check_prime_divisor(G, p)

    P = sylow_subgroup(G, p, cap)
    values = delta_values(G, depth, cap)
    inside = [v for v in values.values if P.contains(v)]
    generated = subgroup_generated(G.degree, inside)
    target_elems = set(P.elements(cap)) & set(derived_term(G, depth).elements(cap))
    target = group_from_elements(G.degree, target_elems)

    holds = generated.order() == target.order() and generated.is_subgroup_of(target)
    witness = None
    if not holds:
        witness = {"generated_order": generated.order(), "target_order": target.order()}
    return LemmaReport(
        "focal_generation", G.name,
        {"p": p, "depth": depth, "values_in_P": len(inside)},
        holds, witness, checked=len(inside),
        elapsed_s=time.perf_counter() - started)


def check_fitting_membership(G: PermGroup, p: int,
                             cap: int = DEFAULT_ENUM_CAP) -> LemmaReport:
    """p-elements centralizing the p'-part of the Fitting subgroup lie inside it."""
    started = time.perf_counter()
    if not is_metanilpotent(G):
        raise NotMetanilpotent("the membership fact assumes a metanilpotent group")
    _check_prime_divisor(G, p)

    F = fitting_subgroup(G, cap)
    core = p_prime_core(F, p, cap)
    core_gens = core.generators
    qualifying = 0
    witness = None
    for x in G.elements(cap):
        if p_part(x.order(), p) != x.order():
            continue
        if not all(commutator(o, x).is_identity() for o in core_gens):
            continue
        qualifying += 1
        if not F.contains(x):
            witness = {"element": x, "order": x.order(), "fitting_order": F.order()}
            break
    return LemmaReport(
        "fitting_membership", G.name,
        {"p": p, "fitting_order": F.order(), "core_order": core.order()},
        witness is None, witness, checked=qualifying,
        elapsed_s=time.perf_counter() - started)


def _invariant_subgroup_family(G: PermGroup, cap: int) -> list[PermGroup]:
    """Subgroups tested for coprime action: cyclics, Sylows of normals, p'-cores of F.

    The full subgroup lattice would explode; this family covers every
    subgroup the coprime-action argument is ever applied to.
    """

    def compute() -> tuple[PermGroup, ...]:
        family: dict[frozenset, PermGroup] = {}

        def add(H: PermGroup) -> None:
            family.setdefault(frozenset(H.elements(cap)), H)

        for y in G.elements(cap):
            add(subgroup_generated(G.degree, [y]))
        for M in normal_subgroups(G, cap):
            for q in prime_factors(M.order()):
                add(sylow_subgroup(M, q, cap))
        F = fitting_subgroup(G, cap)
        for q in prime_factors(G.order()):
            add(p_prime_core(F, q, cap))
        return tuple(sorted(family.values(), key=lambda H: (H.order(), [g.images for g in H.generators])))

    return list(G.memo(("invariant_family",), compute))


def check_coprime_action(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP) -> LemmaReport:
    """Depth-k values act trivially on invariant subgroups of coprime order.

    Standing hypothesis: the coprime product criterion holds for (G, k);
    otherwise the instance is inadmissible.  For every qualifying pair the
    proof's steps are replayed: the double commutator [y, x, x] is itself a
    depth-k value of order coprime to |x|, the product [y, x, x] x^-1 is
    conjugate to x^-1 (found by explicit search), hence [y, x, x] = 1, and
    finally [N, x] = 1.
    """
    started = time.perf_counter()
    if not coprime_product_criterion(G, k, "delta", cap).holds:
        raise HypothesisNotSatisfied(
            f"coprime product criterion fails for depth {k}; the action fact does not apply")

    values = delta_values(G, k, cap)
    value_list = list(values.values)
    family = _invariant_subgroup_family(G, cap)
    elements = G.elements(cap)

    pairs = 0
    witness = None
    for N in family:
        n_order = N.order()
        n_gens = N.generators
        n_elems = N.elements(cap)
        for x in value_list:
            if gcd(n_order, x.order()) != 1:
                continue
            if not all(N.contains(n.conjugate(x)) for n in n_gens):
                continue
            pairs += 1
            x_inv = x.inverse()
            for y in n_elems:
                double = commutator(commutator(y, x), x)
                step = {"N_order": n_order, "x": x, "y": y}
                if double not in values.values:
                    witness = {**step, "failure": "double commutator left the value set"}
                    break
                if gcd(double.order(), x.order()) != 1:
                    witness = {**step, "failure": "double commutator order not coprime to |x|"}
                    break
                target = double * x_inv
                if not any(x_inv.conjugate(g) == target for g in elements):
                    witness = {**step, "failure": "product is not conjugate to x^-1"}
                    break
                if not double.is_identity():
                    witness = {**step, "failure": "double commutator is not trivial"}
                    break
                if not commutator(y, x).is_identity():
                    witness = {**step, "failure": "x does not centralize N"}
                    break
            if witness:
                break
        if witness:
            break
    return LemmaReport(
        "coprime_action", G.name,
        {"k": k, "family_size": len(family), "value_count": len(value_list)},
        witness is None, witness, checked=pairs,
        elapsed_s=time.perf_counter() - started)


# instance generators for batch drivers

def coset_intersection_instances(G: PermGroup, depths: tuple[int, ...] = (0, 1, 2),
                                 cap: int = DEFAULT_ENUM_CAP) -> Iterator[dict]:
    for p in prime_factors(G.order()):
        for depth in depths:
            X = p_power_value_closure(G, depth, p, cap)
            for N in normal_subgroups(G, cap):
                yield {"N": N, "p": p, "X": X, "depth": depth}


def lifted_generation_instances(G: PermGroup, depths: tuple[int, ...] = (0, 1, 2),
                                cap: int = DEFAULT_ENUM_CAP) -> Iterator[dict]:
    normals = normal_subgroups(G, cap)
    for p in prime_factors(G.order()):
        for depth in depths:
            X = p_power_value_closure(G, depth, p, cap)
            for N in normals:
                for L in normals:
                    if N.order() <= L.order() and N.is_subgroup_of(L):
                        yield {"N": N, "L": L, "p": p, "X": X, "depth": depth}
