"""The coprime-order product criterion on word values.

For word values a, b of coprime orders, nilpotency of the generated verbal
subgroup forces |ab| = |a||b|; conversely a coprime pair whose product order
drops witnesses non-nilpotency.  The scan checks every such pair, by default
with a sound conjugacy reduction (the first element ranges over class
representatives inside the value set, since |a^g b^g| = |ab|).

The consistency checkers compare the criterion verdict against a direct
nilpotency computation of the corresponding subgroup; the insolubility probe
runs the same scan on insoluble groups and only reports what it finds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotSoluble
from .group import DEFAULT_ENUM_CAP, PermGroup, conjugacy_classes
from .indexed import indexed_view
from .perm import Permutation
from .structure import derived_term, is_nilpotent, is_soluble, lower_central_term
from .words import delta_values, gamma_values


@dataclass(frozen=True)
class CriterionWitness:
    """A coprime-order value pair whose product order is not the product of orders."""

    a: Permutation
    b: Permutation
    order_a: int
    order_b: int
    order_ab: int

    def replay(self) -> bool:
        """Re-verify the violation from the raw permutations alone."""
        return (gcd(self.a.order(), self.b.order()) == 1
                and self.a.order() == self.order_a
                and self.b.order() == self.order_b
                and (self.a * self.b).order() == self.order_ab
                and self.order_ab != self.order_a * self.order_b)


@dataclass(frozen=True)
class CriterionReport:
    kind: str
    k: int
    holds: bool
    witness: CriterionWitness | None
    pairs_checked: int
    classes_reduced: bool
    value_count: int


def _word_values(G: PermGroup, k: int, kind: str, cap: int):
    if kind == "delta":
        return delta_values(G, k, cap)
    if kind == "gamma":
        return gamma_values(G, k, cap)
    raise ValueError(f"unknown word kind {kind!r}")


def coprime_product_criterion(G: PermGroup, k: int, kind: str = "delta",
                              cap: int = DEFAULT_ENUM_CAP,
                              reduce_by_classes: bool = True) -> CriterionReport:
    """Scan coprime-order value pairs for |ab| = |a||b|.

    Identity values are skipped (their pairs hold trivially).  With the class
    reduction on, the first element runs over per-class minimal values only;
    the verdict is unchanged and the witness is the first violation in the
    scan's canonical order.  The scan stops at the first violation.
    """
    iv = indexed_view(G, cap)
    values = _word_values(G, k, kind, cap)
    val_idx = sorted(iv.index[p] for p in values.values if not p.is_identity())
    val_set = frozenset(val_idx)

    if reduce_by_classes:
        firsts = []
        for cls in conjugacy_classes(G, cap):
            inside = [iv.index[p] for p in cls.elements if iv.index[p] in val_set]
            if inside:
                firsts.append(min(inside))
        firsts.sort()
    else:
        firsts = val_idx

    order_of = iv.order_of
    pairs = 0
    for a in firsts:
        oa = order_of[a]
        row_a = iv.row(a)
        for b in val_idx:
            ob = order_of[b]
            if gcd(oa, ob) != 1:
                continue
            pairs += 1
            oab = order_of[row_a[b]]
            if oab != oa * ob:
                witness = CriterionWitness(iv.elements[a], iv.elements[b], oa, ob, oab)
                return CriterionReport(kind, k, False, witness, pairs,
                                       reduce_by_classes, len(val_idx) + 1)
    return CriterionReport(kind, k, True, None, pairs, reduce_by_classes, len(val_idx) + 1)


@dataclass(frozen=True)
class NilpotencyCheck:
    """Criterion verdict side by side with the actual nilpotency of the subgroup."""

    criterion: CriterionReport
    subgroup_order: int
    subgroup_nilpotent: bool

    @property
    def consistent(self) -> bool:
        return self.criterion.holds == self.subgroup_nilpotent


def derived_nilpotency_check(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP,
                             reduce_by_classes: bool = True) -> NilpotencyCheck:
    """Criterion on depth-k derived-word values vs nilpotency of the kth derived subgroup.

    Requires a soluble group; insoluble input belongs to probe_insoluble.
    """
    if not is_soluble(G):
        raise NotSoluble("equivalence check requires a soluble group; use probe_insoluble")
    report = coprime_product_criterion(G, k, "delta", cap, reduce_by_classes)
    H = derived_term(G, k)
    return NilpotencyCheck(report, H.order(), is_nilpotent(H))


def lower_central_nilpotency_check(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP,
                                   reduce_by_classes: bool = True) -> NilpotencyCheck:
    """Criterion on left-normed word values vs nilpotency of the kth lower central term.

    No solubility requirement: this equivalence is expected on every finite
    group (at k = 1 it is the classical coprime-product nilpotency condition).
    """
    report = coprime_product_criterion(G, k, "gamma", cap, reduce_by_classes)
    H = lower_central_term(G, k)
    return NilpotencyCheck(report, H.order(), is_nilpotent(H))


@dataclass(frozen=True)
class ProbeReport:
    """Criterion outcome on a (typically insoluble) group, with no equivalence claim.

    A holding criterion on an insoluble group would be a candidate
    counterexample to the expectation that only soluble groups satisfy it;
    the probe flags candidates and decides nothing.
    """

    criterion: CriterionReport
    soluble: bool
    is_candidate_counterexample: bool


def probe_insoluble(G: PermGroup, k: int, cap: int = DEFAULT_ENUM_CAP,
                    reduce_by_classes: bool = True) -> ProbeReport:
    report = coprime_product_criterion(G, k, "delta", cap, reduce_by_classes)
    soluble = is_soluble(G)
    return ProbeReport(report, soluble, report.holds and not soluble)
