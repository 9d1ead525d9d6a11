"""The five supporting-fact checks: admissible instances hold, errors route correctly."""

from __future__ import annotations

import pytest

from nilcrit.errors import (
    HypothesisNotSatisfied,
    NotMetanilpotent,
    NotNormal,
    NotPElementSet,
    NotSoluble,
)
from nilcrit.group import ElementSet, PermGroup, subgroup_generated, trivial_group
from nilcrit.lemmas import (
    check_coprime_action,
    check_coset_intersection,
    check_fitting_membership,
    check_focal_generation,
    check_lifted_generation,
    coset_intersection_instances,
    lifted_generation_instances,
    normal_subgroups,
    p_power_value_closure,
)
from nilcrit.structure import fitting_subgroup, is_metanilpotent
from conftest import perm


@pytest.fixture(scope="module")
def c3xs3() -> PermGroup:
    return PermGroup(6, (perm("(1 2 3)", 6), perm("(4 5)", 6), perm("(4 5 6)", 6)),
                     name="C3xS3")


class TestNormalSubgroups:
    def test_s4_lattice(self, s4):
        assert [N.order() for N in normal_subgroups(s4)] == [1, 4, 12, 24]

    def test_a5_is_simple(self, a5):
        assert [N.order() for N in normal_subgroups(a5)] == [1, 60]

    def test_every_listed_subgroup_is_normal(self, s4, s3, d8):
        from nilcrit.group import is_normal
        for G in (s4, s3, d8):
            for N in normal_subgroups(G):
                assert is_normal(G, N)


class TestCosetIntersection:
    def test_trivial_kernel_reduces_to_tautology(self, s4):
        X = p_power_value_closure(s4, 1, 2)
        rep = check_coset_intersection(s4, trivial_group(4), 2, X)
        assert rep.holds

    def test_s4_v4_instance(self, s4, v4):
        X = p_power_value_closure(s4, 1, 2)
        rep = check_coset_intersection(s4, v4, 2, X)
        assert rep.holds
        assert rep.params["p"] == 2 and rep.params["N_order"] == 4

    def test_all_conjugation_closed_two_element_subsets_at_depth_zero(self, s4, a4):
        # unions of conjugacy classes of 2-elements, one class at a time and pairs
        from nilcrit.group import conjugacy_classes
        classes = [c for c in conjugacy_classes(s4)
                   if c.elements[0].order() in (1, 2, 4)]
        import itertools
        for r in (1, 2, len(classes)):
            for combo in itertools.combinations(classes, r):
                members = [x for c in combo for x in c]
                X = ElementSet.from_iterable(4, members, conj_closed=True)
                rep = check_coset_intersection(s4, a4, 2, X)
                assert rep.holds

    def test_rejects_non_p_elements(self, s4, v4):
        X = ElementSet.from_iterable(4, [perm("(1 2 3)", 4)])
        with pytest.raises(NotPElementSet):
            check_coset_intersection(s4, v4, 2, X)

    def test_rejects_non_normal_n(self, s4):
        H = subgroup_generated(4, [perm("(1 2 3)", 4)])
        X = p_power_value_closure(s4, 1, 2)
        with pytest.raises(NotNormal):
            check_coset_intersection(s4, H, 2, X)

    def test_generated_instances_all_hold(self, s4, s3, a4):
        for G in (s4, s3, a4):
            for inst in coset_intersection_instances(G):
                rep = check_coset_intersection(G, inst["N"], inst["p"], inst["X"])
                assert rep.holds, (G.name, inst["p"], inst["depth"], inst["N"].order())


class TestLiftedGeneration:
    def test_n_equals_l_is_trivially_true(self, s4, v4):
        X = p_power_value_closure(s4, 1, 2)
        rep = check_lifted_generation(s4, v4, v4, 2, X)
        assert rep.holds

    def test_s4_main_instance(self, s4, v4, a4):
        X = p_power_value_closure(s4, 1, 2)
        rep = check_lifted_generation(s4, v4, a4, 2, X)
        assert rep.holds

    def test_trivial_kernel(self, s4, a4):
        X = p_power_value_closure(s4, 1, 2)
        rep = check_lifted_generation(s4, trivial_group(4), a4, 2, X)
        assert rep.holds

    def test_inadmissible_instance_raises(self, s4):
        # with L = G and X the depth-1 2-power values (V4), the quotient-side
        # hypothesis asks V4 to generate a full Sylow 2-subgroup: inadmissible
        X = p_power_value_closure(s4, 1, 2)
        with pytest.raises(HypothesisNotSatisfied):
            check_lifted_generation(s4, trivial_group(4), s4, 2, X)

    def test_requires_containment(self, s4, v4, a4):
        X = p_power_value_closure(s4, 1, 2)
        with pytest.raises(NotNormal):
            check_lifted_generation(s4, a4, v4, 2, X)

    def test_generated_instances_hold_or_are_inadmissible(self, s4, s3):
        for G in (s4, s3):
            admissible = 0
            for inst in lifted_generation_instances(G):
                try:
                    rep = check_lifted_generation(G, inst["N"], inst["L"],
                                                  inst["p"], inst["X"])
                except HypothesisNotSatisfied:
                    continue
                admissible += 1
                assert rep.holds
            assert admissible > 0


class TestFocalGeneration:
    def test_depth_past_derived_length_is_trivial(self, s4):
        rep = check_focal_generation(s4, 5, 2)
        assert rep.holds

    def test_s4_depth1_p2(self, s4):
        rep = check_focal_generation(s4, 1, 2)
        assert rep.holds
        # the intersection P cap A4 is V4, generated by the commutators inside P
        assert rep.params["values_in_P"] == 4

    def test_s4_depth2_p3(self, s4):
        rep = check_focal_generation(s4, 2, 3)
        assert rep.holds
        assert rep.params["values_in_P"] == 1  # identity only

    def test_insoluble_rejected(self, a5):
        with pytest.raises(NotSoluble):
            check_focal_generation(a5, 1, 2)

    def test_soluble_sample_depths_and_primes(self, s4, s3, d8):
        from nilcrit.primes import prime_factors
        for G in (s4, s3, d8):
            for depth in (1, 2, 3):
                for p in prime_factors(G.order()):
                    assert check_focal_generation(G, depth, p).holds


class TestFittingMembership:
    def test_nilpotent_group_is_vacuously_fine(self, d8):
        rep = check_fitting_membership(d8, 2)
        assert rep.holds
        assert rep.checked == d8.order()  # every 2-element qualifies and lies in F = G

    def test_s3_p2_only_identity_qualifies(self, s3):
        rep = check_fitting_membership(s3, 2)
        assert rep.holds
        assert rep.checked == 1

    def test_c3xs3_p3_all_qualify(self, c3xs3):
        rep = check_fitting_membership(c3xs3, 3)
        assert rep.holds
        assert rep.checked == 9
        assert fitting_subgroup(c3xs3).order() == 9

    def test_non_metanilpotent_rejected(self, s4):
        assert not is_metanilpotent(s4)
        with pytest.raises(NotMetanilpotent):
            check_fitting_membership(s4, 2)


class TestCoprimeAction:
    def test_s4_depth2(self, s4):
        rep = check_coprime_action(s4, 2)
        assert rep.holds
        assert rep.checked > 0

    def test_s4_depth1_hypothesis_fails(self, s4):
        with pytest.raises(HypothesisNotSatisfied):
            check_coprime_action(s4, 1)

    def test_nilpotent_groups_any_depth(self, d8, v4):
        for G in (d8, v4):
            for k in (1, 2, 3):
                assert check_coprime_action(G, k).holds

    def test_metabelian_examples(self, s3):
        for k in (1, 2):
            assert check_coprime_action(s3, k).holds

    def test_identity_value_pairs_with_everything(self, d8):
        # with only the identity as value, every family member qualifies
        rep = check_coprime_action(d8, 4)
        assert rep.holds
        assert rep.checked >= len(normal_subgroups(d8))


class TestValueClosureHelper:
    def test_closure_is_conjugation_closed_p_set(self, s4):
        X = p_power_value_closure(s4, 1, 2)
        for x in X:
            assert x.order() in (1, 2, 4)
            for g in s4.generators:
                assert x.conjugate(g) in X

    def test_depth0_is_all_p_elements(self, s4):
        X = p_power_value_closure(s4, 0, 2)
        expected = [x for x in s4.elements() if x.order() in (1, 2, 4)]
        assert set(X) == set(expected)
