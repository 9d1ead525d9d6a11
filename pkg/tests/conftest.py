"""Shared fixtures and brute-force oracles.

Oracles here deliberately avoid the library's optimized paths: closures are
plain breadth-first multiplication, conjugacy classes come from full element
scans, and series terms from all-pairs commutator closures.
"""

from __future__ import annotations

import itertools

import pytest

from nilcrit.perm import Permutation, commutator
from nilcrit.group import PermGroup


def perm(cycles: str, degree: int) -> Permutation:
    return Permutation.parse_cycles(cycles, degree)


def closure_oracle(degree: int, gens: list[Permutation]) -> set[Permutation]:
    """Breadth-first closure under multiplication, no chains involved."""
    seen = {Permutation.identity(degree)}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def classes_oracle(degree: int, elements: set[Permutation]) -> list[set[Permutation]]:
    """Conjugacy classes by conjugating with every group element."""
    remaining = set(elements)
    out = []
    while remaining:
        x = min(remaining)
        cls = {x.conjugate(g) for g in elements}
        out.append(cls)
        remaining -= cls
    return sorted(out, key=lambda c: min(c).images)


def derived_subgroup_oracle(degree: int, elements: set[Permutation]) -> set[Permutation]:
    """Closure of the set of all commutators of element pairs."""
    comms = {commutator(a, b) for a, b in itertools.product(elements, repeat=2)}
    return closure_oracle(degree, list(comms))


def lower_central_step_oracle(degree: int, term: set[Permutation],
                              whole: set[Permutation]) -> set[Permutation]:
    comms = {commutator(a, g) for a in term for g in whole}
    return closure_oracle(degree, list(comms))


@pytest.fixture(scope="session")
def corpus() -> dict[str, PermGroup]:
    from nilcrit.corpus import builtin_names, load_group
    return {name: load_group(name, verify=True) for name in builtin_names()}


@pytest.fixture(scope="session")
def soluble_corpus(corpus) -> dict[str, PermGroup]:
    from nilcrit.corpus import filter_names
    return {n: corpus[n] for n in filter_names("soluble")}


@pytest.fixture(scope="session")
def insoluble_corpus(corpus) -> dict[str, PermGroup]:
    from nilcrit.corpus import filter_names
    return {n: corpus[n] for n in filter_names("insoluble")}


@pytest.fixture(scope="session")
def s4() -> PermGroup:
    return PermGroup(4, (perm("(1 2)", 4), perm("(1 2 3 4)", 4)), name="S4")


@pytest.fixture(scope="session")
def s3() -> PermGroup:
    return PermGroup(3, (perm("(1 2)", 3), perm("(1 2 3)", 3)), name="S3")


@pytest.fixture(scope="session")
def a4() -> PermGroup:
    return PermGroup(4, (perm("(1 2 3)", 4), perm("(2 3 4)", 4)), name="A4")


@pytest.fixture(scope="session")
def a5() -> PermGroup:
    return PermGroup(5, (perm("(1 2 3 4 5)", 5), perm("(3 4 5)", 5)), name="A5")


@pytest.fixture(scope="session")
def v4() -> PermGroup:
    return PermGroup(4, (perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)), name="V4")


@pytest.fixture(scope="session")
def d8() -> PermGroup:
    return PermGroup(4, (perm("(1 2 3 4)", 4), perm("(1 3)", 4)), name="D8")
